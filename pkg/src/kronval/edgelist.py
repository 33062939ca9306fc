"""Edge-list file format.

Header line::

    kron n=<n> alpha=<a> beta=<b> gamma=<g> loops=<0|1>

followed by one ``u v`` line per pair, vertices written as zero-padded
binary strings of length n with u lexicographically <= v; self-loops appear
as ``v v``.  Lines are emitted in sorted order so identical graphs always
serialize to identical bytes.
"""

from __future__ import annotations

import os

from .errors import ParameterError
from .model import KroneckerParams, SampledGraph


def _format_vertex(v: int, n: int) -> str:
    return format(v, f"0{n}b")


def write_edgelist(graph: SampledGraph, path: "str | os.PathLike") -> None:
    p = graph.params
    header = (
        f"kron n={p.n} alpha={p.alpha!r} beta={p.beta!r} gamma={p.gamma!r}"
        f" loops={1 if graph.include_loops else 0}"
    )
    pairs = sorted(set(graph.edges) | {(v, v) for v in graph.loops})
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header + "\n")
        for u, v in pairs:
            fh.write(f"{_format_vertex(u, p.n)} {_format_vertex(v, p.n)}\n")


def read_edgelist(path: "str | os.PathLike") -> SampledGraph:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        fields = header.split()
        if not fields or fields[0] != "kron":
            raise ParameterError(f"not an edge-list file: bad header {header!r}")
        values = dict(item.split("=", 1) for item in fields[1:])
        try:
            params = KroneckerParams(
                alpha=float(values["alpha"]),
                beta=float(values["beta"]),
                gamma=float(values["gamma"]),
                n=int(values["n"]),
            )
            include_loops = bool(int(values["loops"]))
        except KeyError as missing:
            raise ParameterError(f"header is missing field {missing}") from None
        edges = []
        loops = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            u_text, v_text = line.split()
            if len(u_text) != params.n or len(v_text) != params.n:
                raise ParameterError(
                    f"vertex strings must have length {params.n}: {line!r}"
                )
            u, v = int(u_text, 2), int(v_text, 2)
            if u == v:
                loops.append(u)
            else:
                edges.append((u, v))
    return SampledGraph.from_pairs(params, edges, loops, include_loops=include_loops)
