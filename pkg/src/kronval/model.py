"""Core model: the 2x2 initiator matrix, vertices of Z_2^n, and edge probabilities.

Vertices are plain non-negative ints.  Digit k (1-based) of a vertex is bit
k-1 of the int, so the least-significant bit is digit 1.  A vertex is valid
for digit count n when it is below 2**n; operations that depend on n check
this and raise :class:`DimensionError` otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DimensionError, ParameterError

# Tolerance used whenever two probabilities are compared for equality
# (regime boundaries, the alpha=gamma gate, the R-MAT sum constraint).
PROB_TOL = 1e-12


@dataclass(frozen=True)
class KroneckerParams:
    """Parameters (alpha, beta, gamma, n) of the random graph on Z_2^n.

    Two vertices u, v are adjacent independently with probability
    alpha^a * beta^b * gamma^c, where a, b, c count the digit positions
    where both are 1, where they differ, and where both are 0.
    All three entries must lie strictly inside (0, 1); no ordering between
    alpha and gamma is imposed.
    """

    alpha: float
    beta: float
    gamma: float
    n: int

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ParameterError(
                    f"{name} must lie strictly in (0, 1), got {value!r}"
                )
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n!r}")

    @property
    def vertex_count(self) -> int:
        return 1 << self.n

    @property
    def alpha_equals_gamma(self) -> bool:
        return abs(self.alpha - self.gamma) <= PROB_TOL

    def log_entries(self) -> tuple[float, float, float]:
        """(log alpha, log beta, log gamma)."""
        return math.log(self.alpha), math.log(self.beta), math.log(self.gamma)

    def matrix(self) -> np.ndarray:
        """The initiator as a 2x2 array indexed by digit values."""
        return np.array(
            [[self.gamma, self.beta], [self.beta, self.alpha]], dtype=float
        )


class PairClass(NamedTuple):
    """Digit-position counts of a vertex pair: both-one, mixed, both-zero.

    ``mixed`` equals the Hamming distance; the three counts sum to n.
    """

    both_one: int
    mixed: int
    both_zero: int


def check_vertex(v: int, n: int) -> None:
    """Raise DimensionError unless v is a valid vertex for digit count n."""
    if not 0 <= v < (1 << n):
        raise DimensionError(f"vertex {v!r} does not fit {n} digits")


def weight(v: int) -> int:
    """Number of 1-digits of a vertex."""
    if v < 0:
        raise DimensionError(f"vertex must be non-negative, got {v!r}")
    return v.bit_count()


def hamming(u: int, v: int) -> int:
    """Number of digit positions where u and v differ."""
    if u < 0 or v < 0:
        raise DimensionError("vertices must be non-negative")
    return (u ^ v).bit_count()


def pair_class(u: int, v: int, n: int) -> PairClass:
    """Classify a vertex pair by its digit-position counts (a, b, c)."""
    check_vertex(u, n)
    check_vertex(v, n)
    a = (u & v).bit_count()
    b = (u ^ v).bit_count()
    return PairClass(both_one=a, mixed=b, both_zero=n - a - b)


def log_edge_probability(params: KroneckerParams, u: int, v: int) -> float:
    """log of the edge probability of {u, v}; accurate for large n."""
    a, b, c = pair_class(u, v, params.n)
    la, lb, lg = params.log_entries()
    return a * la + b * lb + c * lg


def edge_probability(params: KroneckerParams, u: int, v: int) -> float:
    """Probability that the pair {u, v} is an edge.

    Evaluated in log space and exponentiated, so products of up to at
    least 64 digit factors keep full double precision.
    """
    return math.exp(log_edge_probability(params, u, v))


def weight_array(v: np.ndarray) -> np.ndarray:
    """Vectorized digit weights."""
    return np.bitwise_count(np.asarray(v, dtype=np.uint64)).astype(np.int64)


def hamming_array(u, v) -> np.ndarray:
    """Vectorized Hamming distances (broadcasting)."""
    x = np.asarray(u, dtype=np.uint64) ^ np.asarray(v, dtype=np.uint64)
    return np.bitwise_count(x).astype(np.int64)


def edge_probability_array(params: KroneckerParams, u, v) -> np.ndarray:
    """Vectorized edge probabilities for arrays of vertex pairs."""
    u = np.asarray(u, dtype=np.uint64)
    v = np.asarray(v, dtype=np.uint64)
    a = np.bitwise_count(u & v).astype(np.int64)
    b = np.bitwise_count(u ^ v).astype(np.int64)
    c = params.n - a - b
    la, lb, lg = params.log_entries()
    return np.exp(a * la + b * lb + c * lg)


@dataclass(frozen=True)
class SampledGraph:
    """One realization of the model: an edge set over the 2^n vertices.

    ``edges`` holds unordered pairs stored as (min, max) tuples; ``loops``
    holds the vertices carrying a self-loop.  ``include_loops`` records
    whether loop generation was enabled, so that reports can echo it.
    Instances are immutable and safe to share between workers.
    """

    params: KroneckerParams
    edges: frozenset
    loops: frozenset = frozenset()
    include_loops: bool = True

    @classmethod
    def from_pairs(
        cls,
        params: KroneckerParams,
        pairs: Iterable[tuple[int, int]],
        loops: Iterable[int] = (),
        include_loops: bool = True,
    ) -> "SampledGraph":
        """Build a graph from arbitrary pair iterables, validating endpoints."""
        n = params.n
        edge_set = set()
        loop_set = set(loops)
        for u, v in pairs:
            check_vertex(u, n)
            check_vertex(v, n)
            if u == v:
                loop_set.add(u)
            else:
                edge_set.add((u, v) if u < v else (v, u))
        for v in loop_set:
            check_vertex(v, n)
        return cls(
            params=params,
            edges=frozenset(edge_set),
            loops=frozenset(loop_set),
            include_loops=include_loops,
        )

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def vertex_count(self) -> int:
        return self.params.vertex_count

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as a sorted (E, 2) int64 array; deterministic order."""
        if not self.edges:
            return np.empty((0, 2), dtype=np.int64)
        arr = np.array(sorted(self.edges), dtype=np.int64)
        return arr

    @cached_property
    def loop_array(self) -> np.ndarray:
        return np.array(sorted(self.loops), dtype=np.int64)

    @cached_property
    def neighbor_sets(self) -> list:
        """Per-vertex neighbor sets from proper edges only (loops excluded)."""
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self, count_loops: bool = True) -> np.ndarray:
        """Degree of every vertex; a loop contributes 1 when counted."""
        deg = np.zeros(self.vertex_count, dtype=np.int64)
        ea = self.edge_array
        if len(ea):
            deg += np.bincount(ea[:, 0], minlength=self.vertex_count)
            deg += np.bincount(ea[:, 1], minlength=self.vertex_count)
        if count_loops and len(self.loop_array):
            deg += np.bincount(self.loop_array, minlength=self.vertex_count)
        return deg
