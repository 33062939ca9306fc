"""Command-line front end.

Subcommands: generate, predict, measure, validate, certify.  Exit codes:
0 when everything passed, 1 when a validation or certificate failed, 2 for
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from ._version import __version__
from .edgelist import read_edgelist, write_edgelist
from .errors import KronvalError
from .generate import RmatParams, generate_naive, generate_rmat, generate_stratified
from .harness import (
    ExperimentConfig,
    emit_report,
    report_json,
    run_experiment,
    _round_floats,
)
from .measure import count_labeled_copies, edge_distance_histogram
from .model import KroneckerParams
from .patterns import parse_pattern, second_moment_certificate
from .predict import (
    classify_regime,
    critical_fraction,
    degree_moments,
    expected_degree_count,
    hamming_profile_prediction,
    hamming_window,
)
from .streams import SeedSpec


def _add_params(parser: argparse.ArgumentParser, n_default=None) -> None:
    parser.add_argument("--alpha", type=float, required=True)
    parser.add_argument("--beta", type=float, required=True)
    parser.add_argument("--gamma", type=float, required=True)
    if n_default is None:
        parser.add_argument("--n", type=int, required=True, help="digit count")
    else:
        parser.add_argument("--n", type=int, default=n_default, help="digit count")


def _params(args) -> KroneckerParams:
    return KroneckerParams(alpha=args.alpha, beta=args.beta, gamma=args.gamma, n=args.n)


def _load_pattern(text: str):
    if text.startswith("@"):
        with open(text[1:], "r", encoding="ascii") as fh:
            return parse_pattern(fh.read())
    return parse_pattern(text)


def _emit_json(payload: dict, out_path=None) -> None:
    text = json.dumps(_round_floats(payload), sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_generate(args) -> int:
    params = _params(args)
    seed = SeedSpec(args.seed)
    if args.generator == "rmat":
        if args.rmat_edges is None:
            raise KronvalError("the rmat generator needs --rmat-edges")
        graph = generate_rmat(RmatParams(base=params, m=args.rmat_edges), seed=seed)
    elif args.generator == "naive":
        graph = generate_naive(params, include_loops=args.loops, seed=seed)
    else:
        graph = generate_stratified(params, include_loops=args.loops, seed=seed)
    write_edgelist(graph, args.out)
    print(f"wrote {len(graph.edges)} edges and {len(graph.loops)} loops to {args.out}")
    return 0


def _cmd_predict(args) -> int:
    params = _params(args)
    payload = {"params": {"alpha": params.alpha, "beta": params.beta, "gamma": params.gamma, "n": params.n}}
    if args.what == "moments":
        payload["moments"] = [
            {
                "weight": w,
                "mean": (m := degree_moments(params, w)).mean,
                "sum_sq_probs": m.sum_sq_probs,
                "variance": m.variance,
            }
            for w in range(params.n + 1)
        ]
    elif args.what == "degree-counts":
        payload["expected_degree_counts"] = [
            {"d": d, "count": expected_degree_count(params, d)}
            for d in range(args.d_max + 1)
        ]
    elif args.what == "regime":
        verdict = classify_regime(params, args.d)
        payload["regime"] = {
            "d": args.d,
            "case_id": verdict.case_id,
            "subcase": verdict.subcase,
            "vanishing": verdict.vanishing,
            "theta_base": verdict.theta_base,
            "power_law_possible": verdict.power_law_possible,
            "boundary": verdict.boundary,
            "text": verdict.describe(),
        }
    elif args.what == "hamming-profile":
        lo, hi = hamming_window(params)
        payload["window"] = {"lo": lo, "hi": hi}
        payload["profile"] = [
            {"k": k, "expected_neighbors": hamming_profile_prediction(params, k)}
            for k in range(params.n + 1)
        ]
    elif args.what == "critical-fraction":
        fraction = critical_fraction(params)
        payload["critical_fraction"] = {"c": fraction.c, "side": fraction.side}
    _emit_json(payload, args.out)
    return 0


def _cmd_measure(args) -> int:
    graph = read_edgelist(args.input)
    payload = {
        "n": graph.n,
        "edges": len(graph.edges),
        "loops": len(graph.loops),
    }
    if args.what == "degrees":
        degrees = graph.degrees(count_loops=graph.include_loops)
        counts = np.bincount(degrees)
        payload["degree_histogram"] = {str(d): int(c) for d, c in enumerate(counts) if c}
    elif args.what == "subgraph":
        if not args.pattern:
            raise KronvalError("measure --what subgraph needs --pattern")
        pattern = _load_pattern(args.pattern)
        payload["pattern"] = args.pattern
        payload["labeled_copies"] = count_labeled_copies(graph, pattern)
    elif args.what == "hamming":
        hist = edge_distance_histogram(graph, count_loops=True)
        payload["edge_distance_histogram"] = {str(k): int(c) for k, c in enumerate(hist) if c}
    _emit_json(payload, args.out)
    return 0


def _cmd_validate(args) -> int:
    params = _params(args)
    sweep = tuple(args.sweep) if args.sweep else None
    config = ExperimentConfig(
        params=params,
        kind=args.kind,
        seed=args.seed,
        trials=args.trials,
        generator=args.generator,
        rmat_edges=args.rmat_edges,
        include_loops=args.loops,
        pattern=args.pattern,
        degree_max=args.d_max,
        sweep=sweep,
        allow_large=args.allow_large,
        dump_edges=args.dump_edges,
    )
    report = run_experiment(config)
    emit_report(report, json_path=args.out_json, csv_path=args.out_csv)
    if args.out_json is None:
        sys.stdout.write(report_json(report))
    for criterion in report.criteria:
        status = "pass" if criterion.passed else "FAIL"
        print(
            f"[{status}] {criterion.name}: {criterion.statistic}="
            f"{criterion.value:.6g} (tolerance {criterion.tolerance:.6g})",
            file=sys.stderr,
        )
    return 0 if report.passed else 1


def _cmd_certify(args) -> int:
    params = _params(args)
    pattern = _load_pattern(args.pattern)
    report = second_moment_certificate(params, pattern)
    payload = {
        "pattern": args.pattern,
        "pattern_base": report.pattern_base,
        "bound": report.pattern_base**2,
        "status": report.status,
        "unions": [
            {
                "vertices": entry.union.graph.vertex_count,
                "edges": sorted(entry.union.graph.edge_list),
                "base": entry.union_base,
                "margin": entry.margin,
                "status": entry.status,
            }
            for entry in report.entries
        ],
    }
    _emit_json(payload, args.out)
    return 0 if report.passes else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kronval",
        description="Stochastic Kronecker graphs: generate, predict, measure, validate, certify.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="sample a realization and write an edge list")
    _add_params(p_gen)
    p_gen.add_argument("--generator", choices=("naive", "stratified", "rmat"), default="stratified")
    p_gen.add_argument("--rmat-edges", type=int, default=None, help="pair draws for the rmat generator")
    p_gen.add_argument("--loops", action=argparse.BooleanOptionalAction, default=True)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=_cmd_generate)

    p_pred = sub.add_parser("predict", help="closed-form predictions as JSON")
    _add_params(p_pred)
    p_pred.add_argument(
        "--what",
        choices=("moments", "degree-counts", "regime", "hamming-profile", "critical-fraction"),
        required=True,
    )
    p_pred.add_argument("--d", type=int, default=1, help="degree for the regime verdict")
    p_pred.add_argument("--d-max", type=int, default=8)
    p_pred.add_argument("--out", default=None)
    p_pred.set_defaults(func=_cmd_predict)

    p_meas = sub.add_parser("measure", help="measure an edge-list file")
    p_meas.add_argument("--input", required=True)
    p_meas.add_argument("--what", choices=("degrees", "subgraph", "hamming"), required=True)
    p_meas.add_argument("--pattern", default=None, help="star:k, cycle:k, path:k, or @file")
    p_meas.add_argument("--out", default=None)
    p_meas.set_defaults(func=_cmd_measure)

    p_val = sub.add_parser("validate", help="run a seeded prediction-vs-simulation experiment")
    _add_params(p_val)
    p_val.add_argument(
        "--kind", choices=("degrees", "subgraph", "hamming", "regime", "thresholds"), required=True
    )
    p_val.add_argument("--seed", type=int, required=True)
    p_val.add_argument("--trials", type=int, default=20)
    p_val.add_argument("--generator", choices=("naive", "stratified", "rmat"), default="stratified")
    p_val.add_argument("--rmat-edges", type=int, default=None)
    p_val.add_argument("--loops", action=argparse.BooleanOptionalAction, default=True)
    p_val.add_argument("--pattern", default=None)
    p_val.add_argument("--d-max", type=int, default=8)
    p_val.add_argument(
        "--sweep", nargs=3, type=float, metavar=("LO", "HI", "STEPS"), default=None,
        help="alpha(=gamma) sweep for kind=thresholds",
    )
    p_val.add_argument("--allow-large", action="store_true")
    p_val.add_argument("--dump-edges", default=None, metavar="PREFIX",
                       help="also write each trial's edge list to PREFIX.<tag>.edges")
    p_val.add_argument("--out-json", default=None)
    p_val.add_argument("--out-csv", default=None)
    p_val.set_defaults(func=_cmd_validate)

    p_cert = sub.add_parser("certify", help="second-moment concentration certificate")
    _add_params(p_cert, n_default=1)
    p_cert.add_argument("--pattern", required=True)
    p_cert.add_argument("--out", default=None)
    p_cert.set_defaults(func=_cmd_certify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "sweep", None) is not None:
        args.sweep = (args.sweep[0], args.sweep[1], int(args.sweep[2]))
    try:
        return args.func(args)
    except KronvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
