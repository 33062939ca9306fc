"""Experiment orchestration: seeded trials, prediction-vs-measurement
comparison, and deterministic report emission.

Reports are reproducible byte for byte from (config, seed): trials use named
substreams, aggregation is order-independent, and no wall-clock state enters
the output.  Every criterion carries its tolerance; every analytic number
carries a tag naming the closed form it came from.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import brentq

from ._version import __version__
from .errors import ConfigError, ParameterError
from .generate import (
    NAIVE_MAX_N,
    RmatParams,
    generate_naive,
    generate_rmat,
    generate_stratified,
)
from .edgelist import write_edgelist
from .measure import concentration_report, count_labeled_copies, edge_distance_histogram
from .model import KroneckerParams
from .patterns import (
    PatternGraph,
    base_value,
    expected_copies_asymptotic,
    expected_copies_exact,
    parse_pattern,
)
from .predict import (
    classify_regime,
    expected_degree_count,
    hamming_profile_prediction,
    hamming_window,
)
from .streams import SeedSpec

KINDS = ("degrees", "subgraph", "hamming", "regime", "thresholds")
GENERATORS = ("naive", "stratified", "rmat")
STRATIFIED_GUARD_N = 22
EXACT_COPIES_GUARD = 10_000_000

# Acceptance-style default tolerances, pinned here rather than per call site.
Z_TOLERANCE = 4.0
DEGREE_REL_TOLERANCE = 0.10
WINDOW_FRACTION_MIN = 0.99
DISTANCE_REL_TOLERANCE = 0.02


@dataclass(frozen=True)
class ExperimentConfig:
    params: KroneckerParams
    kind: str
    seed: int
    trials: int = 20
    generator: str = "stratified"
    rmat_edges: "int | None" = None
    include_loops: bool = True
    pattern: "str | None" = None
    degree_max: int = 8
    sweep: "tuple | None" = None  # (alpha_lo, alpha_hi, steps) for thresholds
    allow_large: bool = False
    dump_edges: "str | None" = None  # path prefix for per-trial edge-list dumps

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.generator not in GENERATORS:
            raise ConfigError(f"generator must be one of {GENERATORS}")
        if self.degree_max < 0:
            raise ConfigError("degree-max must be >= 0")
        if self.generator == "rmat":
            if self.rmat_edges is None or self.rmat_edges < 1:
                raise ConfigError("the rmat generator needs --rmat-edges >= 1")
            try:
                RmatParams(base=self.params, m=self.rmat_edges)
            except ParameterError as exc:
                raise ConfigError(str(exc)) from exc
        if not self.allow_large:
            if self.generator == "naive" and self.params.n > NAIVE_MAX_N:
                raise ConfigError(
                    f"naive generation is guarded at n <= {NAIVE_MAX_N};"
                    " pass allow_large to override"
                )
            if self.generator == "stratified" and self.params.n > STRATIFIED_GUARD_N:
                raise ConfigError(
                    f"stratified generation is guarded at n <= {STRATIFIED_GUARD_N};"
                    " pass allow_large to override"
                )
        if self.kind in ("subgraph", "thresholds"):
            if not self.pattern:
                raise ConfigError(f"kind={self.kind} needs a pattern")
            parse_pattern(self.pattern)
        if self.kind == "hamming":
            if not self.params.alpha_equals_gamma:
                raise ConfigError("the hamming experiment requires alpha = gamma")
            if self.params.alpha + self.params.beta <= 1.0:
                raise ConfigError("the hamming experiment requires alpha + beta > 1")
        if self.kind == "thresholds":
            if self.sweep is None:
                raise ConfigError("kind=thresholds needs a sweep (alpha_lo alpha_hi steps)")
            lo, hi, steps = self.sweep
            if not (0.0 < lo < 1.0 and 0.0 < hi < 1.0 and lo < hi):
                raise ConfigError("sweep endpoints must satisfy 0 < lo < hi < 1")
            if steps < 2:
                raise ConfigError("sweep needs at least 2 steps")

    def echo(self) -> dict:
        data = asdict(self)
        data["params"] = {
            "alpha": self.params.alpha,
            "beta": self.params.beta,
            "gamma": self.params.gamma,
            "n": self.params.n,
        }
        if self.sweep is not None:
            data["sweep"] = list(self.sweep)
        return data


@dataclass(frozen=True)
class AnalyticValue:
    name: str
    value: float
    source: str


@dataclass(frozen=True)
class Criterion:
    name: str
    observed: float
    expected: float
    statistic: str
    value: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class ValidationReport:
    kind: str
    config: dict
    analytic: tuple
    empirical: dict
    criteria: tuple
    table_columns: tuple
    table_rows: tuple
    schema: int = 1
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "version": self.version,
            "kind": self.kind,
            "config": self.config,
            "analytic": [asdict(a) for a in self.analytic],
            "empirical": self.empirical,
            "criteria": [asdict(c) for c in self.criteria],
            "table": {
                "columns": list(self.table_columns),
                "rows": [list(r) for r in self.table_rows],
            },
            "passed": self.passed,
        }


def _generate(config: ExperimentConfig, params: KroneckerParams, seed: SeedSpec, tag: str = ""):
    if config.generator == "naive":
        graph = generate_naive(params, include_loops=config.include_loops, seed=seed)
    elif config.generator == "stratified":
        graph = generate_stratified(params, include_loops=config.include_loops, seed=seed)
    else:
        graph = generate_rmat(RmatParams(base=params, m=config.rmat_edges), seed=seed)
    if config.dump_edges is not None:
        write_edgelist(graph, f"{config.dump_edges}.{tag}.edges")
    return graph


def _z_score(mean: float, predicted: float, sample_sd: float, trials: int) -> float:
    # Sample standard error with a Poisson floor, so degenerate all-equal
    # samples (sd = 0) do not turn a vanishing discrepancy into infinity.
    floor = math.sqrt(max(predicted, 1e-300) / trials)
    se = max(sample_sd / math.sqrt(trials), floor)
    return (mean - predicted) / se


def _run_degrees(config: ExperimentConfig, seed: SeedSpec) -> ValidationReport:
    params = config.params
    d_max = config.degree_max
    counts = np.zeros((config.trials, d_max + 1))
    for t in range(config.trials):
        graph = _generate(config, params, seed.child("trial", t), tag=f"trial{t}")
        degrees = graph.degrees(count_loops=config.include_loops)
        binned = np.bincount(degrees, minlength=d_max + 1)
        counts[t] = binned[: d_max + 1]
    means = counts.mean(axis=0)
    sds = counts.std(axis=0, ddof=1) if config.trials > 1 else np.zeros(d_max + 1)
    predicted = np.array([expected_degree_count(params, d) for d in range(d_max + 1)])
    analytic = tuple(
        AnalyticValue(
            name=f"expected_count_degree_{d}",
            value=float(predicted[d]),
            source="Poisson-mixture degree-count formula",
        )
        for d in range(d_max + 1)
    )
    criteria = []
    rows = []
    for d in range(d_max + 1):
        z = _z_score(float(means[d]), float(predicted[d]), float(sds[d]), config.trials)
        criteria.append(
            Criterion(
                name=f"degree_{d}_count",
                observed=float(means[d]),
                expected=float(predicted[d]),
                statistic="|z|",
                value=abs(z),
                tolerance=Z_TOLERANCE,
                passed=abs(z) <= Z_TOLERANCE,
            )
        )
        rows.append((d, float(means[d]), float(predicted[d]), z))
    empirical = {
        "trials": config.trials,
        "mean_counts": [float(x) for x in means],
        "sd_counts": [float(x) for x in sds],
    }
    return ValidationReport(
        kind="degrees",
        config=config.echo(),
        analytic=analytic,
        empirical=empirical,
        criteria=tuple(criteria),
        table_columns=("d", "empirical_mean_count", "predicted_count", "z_score"),
        table_rows=tuple(rows),
    )


def _run_subgraph(config: ExperimentConfig, seed: SeedSpec) -> ValidationReport:
    params = config.params
    pattern = parse_pattern(config.pattern)
    counts = np.zeros(config.trials)
    for t in range(config.trials):
        graph = _generate(config, params, seed.child("trial", t), tag=f"trial{t}")
        counts[t] = count_labeled_copies(graph, pattern)
    mean = float(counts.mean())
    sd = float(counts.std(ddof=1)) if config.trials > 1 else 0.0
    upper = expected_copies_asymptotic(params, pattern)
    analytic = [
        AnalyticValue("base_value", base_value(params, pattern), "pattern base value (labeling sum)"),
        AnalyticValue("copies_leading_order", upper, "asymptotic copy count (base value)^n"),
    ]
    exact_feasible = params.vertex_count ** pattern.vertex_count <= EXACT_COPIES_GUARD
    criteria = []
    if exact_feasible:
        exact = expected_copies_exact(params, pattern)
        analytic.append(
            AnalyticValue("copies_exact", exact, "exact injective-map expectation")
        )
        z = _z_score(mean, exact, sd, config.trials)
        criteria.append(
            Criterion(
                name="mean_copies_vs_exact",
                observed=mean,
                expected=exact,
                statistic="|z|",
                value=abs(z),
                tolerance=Z_TOLERANCE,
                passed=abs(z) <= Z_TOLERANCE,
            )
        )
    else:
        z = _z_score(mean, upper, sd, config.trials)
        criteria.append(
            Criterion(
                name="mean_copies_below_leading_order",
                observed=mean,
                expected=upper,
                statistic="z",
                value=z,
                tolerance=Z_TOLERANCE,
                passed=z <= Z_TOLERANCE,
            )
        )
    empirical = {
        "trials": config.trials,
        "mean_count": mean,
        "sd_count": sd,
        "counts": [int(c) for c in counts],
    }
    rows = tuple((t, int(counts[t])) for t in range(config.trials))
    return ValidationReport(
        kind="subgraph",
        config=config.echo(),
        analytic=tuple(analytic),
        empirical=empirical,
        criteria=tuple(criteria),
        table_columns=("trial", "labeled_copies"),
        table_rows=rows,
    )


def _run_hamming(config: ExperimentConfig, seed: SeedSpec) -> ValidationReport:
    params = config.params
    n = params.n
    profile_sums = np.zeros(n + 1)
    degree_means = np.zeros(config.trials)
    fractions = np.zeros(config.trials)
    mean_distances = np.zeros(config.trials)
    for t in range(config.trials):
        graph = _generate(config, params, seed.child("trial", t), tag=f"trial{t}")
        report = concentration_report(graph)
        degree_means[t] = report.degree_mean
        fractions[t] = report.in_window_edge_fraction
        mean_distances[t] = report.mean_edge_distance
        hist = edge_distance_histogram(graph, count_loops=True)
        entries = 2.0 * hist.astype(float)
        entries[0] = hist[0]  # a loop is a single one-sided neighbor entry
        profile_sums += entries / params.vertex_count
    profile_mean = profile_sums / config.trials
    predicted_profile = np.array(
        [hamming_profile_prediction(params, k) for k in range(n + 1)]
    )
    expected_degree = (params.alpha + params.beta) ** n
    center = params.beta * n / (params.alpha + params.beta)
    lo, hi = hamming_window(params)

    mean_degree = float(degree_means.mean())
    mean_fraction = float(fractions.mean())
    mean_distance = float(mean_distances.mean())
    degree_err = abs(mean_degree - expected_degree) / expected_degree
    distance_err = abs(mean_distance - center) / center
    criteria = (
        Criterion(
            name="mean_degree_matches_uniform_prediction",
            observed=mean_degree,
            expected=expected_degree,
            statistic="rel_err",
            value=degree_err,
            tolerance=DEGREE_REL_TOLERANCE,
            passed=degree_err <= DEGREE_REL_TOLERANCE,
        ),
        Criterion(
            name="edge_fraction_inside_window",
            observed=mean_fraction,
            expected=1.0,
            statistic="fraction",
            value=mean_fraction,
            tolerance=WINDOW_FRACTION_MIN,
            passed=mean_fraction >= WINDOW_FRACTION_MIN,
        ),
        Criterion(
            name="mean_distance_matches_window_center",
            observed=mean_distance,
            expected=center,
            statistic="rel_err",
            value=distance_err,
            tolerance=DISTANCE_REL_TOLERANCE,
            passed=distance_err <= DISTANCE_REL_TOLERANCE,
        ),
    )
    analytic = (
        AnalyticValue("expected_degree", expected_degree, "uniform expected degree (alpha+beta)^n"),
        AnalyticValue("window_center", center, "binomial neighbor-distance profile"),
        AnalyticValue("window_lo", lo, "neighbor-distance concentration window"),
        AnalyticValue("window_hi", hi, "neighbor-distance concentration window"),
    )
    empirical = {
        "trials": config.trials,
        "mean_degree": mean_degree,
        "in_window_fraction": mean_fraction,
        "mean_edge_distance": mean_distance,
    }
    rows = tuple(
        (k, float(profile_mean[k]), float(predicted_profile[k])) for k in range(n + 1)
    )
    return ValidationReport(
        kind="hamming",
        config=config.echo(),
        analytic=analytic,
        empirical=empirical,
        criteria=criteria,
        table_columns=("k", "empirical_mean", "predicted"),
        table_rows=rows,
    )


def _run_regime(config: ExperimentConfig, seed: SeedSpec) -> ValidationReport:
    params = config.params
    headline = classify_regime(params, 1)
    analytic = [
        AnalyticValue("case_id", float(headline.case_id), "six-case regime classification"),
        AnalyticValue(
            "power_law_possible",
            float(headline.power_law_possible),
            "six-case regime classification",
        ),
    ]
    rows = []
    for d in range(config.degree_max + 1):
        verdict = classify_regime(params, d)
        predicted = expected_degree_count(params, d)
        rows.append(
            (
                d,
                predicted,
                int(verdict.vanishing),
                verdict.theta_base if verdict.theta_base is not None else math.nan,
            )
        )
    empirical = {"verdict": headline.describe()}
    return ValidationReport(
        kind="regime",
        config=config.echo(),
        analytic=tuple(analytic),
        empirical=empirical,
        criteria=(),
        table_columns=("d", "predicted_count", "vanishing", "theta_base"),
        table_rows=tuple(rows),
    )


def _run_thresholds(config: ExperimentConfig, seed: SeedSpec) -> ValidationReport:
    pattern = parse_pattern(config.pattern)
    lo, hi, steps = config.sweep
    alphas = np.linspace(lo, hi, int(steps))
    rows = []
    presence = []
    bases = []
    for i, a in enumerate(alphas):
        point = KroneckerParams(alpha=float(a), beta=config.params.beta, gamma=float(a), n=config.params.n)
        b = base_value(point, pattern)
        counts = np.zeros(config.trials)
        for t in range(config.trials):
            graph = _generate(config, point, seed.child("sweep", i, "trial", t), tag=f"sweep{i}.trial{t}")
            counts[t] = count_labeled_copies(graph, pattern)
        frac = float((counts > 0).mean())
        rows.append((float(a), b, float(counts.mean()), frac))
        presence.append(frac)
        bases.append(b)

    def base_at(a: float) -> float:
        point = KroneckerParams(alpha=a, beta=config.params.beta, gamma=a, n=config.params.n)
        return base_value(point, pattern)

    analytic = [
        AnalyticValue("base_value_lo", bases[0], "pattern base value (labeling sum)"),
        AnalyticValue("base_value_hi", bases[-1], "pattern base value (labeling sum)"),
    ]
    if (bases[0] - 1.0) * (bases[-1] - 1.0) < 0:
        crossing = brentq(lambda a: base_at(a) - 1.0, float(alphas[0]), float(alphas[-1]))
        analytic.append(
            AnalyticValue("threshold_alpha", float(crossing), "appearance threshold: base value = 1")
        )
    criteria = []
    below = [f for f, b in zip(presence, bases) if b < 0.95]
    above = [f for f, b in zip(presence, bases) if b > 1.05]
    if below and above:
        criteria.append(
            Criterion(
                name="presence_increases_across_threshold",
                observed=max(above),
                expected=min(below),
                statistic="max_above - min_below",
                value=max(above) - min(below),
                tolerance=0.0,
                passed=max(above) >= min(below),
            )
        )
    empirical = {"presence_fraction": presence}
    return ValidationReport(
        kind="thresholds",
        config=config.echo(),
        analytic=tuple(analytic),
        empirical=empirical,
        criteria=tuple(criteria),
        table_columns=("alpha", "base_value", "mean_count", "presence_fraction"),
        table_rows=tuple(rows),
    )


_RUNNERS = {
    "degrees": _run_degrees,
    "subgraph": _run_subgraph,
    "hamming": _run_hamming,
    "regime": _run_regime,
    "thresholds": _run_thresholds,
}


def run_experiment(config: ExperimentConfig) -> ValidationReport:
    """Validate the configuration, run its trials, and assemble the report."""
    config.validate()
    seed = SeedSpec(config.seed)
    return _RUNNERS[config.kind](config, seed)


def _round_floats(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return _round_floats(float(obj))
    return obj


def report_json(report: ValidationReport) -> str:
    """Canonical JSON text: sorted keys, 12 significant digits, no clock."""
    return json.dumps(_round_floats(report.to_dict()), sort_keys=True, indent=2) + "\n"


def emit_report(report: ValidationReport, json_path=None, csv_path=None) -> None:
    """Write the JSON report and/or the flat CSV table."""
    if json_path is not None:
        with open(json_path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(report_json(report))
    if csv_path is not None:
        with open(csv_path, "w", encoding="ascii", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(report.table_columns)
            for row in report.table_rows:
                writer.writerow(
                    [f"{v:.12g}" if isinstance(v, float) else v for v in row]
                )
