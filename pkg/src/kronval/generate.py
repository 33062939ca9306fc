"""Graph realization strategies: naive pairwise Bernoulli, stratified
class-based sampling, and the recursive digit-sampling (R-MAT) procedure.

All three are deterministic functions of a :class:`SeedSpec`; work is split
into named substreams (per row block, per pair class) so that the output
does not depend on how many workers process them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CapacityError, ParameterError
from .model import PROB_TOL, KroneckerParams, SampledGraph, weight_array
from .streams import SeedSpec

NAIVE_MAX_N = 14
STRATIFIED_MAX_N = 30
DEFAULT_EDGE_BUDGET = 50_000_000
_NAIVE_ROW_BLOCK = 128
_RMAT_CHUNK = 1 << 20

# Binomial coefficients C[i, j] for i, j <= STRATIFIED_MAX_N; exact in int64.
_COMB = np.array(
    [[math.comb(i, j) for j in range(STRATIFIED_MAX_N + 1)] for i in range(STRATIFIED_MAX_N + 1)],
    dtype=np.int64,
)


@dataclass(frozen=True)
class RmatParams:
    """Digit-sampling parameters: the initiator entries must satisfy
    alpha + 2*beta + gamma = 1, and m is the number of generated pairs."""

    base: KroneckerParams
    m: int

    def __post_init__(self) -> None:
        total = self.base.alpha + 2.0 * self.base.beta + self.base.gamma
        if abs(total - 1.0) > PROB_TOL:
            raise ParameterError(
                f"alpha + 2*beta + gamma must equal 1, got {total!r}"
            )
        if self.m < 1:
            raise ParameterError(f"m must be >= 1, got {self.m}")


def pair_classes(n: int) -> Iterator[tuple[int, int, int, int]]:
    """Yield (a, b, c, size): unordered-pair counts per digit class.

    a both-one digits, b >= 1 mixed digits, c both-zero digits; the sizes
    over all classes add up to 2^(n-1) (2^n - 1).
    """
    for a in range(n + 1):
        for b in range(1, n - a + 1):
            c = n - a - b
            size = math.comb(n, a) * math.comb(n - a, b) * (1 << (b - 1))
            yield a, b, c, size


def expected_edge_count(params: KroneckerParams, include_loops: bool = True) -> float:
    """Expected number of distinct edges (plus loops when enabled)."""
    la, lb, lg = params.log_entries()
    total = 0.0
    for a, b, c, size in pair_classes(params.n):
        total += size * math.exp(a * la + b * lb + c * lg)
    if include_loops:
        n = params.n
        total += sum(
            math.comb(n, w) * math.exp(w * la + (n - w) * lg) for w in range(n + 1)
        )
    return total


def _loop_probabilities(params: KroneckerParams) -> np.ndarray:
    """Per-vertex self-loop probability alpha^w gamma^(n-w)."""
    la, _, lg = params.log_entries()
    w = weight_array(np.arange(params.vertex_count, dtype=np.uint64))
    return np.exp(w * la + (params.n - w) * lg)


def _draw_loops(params: KroneckerParams, seed: SeedSpec) -> np.ndarray:
    rng = seed.child("loops").generator()
    u = rng.random(params.vertex_count)
    return np.flatnonzero(u < _loop_probabilities(params))


def _build_graph(params, edge_u, edge_v, loop_vertices, include_loops):
    lo = np.minimum(edge_u, edge_v)
    hi = np.maximum(edge_u, edge_v)
    edges = frozenset(zip(lo.tolist(), hi.tolist()))
    loops = frozenset(int(v) for v in loop_vertices) if include_loops else frozenset()
    return SampledGraph(
        params=params, edges=edges, loops=loops, include_loops=include_loops
    )


def generate_naive(
    params: KroneckerParams, include_loops: bool = True, seed: SeedSpec = SeedSpec(0)
) -> SampledGraph:
    """Independent Bernoulli draw for each of the 2^(2n-1) vertex pairs.

    The reference generator: distributionally the model itself.  Capped at
    n = 14; use generate_stratified beyond that.
    """
    n = params.n
    if n > NAIVE_MAX_N:
        raise CapacityError(
            f"naive generation enumerates all pairs and caps at n = {NAIVE_MAX_N};"
            f" use generate_stratified for n = {n}"
        )
    size = params.vertex_count
    la, lb, lg = params.log_entries()
    us = []
    vs = []
    for block_index, block_start in enumerate(range(0, size, _NAIVE_ROW_BLOCK)):
        rows = np.arange(block_start, min(block_start + _NAIVE_ROW_BLOCK, size))
        rows = rows[rows < size - 1]
        if not len(rows):
            continue
        lengths = size - 1 - rows
        u_arr = np.repeat(rows, lengths).astype(np.uint64)
        v_arr = np.concatenate([np.arange(r + 1, size, dtype=np.uint64) for r in rows])
        a = np.bitwise_count(u_arr & v_arr).astype(np.int64)
        b = np.bitwise_count(u_arr ^ v_arr).astype(np.int64)
        prob = np.exp(a * la + b * lb + (n - a - b) * lg)
        rng = seed.child("block", block_index).generator()
        keep = rng.random(len(prob)) < prob
        us.append(u_arr[keep].astype(np.int64))
        vs.append(v_arr[keep].astype(np.int64))
    edge_u = np.concatenate(us) if us else np.empty(0, dtype=np.int64)
    edge_v = np.concatenate(vs) if vs else np.empty(0, dtype=np.int64)
    loop_vertices = _draw_loops(params, seed) if include_loops else ()
    return _build_graph(params, edge_u, edge_v, loop_vertices, include_loops)


def _unrank_combinations(n_slots: int, k: int, ranks: np.ndarray) -> np.ndarray:
    """Bitmasks of the rank-th k-subsets of {0..n_slots-1}, lexicographic."""
    r = ranks.astype(np.int64).copy()
    remaining = np.full(len(ranks), k, dtype=np.int64)
    out = np.zeros(len(ranks), dtype=np.int64)
    for s in range(n_slots):
        count_with_s = np.where(
            remaining > 0,
            _COMB[n_slots - s - 1, np.maximum(remaining - 1, 0)],
            0,
        )
        take = (remaining > 0) & (r < count_with_s)
        out |= take.astype(np.int64) << s
        r = np.where(take, r, r - count_with_s)
        remaining = remaining - take
    return out


def _expand_into_zeros(base: np.ndarray, rel: np.ndarray, n: int) -> np.ndarray:
    """Map bit j of rel onto the j-th zero bit of base (per element)."""
    out = np.zeros_like(base)
    next_slot = np.zeros_like(base)
    for p in range(n):
        is_zero = ((base >> p) & 1) == 0
        take = is_zero & (((rel >> next_slot) & 1) == 1)
        out |= take.astype(np.int64) << p
        next_slot += is_zero
    return out


def _scatter_onto_bits(target: np.ndarray, values: np.ndarray, n: int) -> np.ndarray:
    """Place bit j of values onto the j-th set bit of target (per element)."""
    out = np.zeros_like(target)
    next_slot = np.zeros_like(target)
    for p in range(n):
        has = ((target >> p) & 1) == 1
        take = has & (((values >> next_slot) & 1) == 1)
        out |= take.astype(np.int64) << p
        next_slot += has
    return out


def _unrank_combination_int(n_slots: int, k: int, rank: int) -> int:
    mask = 0
    remaining = k
    r = rank
    for s in range(n_slots):
        if remaining == 0:
            break
        count_with_s = math.comb(n_slots - s - 1, remaining - 1)
        if r < count_with_s:
            mask |= 1 << s
            remaining -= 1
        else:
            r -= count_with_s
    return mask


def _unrank_pair_int(n: int, a: int, b: int, comb_mixed: int, rank: int) -> tuple[int, int]:
    """Scalar twin of the vectorized class unranking; same bijection."""
    assign_space = 1 << (b - 1)
    r_assign = rank % assign_space
    rest = rank // assign_space
    r_mixed = rest % comb_mixed
    r_ones = rest // comb_mixed
    ones = _unrank_combination_int(n, a, r_ones)
    rel = _unrank_combination_int(n - a, b, r_mixed)
    mixed = 0
    slot = 0
    for p in range(n):
        if not (ones >> p) & 1:
            if (rel >> slot) & 1:
                mixed |= 1 << p
            slot += 1
    lowest = mixed & -mixed
    scattered = 0
    slot = 0
    rest_bits = mixed ^ lowest
    for p in range(n):
        if (rest_bits >> p) & 1:
            if (r_assign >> slot) & 1:
                scattered |= 1 << p
            slot += 1
    u = ones | lowest | scattered
    v = ones | (mixed ^ lowest ^ scattered)
    return u, v


_SCALAR_UNRANK_LIMIT = 24  # below this count the scalar path is cheaper


def _sample_distinct(rng: np.random.Generator, size: int, k: int) -> np.ndarray:
    """k distinct uniform ranks from [0, size)."""
    if k == 0:
        return np.empty(0, dtype=np.int64)
    if 4 * k >= size and size <= (1 << 24):
        return rng.permutation(size)[:k].astype(np.int64)
    if 2 * k > size:
        # would need a materialized permutation beyond the memory cap
        raise CapacityError(
            f"cannot sample {k} distinct ranks from a class of size {size}"
        )
    # Keep the first k distinct values in draw order; unlike trimming a
    # sorted pool, this leaves the subset exactly uniform.
    draws = rng.integers(0, size, size=k + 16, dtype=np.int64)
    while True:
        unique, first_seen = np.unique(draws, return_index=True)
        if len(unique) >= k:
            order = np.sort(first_seen)[:k]
            return draws[order]
        more = rng.integers(0, size, size=k - len(unique) + 16, dtype=np.int64)
        draws = np.concatenate([draws, more])


def generate_stratified(
    params: KroneckerParams,
    include_loops: bool = True,
    seed: SeedSpec = SeedSpec(0),
    max_expected_edges: float = DEFAULT_EDGE_BUDGET,
) -> SampledGraph:
    """Class-based sampler with the same output distribution as generate_naive.

    Pairs are grouped by digit class (a, b, c); each class draws a binomial
    edge count and unranks that many distinct pair indices, so the joint law
    over all pairs is exactly independent Bernoulli.  Scales to n = 30 as
    long as the expected edge count fits the budget.
    """
    n = params.n
    if n > STRATIFIED_MAX_N:
        raise CapacityError(f"stratified generation caps at n = {STRATIFIED_MAX_N}")
    expected = expected_edge_count(params, include_loops)
    if expected > max_expected_edges:
        raise CapacityError(
            f"expected edge count {expected:.3g} exceeds the budget"
            f" {max_expected_edges:.3g}"
        )
    la, lb, lg = params.log_entries()
    us = []
    vs = []
    for a, b, c, size in pair_classes(n):
        rng = seed.child("class", a, b).generator()
        prob = math.exp(a * la + b * lb + c * lg)
        count = int(rng.binomial(size, prob))
        if count == 0:
            continue
        ranks = _sample_distinct(rng, size, count)
        comb_mixed = math.comb(n - a, b)
        if count <= _SCALAR_UNRANK_LIMIT:
            pairs = [_unrank_pair_int(n, a, b, comb_mixed, int(r)) for r in ranks]
            u_arr = np.array([pair[0] for pair in pairs], dtype=np.int64)
            v_arr = np.array([pair[1] for pair in pairs], dtype=np.int64)
        else:
            assign_space = 1 << (b - 1)
            r_assign = ranks % assign_space
            rest = ranks // assign_space
            r_mixed = rest % comb_mixed
            r_ones = rest // comb_mixed
            ones_mask = _unrank_combinations(n, a, r_ones)
            rel_mixed = _unrank_combinations(n - a, b, r_mixed)
            mixed_mask = _expand_into_zeros(ones_mask, rel_mixed, n)
            lowest = mixed_mask & -mixed_mask
            scattered = _scatter_onto_bits(mixed_mask ^ lowest, r_assign, n)
            u_arr = ones_mask | lowest | scattered
            v_arr = ones_mask | (mixed_mask ^ lowest ^ scattered)
        us.append(u_arr)
        vs.append(v_arr)
    edge_u = np.concatenate(us) if us else np.empty(0, dtype=np.int64)
    edge_v = np.concatenate(vs) if vs else np.empty(0, dtype=np.int64)

    loop_vertices = []
    if include_loops:
        for w in range(n + 1):
            rng = seed.child("loop_class", w).generator()
            class_size = math.comb(n, w)
            prob = math.exp(w * la + (n - w) * lg)
            count = int(rng.binomial(class_size, prob))
            if count == 0:
                continue
            ranks = _sample_distinct(rng, class_size, count)
            if count <= _SCALAR_UNRANK_LIMIT:
                loop_vertices.append(
                    np.array(
                        [_unrank_combination_int(n, w, int(r)) for r in ranks],
                        dtype=np.int64,
                    )
                )
            else:
                loop_vertices.append(_unrank_combinations(n, w, ranks))
    loops = np.concatenate(loop_vertices) if loop_vertices else np.empty(0, dtype=np.int64)
    return _build_graph(params, edge_u, edge_v, loops, include_loops)


def rmat_pairs(rmat: RmatParams, seed: SeedSpec = SeedSpec(0)) -> tuple[np.ndarray, np.ndarray]:
    """The m raw ordered vertex pairs, drawn digit by digit.

    Per digit, (u_k, v_k) is (1,1) with probability alpha, (0,0) with
    probability gamma, and each mixed outcome with probability beta,
    independently across digits and pairs.  Duplicates are not merged here.
    """
    params = rmat.base
    n = params.n
    if n > 62:
        raise CapacityError(f"digit sampling packs vertices into int64, so n <= 62; got {n}")
    alpha, beta = params.alpha, params.beta
    powers = (np.int64(1) << np.arange(n, dtype=np.int64)).astype(np.int64)
    us = []
    vs = []
    for chunk_index, start in enumerate(range(0, rmat.m, _RMAT_CHUNK)):
        count = min(_RMAT_CHUNK, rmat.m - start)
        rng = seed.child("pairs", chunk_index).generator()
        x = rng.random((count, n))
        u_bits = x < alpha + beta
        v_bits = (x < alpha) | ((x >= alpha + beta) & (x < alpha + 2.0 * beta))
        us.append(u_bits.astype(np.int64) @ powers)
        vs.append(v_bits.astype(np.int64) @ powers)
    return np.concatenate(us), np.concatenate(vs)


def generate_rmat(rmat: RmatParams, seed: SeedSpec = SeedSpec(0)) -> SampledGraph:
    """Merge the m digit-sampled pairs into a simple unordered edge set.

    Multi-edges collapse, pairs are symmetrized, and u = v draws are kept
    in the loops field rather than being discarded.
    """
    u, v = rmat_pairs(rmat, seed)
    is_loop = u == v
    return _build_graph(
        rmat.base, u[~is_loop], v[~is_loop], np.unique(u[is_loop]), include_loops=True
    )


def degree_histogram(graph: SampledGraph, count_loops: bool = True) -> dict:
    """Map degree -> number of vertices; counts sum to 2^n.

    With count_loops a self-loop adds 1 to its vertex's degree, matching the
    convention under which the closed-form degree moments are exact.
    """
    degrees = graph.degrees(count_loops=count_loops)
    counts = np.bincount(degrees)
    return {int(d): int(c) for d, c in enumerate(counts) if c > 0}
