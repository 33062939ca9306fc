import math

import numpy as np
import pytest

from kronval import (
    CapacityError,
    KroneckerParams,
    ParameterError,
    RmatParams,
    SeedSpec,
    degree_histogram,
    edge_probability,
    expected_edge_count,
    generate_naive,
    generate_rmat,
    generate_stratified,
    pair_class,
    pair_classes,
    rmat_pairs,
)


def test_pair_class_sizes_cover_all_pairs():
    for n in range(1, 9):
        total = sum(size for *_, size in pair_classes(n))
        assert total == 2 ** (n - 1) * (2**n - 1)


def test_naive_single_pair_frequency():
    # n=1 without loops leaves a single possible edge {0, 1}, present w.p. beta
    p = KroneckerParams(alpha=0.6, beta=0.4, gamma=0.2, n=1)
    hits = sum(
        bool(generate_naive(p, include_loops=False, seed=SeedSpec(1).child("t", t)).edges)
        for t in range(3000)
    )
    sigma = math.sqrt(3000 * 0.4 * 0.6)
    assert abs(hits - 3000 * 0.4) <= 3 * sigma


def test_stratified_single_pair_frequency():
    p = KroneckerParams(alpha=0.6, beta=0.4, gamma=0.2, n=1)
    hits = sum(
        bool(generate_stratified(p, include_loops=False, seed=SeedSpec(2).child("t", t)).edges)
        for t in range(3000)
    )
    sigma = math.sqrt(3000 * 0.4 * 0.6)
    assert abs(hits - 3000 * 0.4) <= 3 * sigma


def test_naive_uniform_entries_reduce_to_binomial_graph():
    # alpha = beta = gamma = q gives every pair the same probability q^n,
    # i.e. the binomial random graph on 2^n vertices
    q = 0.55
    p = KroneckerParams(alpha=q, beta=q, gamma=q, n=5)
    pair_count = 2**4 * (2**5 - 1)
    trials = 400
    total = sum(
        len(generate_naive(p, include_loops=False, seed=SeedSpec(44).child("t", t)).edges)
        for t in range(trials)
    )
    prob = q**5
    draws = trials * pair_count
    sigma = math.sqrt(draws * prob * (1 - prob))
    assert abs(total - draws * prob) <= 3 * sigma


def test_naive_per_class_inclusion_frequencies():
    # pooled per pair class, 200 seeded trials, 3-sigma binomial bands
    p = KroneckerParams(alpha=0.55, beta=0.4, gamma=0.3, n=8)
    trials = 200
    class_hits = {}
    for t in range(trials):
        g = generate_naive(p, include_loops=False, seed=SeedSpec(5).child("t", t))
        for u, v in g.edges:
            key = tuple(pair_class(u, v, 8))
            class_hits[key] = class_hits.get(key, 0) + 1
    for a, b, c, size in pair_classes(8):
        prob = edge_probability(p, (1 << a) - 1, ((1 << a) - 1) ^ ((1 << (a + b)) - (1 << a)))
        # probability from any representative pair of the class
        draws = trials * size
        expected = draws * prob
        sigma = math.sqrt(draws * prob * (1 - prob))
        observed = class_hits.get((a, b, c), 0)
        assert abs(observed - expected) <= 3 * sigma + 1e-9, (a, b, c)


def test_generators_deterministic_and_loop_toggle_stable():
    p = KroneckerParams(alpha=0.6, beta=0.4, gamma=0.3, n=7)
    seed = SeedSpec(31)
    for gen in (generate_naive, generate_stratified):
        g1 = gen(p, include_loops=True, seed=seed)
        g2 = gen(p, include_loops=True, seed=seed)
        assert g1 == g2
        assert all(0 <= u < v < 128 for u, v in g1.edges)
        assert all(0 <= v < 128 for v in g1.loops)
        g3 = gen(p, include_loops=False, seed=seed)
        # loops draw from their own substream, so edges are unaffected
        assert g3.edges == g1.edges
        assert g3.loops == frozenset()
        assert gen(p, include_loops=True, seed=SeedSpec(32)) != g1


def test_stratified_matches_naive_mean_edge_count():
    p = KroneckerParams(alpha=0.6, beta=0.4, gamma=0.3, n=6)
    trials = 300
    naive_counts = np.array(
        [len(generate_naive(p, False, SeedSpec(8).child("t", t)).edges) for t in range(trials)]
    )
    strat_counts = np.array(
        [len(generate_stratified(p, False, SeedSpec(9).child("t", t)).edges) for t in range(trials)]
    )
    expected = expected_edge_count(p, include_loops=False)
    for counts in (naive_counts, strat_counts):
        se = counts.std(ddof=1) / math.sqrt(trials)
        assert abs(counts.mean() - expected) <= 4 * se
    pooled_se = math.sqrt(
        naive_counts.var(ddof=1) / trials + strat_counts.var(ddof=1) / trials
    )
    assert abs(naive_counts.mean() - strat_counts.mean()) <= 4 * pooled_se


def test_loop_frequencies():
    p = KroneckerParams(alpha=0.5, beta=0.4, gamma=0.4, n=4)
    trials = 2000
    loop_hits = np.zeros(16)
    for t in range(trials):
        g = generate_stratified(p, include_loops=True, seed=SeedSpec(3).child("t", t))
        for v in g.loops:
            loop_hits[v] += 1
    for v in range(16):
        prob = edge_probability(p, v, v)
        sigma = math.sqrt(trials * prob * (1 - prob))
        assert abs(loop_hits[v] - trials * prob) <= 4 * sigma


class TestRmat:
    def test_constraint_checked(self):
        with pytest.raises(ParameterError):
            RmatParams(base=KroneckerParams(0.5, 0.3, 0.2, 4), m=10)
        RmatParams(base=KroneckerParams(0.5, 0.2, 0.1, 4), m=10)

    def test_single_digit_outcomes(self):
        # uniform initiator, one digit: edge {0,1} w.p. 1/2, each loop w.p. 1/4
        r = RmatParams(base=KroneckerParams(0.25, 0.25, 0.25, 1), m=1)
        edge = loop0 = loop1 = 0
        trials = 4000
        for t in range(trials):
            g = generate_rmat(r, seed=SeedSpec(6).child("t", t))
            if g.edges:
                edge += 1
            if 0 in g.loops:
                loop0 += 1
            if 1 in g.loops:
                loop1 += 1
        for hits, prob in ((edge, 0.5), (loop0, 0.25), (loop1, 0.25)):
            sigma = math.sqrt(trials * prob * (1 - prob))
            assert abs(hits - trials * prob) <= 3.5 * sigma

    def test_digit_outcome_frequencies(self):
        r = RmatParams(base=KroneckerParams(0.45, 0.2, 0.15, 5), m=20_000)
        u, v = rmat_pairs(r, seed=SeedSpec(11))
        draws = r.m * 5
        counts = {"one_one": 0, "u_one": 0, "v_one": 0, "zero_zero": 0}
        for k in range(5):
            ub = (u >> k) & 1
            vb = (v >> k) & 1
            counts["one_one"] += int(((ub == 1) & (vb == 1)).sum())
            counts["u_one"] += int(((ub == 1) & (vb == 0)).sum())
            counts["v_one"] += int(((ub == 0) & (vb == 1)).sum())
            counts["zero_zero"] += int(((ub == 0) & (vb == 0)).sum())
        expected = {"one_one": 0.45, "u_one": 0.2, "v_one": 0.2, "zero_zero": 0.15}
        for key, prob in expected.items():
            sigma = math.sqrt(draws * prob * (1 - prob))
            assert abs(counts[key] - draws * prob) <= 3 * sigma, key

    def test_digit_positions_independent(self):
        # outcomes at different digit positions are uncorrelated
        r = RmatParams(base=KroneckerParams(0.45, 0.2, 0.15, 6), m=20_000)
        u, v = rmat_pairs(r, seed=SeedSpec(12))
        codes = np.stack([2 * ((u >> k) & 1) + ((v >> k) & 1) for k in range(6)])
        bound = 4 / math.sqrt(r.m)
        corr = np.corrcoef(codes.astype(float))
        off_diag = corr[~np.eye(6, dtype=bool)]
        assert np.abs(off_diag).max() < bound

    def test_collisions_at_linear_edge_count(self):
        # m = Theta(2^n) draws collide, so the merged simple graph is smaller
        n = 12
        r = RmatParams(base=KroneckerParams(0.45, 0.2, 0.15, n), m=4 * (1 << n))
        u, v = rmat_pairs(r, seed=SeedSpec(13))
        ordered = np.stack([np.minimum(u, v), np.maximum(u, v)], axis=1)
        distinct = len(np.unique(ordered, axis=0))
        assert distinct < r.m  # duplicates exist in the multiset
        g = generate_rmat(r, seed=SeedSpec(13))
        assert len(g.edges) + len(g.loops) == distinct
        assert len(g.edges) < r.m

    def test_deterministic(self):
        r = RmatParams(base=KroneckerParams(0.45, 0.2, 0.15, 8), m=5000)
        assert generate_rmat(r, SeedSpec(21)) == generate_rmat(r, SeedSpec(21))


class TestDegreeHistogram:
    def test_empty_graph(self):
        p = KroneckerParams(0.5, 0.4, 0.3, 5)
        g = generate_naive(p, seed=SeedSpec(1)).__class__(
            params=p, edges=frozenset(), loops=frozenset(), include_loops=False
        )
        assert degree_histogram(g) == {0: 32}

    def test_single_edge(self):
        from kronval import SampledGraph

        p = KroneckerParams(0.5, 0.4, 0.3, 4)
        g = SampledGraph.from_pairs(p, [(0, 1)])
        assert degree_histogram(g) == {0: 14, 1: 2}

    def test_handshake_identity(self):
        p = KroneckerParams(0.6, 0.4, 0.3, 8)
        g = generate_stratified(p, include_loops=True, seed=SeedSpec(77))
        hist = degree_histogram(g, count_loops=True)
        assert sum(hist.values()) == 256
        assert sum(d * c for d, c in hist.items()) == 2 * len(g.edges) + len(g.loops)
        no_loops = degree_histogram(g, count_loops=False)
        assert sum(d * c for d, c in no_loops.items()) == 2 * len(g.edges)


class TestCapacity:
    def test_naive_cap_names_alternative(self):
        p = KroneckerParams(0.5, 0.4, 0.3, 15)
        with pytest.raises(CapacityError, match="stratified"):
            generate_naive(p, seed=SeedSpec(1))

    def test_stratified_budget(self):
        p = KroneckerParams(0.9, 0.8, 0.9, 24)
        with pytest.raises(CapacityError, match="budget"):
            generate_stratified(p, seed=SeedSpec(1), max_expected_edges=10_000)
