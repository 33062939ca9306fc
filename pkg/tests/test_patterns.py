import itertools

import networkx as nx
import numpy as np
import pytest

from kronval import (
    CapacityError,
    KroneckerParams,
    ParameterError,
    PatternGraph,
    base_value,
    base_value_from_edge_labelings,
    cycle,
    cycle_base_value,
    edge_labeling_from_vertex_labeling,
    enumerate_pair_unions,
    expected_copies_asymptotic,
    expected_copies_exact,
    identify_vertices,
    overlap_cycle_base_value,
    overlap_cycles,
    parse_pattern,
    path,
    second_moment_certificate,
    star,
    star_base_value,
    tree_base_value,
    valid_edge_labelings,
)
from conftest import PARAM_GRID, SYMMETRIC_GRID, brute_base_value


def nonisomorphic_trees(max_vertices):
    for v in range(2, max_vertices + 1):
        for tree in nx.nonisomorphic_trees(v):
            yield PatternGraph.from_edges(v, tree.edges())


class TestPatternGraph:
    def test_rejects_loops_and_bad_indices(self):
        with pytest.raises(ParameterError):
            PatternGraph.from_edges(3, [(1, 1)])
        with pytest.raises(ParameterError):
            PatternGraph.from_edges(3, [(0, 3)])

    def test_builders(self):
        assert star(3).edges == frozenset({(0, 1), (0, 2), (0, 3)})
        assert cycle(3).edges == frozenset({(0, 1), (1, 2), (0, 2)})
        assert path(2).edges == frozenset({(0, 1), (1, 2)})
        assert path(2).vertex_count == 3

    def test_parse_named_and_numeric(self):
        assert parse_pattern("star:4") == star(4)
        assert parse_pattern("cycle:5") == cycle(5)
        assert parse_pattern("path:3") == path(3)
        numeric = parse_pattern("3\n0 1\n1 2\n")
        assert numeric == path(2)
        with pytest.raises(ParameterError):
            parse_pattern("blob:3")
        with pytest.raises(ParameterError):
            parse_pattern("3\n0 1 2\n")

    def test_connectivity(self):
        assert cycle(4).is_connected()
        assert not PatternGraph.from_edges(4, [(0, 1), (2, 3)]).is_connected()
        assert not PatternGraph.from_edges(3, [(0, 1)]).is_connected()  # isolated 2


class TestBaseValue:
    def test_single_edge(self):
        for alpha, beta, gamma in PARAM_GRID:
            p = KroneckerParams(alpha, beta, gamma, 1)
            assert base_value(p, star(1)) == pytest.approx(alpha + 2 * beta + gamma, rel=1e-12)

    def test_triangle_symmetric_closed_form(self):
        p = KroneckerParams(0.4, 0.3, 0.4, 1)
        assert base_value(p, cycle(3)) == pytest.approx(0.7**3 + 0.1**3, rel=1e-12)
        assert base_value(p, cycle(3)) == pytest.approx(0.344, abs=1e-12)

    def test_three_leaf_star_value(self):
        p = KroneckerParams(0.5, 0.3, 0.2, 1)
        assert base_value(p, star(3)) == pytest.approx(0.8**3 + 0.5**3, rel=1e-12)
        assert base_value(p, star(3)) == pytest.approx(0.637, abs=1e-12)

    def test_matches_plain_loop_oracle(self):
        rng = np.random.default_rng(3)
        for alpha, beta, gamma in PARAM_GRID[:5]:
            p = KroneckerParams(alpha, beta, gamma, 1)
            for _ in range(4):
                v = int(rng.integers(2, 7))
                possible = list(itertools.combinations(range(v), 2))
                take = rng.random(len(possible)) < 0.5
                edges = [e for e, keep in zip(possible, take) if keep]
                g = PatternGraph.from_edges(v, edges)
                assert base_value(p, g) == pytest.approx(
                    brute_base_value(p, v, edges), rel=1e-12
                )

    def test_disjoint_union_factorizes(self):
        p = KroneckerParams(0.6, 0.4, 0.3, 1)
        two_edges = PatternGraph.from_edges(4, [(0, 1), (2, 3)])
        assert base_value(p, two_edges) == pytest.approx(
            base_value(p, star(1)) ** 2, rel=1e-12
        )

    def test_isomorphism_invariance(self):
        p = KroneckerParams(0.55, 0.35, 0.25, 1)
        g = PatternGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        relabeled = g.relabel((2, 0, 3, 1))
        assert base_value(p, g) == pytest.approx(base_value(p, relabeled), rel=1e-12)

    def test_entry_swap_symmetry(self):
        for alpha, beta, gamma in PARAM_GRID[:5]:
            p = KroneckerParams(alpha, beta, gamma, 1)
            q = KroneckerParams(gamma, beta, alpha, 1)
            for g in (star(3), cycle(4), path(3)):
                assert base_value(p, g) == pytest.approx(base_value(q, g), rel=1e-12)

    def test_capacity(self):
        big = PatternGraph.from_edges(11, [(i, i + 1) for i in range(10)])
        with pytest.raises(CapacityError):
            base_value(KroneckerParams(0.5, 0.4, 0.3, 1), big)


class TestExpectedCopies:
    def test_asymptotic_uniform_case(self):
        q = 0.3
        p = KroneckerParams(q, q, q, 5)
        assert expected_copies_asymptotic(p, star(1)) == pytest.approx(
            (4 * q) ** 5, rel=1e-12
        )

    def test_asymptotic_power(self):
        p = KroneckerParams(0.4, 0.3, 0.4, 3)
        assert expected_copies_asymptotic(p, cycle(3)) == pytest.approx(
            (0.7**3 + 0.1**3) ** 3, rel=1e-12
        )
        p1 = KroneckerParams(0.4, 0.3, 0.4, 1)
        assert expected_copies_asymptotic(p1, cycle(3)) == pytest.approx(
            base_value(p1, cycle(3)), rel=1e-12
        )

    def test_exact_single_edge_n1(self):
        p = KroneckerParams(0.6, 0.4, 0.2, 1)
        assert expected_copies_exact(p, star(1)) == pytest.approx(2 * 0.4, rel=1e-12)

    def test_exact_below_asymptotic(self):
        for n in (2, 3, 4):
            p = KroneckerParams(0.6, 0.4, 0.3, n)
            for g in (star(1), path(2), cycle(3)):
                assert expected_copies_exact(p, g) < expected_copies_asymptotic(p, g)

    def test_ratio_increases_with_n(self):
        ratios = []
        for n in range(2, 7):
            p = KroneckerParams(0.6, 0.4, 0.3, n)
            ratios.append(
                expected_copies_exact(p, path(2)) / expected_copies_asymptotic(p, path(2))
            )
        assert all(a < b for a, b in zip(ratios, ratios[1:]))
        assert ratios[-1] < 1

    def test_exact_capacity(self):
        p = KroneckerParams(0.6, 0.4, 0.3, 10)
        with pytest.raises(CapacityError):
            expected_copies_exact(p, star(3))  # (2^10)^4 maps is over the cap


class TestClosedForms:
    def test_star_k1_is_edge(self):
        for alpha, beta, gamma in PARAM_GRID[:5]:
            p = KroneckerParams(alpha, beta, gamma, 1)
            assert star_base_value(p, 1) == pytest.approx(alpha + 2 * beta + gamma, rel=1e-12)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_star_matches_enumeration(self, k):
        for alpha, beta, gamma in PARAM_GRID[:6]:
            p = KroneckerParams(alpha, beta, gamma, 1)
            assert star_base_value(p, k) == pytest.approx(base_value(p, star(k)), abs=1e-12)

    def test_symmetric_star_equals_tree_form(self):
        for alpha, beta in SYMMETRIC_GRID:
            p = KroneckerParams(alpha, beta, alpha, 1)
            for k in (1, 2, 4, 7):
                assert star_base_value(p, k) == pytest.approx(
                    tree_base_value(p, k), rel=1e-12
                )

    def test_tree_shape_independence(self):
        for alpha, beta in SYMMETRIC_GRID[:4]:
            p = KroneckerParams(alpha, beta, alpha, 1)
            assert base_value(p, path(2)) == pytest.approx(base_value(p, star(2)), rel=1e-12)
            for tree in nonisomorphic_trees(6):
                assert base_value(p, tree) == pytest.approx(
                    tree_base_value(p, tree.edge_count), abs=1e-12
                )

    def test_tree_gate(self):
        with pytest.raises(ParameterError):
            tree_base_value(KroneckerParams(0.5, 0.4, 0.3, 1), 2)

    @pytest.mark.parametrize("k", range(3, 9))
    def test_cycle_matches_enumeration(self, k):
        for alpha, beta in SYMMETRIC_GRID:
            p = KroneckerParams(alpha, beta, alpha, 1)
            assert cycle_base_value(p, k) == pytest.approx(base_value(p, cycle(k)), abs=1e-12)

    def test_cycle_alpha_equals_beta(self):
        p = KroneckerParams(0.45, 0.45, 0.45, 1)
        assert cycle_base_value(p, 5) == pytest.approx(0.9**5, rel=1e-12)

    def test_odd_cycle_with_large_beta_sits_below_even_power(self):
        p = KroneckerParams(0.3, 0.6, 0.3, 1)
        assert cycle_base_value(p, 5) < 0.9**5  # negative second term

    def test_cycle_gate(self):
        with pytest.raises(ParameterError):
            cycle_base_value(KroneckerParams(0.5, 0.4, 0.3, 1), 4)

    @pytest.mark.parametrize("k,l", [(k, l) for k in range(3, 7) for l in range(1, k - 1)])
    def test_overlap_formula_matches_enumeration(self, k, l):
        union = overlap_cycles(k, l)
        assert union.edge_count == 2 * k - l
        assert union.vertex_count == 2 * k - l - 1
        for alpha, beta in SYMMETRIC_GRID:
            p = KroneckerParams(alpha, beta, alpha, 1)
            assert overlap_cycle_base_value(p, k, l) == pytest.approx(
                base_value(p, union), abs=1e-12
            )

    def test_overlap_alpha_equals_beta(self):
        p = KroneckerParams(0.45, 0.45, 0.45, 1)
        assert overlap_cycle_base_value(p, 5, 2) == pytest.approx(
            0.5 * 0.9**8, rel=1e-12
        )

    def test_overlap_below_squared_cycle_above_threshold(self):
        for alpha, beta in SYMMETRIC_GRID:
            p = KroneckerParams(alpha, beta, alpha, 1)
            for k in range(3, 7):
                if cycle_base_value(p, k) <= 1:
                    continue
                bound = cycle_base_value(p, k) ** 2
                for l in range(1, k):
                    assert overlap_cycle_base_value(p, k, l) < bound


class TestEdgeLabelings:
    def test_triangle_has_even_parity_labelings(self):
        labs = valid_edge_labelings(cycle(3))
        assert len(labs) == 4
        assert all(bin(lab).count("1") % 2 == 0 for lab in labs)

    def test_trees_accept_everything(self):
        for tree in nonisomorphic_trees(6):
            assert len(valid_edge_labelings(tree)) == 2**tree.edge_count

    def test_even_cycle_counts(self):
        labs = valid_edge_labelings(cycle(4))
        assert len(labs) == 8  # even-weight subsets of 4 edges

    def test_two_vertex_labelings_per_valid_edge_labeling(self):
        for g in (cycle(3), cycle(5), path(3), star(3)):
            preimages = {}
            for vl in range(1 << g.vertex_count):
                preimages.setdefault(edge_labeling_from_vertex_labeling(g, vl), 0)
                preimages[edge_labeling_from_vertex_labeling(g, vl)] += 1
            valid = valid_edge_labelings(g)
            assert set(preimages) == valid
            assert all(count == 2 for count in preimages.values())

    def test_dual_route_base_value(self):
        graphs = [cycle(k) for k in range(3, 7)] + list(nonisomorphic_trees(5))
        for alpha, beta in SYMMETRIC_GRID[:5]:
            p = KroneckerParams(alpha, beta, alpha, 1)
            for g in graphs:
                assert base_value_from_edge_labelings(p, g) == pytest.approx(
                    base_value(p, g), abs=1e-12
                )

    def test_disconnected_rejected(self):
        with pytest.raises(ParameterError):
            valid_edge_labelings(PatternGraph.from_edges(4, [(0, 1), (2, 3)]))


class TestPairUnions:
    def test_single_edge_has_no_unions(self):
        assert enumerate_pair_unions(star(1)) == ()

    def test_two_leaf_star_family(self):
        unions = enumerate_pair_unions(star(2))
        graphs = [u.graph for u in unions]
        shapes = sorted((g.vertex_count, g.edge_count) for g in graphs)
        assert shapes == [(3, 3), (4, 3), (4, 3)]
        nx_graphs = [g.to_networkx() for g in graphs]
        assert any(nx.is_isomorphic(g, star(3).to_networkx()) for g in nx_graphs)
        assert any(nx.is_isomorphic(g, path(3).to_networkx()) for g in nx_graphs)
        assert any(nx.is_isomorphic(g, cycle(3).to_networkx()) for g in nx_graphs)

    def test_edge_count_bounds(self):
        for g in (star(2), star(3), path(2), cycle(4)):
            for union in enumerate_pair_unions(g):
                assert g.edge_count < union.graph.edge_count < 2 * g.edge_count
                assert union.graph.vertex_count <= 2 * g.vertex_count - 2

    def test_maps_reconstruct_union(self):
        for union in enumerate_pair_unions(cycle(4)):
            first = {
                tuple(sorted((union.map_a[u], union.map_a[v])))
                for u, v in cycle(4).edge_list
            }
            second = {
                tuple(sorted((union.map_b[u], union.map_b[v])))
                for u, v in cycle(4).edge_list
            }
            assert first != second and (first & second)
            assert frozenset(first | second) == union.graph.edges

    def test_cycle_unions_include_consecutive_overlaps(self):
        unions = enumerate_pair_unions(cycle(5))
        targets = [overlap_cycles(5, l).to_networkx() for l in range(1, 4)]
        for target in targets:
            assert any(
                nx.is_isomorphic(u.graph.to_networkx(), target) for u in unions
            )

    def test_capacity(self):
        with pytest.raises(CapacityError):
            enumerate_pair_unions(cycle(7))


class TestIdentifyVertices:
    def test_refuses_adjacent_or_shared_neighbor(self):
        assert identify_vertices(cycle(3), 0, 1) is None  # adjacent
        assert identify_vertices(path(2), 0, 2) is None  # common neighbor

    def test_merge_never_increases_base_value(self):
        # surjective vertex map with injective edge map
        p = KroneckerParams(0.55, 0.4, 0.3, 1)
        candidates = [path(3), path(4), path(5), cycle(4), star(3), cycle(6)]
        checked = 0
        for g in candidates:
            for u in range(g.vertex_count):
                for v in range(u + 1, g.vertex_count):
                    merged = identify_vertices(g, u, v)
                    if merged is None:
                        continue
                    checked += 1
                    assert base_value(p, merged) <= base_value(p, g) + 1e-12
        assert checked > 5


class TestCertificates:
    def test_star_above_threshold_passes(self):
        p = KroneckerParams(0.6, 0.5, 0.4, 1)  # (1.1)^2 + (0.9)^2 > 1
        report = second_moment_certificate(p, star(2))
        assert report.passes
        assert len(report.entries) == 3
        assert all(e.margin > 0 for e in report.entries)

    def test_vacuous_certificate_for_single_edge(self):
        report = second_moment_certificate(KroneckerParams(0.6, 0.5, 0.4, 1), star(1))
        assert report.passes and report.entries == ()

    def test_sparse_tree_regime_fails(self):
        # far below the threshold a longer tree union dominates the square
        p = KroneckerParams(0.2, 0.2, 0.2, 1)
        report = second_moment_certificate(p, star(2))
        assert not report.passes
        assert any(e.status == "fail" for e in report.entries)
