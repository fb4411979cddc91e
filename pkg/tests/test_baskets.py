import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emptyspot.baskets import (
    Dataset,
    HidingSpec,
    build_hidden_set,
    choose_radius,
    coverage_fraction,
    hide_nodes,
    simulate_baskets,
)
from emptyspot.errors import ParameterError, StructuralError
from emptyspot.graphs import generate_ba, generate_homogeneous

from conftest import cycle_graph, dataset, path_graph, star_graph
from oracles import ball


class TestSimulate:
    def test_path_one_hop(self, path3):
        d = simulate_baskets(path3, 1)
        assert d.baskets == (frozenset({0, 1}), frozenset({0, 1, 2}), frozenset({1, 2}))

    def test_saturation(self):
        g = cycle_graph(7)
        d = simulate_baskets(g, 3)
        assert all(b == frozenset(range(7)) for b in d.baskets)
        assert coverage_fraction(g, 3) == 1.0

    def test_full_size(self):
        g = generate_homogeneous(995, seed=1)
        r = choose_radius(g)
        d = simulate_baskets(g, r)
        assert len(d) == 995
        assert 0.15 <= coverage_fraction(g, r) <= 0.3
        assert coverage_fraction(g, r - 1) < 0.15

    def test_recorded_coverage(self):
        # frozen from one run; in this random-graph model the ~20% point is
        # reached at 4 hops, and 5 hops already covers ~44%
        g = generate_homogeneous(995, 3, 8, 0.7, seed=1)
        assert coverage_fraction(g, 4) == pytest.approx(0.1733, abs=1e-4)
        assert coverage_fraction(g, 5) == pytest.approx(0.4431, abs=1e-4)
        assert choose_radius(g) == 4
        assert coverage_fraction(g, choose_radius(g)) == pytest.approx(0.2, abs=0.1)

    def test_radius_validation(self, path3):
        with pytest.raises(ParameterError):
            simulate_baskets(path3, 0)
        with pytest.raises(ParameterError):
            coverage_fraction(path3, 0)

    def test_deterministic(self):
        g = generate_ba(60, 2, seed=3)
        assert simulate_baskets(g, 2) == simulate_baskets(g, 2)

    @given(n=st.integers(2, 25), seed=st.integers(0, 10**6), r=st.integers(1, 4))
    @settings(max_examples=30, deadline=None)
    def test_matches_brute_force_ball_and_is_monotone(self, n, seed, r):
        g = generate_ba(n, 1, seed)
        small, big = simulate_baskets(g, r), simulate_baskets(g, r + 1)
        edges = g.edges()
        for j in range(n):
            assert small.baskets[j] == ball(n, edges, j, r)
            assert j in small.baskets[j]
            assert small.baskets[j] <= big.baskets[j]


def test_coverage_cycle6():
    assert coverage_fraction(cycle_graph(6), 1) == pytest.approx(0.5)


class TestHiddenSet:
    def test_hub_only(self, star5):
        assert build_hidden_set(star5, HidingSpec(0, 1)) == {0}

    def test_bfs_order(self, path3):
        assert build_hidden_set(path3, HidingSpec(1, 3)) == {0, 1, 2}
        assert build_hidden_set(path3, HidingSpec(1, 2)) == {0, 1}

    def test_truncated_to_graph(self, star5):
        assert build_hidden_set(star5, HidingSpec(2, 50)) == set(range(5))

    def test_breadth_first_levels(self):
        g = path_graph(9)
        assert build_hidden_set(g, HidingSpec(4, 5)) == {2, 3, 4, 5, 6}

    def test_validation(self, path3):
        with pytest.raises(ParameterError):
            build_hidden_set(path3, HidingSpec(0, 0))
        with pytest.raises(ParameterError):
            build_hidden_set(path3, HidingSpec(7, 1))


class TestHide:
    def test_untouched(self, path3):
        original = dataset({0}, {0}, {0}, n=3)
        observed, truth = hide_nodes(original, {2}, path3)
        assert observed == original
        assert truth.modified_baskets == frozenset()

    def test_set_difference(self, path3):
        original = dataset({0, 1, 2}, {0}, {1}, n=3)
        observed, truth = hide_nodes(original, {1}, path3)
        assert observed.baskets[0] == {0, 2}
        assert observed.baskets[2] == frozenset()  # emptied basket is kept
        assert truth.modified_baskets == {0, 2}

    def test_gateways(self, path3):
        _, truth = hide_nodes(simulate_baskets(path3, 1), {1}, path3)
        assert truth.gateway_nodes == {0, 2}
        assert truth.hidden_nodes == {1}

    def test_rejects_hiding_everything(self, path3):
        with pytest.raises(ParameterError):
            hide_nodes(simulate_baskets(path3, 1), {0, 1, 2}, path3)
        with pytest.raises(ParameterError):
            hide_nodes(simulate_baskets(path3, 1), set(), path3)

    @given(n=st.integers(3, 30), seed=st.integers(0, 10**6), k=st.integers(1, 5), r=st.integers(1, 3))
    @settings(max_examples=40, deadline=None)
    def test_invariants(self, n, seed, k, r):
        g = generate_ba(n, 2, seed)
        original = simulate_baskets(g, r)
        hidden = build_hidden_set(g, HidingSpec(seed % n, min(k, n - 1)))
        observed, truth = hide_nodes(original, hidden, g)
        for b, beta in zip(observed.baskets, original.baskets):
            assert b <= beta and not (b & hidden)
        brute = {i for i, beta in enumerate(original.baskets) if any(v in beta for v in hidden)}
        assert truth.modified_baskets == brute
        nbrs = {u for v in hidden for u in g.neighbors(v)}
        assert truth.gateway_nodes == nbrs - hidden


def test_dataset_rejects_out_of_range():
    with pytest.raises(StructuralError):
        Dataset((frozenset({3}),), 3)


def test_incidence():
    x = dataset({0, 2}, set(), n=3).incidence()
    assert x.tolist() == [[True, False, True], [False, False, False]]
    assert x.dtype == np.bool_
