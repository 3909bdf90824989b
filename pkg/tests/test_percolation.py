import random

import pytest
from hypothesis import given, settings, strategies as st

from bootperc.graph import Graph
from bootperc.percolation import closure, closure_set, is_closed, percolates, step

from helpers import complete, complete_bipartite, cycle, graph_and_set
from oracles import naive_trace, random_edges


class TestStep:
    def test_clique(self):
        assert step(complete(4), {0, 1, 2}, 3) == {3}

    def test_cycle_nothing(self):
        assert step(cycle(4), {0, 2}, 3) == frozenset()

    def test_double_clique(self, dc8):
        assert step(dc8, {0, 1, 2}, 3) == {3}

    def test_does_not_mutate(self):
        infected = {0, 1, 2}
        step(complete(4), infected, 3)
        assert infected == {0, 1, 2}

    def test_zero_threshold_rejected(self):
        with pytest.raises(ValueError):
            step(complete(3), {0}, 0)


class TestClosure:
    def test_double_clique_side(self, dc8):
        trace = closure(dc8, {0, 1, 2}, 3)
        assert trace.final == {0, 1, 2, 3}
        assert trace.time == 1

    def test_full_set(self, dc8):
        trace = closure(dc8, range(8), 5)
        assert trace.final == set(range(8)) and trace.time == 0

    def test_complete_bipartite(self):
        trace = closure(complete_bipartite(3, 2), {0, 1, 2}, 3)
        assert trace.final == set(range(5)) and trace.time == 1

    def test_threshold_above_max_degree(self):
        trace = closure(cycle(6), {0, 1}, 3)
        assert trace.final == {0, 1} and trace.time == 0

    def test_serialization(self):
        trace = closure(Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3), (1, 3)]), {1, 0}, 2)
        assert trace.to_dict() == {
            "r": 2, "initial": [0, 1], "steps": [[2], [3]], "final": [0, 1, 2, 3], "time": 2,
        }


class TestPredicates:
    def test_percolates(self):
        # K_4 minus a perfect matching is C_4
        assert not any(percolates(cycle(4), set(range(4)) - {v}, 3) for v in range(4))
        assert percolates(complete_bipartite(3, 2), {0, 1, 2}, 3)
        assert percolates(cycle(5), range(5), 4)

    def test_is_closed(self, dc8):
        assert is_closed(dc8, {0, 1, 2, 3}, 3)
        assert is_closed(dc8, range(8), 3)
        assert is_closed(complete(6), {0, 1}, 3)
        assert not is_closed(dc8, {0, 1, 2}, 3)


thresholds = st.integers(1, 5)


@given(graph_and_set(), thresholds)
def test_trace_invariants(data, r):
    g, a = data
    trace = closure(g, a, r)
    seen = set(trace.initial)
    for new in trace.steps:
        assert new and not (new & seen)
        for v in new:
            assert len(g.neighbours(v) & seen) >= r
        seen |= new
    assert seen == trace.final
    for v in set(g.vertices()) - trace.final:
        assert len(g.neighbours(v) & trace.final) < r
    if trace.steps:
        assert trace.time <= g.n - len(a)


@given(graph_and_set(), thresholds)
def test_matches_naive_oracle(data, r):
    g, a = data
    steps, final = naive_trace(g.n, g.edges(), a, r)
    trace = closure(g, a, r)
    assert [set(s) for s in trace.steps] == steps
    assert trace.final == final
    assert closure_set(g, a, r) == final


@given(graph_and_set(), thresholds, st.data())
def test_monotone_in_set(data, r, draw):
    g, a = data
    b = a | draw.draw(st.frozensets(st.integers(0, g.n - 1)))
    assert closure_set(g, a, r) <= closure_set(g, b, r)


@given(graph_and_set(), thresholds)
def test_idempotent(data, r):
    g, a = data
    first = closure(g, a, r)
    again = closure(g, first.final, r)
    assert again.final == first.final and again.time == 0


@given(graph_and_set(), thresholds, st.integers(0, 3))
def test_monotone_in_threshold(data, r, extra):
    g, a = data
    assert closure_set(g, a, r + extra) <= closure_set(g, a, r)


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_oracle_equivalence_larger_graphs(seed):
    rng = random.Random(seed)
    n = rng.randint(20, 40)
    edges = random_edges(rng, n, rng.uniform(0.05, 0.5))
    g = Graph(n, edges)
    r = rng.randint(1, 5)
    a = rng.sample(range(n), rng.randint(0, n // 2))
    steps, final = naive_trace(n, edges, a, r)
    assert [set(s) for s in closure(g, a, r).steps] == steps
