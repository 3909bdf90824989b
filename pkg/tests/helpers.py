"""Small graph builders and hypothesis strategies shared by the tests."""

import itertools

from hypothesis import strategies as st

from bootperc.graph import Graph


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


@st.composite
def graphs(draw, min_n=1, max_n=14):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def graph_and_set(draw, min_n=1, max_n=14):
    g = draw(graphs(min_n, max_n))
    a = draw(st.frozensets(st.integers(0, g.n - 1), max_size=g.n))
    return g, a


def large_closed_set_instance(n, r, extra_inside=()):
    """Graph with a closed set A of size ceil(n/2) + r - 3 meeting the
    large-closed-set hypotheses: A and its complement are cliques and each
    outside vertex has exactly r - 1 neighbours in A, assigned round-robin."""
    size = (n + 1) // 2 + r - 3
    inside = list(range(size))
    outside = list(range(size, n))
    edges = list(itertools.combinations(inside, 2)) + list(itertools.combinations(outside, 2))
    slot = 0
    for v in outside:
        for _ in range(r - 1):
            edges.append((inside[slot % size], v))
            slot += 1
    edges += list(extra_inside)
    return Graph(n, edges), frozenset(inside)
