import math
import random

import pytest

from lnbmssp.graph import (
    EdgeListEntry,
    IndexOutOfRange,
    NegativeWeight,
    NonFiniteWeight,
    SelfLoop,
    build_graph,
    out_edges,
    random_sparse_digraph,
)


def chain():
    return build_graph([(0, 1, 1.0), (1, 2, 2.0)], 3)


def test_empty_graph():
    g = build_graph([], 1)
    assert (g.n, g.m, g.offsets) == (1, 0, (0, 0))


def test_chain_layout():
    g = chain()
    assert g.offsets == (0, 1, 2, 2)
    assert g.targets == (1, 2)


def test_out_edges_of_chain():
    g = chain()
    assert [(d, w) for d, w, _ in out_edges(g, 0)] == [(1, 1.0)]
    assert out_edges(g, 2) == []


@pytest.mark.parametrize("bad, exc", [
    ((0, 1, -0.5), NegativeWeight),
    ((0, 3, 1.0), IndexOutOfRange),
    ((-1, 0, 1.0), IndexOutOfRange),
    ((0, 1, math.inf), NonFiniteWeight),
    ((0, 1, math.nan), NonFiniteWeight),
    ((1, 1, 1.0), SelfLoop),
])
def test_rejects_bad_entries(bad, exc):
    with pytest.raises(exc):
        build_graph([(0, 1, 1.0), bad], 3)


def test_self_loop_opt_in():
    g = build_graph([(1, 1, 0.5)], 2, allow_self_loops=True)
    assert out_edges(g, 1) == [(1, 0.5, 0)]


def test_out_edges_index_error():
    with pytest.raises(IndexError):
        out_edges(chain(), 3)


def test_stable_order_and_parallel_edges():
    entries = [EdgeListEntry(2, 0, 3.0, 30), EdgeListEntry(0, 1, 1.0, 10),
               EdgeListEntry(2, 0, 1.0, 31), EdgeListEntry(0, 1, 2.0, 11)]
    g = build_graph(entries, 3)
    assert out_edges(g, 0) == [(1, 1.0, 10), (1, 2.0, 11)]
    assert out_edges(g, 2) == [(0, 3.0, 30), (0, 1.0, 31)]
    assert g.adjacency[2] == ((0, 3.0), (0, 1.0))


def test_random_graph_edge_count_matches_input():
    rng = random.Random(5)
    entries = []
    for i in range(400):
        u, v = rng.randrange(100), rng.randrange(100)
        if u != v:
            entries.append((u, v, rng.random(), i))
    g = build_graph(entries, 100)
    assert sum(len(out_edges(g, v)) for v in range(100)) == len(entries) == g.m


def test_random_sparse_digraph_shape():
    g = random_sparse_digraph(500, 4, random.Random(1))
    assert g.m == 2000
    assert all(0 < w < 1 for w in g.weights)
    assert all(u != d for u in range(g.n) for d, _, _ in out_edges(g, u))
