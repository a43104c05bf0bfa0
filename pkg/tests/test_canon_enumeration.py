from __future__ import annotations

import random
from collections import Counter

import networkx as nx
import pytest

from kst_spectral.errors import CapacityError
from kst_spectral.graph import Graph, complete, cycle, path, petersen, star
from kst_spectral.minor import MinorPattern, edge_bound, has_minor
from kst_spectral.verify.canon import canonical_form, canonical_graph, canonical_key
from kst_spectral.verify.enumeration import (
    KNOWN_CONNECTED,
    KNOWN_COUNTS,
    augment,
    count_graphs,
    enumerate_graphs,
    enumerate_minor_free,
)

from conftest import graphs_of_order


def _from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(h.nodes())}
    return Graph(h.number_of_nodes(), [(idx[u], idx[v]) for u, v in h.edges()])


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.empty_graph(g.order)
    h.add_edges_from(g.edges())
    return h


def _relabel_random(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.order))
    rng.shuffle(perm)
    return g.relabel(perm)


# --- canonical forms


def test_canonical_examples():
    assert canonical_form(path(3)) == canonical_form(Graph(3, [(0, 2), (2, 1)]))
    tri_plus = Graph(4, [(0, 1), (1, 2), (0, 2)])
    assert canonical_form(tri_plus) != canonical_form(star(3))
    assert canonical_form(star(3)) == canonical_form(Graph(4, [(3, 0), (3, 1), (3, 2)]))


def test_canonical_against_atlas():
    # the atlas holds one graph per isomorphism class up to seven vertices
    atlas = nx.graph_atlas_g()
    forms = [canonical_form(_from_nx(h)) for h in atlas]
    assert len(set(forms)) == len(forms) == 1253


def test_canonical_graph_is_isomorphic():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(1, 12)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        c = canonical_graph(g)
        assert nx.is_isomorphic(_to_nx(g), _to_nx(c))
        assert sorted(c.degrees) == sorted(g.degrees)


def test_relabel_invariance(graphs7):
    rng = random.Random(3)
    sample = rng.sample(list(graphs7), 500)
    for g in sample:
        h = _relabel_random(g, rng)
        assert canonical_form(h) == canonical_form(g)
        assert canonical_key(h) == canonical_key(g)


def test_relabel_invariance_on_regular_graphs():
    rng = random.Random(5)
    for g in (petersen(), cycle(12), complete(6)):
        for _ in range(10):
            assert canonical_form(_relabel_random(g, rng)) == canonical_form(g)


# --- enumeration


@pytest.mark.parametrize("n", range(0, 8))
def test_counts_match_known_sequence(n):
    assert sum(1 for _ in enumerate_graphs(n)) == KNOWN_COUNTS[n]


@pytest.mark.slow
def test_count_order_eight():
    assert len(graphs_of_order(8)) == KNOWN_COUNTS[8] == 12346


def test_connected_counts():
    for n in range(1, 8):
        assert count_graphs(n, connected_only=True) == KNOWN_CONNECTED[n]
    assert KNOWN_CONNECTED[7] == 853


def test_enumeration_matches_atlas_by_order():
    atlas = Counter(h.number_of_nodes() for h in nx.graph_atlas_g())
    for n in range(0, 8):
        ours = {canonical_form(g) for g in enumerate_graphs(n)}
        theirs = {canonical_form(_from_nx(h)) for h in nx.graph_atlas_g() if h.number_of_nodes() == n}
        assert ours == theirs
        assert len(ours) == atlas[n]


def test_edge_count_distribution_order_six():
    dist = Counter(g.size for g in graphs_of_order(6))
    # known: number of graphs on 6 vertices by edge count is symmetric about 7.5
    assert all(dist[k] == dist[15 - k] for k in range(16))
    assert dist[0] == dist[15] == 1


def test_capacity_guard():
    with pytest.raises(CapacityError):
        next(enumerate_graphs(11))
    with pytest.raises(CapacityError):
        next(augment(12))


def test_minor_free_enumeration_is_filtered_subset():
    pattern = MinorPattern.kst(2, 3)
    kept = list(enumerate_minor_free(6, pattern))
    brute = [g for g in graphs_of_order(6) if has_minor(g, pattern) is None]
    assert {canonical_form(e.graph) for e in kept} == {canonical_form(g) for g in brute}
    for e in kept:
        if e.edge_maximal:
            assert all(has_minor(e.graph.add_edge(u, v), pattern) is not None for u, v in e.graph.non_edges())
    assert max(e.graph.size for e in kept) == 9 <= edge_bound(pattern, 6)
    # the bound is attained when n is 1 mod 3
    assert max(e.graph.size for e in enumerate_minor_free(7, pattern)) == edge_bound(pattern, 7)
