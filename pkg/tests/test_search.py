from __future__ import annotations

import random

import pytest

from kst_spectral.errors import CapacityError, MoveError, ParameterError, PreconditionError
from kst_spectral.graph import Graph, build_extremal_F, complete, disjoint_union, join, parse_graph6, path
from kst_spectral.minor import MinorPattern, has_minor
from kst_spectral.verify.canon import canonical_form
from kst_spectral.verify.search import (
    applicable_moves,
    conjecture_evidence,
    count_path_components,
    dominating_set,
    extremal_search,
    improving_moves,
    local_search_extremal,
    path_components,
    q_small,
    rewire_path_move,
)

K23 = MinorPattern.kst(2, 3)
K33 = MinorPattern.kst(3, 3)


def fan(k: int, *parts: Graph) -> Graph:
    """K_k joined to the disjoint union of ``parts``."""
    return join(complete(k), disjoint_union(list(parts)))


# --- path components


def test_dominating_set_and_paths():
    g = fan(1, path(4), path(2), complete(3))
    assert dominating_set(g) == 1
    comps = sorted(path_components(g), key=len)
    assert [len(c) for c in comps] == [2, 4]
    p4 = comps[1]
    assert all(g.has_edge(a, b) for a, b in zip(p4, p4[1:]))
    assert count_path_components(g, 0) == 2


def test_isolated_vertices_are_paths():
    g = fan(1, Graph(1), Graph(1))
    assert sorted(map(len, path_components(g))) == [1, 1]


def test_applicable_moves():
    assert applicable_moves(3) == []
    assert applicable_moves(4) == ["case2"]
    assert applicable_moves(5) == ["case3-odd"]
    assert applicable_moves(6) == ["case3-even"]
    assert applicable_moves(9) == ["case3-odd"]


# --- rewires


def test_case2_on_four_vertex_path():
    g = fan(1, path(4))
    h = rewire_path_move(g, [1, 2, 3, 4], "case2")
    assert h.size == g.size
    assert canonical_form(h) == canonical_form(fan(1, Graph(1), complete(3)))


def test_case3_odd_on_five_vertex_path():
    g = fan(1, path(5))
    h = rewire_path_move(g, [1, 2, 3, 4, 5], "case3-odd")
    assert h.size == g.size
    assert canonical_form(h) == canonical_form(fan(1, complete(3), complete(2)))


def test_case3_even_on_six_vertex_path():
    g = fan(1, path(6))
    h = rewire_path_move(g, [1, 2, 3, 4, 5, 6], "case3-even")
    # p = 3: drop v2v3 and v5v6, add v3v5 and v2v6
    assert not h.has_edge(2, 3) and not h.has_edge(5, 6)
    assert h.has_edge(3, 5) and h.has_edge(2, 6)
    assert h.size == g.size


@pytest.mark.parametrize(
    "verts,move",
    [
        ([1, 2, 3], "case2"),
        ([1, 2, 3, 4, 5], "case2"),
        ([1, 2, 3, 4], "case3-odd"),
        ([1, 2, 3, 4, 5], "case3-even"),
        ([1, 3, 2, 4, 5], "case3-odd"),
        ([0, 1, 2, 3], "case2"),
        ([1, 2, 3, 4], "shuffle"),
    ],
)
def test_rewire_rejects_bad_input(verts, move):
    g = fan(1, path(5))
    with pytest.raises(MoveError):
        rewire_path_move(g, verts, move)


def test_rewire_preserves_edge_count_on_random_fans():
    rng = random.Random(17)
    for _ in range(200):
        k = rng.randint(1, 3)
        lens = [rng.randint(1, 9) for _ in range(rng.randint(1, 4))]
        g = fan(k, *[path(h) for h in lens])
        comps = [c for c in path_components(g) if applicable_moves(len(c))]
        if not comps:
            continue
        c = rng.choice(comps)
        if rng.random() < 0.5:
            c = c[::-1]
        h = rewire_path_move(g, c, applicable_moves(len(c))[0])
        assert h.size == g.size
        assert sorted(h.degrees) != [] and sum(h.degrees) == sum(g.degrees)
        assert dominating_set(h) == dominating_set(g)


def test_rewire_never_lowers_q_on_fans():
    # a path rewire trades two path edges for a denser cluster
    for k in (1, 2):
        for h in range(4, 16):
            g = fan(k, path(h), complete(3))
            c = next(c for c in path_components(g) if len(c) == h)
            g2 = rewire_path_move(g, c, applicable_moves(h)[0])
            assert q_small(g2) >= q_small(g) - 1e-8


def test_rewire_keeps_family_minor_free():
    for h in range(4, 12):
        g = fan(1, path(h))
        c = path_components(g)[0]
        g2 = rewire_path_move(g, c, applicable_moves(h)[0])
        assert has_minor(g2, K23) is None


# --- local search


def test_local_search_fixed_point_on_family():
    g, _ = build_extremal_F(2, 2, 6)
    res = local_search_extremal(g, MinorPattern.kst(2, 2))
    assert res.complete and res.steps == [] and res.graph == g


def test_local_search_from_small_fan_stays_below_family():
    res = local_search_extremal(fan(1, path(6)), K23)
    assert res.complete
    assert has_minor(res.graph, K23) is None
    assert res.q >= q_small(fan(1, path(6))) - 1e-12
    fam, _ = build_extremal_F(2, 3, 7)
    assert res.q <= q_small(fam) + 1e-8


def test_local_search_budget_and_precondition():
    res = local_search_extremal(Graph(6), K23, budget=2)
    assert len(res.steps) == 2 and not res.complete
    with pytest.raises(PreconditionError):
        local_search_extremal(complete(6), K23)
    with pytest.raises(ParameterError):
        local_search_extremal(Graph(4), K23, moves=("teleport",))


def test_no_improving_moves_on_family():
    for n in range(22, 27):
        g, _ = build_extremal_F(2, 3, n)
        found, timed_out = improving_moves(g, K23)
        assert found == [] and timed_out == []


def test_winner_has_no_long_path_components():
    res = extremal_search(7, K23)
    for code in res.argmax:
        g = parse_graph6(code)
        assert all(len(c) < 4 for c in path_components(g))


# --- exhaustive search


def test_extremal_search_small_examples():
    res = extremal_search(5, K23)
    fam, _ = build_extremal_F(2, 3, 5)
    assert res.unique and res.matches_family
    assert res.max_q == pytest.approx(q_small(fam), abs=1e-9)
    res = extremal_search(8, K33)
    assert res.matches_family
    assert res.max_q == pytest.approx(q_small(build_extremal_F(3, 3, 8)[0]), abs=1e-9)


def test_extremal_search_k22():
    for n in range(4, 8):
        res = extremal_search(n, MinorPattern.kst(2, 2))
        assert res.unique and res.matches_family


def test_extremal_search_guards():
    with pytest.raises(CapacityError):
        extremal_search(11, K23)
    with pytest.raises(ParameterError):
        extremal_search(0, K23)


def test_conjecture_evidence_rows():
    rows = conjecture_evidence(2, 3, range(5, 8))
    assert [r.n for r in rows] == [5, 6, 7]
    assert all(r.matches_family and r.winners == 1 for r in rows)
    assert all(r.max_q == pytest.approx(r.family_q) for r in rows)
    with pytest.raises(ParameterError):
        conjecture_evidence(3, 2, [5])
