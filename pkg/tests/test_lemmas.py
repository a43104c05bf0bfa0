from __future__ import annotations

from fractions import Fraction

import pytest

from kst_spectral.errors import ParameterError
from kst_spectral.graph import Graph, build_extremal_F, complete, cycle, join, star
from kst_spectral.spectral import certify_upper_bound, lemma42_vector, lemma43_vector, q_radius
from kst_spectral.verify.lemmas import (
    LEMMA_IDS,
    DegreeHypothesis,
    check_degree_lemma,
    lemma21_predicate,
    lemma22_predicate,
    lemma42_cap,
    lemma42_instance,
    lemma43_cap,
    lemma43_instance,
    sample_degree_profile,
)


def star_plus_matching(n: int) -> Graph:
    g = star(n - 1)
    for v in range(1, n - 1, 2):
        g = g.add_edge(v, v + 1)
    return g


# --- hypotheses


def test_thresholds_are_exact():
    th = DegreeHypothesis("L27").thresholds(100)
    assert th["cut"] == Fraction(100, 7) + Fraction(19, 7)
    assert th["upper"] == 25
    assert (th["hub_low"], th["hub_high"]) == (99, 99)
    th = DegreeHypothesis("L25").thresholds(120)
    assert th["cut"] == 21 and th["upper"] == 59
    assert (th["hub_low"], th["hub_high"]) == (117, 118)


def test_floors():
    assert [DegreeHypothesis(i).floor for i in LEMMA_IDS] == [115, 4, 91, 6]


def test_block_size_validation():
    with pytest.raises(ParameterError):
        DegreeHypothesis("L25", 13)
    with pytest.raises(ParameterError):
        DegreeHypothesis("L27", 0)
    with pytest.raises(ParameterError):
        DegreeHypothesis("L26", 1)
    with pytest.raises(ParameterError):
        DegreeHypothesis("L99")
    DegreeHypothesis("L27", 13)


def test_star_plus_matching_meets_full_hub_lemma():
    r = check_degree_lemma(star_plus_matching(10), DegreeHypothesis("L28"))
    assert r.hypothesis_met and r.bound_holds
    assert r.q <= 12


def test_complete_graph_fails_near_hub_lemma():
    r = check_degree_lemma(complete(8), DegreeHypothesis("L26"))
    assert not r.profile_met and r.q is None and r.bound_holds is None


def test_below_floor_reports_profile_but_not_hypothesis():
    g = join(complete(1), Graph(30))
    r = check_degree_lemma(g, DegreeHypothesis("L27"))
    assert not r.floor_met and not r.hypothesis_met


@pytest.mark.parametrize("lemma_id,n", [("L25", 130), ("L26", 60), ("L27", 100), ("L28", 60)])
def test_random_samples_meet_hypothesis_and_bound(lemma_id, n):
    for seed in range(200):
        g = sample_degree_profile(lemma_id, n, seed=seed)
        r = check_degree_lemma(g, DegreeHypothesis(lemma_id))
        assert r.hypothesis_met, (lemma_id, seed)
        assert r.bound_holds, (lemma_id, seed, r.q)


def test_sampler_block_size_and_errors():
    g = sample_degree_profile("L27", 95, seed=1, k=13)
    assert check_degree_lemma(g, DegreeHypothesis("L27", 13)).hypothesis_met
    with pytest.raises(ParameterError):
        sample_degree_profile("L25", 100)


def test_sampler_is_deterministic():
    assert sample_degree_profile("L26", 40, seed=3) == sample_degree_profile("L26", 40, seed=3)


# --- forbidden-subgraph predicates


def test_lemma21_predicate():
    n = 24
    g, _ = build_extremal_F(2, 3, n)
    # the hub has degree n - 1, so the hypothesis fails
    assert not lemma21_predicate(g).hypothesis_met
    r = lemma21_predicate(cycle(n))
    assert r.hypothesis_met and r.bound_holds and r.value == pytest.approx(4)
    assert not lemma21_predicate(cycle(10)).hypothesis_met


def test_lemma22_predicate():
    t = 3
    n = t * t + 4 * t + 1
    g, _ = build_extremal_F(2, t, n)
    r = lemma22_predicate(g, t)
    assert r.hypothesis_met and r.bound_holds
    assert r.value <= r.bound + 1e-9
    assert not lemma22_predicate(complete(n), t).hypothesis_met
    with pytest.raises(ParameterError):
        lemma22_predicate(g, 1)


# --- certificate instances


def test_caps():
    assert lemma42_cap(374) == 65
    assert lemma43_cap(1186) == 77
    assert lemma43_cap(400) == 27
    with pytest.raises(ParameterError):
        lemma42_instance(300)
    with pytest.raises(ParameterError):
        lemma43_instance(400, cap=77)


@pytest.mark.parametrize("n", [400, 1200])
def test_certificate_instances_accept(n):
    inst = lemma42_instance(n, seed=1)
    g = inst.graph
    assert g.degree(0) == n - 2 and g.degree(1) == n - 60
    assert max(g.degree(v) for v in range(2, n)) <= 65
    v = certify_upper_bound(g, lemma42_vector(g, 0, 1))
    assert v.accepted and v.exact
    assert q_radius(g).q <= n + 2

    inst = lemma43_instance(n, seed=1)
    g = inst.graph
    assert g.degree(0) == n - 1 and g.degree(1) == n - 74
    assert max(g.degree(v) for v in range(2, n)) <= inst.cap
    v = certify_upper_bound(g, lemma43_vector(g, 0, 1))
    assert v.accepted and v.exact
    assert q_radius(g).q <= n + 2


def test_uncapped_degree_breaks_second_vector_at_400():
    n = 400
    g = lemma43_instance(n, seed=2).graph
    w = next(v for v in range(2, n) if g.has_edge(0, v) and g.has_edge(1, v))
    extra = [u for u in range(2, n) if u != w and not g.has_edge(w, u)]
    g = Graph(n, list(g.edges()) + [(w, u) for u in extra[: 77 - g.degree(w)]])
    assert g.degree(w) == 77
    assert not certify_upper_bound(g, lemma43_vector(g, 0, 1)).accepted
