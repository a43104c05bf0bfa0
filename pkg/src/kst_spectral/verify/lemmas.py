"""Degree-sequence lemma predicates, sampled instances, and certificate instances.

The four degree lemmas conclude ``q(G) <= n + 2`` from a profile of the
sorted degree sequence ``d_1 >= d_2 >= ... >= d_n``; their cut points are
kept as exact fractions so hypothesis checks never round. The samplers
build random graphs that meet a chosen profile by capped random edge
placement followed by rejection.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..closed_form import thm12_bound
from ..errors import ParameterError
from ..graph import Graph
from ..minor import has_K2t_subgraph
from ..spectral import COMPARE_MARGIN, q_radius

LEMMA_IDS = ("L25", "L26", "L27", "L28")

# (order floor, largest k, hub rule, lower cut as (a, b) meaning n*a + b, upper gap)
_SPEC = {
    "L25": dict(floor=115, kmax=12, hub="near", cut=(Fraction(1, 6), Fraction(1)), gap=61),
    "L26": dict(floor=4, kmax=0, hub="near", cut=(Fraction(1, 6), Fraction(1)), gap=None),
    "L27": dict(floor=91, kmax=13, hub="full", cut=(Fraction(1, 7), Fraction(19, 7)), gap=75),
    "L28": dict(floor=6, kmax=0, hub="full", cut=(Fraction(1, 7), Fraction(19, 7)), gap=None),
}


@dataclass(frozen=True)
class DegreeHypothesis:
    """Which degree lemma to test, and the block size ``k`` for L25 / L27.

    With ``k=None`` the block size is read off the degree sequence as the
    number of vertices after the first whose degree reaches the cut.
    """

    lemma_id: str
    k: int | None = None

    def __post_init__(self):
        if self.lemma_id not in _SPEC:
            raise ParameterError(f"unknown degree lemma {self.lemma_id!r}; expected one of {LEMMA_IDS}")
        kmax = _SPEC[self.lemma_id]["kmax"]
        if self.k is not None:
            if kmax == 0:
                raise ParameterError(f"{self.lemma_id} takes no block size")
            if not 1 <= self.k <= kmax:
                raise ParameterError(f"{self.lemma_id} needs 1 <= k <= {kmax}, got {self.k}")

    @property
    def floor(self) -> int:
        return _SPEC[self.lemma_id]["floor"]

    def thresholds(self, n: int) -> dict[str, Fraction | int | None]:
        """The degree cut points at order ``n`` as exact values."""
        spec = _SPEC[self.lemma_id]
        a, b = spec["cut"]
        gap = spec["gap"]
        return {
            "cut": a * n + b,
            "upper": None if gap is None else n - gap,
            "hub_low": n - 1 if spec["hub"] == "full" else n - 3,
            "hub_high": n - 1 if spec["hub"] == "full" else n - 2,
        }


@dataclass(frozen=True)
class DegreeLemmaResult:
    lemma_id: str
    n: int
    k: int | None
    floor_met: bool
    profile_met: bool
    q: float | None
    bound_holds: bool | None

    @property
    def hypothesis_met(self) -> bool:
        return self.floor_met and self.profile_met


def _profile(degs: list[int], hyp: DegreeHypothesis) -> tuple[bool, int | None]:
    n = len(degs)
    th = hyp.thresholds(n)
    if n < 2 or not th["hub_low"] <= degs[0] <= th["hub_high"]:
        return False, None
    cut = th["cut"]
    rest = degs[1:]
    if _SPEC[hyp.lemma_id]["kmax"] == 0:
        return all(d < cut for d in rest), None
    k = hyp.k if hyp.k is not None else sum(1 for d in rest if d >= cut)
    if not 1 <= k <= _SPEC[hyp.lemma_id]["kmax"] or k > len(rest):
        return False, k
    block, tail = rest[:k], rest[k:]
    ok = all(cut <= d <= th["upper"] for d in block) and all(d < cut for d in tail)
    return ok, k


def check_degree_lemma(g: Graph, hyp: DegreeHypothesis, margin: float = COMPARE_MARGIN) -> DegreeLemmaResult:
    """Decide the lemma's hypothesis exactly and, when met, test ``q <= n + 2``.

    Below the lemma's order floor the profile is still reported but the
    hypothesis counts as unmet, so no bound is asserted.
    """
    n = g.order
    degs = sorted(g.degrees, reverse=True)
    ok, k = _profile(degs, hyp)
    floor_met = n >= hyp.floor
    q = holds = None
    if ok and floor_met:
        q = q_radius(g).q
        holds = q <= n + 2 + margin
    return DegreeLemmaResult(hyp.lemma_id, n, k, floor_met, ok, q, holds)


# the two forbidden-subgraph lemmas


@dataclass(frozen=True)
class PredicateResult:
    hypothesis_met: bool
    value: float | None
    bound: float
    bound_holds: bool | None


def lemma21_predicate(g: Graph, margin: float = COMPARE_MARGIN) -> PredicateResult:
    """K_{2,3}-free, order >= 22 and max degree <= n - 2 should force q < n."""
    n = g.order
    met = n >= 22 and max(g.degrees, default=0) <= n - 2 and not has_K2t_subgraph(g, 3)
    if not met:
        return PredicateResult(False, None, float(n), None)
    q = q_radius(g).q
    return PredicateResult(True, q, float(n), q < n - margin)


def lemma22_predicate(g: Graph, t: int, margin: float = COMPARE_MARGIN) -> PredicateResult:
    """K_{2,t}-free with order >= t^2 + 4t + 1 should satisfy the square-root bound."""
    if t < 2:
        raise ParameterError("t must be at least 2")
    n = g.order
    bound = thm12_bound(t, n).value
    met = n >= t * t + 4 * t + 1 and not has_K2t_subgraph(g, t)
    if not met:
        return PredicateResult(False, None, bound, None)
    q = q_radius(g).q
    return PredicateResult(True, q, bound, q <= bound + margin)


# random profile samplers


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _add_capped(masks: list[int], rng: random.Random, u: int, pool: list[int], want: int, cap: list[int]) -> None:
    """Join ``u`` to up to ``want`` random vertices of ``pool`` with spare capacity."""
    cand = [w for w in pool if w != u and not masks[u] >> w & 1 and masks[w].bit_count() < cap[w]]
    rng.shuffle(cand)
    for w in cand[: max(0, want - masks[u].bit_count())]:
        masks[u] |= 1 << w
        masks[w] |= 1 << u


def sample_degree_profile(lemma_id: str, n: int, seed: int = 0, k: int | None = None, tries: int = 200) -> Graph:
    """Random graph whose degree sequence meets ``lemma_id``'s hypothesis at order ``n``.

    Vertex 0 is the hub and vertices ``1..k`` form the high-degree block.
    Sampling is capped random placement with rejection on the exact
    hypothesis check; ``seed`` fixes the outcome.

    Raises:
        ParameterError: ``n`` below the lemma floor, or no sample met the
            profile within ``tries`` attempts.
    """
    hyp = DegreeHypothesis(lemma_id, k)
    if n < hyp.floor:
        raise ParameterError(f"{lemma_id} needs n >= {hyp.floor}")
    rng = random.Random(seed)
    th = hyp.thresholds(n)
    cut = th["cut"]
    small = _ceil(cut) - 1  # largest degree strictly below the cut
    kmax = _SPEC[lemma_id]["kmax"]
    for _ in range(tries):
        kk = 0 if kmax == 0 else (k if k is not None else rng.randint(1, kmax))
        masks = [0] * n
        hub_deg = rng.randint(th["hub_low"], th["hub_high"])
        others = list(range(1, n))
        # hub misses a random set of non-block vertices
        missing = set(rng.sample(range(kk + 1, n), n - 1 - hub_deg))
        for w in others:
            if w not in missing:
                masks[0] |= 1 << w
                masks[w] |= 1 << 0
        cap = [n - 1] + [small] * (n - 1)
        if kk:
            lo, hi = _ceil(cut), th["upper"]
            for b in range(1, kk + 1):
                cap[b] = hi
            for b in range(1, kk + 1):
                _add_capped(masks, rng, b, others, rng.randint(lo, hi), cap)
        smalls = list(range(kk + 1, n))
        for v in smalls:
            _add_capped(masks, rng, v, smalls, rng.randint(0, small), cap)
        g = Graph.from_masks(masks)
        ok, _ = _profile(sorted(g.degrees, reverse=True), hyp)
        if ok:
            return g
    raise ParameterError(f"no {lemma_id} profile found at n={n} in {tries} tries")


# certificate instances for the two explicit test vectors


@dataclass(frozen=True)
class CertificateInstance:
    graph: Graph
    v1: int
    v2: int
    cap: int


def lemma42_cap(n: int) -> int:
    """Largest degree of a vertex outside {v1, v2} that the first vector tolerates.

    A vertex joined to both hubs with degree d keeps its row within
    ``(n + 2) * 3/(n - 2)`` exactly when ``6d <= n + 16``.
    """
    return (n + 16) // 6


def lemma43_cap(n: int) -> int:
    """Same bound for the second vector: ``16d <= n + 46``."""
    return (n + 46) // 16


def _hub_instance(n: int, v1_deg: int, v2_deg: int, cap: int, seed: int) -> CertificateInstance:
    rng = random.Random(seed)
    masks = [0] * n

    def link(a: int, b: int) -> None:
        masks[a] |= 1 << b
        masks[b] |= 1 << a

    rest = list(range(2, n))
    miss1 = set(rng.sample(rest, n - 1 - v1_deg))
    for w in rest:
        if w not in miss1:
            link(0, w)
    link(0, 1)
    miss2 = set(rng.sample(rest, n - 1 - v2_deg))
    for w in rest:
        if w not in miss2:
            link(1, w)
    caps = [n] * 2 + [cap] * (n - 2)
    # fill other vertices up to random degrees not above the cap
    for v in rng.sample(rest, len(rest)):
        _add_capped(masks, rng, v, rest, rng.randint(2, cap), caps)
    return CertificateInstance(Graph.from_masks(masks), 0, 1, cap)


def lemma42_instance(n: int, seed: int = 0, cap: int = 65) -> CertificateInstance:
    """Hub pair with d(v1) = n - 2, d(v2) = n - 60 and all other degrees <= ``cap``."""
    if cap > lemma42_cap(n):
        raise ParameterError(f"cap {cap} exceeds the tolerated degree {lemma42_cap(n)} at n={n}")
    return _hub_instance(n, n - 2, n - 60, cap, seed)


def lemma43_instance(n: int, seed: int = 0, cap: int | None = None) -> CertificateInstance:
    """Hub pair with d(v1) = n - 1, d(v2) = n - 74, other degrees <= ``cap``.

    ``cap`` defaults to ``min(77, lemma43_cap(n))``.
    """
    if cap is None:
        cap = min(77, lemma43_cap(n))
    if cap > lemma43_cap(n):
        raise ParameterError(f"cap {cap} exceeds the tolerated degree {lemma43_cap(n)} at n={n}")
    return _hub_instance(n, n - 1, n - 74, cap, seed)


__all__ = [
    "CertificateInstance",
    "DegreeHypothesis",
    "DegreeLemmaResult",
    "LEMMA_IDS",
    "PredicateResult",
    "check_degree_lemma",
    "lemma21_predicate",
    "lemma22_predicate",
    "lemma42_cap",
    "lemma42_instance",
    "lemma43_cap",
    "lemma43_instance",
    "sample_degree_profile",
]
