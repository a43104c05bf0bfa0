"""Exhaustive extremal search and proof-move local search.

``extremal_search`` scans every pattern-minor-free class of a small order
and reports all maximisers of q. ``local_search_extremal`` climbs from a
starting graph using the path rewires used in the extremal argument plus
single-edge additions (and optionally swaps), accepting only moves that
keep the graph minor-free and raise q by more than a fixed margin.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..errors import CapacityError, MinorTimeout, MoveError, ParameterError, PreconditionError
from ..graph import Graph, bits, build_extremal_F
from ..minor import DEFAULT_TIMEOUT, MinorPattern, has_minor
from ..spectral import COMPARE_MARGIN, q_radius
from .canon import canonical_form
from .enumeration import MAX_ENUM_ORDER, enumerate_minor_free

MOVES = ("case2", "case3-odd", "case3-even")


def q_small(g: Graph) -> float:
    """Largest eigenvalue of Q(g) by a dense symmetric eigensolve."""
    if g.order == 0:
        return 0.0
    return float(np.linalg.eigvalsh(g.signless_laplacian())[-1])


def _q(g: Graph) -> float:
    return q_small(g) if g.order <= 64 else q_radius(g).q


@dataclass(frozen=True)
class ExtremalSearchResult:
    n: int
    pattern: MinorPattern
    max_q: float
    argmax: list[str]
    matches_family: bool
    scanned: int = 0
    family: str | None = None

    @property
    def unique(self) -> bool:
        return len(self.argmax) == 1


def family_graph(pattern: MinorPattern, n: int) -> Graph | None:
    """F_{s,t}(n) for a bipartite pattern with s >= 2, else None."""
    if pattern.kind != "bipartite" or pattern.a < 2 or n < pattern.a - 1:
        return None
    g, _ = build_extremal_F(pattern.a, pattern.b, n)
    return g


def extremal_search(
    n: int,
    pattern: MinorPattern,
    timeout: float | None = DEFAULT_TIMEOUT,
    margin: float = COMPARE_MARGIN,
) -> ExtremalSearchResult:
    """Maximise q over all ``pattern``-minor-free graphs of order ``n``.

    Every class within ``margin`` of the maximum is reported, so a tie is
    never collapsed. ``matches_family`` holds when the argmax set is exactly
    the canonical form of the extremal family graph.
    """
    if n < 1:
        raise ParameterError("order must be positive")
    if n > MAX_ENUM_ORDER:
        raise CapacityError(f"extremal search is capped at order {MAX_ENUM_ORDER}, got {n}")
    scored: list[tuple[float, Graph]] = []
    best = -1.0
    for item in enumerate_minor_free(n, pattern, timeout):
        q = q_small(item.graph)
        scored.append((q, item.graph))
        best = max(best, q)
    winners = sorted({canonical_form(g) for q, g in scored if q >= best - margin})
    fam = family_graph(pattern, n)
    fam_code = canonical_form(fam) if fam is not None else None
    return ExtremalSearchResult(
        n=n,
        pattern=pattern,
        max_q=best,
        argmax=winners,
        matches_family=fam_code is not None and winners == [fam_code],
        scanned=len(scored),
        family=fam_code,
    )


@dataclass(frozen=True)
class ConjectureRow:
    s: int
    t: int
    n: int
    max_q: float
    family_q: float | None
    winners: int
    matches_family: bool


def conjecture_evidence(s: int, t: int, orders: Iterable[int], timeout: float | None = DEFAULT_TIMEOUT) -> list[ConjectureRow]:
    """Exhaustive winners against F_{s,t}(n) for each small order.

    This is an evidence table for the general large-order conjecture; the
    small orders it can reach say nothing definitive about large n.
    """
    if not 2 <= s <= t:
        raise ParameterError("need 2 <= s <= t")
    rows = []
    pat = MinorPattern.kst(s, t)
    for n in orders:
        res = extremal_search(n, pat, timeout)
        fam = family_graph(pat, n)
        rows.append(ConjectureRow(s, t, n, res.max_q, q_small(fam) if fam is not None else None,
                                  len(res.argmax), res.matches_family))
    return rows


# path components and rewires


def dominating_set(g: Graph) -> int:
    """Mask of vertices adjacent to every other vertex."""
    n = g.order
    return sum(1 << v for v in range(n) if g.degree(v) == n - 1)


def path_components(g: Graph, removed: int | None = None) -> list[list[int]]:
    """Components of ``g`` minus ``removed`` that are paths, each listed end to end.

    ``removed`` defaults to the dominating set. Single vertices count as
    paths of one vertex.
    """
    if removed is None:
        removed = dominating_set(g)
    alive = ((1 << g.order) - 1) & ~removed
    masks = [m & alive for m in g.masks]
    out = []
    seen = 0
    for v in bits(alive):
        if seen >> v & 1:
            continue
        comp = 0
        stack = [v]
        comp |= 1 << v
        while stack:
            u = stack.pop()
            new = masks[u] & ~comp
            comp |= new
            stack.extend(bits(new))
        seen |= comp
        members = bits(comp)
        degs = [masks[u].bit_count() for u in members]
        k = len(members)
        if k == 1:
            out.append(members)
            continue
        if max(degs) > 2 or sum(degs) != 2 * (k - 1):
            continue
        start = next(u for u, d in zip(members, degs) if d == 1)
        order = [start]
        prev = -1
        cur = start
        while len(order) < k:
            nxt = next(w for w in bits(masks[cur]) if w != prev)
            prev, cur = cur, nxt
            order.append(cur)
        out.append(order)
    return out


def count_path_components(g: Graph, u: int) -> int:
    """Number of components of ``g - u`` that are paths."""
    return len(path_components(g, 1 << u))


def _check_path(g: Graph, path: Sequence[int]) -> None:
    n = g.order
    if len(set(path)) != len(path) or any(not 0 <= v < n for v in path):
        raise MoveError("path vertices must be distinct labels of the graph")
    dom = dominating_set(g)
    pmask = sum(1 << v for v in path)
    if pmask & dom:
        raise MoveError("path meets the dominating set")
    for i, v in enumerate(path):
        want = 0
        if i > 0:
            want |= 1 << path[i - 1]
        if i + 1 < len(path):
            want |= 1 << path[i + 1]
        if g.masks[v] & ~dom != want:
            raise MoveError(f"vertex {v} does not sit on an induced path component outside the dominating set")


def rewire_path_move(g: Graph, path_vertices: Sequence[int], move: str) -> Graph:
    """Apply a path rewire to the path component ``v1, ..., vh`` (listed in order).

    ``case2`` (h = 4) removes v1v2 and adds v2v4. ``case3-odd`` (h = 2p + 1,
    p >= 2) and ``case3-even`` (h = 2p, p >= 3) remove v_{p-1}v_p and
    v_{p+2}v_{p+3}, then add v_p v_{p+2} and v_{p-1}v_{p+3}. The edge count
    is preserved.

    Raises:
        MoveError: the vertices are not an induced path component of
            ``g`` minus its dominating vertices, or the length does not
            fit the move.
    """
    if move not in MOVES:
        raise MoveError(f"unknown move {move!r}; expected one of {', '.join(MOVES)}")
    path = list(path_vertices)
    _check_path(g, path)
    h = len(path)
    v = [None] + path  # 1-indexed
    if move == "case2":
        if h != 4:
            raise MoveError(f"case2 needs a path on 4 vertices, got {h}")
        return g.edit(remove=[(v[1], v[2])], add=[(v[2], v[4])])
    if move == "case3-odd":
        if h % 2 == 0 or h < 5:
            raise MoveError(f"case3-odd needs an odd path on at least 5 vertices, got {h}")
    else:
        if h % 2 == 1 or h < 6:
            raise MoveError(f"case3-even needs an even path on at least 6 vertices, got {h}")
    p = h // 2
    return g.edit(
        remove=[(v[p - 1], v[p]), (v[p + 2], v[p + 3])],
        add=[(v[p], v[p + 2]), (v[p - 1], v[p + 3])],
    )


def applicable_moves(h: int) -> list[str]:
    if h == 4:
        return ["case2"]
    if h >= 5 and h % 2 == 1:
        return ["case3-odd"]
    if h >= 6 and h % 2 == 0:
        return ["case3-even"]
    return []


def rewire_candidates(g: Graph) -> Iterable[tuple[str, Graph]]:
    for comp in path_components(g):
        for move in applicable_moves(len(comp)):
            for orient in (comp, comp[::-1]):
                yield f"{move}:{','.join(map(str, orient))}", rewire_path_move(g, orient, move)


def add_candidates(g: Graph) -> Iterable[tuple[str, Graph]]:
    for u, v in g.non_edges():
        yield f"add:{u}-{v}", g.add_edge(u, v)


def swap_candidates(g: Graph) -> Iterable[tuple[str, Graph]]:
    non = list(g.non_edges())
    for a, b in g.edges():
        for u, v in non:
            yield f"swap:{a}-{b}/{u}-{v}", g.edit(remove=[(a, b)], add=[(u, v)])


_GENERATORS = {"rewire": rewire_candidates, "add": add_candidates, "swap": swap_candidates}


@dataclass
class Move:
    label: str
    graph: Graph
    q: float


def _improving(g: Graph, q0: float, moves: Sequence[str], margin: float) -> list[Move]:
    out = []
    seen = set()
    for kind in moves:
        if kind not in _GENERATORS:
            raise ParameterError(f"unknown move kind {kind!r}")
        for label, cand in _GENERATORS[kind](g):
            if cand.masks in seen:
                continue
            seen.add(cand.masks)
            q = _q(cand)
            if q > q0 + margin:
                out.append(Move(label, cand, q))
    out.sort(key=lambda m: -m.q)
    return out


def improving_moves(
    g: Graph,
    pattern: MinorPattern,
    moves: Sequence[str] = ("rewire", "add"),
    margin: float = COMPARE_MARGIN,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> tuple[list[Move], list[str]]:
    """All minor-free moves from ``g`` that raise q by more than ``margin``.

    Returns ``(moves, timed_out_labels)``. A candidate whose minor test
    times out is not counted as a move.
    """
    q0 = _q(g)
    found, timed_out = [], []
    for m in _improving(g, q0, moves, margin):
        try:
            if has_minor(m.graph, pattern, timeout) is None:
                found.append(m)
        except MinorTimeout:
            timed_out.append(m.label)
    return found, timed_out


@dataclass
class LocalSearchResult:
    graph: Graph
    q: float
    steps: list[str] = field(default_factory=list)
    complete: bool = True
    timeouts: list[str] = field(default_factory=list)


def local_search_extremal(
    start: Graph,
    pattern: MinorPattern,
    budget: int = 1000,
    moves: Sequence[str] = ("rewire", "add"),
    margin: float = COMPARE_MARGIN,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> LocalSearchResult:
    """Greedy hill climb on q over minor-free graphs.

    At each step the candidates are ranked by q and the first one that is
    still ``pattern``-minor-free is taken. Stops at a local maximum
    (``complete`` True) or after ``budget`` accepted moves (``complete``
    False, best-so-far returned). Pass ``moves=("rewire", "add", "swap")``
    to include edge swaps, which are quadratic in the edge count.

    Raises:
        PreconditionError: ``start`` already contains the pattern.
    """
    if has_minor(start, pattern, timeout) is not None:
        raise PreconditionError(f"start graph contains a {pattern.name} minor")
    g, q = start, _q(start)
    res = LocalSearchResult(g, q)
    for _ in range(budget):
        step = None
        for m in _improving(g, q, moves, margin):
            try:
                if has_minor(m.graph, pattern, timeout) is None:
                    step = m
                    break
            except MinorTimeout:
                res.timeouts.append(m.label)
        if step is None:
            res.graph, res.q = g, q
            return res
        g, q = step.graph, step.q
        res.steps.append(step.label)
    res.graph, res.q = g, q
    res.complete = not _improving_exists(g, q, pattern, moves, margin, timeout)
    return res


def _improving_exists(g, q, pattern, moves, margin, timeout) -> bool:
    for m in _improving(g, q, moves, margin):
        try:
            if has_minor(m.graph, pattern, timeout) is None:
                return True
        except MinorTimeout:
            continue
    return False


__all__ = [
    "ConjectureRow",
    "ExtremalSearchResult",
    "LocalSearchResult",
    "MOVES",
    "Move",
    "applicable_moves",
    "conjecture_evidence",
    "count_path_components",
    "dominating_set",
    "extremal_search",
    "family_graph",
    "improving_moves",
    "local_search_extremal",
    "path_components",
    "q_small",
    "rewire_path_move",
]
