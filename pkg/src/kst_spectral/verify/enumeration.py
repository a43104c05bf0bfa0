"""Isomorph-free enumeration of small graphs by edge augmentation.

Graphs of order ``n`` are generated level by level in the number of edges:
each graph on ``m`` edges is extended by every non-edge and the children
are deduplicated by canonical form. Passing a hereditary filter (closed
under edge deletion, such as minor-freeness) prunes the generation tree;
a graph none of whose children pass is edge-maximal for the filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from ..errors import CapacityError
from ..graph import Graph
from ..minor import DEFAULT_TIMEOUT, MinorPattern, has_minor
from .canon import canonical_graph, canonical_labeling

MAX_ENUM_ORDER = 10

# number of isomorphism classes of graphs on n vertices (all / connected)
KNOWN_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668, 10: 12005168}
KNOWN_CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080, 10: 11716571}


@dataclass(frozen=True)
class Enumerated:
    graph: Graph
    edge_maximal: bool


def _check_cap(n: int) -> None:
    if n < 0:
        raise CapacityError("order must be non-negative")
    if n > MAX_ENUM_ORDER:
        raise CapacityError(f"enumeration is capped at order {MAX_ENUM_ORDER}, got {n}")


def _relabelled(g: Graph, order: list[int]) -> Graph:
    perm = [0] * g.order
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def _edge_orbit_reps(g: Graph, autos: list[list[int]]) -> list[tuple[int, int]]:
    """One non-edge per orbit of the automorphisms found while canonising ``g``."""
    non_edges = list(g.non_edges())
    if not autos:
        return non_edges
    seen: set[tuple[int, int]] = set()
    reps = []
    for e in non_edges:
        if e in seen:
            continue
        reps.append(e)
        stack = [e]
        seen.add(e)
        while stack:
            u, v = stack.pop()
            for a in autos:
                x, y = a[u], a[v]
                img = (x, y) if x < y else (y, x)
                if img not in seen:
                    seen.add(img)
                    stack.append(img)
    return reps


def augment(n: int, keep: Callable[[Graph], bool] | None = None) -> Iterator[Enumerated]:
    """Every isomorphism class of order ``n`` passing the hereditary filter ``keep``.

    Classes are emitted in canonical labelling, grouped by edge count.
    ``edge_maximal`` is True when no single added edge stays inside the filter.
    """
    _check_cap(n)
    level: dict[int, Graph] = {0: Graph(n)}
    while level:
        nxt: dict[int, Graph] = {}
        rejected: set[int] = set()
        for g in level.values():
            _, _, autos = canonical_labeling(g)
            grew = False
            for u, v in _edge_orbit_reps(g, autos):
                child = g.add_edge(u, v)
                order, code, _ = canonical_labeling(child)
                if code in nxt:
                    grew = True
                    continue
                if code in rejected:
                    continue
                cg = _relabelled(child, order)
                if keep is None or keep(cg):
                    nxt[code] = cg
                    grew = True
                else:
                    rejected.add(code)
            yield Enumerated(g, not grew)
        level = nxt


def enumerate_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """One representative per isomorphism class of graphs on ``n`` vertices."""
    _check_cap(n)
    for item in augment(n):
        if not connected_only or item.graph.is_connected():
            yield item.graph


def enumerate_minor_free(
    n: int, pattern: MinorPattern, timeout: float | None = DEFAULT_TIMEOUT
) -> Iterator[Enumerated]:
    """Isomorphism classes of ``pattern``-minor-free graphs on ``n`` vertices."""
    return augment(n, lambda g: has_minor(g, pattern, timeout) is None)


def count_graphs(n: int, connected_only: bool = False) -> int:
    return sum(1 for _ in enumerate_graphs(n, connected_only))


__all__ = [
    "Enumerated",
    "KNOWN_COUNTS",
    "KNOWN_CONNECTED",
    "MAX_ENUM_ORDER",
    "augment",
    "canonical_graph",
    "count_graphs",
    "enumerate_graphs",
    "enumerate_minor_free",
]
