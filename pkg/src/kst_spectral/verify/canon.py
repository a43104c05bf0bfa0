"""Canonical labelling of small graphs by partition refinement and individualisation.

The canonical labelling is the leaf of the individualisation-refinement
search tree whose relabelled upper-triangle bit string (graph6 order) is
largest. Automorphisms discovered at equal leaves prune sibling branches
that lie in the same orbit.
"""

from __future__ import annotations

from typing import Sequence

from ..graph import Graph, write_graph6


def _refine(masks: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of the ordered partition ``cells``."""
    cells = [c[:] for c in cells]
    queue = []
    for c in cells:
        m = 0
        for v in c:
            m |= 1 << v
        queue.append(m)
    qi = 0
    while qi < len(queue):
        w = queue[qi]
        qi += 1
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            counts = [(masks[v] & w).bit_count() for v in cell]
            first = counts[0]
            if all(c == first for c in counts):
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v, c in zip(cell, counts):
                groups.setdefault(c, []).append(v)
            for key in sorted(groups):
                frag = groups[key]
                out.append(frag)
                m = 0
                for v in frag:
                    m |= 1 << v
                queue.append(m)
        cells = out
        if len(cells) == len(masks):
            break
    return cells


def _code(masks: Sequence[int], order: Sequence[int]) -> int:
    acc = 0
    for j in range(1, len(order)):
        mj = masks[order[j]]
        for i in range(j):
            acc = (acc << 1) | (mj >> order[i] & 1)
    return acc


def _orbit_rep(gens: list[list[int]], n: int) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canonical_labeling(g: Graph) -> tuple[list[int], int, list[list[int]]]:
    """Return ``(order, code, automorphisms)``.

    ``order[i]`` is the vertex placed at canonical position ``i``; ``code`` is
    the canonical upper-triangle bit string as an integer; ``automorphisms``
    are the generators found during the search (as permutations of vertices).
    """
    n = g.order
    masks = g.masks
    if n <= 1:
        return list(range(n)), 0, []
    # split by degree first; refinement does the rest
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(masks[v].bit_count(), []).append(v)
    start = _refine(masks, [by_deg[d] for d in sorted(by_deg)])

    best_code = -1
    best_order: list[int] = []
    leaves: dict[int, list[int]] = {}
    autos: list[list[int]] = []

    def visit(cells: list[list[int]], prefix: list[int]) -> None:
        nonlocal best_code, best_order
        if len(cells) == n:
            order = [c[0] for c in cells]
            code = _code(masks, order)
            seen = leaves.get(code)
            if seen is not None:
                perm = [0] * n
                for a, b in zip(seen, order):
                    perm[a] = b
                autos.append(perm)
                return
            leaves[code] = order
            if code > best_code:
                best_code, best_order = code, order
            return
        idx = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        target = cells[idx]
        explored: list[int] = []
        for v in target:
            if explored:
                fixing = [a for a in autos if all(a[p] == p for p in prefix)]
                if fixing:
                    rep = _orbit_rep(fixing, n)
                    if any(rep[v] == rep[u] for u in explored):
                        continue
            split = cells[:idx] + [[v], [u for u in target if u != v]] + cells[idx + 1 :]
            visit(_refine(masks, split), prefix + [v])
            explored.append(v)

    visit(start, [])
    return best_order, best_code, autos


def canonical_graph(g: Graph) -> Graph:
    order, _, _ = canonical_labeling(g)
    perm = [0] * g.order
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def canonical_form(g: Graph) -> str:
    """graph6 string of the canonical relabelling; equal iff isomorphic."""
    return write_graph6(canonical_graph(g))


def canonical_key(g: Graph) -> tuple[int, int]:
    """Hashable canonical invariant ``(order, code)``; cheaper than the string."""
    _, code, _ = canonical_labeling(g)
    return g.order, code
