"""Minor containment for complete, star and complete-bipartite patterns.

A minor model is given by branch sets: pairwise disjoint connected vertex
sets of the host, one per pattern vertex, with a host edge between the
sets of every pattern edge. All searches work on adjacency bitmasks.

For ``K_{s,t}`` the search chooses the ``s`` left branch sets first and then
packs right branch sets in what is left: singletons greedily, a vertex
disjoint path flow when ``s == 2``, and a small backtracking packing
otherwise. Before searching, the host is shrunk by reductions that keep the
answer unchanged (isolated and pendant vertices, series vertices when the
pattern has minimum degree 3) and split into blocks when the pattern is
2-connected.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import networkx as nx

from .errors import ClassificationError, MinorTimeout, ParameterError, PreconditionError, WitnessError
from .graph import Graph, bits, component_mask

DEFAULT_TIMEOUT = 10.0
# hosts at most this large skip the 2-separation split; plain search is faster there
SPLIT_MIN_ORDER = 10


@dataclass(frozen=True)
class MinorPattern:
    """``kind`` is ``"bipartite"`` (K_{a,b}, a <= b) or ``"complete"`` (K_a)."""

    kind: str
    a: int
    b: int = 0

    def __post_init__(self):
        if self.kind not in ("bipartite", "complete"):
            raise ParameterError(f"unknown pattern kind {self.kind!r}")
        if self.a < 1 or (self.kind == "bipartite" and self.b < 1):
            raise ParameterError("pattern parts must be >= 1")
        if self.kind == "bipartite" and self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @classmethod
    def kst(cls, s: int, t: int) -> MinorPattern:
        return cls("bipartite", s, t)

    @classmethod
    def star(cls, t: int) -> MinorPattern:
        return cls("bipartite", 1, t)

    @classmethod
    def clique(cls, k: int) -> MinorPattern:
        return cls("complete", k)

    @classmethod
    def parse(cls, text: str) -> MinorPattern:
        """Parse ``K2,3`` / ``K_{2,3}`` / ``K1,4`` / ``K5``."""
        m = re.fullmatch(r"\s*K_?\{?(\d+)(?:,(\d+))?\}?\s*", text)
        if not m:
            raise ParameterError(f"malformed pattern {text!r}")
        if m.group(2) is None:
            return cls.clique(int(m.group(1)))
        return cls.kst(int(m.group(1)), int(m.group(2)))

    @property
    def order(self) -> int:
        return self.a + self.b if self.kind == "bipartite" else self.a

    @property
    def min_degree(self) -> int:
        return self.a if self.kind == "bipartite" else self.a - 1

    @property
    def is_star(self) -> bool:
        return self.kind == "bipartite" and self.a == 1

    def edges(self) -> list[tuple[int, int]]:
        if self.kind == "bipartite":
            return [(i, self.a + j) for i in range(self.a) for j in range(self.b)]
        return list(combinations(range(self.a), 2))

    def graph(self) -> Graph:
        return Graph(self.order, self.edges())

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    @property
    def name(self) -> str:
        return f"K{self.a},{self.b}" if self.kind == "bipartite" else f"K{self.a}"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class MinorWitness:
    branch_sets: tuple[tuple[int, ...], ...]

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.branch_sets]


@dataclass(frozen=True)
class MinorResult:
    verdict: str  # "present" | "absent" | "timeout"
    witness: MinorWitness | None = None

    @property
    def present(self) -> bool:
        return self.verdict == "present"


class _Clock:
    __slots__ = ("deadline", "ticks")

    def __init__(self, timeout: float | None):
        self.deadline = None if timeout is None else time.monotonic() + timeout
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and not self.ticks & 255 and time.monotonic() > self.deadline:
            raise MinorTimeout("minor search exceeded its time cap")


def _low(m: int) -> int:
    return (m & -m).bit_length() - 1


def _neighbourhood(masks: Sequence[int], s: int) -> int:
    out = 0
    m = s
    while m:
        low = m & -m
        out |= masks[low.bit_length() - 1]
        m ^= low
    return out & ~s


def _connected_sets(masks, root: int, allowed: int, maxsize: int, clock: _Clock) -> Iterator[int]:
    """Connected sets containing ``root`` inside ``allowed``, each exactly once."""
    start = 1 << root

    def rec(cur: int, cand: int, banned: int, size: int):
        clock.tick()
        yield cur
        if size == maxsize:
            return
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            new_cand = (cand | masks[v]) & allowed & ~cur & ~low & ~banned
            yield from rec(cur | low, new_cand, banned, size + 1)
            banned |= low

    yield from rec(start, masks[root] & allowed, 0, 1)


# ---------------------------------------------------------------------------
# reductions


class _Host:
    """Mutable working copy: adjacency masks over ``alive`` vertices plus the
    original vertices folded into each surviving vertex."""

    def __init__(self, masks: Sequence[int], alive: int, merged: list[int]):
        self.masks = list(masks)
        self.alive = alive
        self.merged = merged

    def remove(self, v: int) -> None:
        bit = 1 << v
        for u in bits(self.masks[v]):
            self.masks[u] &= ~bit
        self.masks[v] = 0
        self.alive &= ~bit

    def contract_into(self, v: int, a: int) -> None:
        """Contract edge va, keeping a."""
        others = self.masks[v] & ~(1 << a)
        self.merged[a] |= self.merged[v]
        self.remove(v)
        for u in bits(others):
            self.masks[u] |= 1 << a
        self.masks[a] |= others

    def reduce(self, min_degree: int) -> None:
        changed = True
        while changed:
            changed = False
            for v in bits(self.alive):
                d = self.masks[v].bit_count()
                if d == 0 or (d == 1 and min_degree >= 2):
                    self.remove(v)
                    changed = True
                elif d == 2 and min_degree >= 3:
                    a = _low(self.masks[v])
                    self.contract_into(v, a)
                    changed = True

    def restrict(self, keep: int) -> _Host:
        masks = [m & keep if keep >> v & 1 else 0 for v, m in enumerate(self.masks)]
        return _Host(masks, keep, list(self.merged))

    def edge_count(self) -> int:
        return sum(self.masks[v].bit_count() for v in bits(self.alive)) // 2


def _blocks(masks: Sequence[int], alive: int) -> list[int]:
    """Vertex masks of the biconnected components (blocks with >= 3 vertices
    or bridges) of the graph induced on ``alive``; iterative Tarjan."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: list[int] = []
    counter = 0
    for root in bits(alive):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack_edges: list[tuple[int, int]] = []
        stack = [(root, -1, iter(bits(masks[root] & alive)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    continue
                if u not in disc:
                    disc[u] = low[u] = counter
                    counter += 1
                    stack_edges.append((v, u))
                    stack.append((u, v, iter(bits(masks[u] & alive))))
                    advanced = True
                    break
                if disc[u] < disc[v]:
                    stack_edges.append((v, u))
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    comp = 0
                    while True:
                        a, b = stack_edges.pop()
                        comp |= (1 << a) | (1 << b)
                        if (a, b) == (p, v):
                            break
                    out.append(comp)
    return out


def _is_planar(masks: Sequence[int], alive: int, apex: bool = False) -> bool:
    g = nx.Graph()
    verts = bits(alive)
    g.add_nodes_from(verts)
    for v in verts:
        for u in bits(masks[v] & alive):
            if u > v:
                g.add_edge(v, u)
    if apex:
        g.add_edges_from(("apex", v) for v in verts)
    return nx.check_planarity(g)[0]


# ---------------------------------------------------------------------------
# right-side packing for complete bipartite patterns


def _disjoint_paths(masks, region: int, src: int, dst: int, need: int, clock: _Clock) -> list[int] | None:
    """``need`` vertex-disjoint paths from ``src`` to ``dst`` inside ``region``.

    Unit vertex capacities via the usual in/out split; returns path vertex
    masks, or None when the maximum number of paths is below ``need``.
    """
    source, sink = "s", "t"
    res: dict = {source: {}, sink: {}}

    def add(a, b):
        res.setdefault(a, {})[b] = res.get(a, {}).get(b, 0) + 1
        res.setdefault(b, {}).setdefault(a, 0)

    for v in bits(region):
        add((v, 0), (v, 1))
        if src >> v & 1:
            add(source, (v, 0))
        if dst >> v & 1:
            add((v, 1), sink)
        for u in bits(masks[v] & region):
            add((v, 1), (u, 0))
    found = 0
    while found < need:
        clock.tick()
        prev = {source: None}
        queue = [source]
        for a in queue:
            if sink in prev:
                break
            for b, c in res[a].items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            return None
        b = sink
        while prev[b] is not None:
            a = prev[b]
            res[a][b] -= 1
            res[b][a] += 1
            b = a
        found += 1
    paths = []
    for first in list(res[source]):
        if res[first][source] == 0:
            continue  # no flow on this source arc
        pm = 0
        node = first
        while node != sink:
            v = node[0]
            pm |= 1 << v
            out = (v, 1)
            nxt = next(b for b in res[out] if b != (v, 0) and _carries(res, out, b))
            res[nxt][out] -= 1  # consume so parallel paths do not reuse it
            node = nxt
        paths.append(pm)
    return paths


def _carries(res, a, b) -> bool:
    """Arc a->b carries flow (its reverse residual is positive and it is a forward arc)."""
    if b == "t":
        return res[b].get(a, 0) > 0
    return b[1] == 0 and res[b].get(a, 0) > 0


def _pack_right(masks, region: int, touch: list[int], need: int, clock: _Clock) -> list[int] | None:
    """``need`` disjoint connected sets in ``region``, each meeting every mask in ``touch``."""
    if need <= 0:
        return []
    common = region
    for a in touch:
        common &= a
    singles = bits(common)
    if len(singles) >= need:
        return [1 << v for v in singles[:need]]
    out = [1 << v for v in singles]
    region &= ~common
    need -= len(singles)
    touch = [a & region for a in touch]
    if any(not a for a in touch):
        return None
    if len(touch) == 1:
        return None  # only singletons can serve a single left set
    if len(touch) == 2:
        rest = _disjoint_paths(masks, region, touch[0], touch[1], need, clock)
    else:
        rest = _pack_general(masks, region, touch, need, clock)
    return None if rest is None else out + rest


def _pack_bound(masks, region: int, touch: list[int]) -> int:
    total = 0
    left = region
    while left:
        comp = component_mask(masks, left & -left, region)
        left &= ~comp
        total += min((a & comp).bit_count() for a in touch)
    return total


def _pack_general(masks, region: int, touch: list[int], need: int, clock: _Clock) -> list[int] | None:
    if need == 0:
        return []
    if _pack_bound(masks, region, touch) < need:
        return None
    pivot = min(touch, key=lambda a: (a & region).bit_count()) & region
    v = _low(pivot)
    for s in _minimal_touching(masks, v, region, touch, clock):
        rest = _pack_general(masks, region & ~s, [a & ~s for a in touch], need - 1, clock)
        if rest is not None:
            return [s] + rest
    return _pack_general(masks, region & ~(1 << v), [a & ~(1 << v) for a in touch], need, clock)


def _minimal_touching(masks, root: int, region: int, touch: list[int], clock: _Clock) -> Iterator[int]:
    def ok(s: int) -> bool:
        return all(s & a for a in touch)

    def rec(cur: int, cand: int, banned: int):
        clock.tick()
        if ok(cur):
            yield cur
            return
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            new_cand = (cand | masks[v]) & region & ~cur & ~low & ~banned
            yield from rec(cur | low, new_cand, banned)
            banned |= low

    yield from rec(1 << root, masks[root] & region, 0)


# ---------------------------------------------------------------------------
# searches on a reduced block


def _search_bipartite(masks, alive: int, s: int, t: int, clock: _Clock) -> list[int] | None:
    """Branch sets (left sets then right sets) of a K_{s,t} model, or None."""
    verts = bits(alive)
    nv = len(verts)
    # seed from high degree vertices: try roots in decreasing degree order
    order = sorted(verts, key=lambda v: (-(masks[v] & alive).bit_count(), v))
    rank = {v: i for i, v in enumerate(order)}
    max_left = nv - t - (s - 1)
    if max_left < 1:
        return None

    for depth in range(1, max_left + 1):
        hit = _choose_left(masks, alive, s, t, depth, order, rank, [], 0, clock)
        if hit is not None:
            return hit
    return None


def _choose_left(masks, alive, s, t, depth, order, rank, chosen, used, clock):
    k = len(chosen)
    if k == s:
        if max(c.bit_count() for c in chosen) != depth:
            return None  # already covered at a smaller depth
        region = alive & ~used
        touch = [_neighbourhood(masks, c) & region for c in chosen]
        right = _pack_right(masks, region, touch, t, clock)
        if right is None:
            return None
        return chosen + right
    start = rank[_first_by_rank(chosen[-1], rank)] + 1 if chosen else 0
    budget_left = s - k - 1
    for idx in range(start, len(order)):
        root = order[idx]
        if used >> root & 1:
            continue
        # later left sets have roots after this one; vertices ranked before the
        # root may not join this set (each set is rooted at its best-ranked vertex)
        allowed = alive & ~used
        for v in order[:idx]:
            allowed &= ~(1 << v)
        allowed |= 1 << root
        if len(order) - idx - 1 < budget_left:
            break
        for cset in _connected_sets(masks, root, allowed, depth, clock):
            after = used | cset
            if (_neighbourhood(masks, cset) & alive & ~after).bit_count() < t:
                continue
            if any((_neighbourhood(masks, c) & alive & ~after).bit_count() < t for c in chosen):
                continue
            hit = _choose_left(masks, alive, s, t, depth, order, rank, chosen + [cset], after, clock)
            if hit is not None:
                return hit
    return None


def _first_by_rank(cset: int, rank: dict[int, int]) -> int:
    return min(bits(cset), key=rank.__getitem__)


def _search_complete(masks, alive: int, pattern_adj: list[int], clock: _Clock) -> list[int] | None:
    """Branch sets for a vertex-transitive pattern (K_k) by iterative deepening on set size."""
    k = len(pattern_adj)
    verts = bits(alive)
    if len(verts) < k:
        return None
    order = sorted(verts, key=lambda v: (-(masks[v] & alive).bit_count(), v))
    rank = {v: i for i, v in enumerate(order)}
    max_size = len(verts) - k + 1
    for depth in range(1, max_size + 1):
        hit = _place(masks, alive, pattern_adj, depth, order, rank, [], 0, clock)
        if hit is not None:
            return hit
    return None


def _place(masks, alive, padj, depth, order, rank, chosen, used, clock):
    i = len(chosen)
    if i == len(padj):
        return chosen if max(c.bit_count() for c in chosen) == depth else None
    start = rank[_first_by_rank(chosen[-1], rank)] + 1 if chosen else 0
    need_adj = [chosen[j] for j in range(i) if padj[i] >> j & 1]
    deg_needed = padj[i].bit_count()
    for idx in range(start, len(order)):
        root = order[idx]
        if used >> root & 1:
            continue
        allowed = alive & ~used
        for v in order[:idx]:
            allowed &= ~(1 << v)
        allowed |= 1 << root
        for cset in _connected_sets(masks, root, allowed, depth, clock):
            nb = _neighbourhood(masks, cset)
            if any(not nb & c for c in need_adj):
                continue
            if (nb & alive & ~used & ~cset).bit_count() + len(need_adj) < deg_needed:
                continue
            hit = _place(masks, alive, padj, depth, order, rank, chosen + [cset], used | cset, clock)
            if hit is not None:
                return hit
    return None


# ---------------------------------------------------------------------------
# public API


def _find_on_host(host: _Host, h: MinorPattern, clock: _Clock) -> list[int] | None:
    """Search ``host`` and return branch sets as masks of original vertices."""
    host.reduce(h.min_degree)
    nv = host.alive.bit_count()
    if nv < h.order or host.edge_count() < h.edge_count:
        return None
    two_connected = h.min_degree >= 2 and h.order >= 3
    if two_connected:
        blocks = [b for b in _blocks(host.masks, host.alive) if b.bit_count() >= h.order]
        if len(blocks) != 1 or blocks[0] != host.alive:
            for b in sorted(blocks, key=lambda m: -m.bit_count()):
                hit = _find_on_host(host.restrict(b), h, clock)
                if hit is not None:
                    return hit
            return None
    if _certainly_absent(host, h):
        return None
    sides = _universal_split(host, h)
    if sides is not None:
        for side in sides:
            hit = _find_on_host(host.restrict(side), h, clock)
            if hit is not None:
                return hit
        return None
    if _three_connected(h) and nv > SPLIT_MIN_ORDER:
        sep = _separation_pair(host)
        if sep is not None:
            return _find_across_split(host, h, clock, *sep)
    if h.kind == "bipartite":
        sets = _search_bipartite(host.masks, host.alive, h.a, h.b, clock)
    else:
        padj = [0] * h.order
        for u, v in h.edges():
            padj[u] |= 1 << v
            padj[v] |= 1 << u
        sets = _search_complete(host.masks, host.alive, padj, clock)
    return None if sets is None else [_expand(host, b) for b in sets]


def _connectivity(h: MinorPattern) -> int:
    if h.kind == "bipartite":
        return h.a
    return h.a - 1


def _universal_split(host: _Host, h: MinorPattern) -> list[int] | None:
    """Sides of the clique separator formed by the universal vertices.

    When the set X of vertices adjacent to all others is smaller than the
    pattern's connectivity and ``host - X`` is disconnected, every model
    of the pattern fits inside ``C + X`` for one component C, so the
    search can run on each side separately. Returns the side masks, or
    None when no such split exists.
    """
    alive = host.alive
    nv = alive.bit_count()
    univ = 0
    for v in bits(alive):
        if (host.masks[v] & alive).bit_count() == nv - 1:
            univ |= 1 << v
    if not univ or univ.bit_count() >= _connectivity(h):
        return None
    inner = alive & ~univ
    comps = []
    while inner:
        c = component_mask(host.masks, inner & -inner, alive & ~univ)
        comps.append(c)
        inner &= ~c
    if len(comps) < 2:
        return None
    sides = [c | univ for c in comps if (c | univ).bit_count() >= h.order]
    return sorted(sides, key=lambda m: -m.bit_count())


def _three_connected(h: MinorPattern) -> bool:
    if h.kind == "bipartite":
        return h.a >= 3
    return h.a >= 4


def _separation_pair(host: _Host) -> tuple[int, int, list[int]] | None:
    """A pair {x, y} whose removal disconnects the (2-connected) host.

    Returns ``(x, y, components)`` with component vertex masks, or None
    when the host is 3-connected.
    """
    order = sorted(bits(host.alive), key=lambda v: -host.masks[v].bit_count())
    for x in order:
        rest = host.alive & ~(1 << x)
        blocks = _blocks(host.masks, rest)
        if len(blocks) < 2:
            continue
        seen = 0
        for b in blocks:
            shared = seen & b
            if shared:
                y = _low(shared)
                break
            seen |= b
        else:
            continue
        inner = rest & ~(1 << y)
        comps = []
        left = inner
        while left:
            c = component_mask(host.masks, left & -left, inner)
            comps.append(c)
            left &= ~c
        if len(comps) >= 2:
            return x, y, comps
    return None


def _find_across_split(host: _Host, h: MinorPattern, clock: _Clock, x: int, y: int, comps: list[int]) -> list[int] | None:
    """Search each side of the 2-separation {x, y} with xy added as a virtual edge.

    A 3-connected pattern lies within one side. When a witness holds both
    x and y, another side (connected, touching both) is folded into the
    branch set of x so every adjacency it relied on is realised.
    """
    pair = (1 << x) | (1 << y)
    for i, c in sorted(enumerate(comps), key=lambda ic: -ic[1].bit_count()):
        keep = c | pair
        if keep.bit_count() < h.order:
            continue
        side = host.restrict(keep)
        side.masks[x] |= 1 << y
        side.masks[y] |= 1 << x
        side.merged = list(host.merged)
        hit = _find_on_host(side, h, clock)
        if hit is None:
            continue
        ox, oy = host.merged[x], host.merged[y]
        ix = next((j for j, b in enumerate(hit) if b & ox), None)
        iy = next((j for j, b in enumerate(hit) if b & oy), None)
        if ix is not None and iy is not None and not host.masks[x] >> y & 1:
            other = comps[0] if i != 0 else comps[1]
            hit[ix] |= _expand(host, other)
        return hit
    return None


def _certainly_absent(host: _Host, h: MinorPattern) -> bool:
    """Cheap sufficient conditions for absence on a reduced block."""
    if h.kind == "bipartite":
        if h.a >= 3 and h.b >= 3:
            return _is_planar(host.masks, host.alive)
        if h.a == 2 and h.b >= 3:
            # outerplanar graphs have no K_{2,3} minor
            return _is_planar(host.masks, host.alive, apex=True)
        return False
    if h.a >= 5:
        return _is_planar(host.masks, host.alive)
    if h.a == 4:
        return _is_planar(host.masks, host.alive, apex=True)
    return False


def find_minor(g: Graph, h: MinorPattern, timeout: float | None = DEFAULT_TIMEOUT) -> MinorResult:
    """Decide whether ``g`` has an ``h`` minor; the verdict may be ``"timeout"``."""
    clock = _Clock(timeout)
    host = _Host(g.masks, (1 << g.order) - 1, [1 << v for v in range(g.order)])
    try:
        sets = _find_on_host(host, h, clock)
    except MinorTimeout:
        return MinorResult("timeout")
    if sets is None:
        return MinorResult("absent")
    branch = tuple(tuple(bits(s)) for s in sets)
    return MinorResult("present", MinorWitness(branch))


def _expand(host: _Host, s: int) -> int:
    out = 0
    for v in bits(s):
        out |= host.merged[v]
    return out


def has_minor(g: Graph, h: MinorPattern, timeout: float | None = DEFAULT_TIMEOUT) -> MinorWitness | None:
    """Witness for an ``h`` minor of ``g``, or None when there is none.

    Raises:
        MinorTimeout: when the search exceeds ``timeout`` seconds.
    """
    res = find_minor(g, h, timeout)
    if res.verdict == "timeout":
        raise MinorTimeout(f"{h} minor query on order {g.order} timed out")
    return res.witness


def is_minor_free(g: Graph, h: MinorPattern, timeout: float | None = DEFAULT_TIMEOUT) -> bool:
    return has_minor(g, h, timeout) is None


def verify_witness(g: Graph, h: MinorPattern, w: MinorWitness) -> bool:
    n = g.order
    sets = w.branch_sets
    for b in sets:
        for v in b:
            if not isinstance(v, int) or not 0 <= v < n:
                raise WitnessError(f"vertex {v!r} out of range for order {n}")
    if len(sets) != h.order:
        return False
    masks = []
    seen = 0
    for b in sets:
        m = 0
        for v in b:
            m |= 1 << v
        if not m or m & seen:
            return False
        seen |= m
        if component_mask(g.masks, m & -m, m) != m:
            return False
        masks.append(m)
    for u, v in h.edges():
        if not _neighbourhood(g.masks, masks[u]) & masks[v]:
            return False
    return True


def has_minor_naive(g: Graph, h: MinorPattern) -> bool:
    """Reference oracle: try every assignment of vertices to branch sets.

    Vertices are labelled "unused" or given a block index (restricted growth
    so each partition appears once); complete assignments with exactly
    ``h.order`` connected blocks are tested for an ``h`` subgraph in the
    block quotient.
    """
    k = h.order
    n = g.order
    if n < k:
        return False
    masks = g.masks
    padj = [0] * k
    for u, v in h.edges():
        padj[u] |= 1 << v
        padj[v] |= 1 << u
    blocks = [0] * k

    def quotient_has_pattern() -> bool:
        qadj = [_neighbourhood(masks, b) for b in blocks]
        cross = [[bool(qadj[i] & blocks[j]) for j in range(k)] for i in range(k)]
        assign = [-1] * k

        def place(i: int, free: int) -> bool:
            if i == k:
                return True
            for b in range(k):
                if free >> b & 1 and all(
                    cross[b][assign[j]] for j in range(i) if padj[i] >> j & 1
                ):
                    assign[i] = b
                    if place(i + 1, free & ~(1 << b)):
                        return True
            return False

        return place(0, (1 << k) - 1)

    def rec(v: int, used_blocks: int) -> bool:
        if n - v < k - used_blocks:
            return False
        if v == n:
            if any(component_mask(masks, b & -b, b) != b for b in blocks):
                return False
            return quotient_has_pattern()
        if rec(v + 1, used_blocks):
            return True
        for b in range(min(used_blocks + 1, k)):
            blocks[b] |= 1 << v
            ok = rec(v + 1, max(used_blocks, b + 1))
            blocks[b] &= ~(1 << v)
            if ok:
                return True
        return False

    return rec(0, 0)


def is_edge_maximal(g: Graph, h: MinorPattern, timeout: float | None = DEFAULT_TIMEOUT) -> bool:
    """True iff ``g`` is h-minor free and every added non-edge creates an h minor.

    Raises:
        PreconditionError: if ``g`` already has an h minor.
    """
    if has_minor(g, h, timeout) is not None:
        raise PreconditionError(f"graph already has a {h} minor")
    for u, v in g.non_edges():
        if has_minor(g.add_edge(u, v), h, timeout) is None:
            return False
    return True


def has_K2t_subgraph(g: Graph, t: int) -> bool:
    """Some vertex pair has at least ``t`` common neighbours."""
    if t < 1:
        raise ParameterError("t must be >= 1")
    masks = g.masks
    for u in range(g.order):
        for v in range(u + 1, g.order):
            if (masks[u] & masks[v]).bit_count() >= t:
                return True
    return False


def edge_bound(h: MinorPattern, n: int) -> int | None:
    """Edge bound for h-minor-free graphs of order n, when one is known."""
    if h == MinorPattern.kst(2, 3):
        return 2 * n - 2 if n >= 1 else None
    if h == MinorPattern.kst(3, 3):
        return 3 * n - 5 if n >= 3 else None
    if h.is_star and h.b >= 3:
        return n + h.b * (h.b - 3) // 2 if n >= h.b + 2 else None
    return None


@dataclass(frozen=True)
class EdgeBoundReport:
    pattern: str
    order: int
    edges: int
    bound: int | None
    holds: bool
    equality: bool


def edge_bound_report(g: Graph, h: MinorPattern, timeout: float | None = DEFAULT_TIMEOUT) -> EdgeBoundReport:
    """Compare e(g) with the edge bound of the claimed h-minor-free class.

    Raises:
        ClassificationError: when ``g`` is not h-minor free, or no bound is known.
    """
    if has_minor(g, h, timeout) is not None:
        raise ClassificationError(f"graph is not {h}-minor free")
    bound = edge_bound(h, g.order)
    if bound is None:
        raise ClassificationError(f"no edge bound for {h} at order {g.order}")
    e = g.size
    return EdgeBoundReport(h.name, g.order, e, bound, e <= bound, e == bound)
