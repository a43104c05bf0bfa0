"""Simple undirected graphs, graph6 I/O and the extremal family constructors.

Adjacency is stored as one integer bitmask per vertex; bit ``u`` of
``masks[v]`` is set iff ``uv`` is an edge. Graphs are immutable: every
modifier returns a new :class:`Graph`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DomainError, Graph6Error, ParameterError, SizeError

MAX_ORDER = 1 << 18


class Graph:
    __slots__ = ("_n", "_masks", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise SizeError(f"negative order {n}")
        if n > MAX_ORDER:
            raise SizeError(f"order {n} exceeds {MAX_ORDER}")
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for order {n}")
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._n = n
        self._masks = tuple(masks)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Graph:
        """Build from adjacency bitmasks, trusting symmetry (checked cheaply)."""
        g = cls.__new__(cls)
        g._n = len(masks)
        g._masks = tuple(masks)
        for v, m in enumerate(g._masks):
            if m >> v & 1:
                raise ParameterError(f"loop at vertex {v}")
            if m >> g._n:
                raise ParameterError(f"neighbour of {v} out of range")
        for v, m in enumerate(g._masks):
            for u in _bits(m):
                if not g._masks[u] >> v & 1:
                    raise ParameterError(f"asymmetric adjacency at ({v}, {u})")
        return g

    @classmethod
    def _trusted(cls, masks: Sequence[int]) -> Graph:
        g = cls.__new__(cls)
        g._n = len(masks)
        g._masks = tuple(masks)
        return g

    # -- basic accessors -------------------------------------------------

    @property
    def order(self) -> int:
        return self._n

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def __len__(self) -> int:
        return self._n

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour tuples, one per vertex."""
        return tuple(tuple(_bits(m)) for m in self._masks)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return self._masks[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self._masks)

    @cached_property
    def size(self) -> int:
        """Number of edges e(G)."""
        return sum(self.degrees) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, m in enumerate(self._masks):
            for u in _bits(m >> (v + 1)):
                yield v, v + 1 + u

    def non_edges(self) -> Iterator[tuple[int, int]]:
        full = (1 << self._n) - 1
        for v, m in enumerate(self._masks):
            rest = ~m & full & ~((1 << (v + 1)) - 1)
            for u in _bits(rest):
                yield v, u

    # -- derived graphs --------------------------------------------------

    def add_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise ParameterError(f"loop at vertex {u}")
        masks = list(self._masks)
        masks[u] |= 1 << v
        masks[v] |= 1 << u
        return Graph._trusted(masks)

    def remove_edge(self, u: int, v: int) -> Graph:
        masks = list(self._masks)
        masks[u] &= ~(1 << v)
        masks[v] &= ~(1 << u)
        return Graph._trusted(masks)

    def edit(self, remove: Iterable[tuple[int, int]] = (), add: Iterable[tuple[int, int]] = ()) -> Graph:
        masks = list(self._masks)
        for u, v in remove:
            masks[u] &= ~(1 << v)
            masks[v] &= ~(1 << u)
        for u, v in add:
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return Graph._trusted(masks)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self._n)):
            raise ParameterError("relabelling is not a permutation")
        masks = [0] * self._n
        for v, m in enumerate(self._masks):
            pm = 0
            for u in _bits(m):
                pm |= 1 << perm[u]
            masks[perm[v]] = pm
        return Graph._trusted(masks)

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled 0..k-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        masks = []
        for v in vertices:
            m = 0
            for u in _bits(self._masks[v]):
                i = index.get(u)
                if i is not None:
                    m |= 1 << i
            masks.append(m)
        return Graph._trusted(masks)

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples, ordered by smallest vertex."""
        seen = 0
        out = []
        for v in range(self._n):
            if seen >> v & 1:
                continue
            comp = component_mask(self._masks, 1 << v)
            seen |= comp
            out.append(tuple(_bits(comp)))
        return out

    def is_connected(self) -> bool:
        if self._n == 0:
            return True
        return component_mask(self._masks, 1) == (1 << self._n) - 1

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self._n, self._n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def signless_laplacian(self) -> np.ndarray:
        q = self.adjacency_matrix()
        q[np.diag_indices(self._n)] = self.degrees
        return q

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._masks == other._masks

    def __hash__(self) -> int:
        return hash(self._masks)

    def __repr__(self) -> str:
        return f"Graph(order={self._n}, size={self.size})"


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def bits(m: int) -> list[int]:
    return list(_bits(m))


def component_mask(masks: Sequence[int], seed: int, within: int = -1) -> int:
    """Vertices reachable from ``seed`` inside the vertex set ``within``."""
    comp = seed
    frontier = seed
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        nxt &= within & ~comp
        comp |= nxt
        frontier = nxt
    return comp


# -- small named graphs --------------------------------------------------


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted([full & ~(1 << v) for v in range(n)])


def empty(n: int) -> Graph:
    return Graph._trusted([0] * n)


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


# -- operations ------------------------------------------------------------


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    masks: list[int] = []
    for g in graphs:
        off = len(masks)
        masks.extend(m << off for m in g.masks)
    if len(masks) > MAX_ORDER:
        raise SizeError(f"union order {len(masks)} exceeds {MAX_ORDER}")
    return Graph._trusted(masks)


def join(g: Graph, h: Graph) -> Graph:
    """Union of ``g`` and ``h`` plus every edge between them."""
    a, b = g.order, h.order
    if a + b > MAX_ORDER:
        raise SizeError(f"join order {a + b} exceeds {MAX_ORDER}")
    left = (1 << a) - 1
    right = ((1 << b) - 1) << a
    masks = [m | right for m in g.masks]
    masks.extend((m << a) | left for m in h.masks)
    return Graph._trusted(masks)


def copies(k: int, g: Graph) -> Graph:
    return disjoint_union([g] * k)


@dataclass(frozen=True)
class FamilyParams:
    """Decomposition ``n - s + 1 = p*t + r`` with ``0 <= r < t``."""

    s: int
    t: int
    n: int
    p: int
    r: int

    def __post_init__(self):
        if self.n - self.s + 1 != self.p * self.t + self.r:
            raise ParameterError("n - s + 1 != p*t + r")
        if not 0 <= self.r < self.t:
            raise ParameterError("remainder out of range")

    @classmethod
    def of(cls, s: int, t: int, n: int) -> FamilyParams:
        p, r = divmod(n - s + 1, t)
        return cls(s, t, n, p, r)

    @property
    def edge_count(self) -> int:
        s, n, p, t, r = self.s, self.n, self.p, self.t, self.r
        return (s - 1) * (s - 2) // 2 + (s - 1) * (n - s + 1) + p * t * (t - 1) // 2 + r * (r - 1) // 2


def build_extremal_F(s: int, t: int, n: int) -> tuple[Graph, FamilyParams]:
    """Build ``K_{s-1} v (p K_t u K_r)``.

    Labels: the dominating clique takes ``0..s-2``, the ``p`` copies of
    ``K_t`` follow in consecutive blocks, and ``K_r`` (absent when r = 0)
    comes last.
    """
    if s < 2:
        raise ParameterError(f"s must be >= 2, got {s}")
    if s > t:
        raise ParameterError(f"need s <= t, got s={s}, t={t}")
    if n < s - 1:
        raise ParameterError(f"need n >= s - 1, got n={n}")
    params = FamilyParams.of(s, t, n)
    parts = [complete(t)] * params.p
    if params.r:
        parts.append(complete(params.r))
    return join(complete(s - 1), disjoint_union(parts)), params


@dataclass(frozen=True)
class DegreeStats:
    sequence: tuple[int, ...]
    edges: int

    @property
    def max_degree(self) -> int:
        if not self.sequence:
            raise DomainError("maximum degree of the order-0 graph")
        return self.sequence[0]

    @property
    def second_degree(self) -> int:
        """Largest degree after removing one vertex of maximum degree."""
        if len(self.sequence) < 2:
            raise DomainError("second largest degree needs order >= 2")
        return self.sequence[1]


def degree_stats(g: Graph) -> DegreeStats:
    if g.order < 1:
        raise DomainError("degree statistics need order >= 1")
    return DegreeStats(tuple(sorted(g.degrees, reverse=True)), g.size)


# -- graph6 ------------------------------------------------------------------

_HEADER = ">>graph6<<"


def write_graph6(g: Graph) -> str:
    n = g.order
    if n <= 62:
        out = [chr(n + 63)]
    elif n <= 258047:
        out = [chr(126)] + [chr(((n >> sh) & 63) + 63) for sh in (12, 6, 0)]
    else:
        out = [chr(126), chr(126)] + [chr(((n >> sh) & 63) + 63) for sh in (30, 24, 18, 12, 6, 0)]
    masks = g.masks
    acc = 0
    nbits = 0
    for j in range(1, n):
        mj = masks[j]
        for i in range(j):
            acc = (acc << 1) | (mj >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    line = text.rstrip("\r\n")
    start = 0
    if line.startswith(_HEADER):
        start = len(_HEADER)
    data = line[start:]
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside 63..126", start + i)
    if not data:
        raise Graph6Error("empty graph6 line", start)
    vals = [ord(c) - 63 for c in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated 8-byte order header", start + len(vals))
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated 4-byte order header", start + len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds {MAX_ORDER}", start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated bit field: need {nbytes} bytes, got {len(body)}", start + len(vals))
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after bit field", start + pos + nbytes)
    pad = nbytes * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("non-zero padding bits", start + pos + nbytes - 1)
    masks = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            k += 1
    return Graph._trusted(masks)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield parse_graph6(line)
