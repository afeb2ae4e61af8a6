"""Simple undirected graphs stored as tuples of neighbourhood bitmasks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class GraphError(ValueError):
    """Raised for invalid graph construction arguments."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[v]`` is an integer whose bit ``u`` is set iff ``u`` and ``v`` are
    adjacent.  Python integers are unbounded, so rows are single words for
    the small graphs this package mostly handles and still work beyond 64
    vertices for the large family members.
    """

    __slots__ = ("n", "adj", "m")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 0 or len(adj) != n:
            raise GraphError(f"adjacency has {len(adj)} rows for n={n}")
        full = (1 << n) - 1
        rows = tuple(int(r) for r in adj)
        for v, row in enumerate(rows):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex outside 0..{n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", rows)
        object.__setattr__(self, "m", sum(r.bit_count() for r in rows) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...], m: int) -> "Graph":
        # Skips validation; callers guarantee a symmetric loop-free relation.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", rows)
        object.__setattr__(g, "m", m)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, edges={self.edges()})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.adj]

    def to_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphError("repeated vertex in induced subgraph request")
        adj = [0] * len(vertices)
        for i, v in enumerate(vertices):
            for u in bits(self.adj[v]):
                j = index.get(u)
                if j is not None:
                    adj[i] |= 1 << j
        return Graph(len(vertices), adj)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return Graph(self.n, adj)

    def without_isolated(self) -> "Graph":
        keep = [v for v in range(self.n) if self.adj[v]]
        return self.induced(keep)


# -- primitives ---------------------------------------------------------------


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(s: int, t: int) -> Graph:
    if s < 1 or t < 1:
        raise GraphError(f"complete_bipartite needs sizes >= 1, got ({s}, {t})")
    return Graph.from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def independent(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"independent set needs n >= 1, got {n}")
    return Graph(n, [0] * n)


PRIMITIVES = {
    "cycle": cycle,
    "path": path,
    "complete_bipartite": complete_bipartite,
    "complete": complete,
    "independent": independent,
}


def build_primitive(kind: str, *sizes: int) -> Graph:
    try:
        fn = PRIMITIVES[kind]
    except KeyError:
        raise GraphError(f"unknown primitive {kind!r}") from None
    return fn(*sizes)


# -- transforms ---------------------------------------------------------------


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} not in 0..{g.n - 1}")


def blow_up(g: Graph, v: int, k: int) -> Graph:
    """Replace ``v`` by an independent set of ``k`` copies.

    Vertex ``v`` keeps its label; the ``k - 1`` new copies are appended.
    """
    _check_vertex(g, v)
    if k < 1:
        raise GraphError(f"blow-up size must be >= 1, got {k}")
    n = g.n + k - 1
    adj = list(g.adj) + [0] * (k - 1)
    for c in range(g.n, n):
        for u in bits(g.adj[v]):
            adj[c] |= 1 << u
            adj[u] |= 1 << c
    return Graph(n, adj)


def subdivide_edge(g: Graph, u: int, v: int) -> Graph:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        raise GraphError(f"no edge ({u}, {v}) to subdivide")
    w = g.n
    adj = list(g.adj) + [(1 << u) | (1 << v)]
    adj[u] = (adj[u] & ~(1 << v)) | (1 << w)
    adj[v] = (adj[v] & ~(1 << u)) | (1 << w)
    return Graph(g.n + 1, adj)


def add_pendant(g: Graph, v: int) -> Graph:
    _check_vertex(g, v)
    adj = list(g.adj) + [1 << v]
    adj[v] |= 1 << g.n
    return Graph(g.n + 1, adj)


def add_edges(g: Graph, pairs: Iterable[tuple[int, int]]) -> Graph:
    adj = list(g.adj)
    for u, v in pairs:
        _check_vertex(g, u)
        _check_vertex(g, v)
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if adj[u] >> v & 1:
            raise GraphError(f"edge ({u}, {v}) already present")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(g.n, adj)


def delete_edges(g: Graph, pairs: Iterable[tuple[int, int]]) -> Graph:
    adj = list(g.adj)
    for u, v in pairs:
        _check_vertex(g, u)
        _check_vertex(g, v)
        if not adj[u] >> v & 1:
            raise GraphError(f"edge ({u}, {v}) not present")
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph(g.n, adj)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    adj = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(g.n + h.n, adj)


# -- predicates ---------------------------------------------------------------


@dataclass(frozen=True)
class ClassifyReport:
    triangle_free: bool
    bipartite: bool
    connected: bool
    shortest_odd_cycle: Optional[int]
    components: int


def components(g: Graph) -> list[int]:
    """Vertex masks of the connected components, ordered by least vertex."""
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_triangle_free(g: Graph) -> bool:
    for u in range(g.n):
        for v in bits(g.adj[u] >> (u + 1) << (u + 1)):
            if g.adj[u] & g.adj[v]:
                return False
    return True


def two_coloring(g: Graph) -> Optional[list[int]]:
    """A proper 2-colouring as a 0/1 list, or ``None`` if none exists."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in bits(g.adj[v]):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def is_complete_bipartite(g: Graph) -> bool:
    """True iff the non-isolated part of ``g`` is some K_{s,t}."""
    h = g.without_isolated()
    if h.n == 0:
        return False
    color = two_coloring(h)
    if color is None or not is_connected(h):
        return False
    return h.m == color.count(0) * color.count(1)


def shortest_odd_cycle(g: Graph) -> Optional[int]:
    """Length of a shortest odd cycle, or ``None`` for bipartite graphs.

    A BFS from ``s`` that meets an edge inside one layer ``d`` closes an odd
    closed walk of length ``2d + 1`` through ``s``; the minimum over all
    roots is the odd girth.
    """
    best = None
    for s in range(g.n):
        layer = seen = 1 << s
        d = 0
        while layer and (best is None or 2 * d + 1 < best):
            if any(g.adj[v] & layer for v in bits(layer)):
                best = 2 * d + 1
                break
            nxt = 0
            for v in bits(layer):
                nxt |= g.adj[v]
            layer = nxt & ~seen
            seen |= layer
            d += 1
    return best


def classify(g: Graph) -> ClassifyReport:
    bip = is_bipartite(g)
    return ClassifyReport(
        triangle_free=is_triangle_free(g),
        bipartite=bip,
        connected=is_connected(g),
        shortest_odd_cycle=None if bip else shortest_odd_cycle(g),
        components=len(components(g)),
    )


def triangle_count(g: Graph) -> int:
    """Exact number of 3-cliques, each counted once via its least vertex pair."""
    total = 0
    for u in range(g.n):
        higher = g.adj[u] >> (u + 1) << (u + 1)
        for v in bits(higher):
            total += (g.adj[v] & higher >> (v + 1) << (v + 1)).bit_count()
    return total
