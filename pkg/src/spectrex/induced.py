"""Induced subgraph search and the partition of vertices around an induced C5."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

from .graph import Graph, GraphError, bits, mask_of

# Non-adjacent index pairs of a 5-cycle u1..u5 (1-based), i.e. the possible
# neighbour pairs of an outside vertex in a triangle-free host.
PAIRS = ((1, 3), (2, 4), (3, 5), (1, 4), (2, 5))


def _embeddings(g: Graph, h: Graph) -> Iterator[list[int]]:
    s = h.n
    full = (1 << g.n) - 1
    deg_g = g.degrees()
    deg_h = h.degrees()
    image = [0] * s

    def extend(i: int, used: int) -> Iterator[list[int]]:
        if i == s:
            yield list(image)
            return
        cand = full & ~used
        for j in range(i):
            if h.adj[i] >> j & 1:
                cand &= g.adj[image[j]]
            else:
                cand &= ~g.adj[image[j]]
        for v in bits(cand):
            if deg_g[v] < deg_h[i]:
                continue
            image[i] = v
            yield from extend(i + 1, used | (1 << v))

    if s <= g.n:
        yield from extend(0, 0)


def contains_induced(g: Graph, h: Graph) -> Optional[list[int]]:
    """First induced embedding of ``h`` in ``g`` (image[i] hosts h-vertex i).

    Candidates are tried in increasing order for h-vertices 0, 1, ..., so the
    result is the lexicographically least embedding.
    """
    return next(_embeddings(g, h), None)


def count_induced(g: Graph, h: Graph) -> int:
    """Number of injective induced embeddings (labelled copies times |Aut(h)|)."""
    return sum(1 for _ in _embeddings(g, h))


def induced_c5s(g: Graph, limit: Optional[int] = None) -> list[tuple[int, ...]]:
    """Induced 5-cycles, each once, as (a, b, c, d, e) with a least and b < e."""
    out = []
    adj = g.adj
    for a in range(g.n):
        higher = ~((1 << (a + 1)) - 1)
        na = adj[a] & higher
        for b in bits(na):
            for e in bits(na & ~((1 << (b + 1)) - 1)):
                if adj[b] >> e & 1:
                    continue
                # c ~ b, d ~ e, c ~ d, no chords back to a, b, e
                for c in bits(adj[b] & higher & ~adj[a] & ~adj[e] & ~(1 << e)):
                    for d in bits(adj[c] & adj[e] & higher & ~adj[a] & ~adj[b] & ~(1 << b)):
                        out.append((a, b, c, d, e))
                        if limit is not None and len(out) >= limit:
                            return out
    return out


def find_induced_c5(g: Graph) -> Optional[tuple[int, ...]]:
    found = induced_c5s(g, limit=1)
    return found[0] if found else None


def _cyclic_order(g: Graph, s: Union[int, Sequence[int]]) -> tuple[int, ...]:
    if isinstance(s, int):
        verts = list(bits(s))
        if len(verts) != 5:
            raise GraphError(f"S must have 5 vertices, got {len(verts)}")
        smask = s
        order = [verts[0]]
        prev = -1
        while len(order) < 5:
            nxt = [u for u in bits(g.adj[order[-1]] & smask) if u != prev and u not in order]
            if not nxt:
                raise GraphError("S does not induce C5")
            prev = order[-1]
            order.append(min(nxt))
        return tuple(order)
    order = tuple(s)
    if len(order) != 5 or len(set(order)) != 5:
        raise GraphError("S must list 5 distinct vertices")
    return order


def induces_c5(g: Graph, order: Sequence[int]) -> bool:
    smask = mask_of(order)
    for i, v in enumerate(order):
        want = (1 << order[i - 1]) | (1 << order[(i + 1) % 5])
        if g.adj[v] & smask != want:
            return False
    return True


@dataclass
class NeighborhoodPartition:
    S: tuple[int, ...]  # u1..u5 in cyclic order
    V1: dict[int, list[int]] = field(default_factory=dict)  # i -> vertices whose only S-neighbour is u_i
    N: dict[tuple[int, int], list[int]] = field(default_factory=dict)  # (i, j) -> N_{i,j}
    dist2: list[int] = field(default_factory=list)
    dist3: list[int] = field(default_factory=list)
    farther: list[int] = field(default_factory=list)  # distance >= 4 or unreachable

    @property
    def V1_all(self) -> list[int]:
        return sorted(v for vs in self.V1.values() for v in vs)

    @property
    def V2_all(self) -> list[int]:
        return sorted(v for vs in self.N.values() for v in vs)

    def to_dict(self) -> dict:
        return {
            "S": list(self.S),
            "V1": {f"u{i}": vs for i, vs in self.V1.items() if vs},
            "N": {f"N{i}{j}": vs for (i, j), vs in self.N.items() if vs},
            "dist2": self.dist2,
            "dist3": self.dist3,
            "farther": self.farther,
        }


def neighborhood_classify(g: Graph, s: Union[int, Sequence[int]]) -> NeighborhoodPartition:
    """Split V(G) \\ S by neighbours on the induced cycle S and by distance.

    ``s`` is either the cycle in order u1..u5 or a vertex mask (then u1 is
    its least vertex and u2 the smaller of u1's cycle neighbours).
    """
    order = _cyclic_order(g, s)
    if not induces_c5(g, order):
        raise GraphError(f"{list(order)} does not induce C5")
    smask = mask_of(order)
    index = {v: i + 1 for i, v in enumerate(order)}
    part = NeighborhoodPartition(order, {i: [] for i in range(1, 6)}, {p: [] for p in PAIRS})
    layer1 = 0
    for v in range(g.n):
        if smask >> v & 1:
            continue
        hits = sorted(index[u] for u in bits(g.adj[v] & smask))
        if not hits:
            continue
        layer1 |= 1 << v
        if len(hits) == 1:
            part.V1[hits[0]].append(v)
        elif len(hits) == 2 and tuple(hits) in part.N:
            part.N[tuple(hits)].append(v)
        else:
            raise GraphError(f"vertex {v} sees u{hits} on S; host is not triangle-free")
    seen = smask | layer1
    frontier = layer1
    for bucket in (part.dist2, part.dist3):
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
        bucket.extend(bits(frontier))
    part.farther = list(bits(((1 << g.n) - 1) & ~seen))
    return part
