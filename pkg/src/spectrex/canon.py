"""Canonical labelling by colour refinement plus individualisation.

The search tree is the usual one: refine the degree partition to an
equitable one, individualise each vertex of the first non-singleton cell,
refine again, and keep the lexicographically largest relabelled adjacency
among the leaves.  Branches are pruned with automorphisms discovered at
equal leaves and with twin transpositions (vertices with equal open
neighbourhoods), which cover the blow-ups that dominate this domain.
"""

from __future__ import annotations

from typing import Optional

from .graph import Graph, bits

Code = tuple  # (n, row_0, ..., row_{n-1}) of the canonically relabelled graph


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    s = 0
    while s < len(cells):
        w = 0
        for v in cells[s]:
            w |= 1 << v
        out = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & w).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                split = True
                out.extend(groups[k] for k in sorted(groups))
        cells = out
        # Any split can refine cells already used as splitters, so restart.
        s = 0 if split else s + 1
    return cells


def _code(adj: tuple[int, ...], order: list[int]) -> Code:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        r = 0
        for u in bits(adj[v]):
            r |= 1 << pos[u]
        rows.append(r)
    return (len(order), *rows)


class _Search:
    def __init__(self, g: Graph):
        self.adj = g.adj
        self.n = g.n
        self.best: Optional[Code] = None
        self.best_order: Optional[list[int]] = None
        self.autos: list[list[int]] = []

    def run(self, cells: list[list[int]], prefix: list[int]) -> None:
        cells = _refine(self.adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _code(self.adj, order)
            if self.best is None or code > self.best:
                self.best, self.best_order = code, order
            elif code == self.best:
                gamma = [0] * self.n
                for a, b in zip(self.best_order, order):
                    gamma[a] = b
                self.autos.append(gamma)
            return
        cell = cells[target]
        tried: list[int] = []
        root, seen_autos = None, -1
        for v in cell:
            # Refreshed when earlier branches found automorphisms, which may
            # merge later candidates into an explored orbit.
            if tried:
                if len(self.autos) != seen_autos:
                    root, seen_autos = self._orbit_roots(cell, prefix), len(self.autos)
                if any(root[v] == root[t] for t in tried):
                    continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            self.run(cells[:target] + [[v], rest] + cells[target + 1:], prefix + [v])

    def _orbit_roots(self, cell: list[int], prefix: list[int]) -> dict[int, int]:
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        adj = self.adj
        # false twins share adj[v]; true twins share adj[v] | (1 << v)
        for key in (lambda v: adj[v], lambda v: adj[v] | (1 << v)):
            first: dict[int, int] = {}
            for v in cell:
                union(v, first.setdefault(key(v), v))
        for gamma in self.autos:
            if all(gamma[p] == p for p in prefix):
                for v in cell:
                    if gamma[v] in parent:
                        union(v, gamma[v])
        return {v: find(v) for v in cell}


def _initial_cells(g: Graph) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.adj[v].bit_count(), []).append(v)
    return [groups[k] for k in sorted(groups)]


def canonical_form(g: Graph) -> tuple[Code, list[int]]:
    """Canonical code and the vertex order realising it (position -> vertex)."""
    if g.n == 0:
        return (0,), []
    search = _Search(g)
    search.run(_initial_cells(g), [])
    return search.best, search.best_order


def canonical(g: Graph) -> Code:
    return canonical_form(g)[0]


def canonical_graph(g: Graph) -> Graph:
    code = canonical(g)
    return Graph(code[0], code[1:])


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical(g) == canonical(h)


def automorphism_generators(g: Graph) -> list[list[int]]:
    """Automorphisms met during the canonical search (not a full generating set)."""
    if g.n == 0:
        return []
    search = _Search(g)
    search.run(_initial_cells(g), [])
    return search.autos
