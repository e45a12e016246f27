"""Canonical labeling by individualisation-refinement.

Graphs are given as adjacency bitmasks (``adj[v]`` has bit ``u`` set when
``uv`` is an edge) plus an optional vertex colouring. The search tree
individualises one vertex of the first smallest non-singleton cell at a time
and refines to an equitable partition; every leaf is a relabeling and the
canonical form is the smallest leaf certificate. Automorphisms discovered at
leaves prune sibling branches lying in the same orbit of the prefix
stabiliser.
"""
from __future__ import annotations

from typing import Optional, Sequence


def refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Splitting only depends on neighbour counts and on cell positions, so the
    result is invariant under relabeling.
    """
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(cells):
            mask = 0
            for v in cells[k]:
                mask |= 1 << v
            out: list[list[int]] = []
            split_any = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((adj[v] & mask).bit_count(), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                else:
                    split_any = True
                    for key in sorted(groups):
                        out.append(groups[key])
            if split_any:
                cells = out
                changed = True
            k += 1
    return cells


def _individualise(cells: list[list[int]], idx: int, v: int) -> list[list[int]]:
    cell = cells[idx]
    rest = [u for u in cell if u != v]
    return cells[:idx] + [[v], rest] + cells[idx + 1:]


def _certificate(adj: Sequence[int], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        row = 0
        m = adj[v]
        while m:
            low = m & -m
            row |= 1 << pos[low.bit_length() - 1]
            m ^= low
        rows.append(row)
    return tuple(rows)


class _Orbits:
    def __init__(self, items: Sequence[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def canonical_labeling(n: int, adj: Sequence[int],
                       colors: Optional[Sequence[int]] = None,
                       autos_out: Optional[list] = None) -> tuple[list[int], tuple]:
    """Return ``(order, certificate)``.

    ``order[i]`` is the vertex receiving canonical label ``i``. Two coloured
    graphs are isomorphic (colour-preservingly) iff their certificates match.
    When ``autos_out`` is a list, the automorphisms found along the way are
    appended to it.
    """
    if colors is None:
        colors = [0] * n
    by_color: dict = {}
    for v in range(n):
        by_color.setdefault(colors[v], []).append(v)
    color_sig = tuple((c, len(by_color[c])) for c in sorted(by_color))
    if n == 0:
        return [], (color_sig, ())
    root = refine(adj, [by_color[c] for c in sorted(by_color)])

    best_cert: Optional[tuple] = None
    best_order: Optional[list[int]] = None
    first_order: Optional[list[int]] = None
    first_cert: Optional[tuple] = None
    autos: list[list[int]] = []

    def record_auto(a: list[int], b: list[int]) -> None:
        gamma = [0] * n
        for x, y in zip(a, b):
            gamma[x] = y
        if any(gamma[i] != i for i in range(n)):
            autos.append(gamma)

    path: list[int] = []
    done_at: list[list[int]] = []
    targets: list[list[int]] = []

    def in_done_orbit(level: int, w: int) -> bool:
        done = done_at[level]
        if not done:
            return False
        target = targets[level]
        orbits = _Orbits(target)
        fixed = path[:level]
        for g in autos:
            if all(g[p] == p for p in fixed):
                for x in target:
                    y = g[x]
                    if y in orbits.parent:
                        orbits.union(x, y)
        rw = orbits.find(w)
        return any(orbits.find(d) == rw for d in done if d != w)

    def first_redundant_level() -> int:
        for level in range(len(path)):
            if in_done_orbit(level, path[level]):
                return level
        return -1

    def visit(cells: list[list[int]]) -> int:
        """Explore below ``path``; returns a level to unwind to, or -1."""
        nonlocal best_cert, best_order, first_order, first_cert
        if len(cells) == n:
            order = [c[0] for c in cells]
            cert = _certificate(adj, order)
            found = len(autos)
            if first_order is None:
                first_order, first_cert = order, cert
            elif cert == first_cert:
                record_auto(first_order, order)
            if best_cert is None or cert < best_cert:
                best_cert, best_order = cert, order
            elif cert == best_cert and order != best_order:
                record_auto(best_order, order)
            return first_redundant_level() if len(autos) > found else -1
        idx = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        level = len(path)
        targets.append(sorted(cells[idx]))
        done_at.append([])
        try:
            for w in targets[level]:
                if in_done_orbit(level, w):
                    continue
                done_at[level].append(w)
                path.append(w)
                r = visit(refine(adj, _individualise(cells, idx, w)))
                path.pop()
                if r != -1 and r < level:
                    return r
            return -1
        finally:
            targets.pop()
            done_at.pop()

    visit(root)
    if autos_out is not None:
        autos_out.extend(autos)
    assert best_order is not None and best_cert is not None
    return best_order, (color_sig, best_cert)


def certificate(n: int, adj: Sequence[int], colors: Optional[Sequence[int]] = None) -> tuple:
    return canonical_labeling(n, adj, colors)[1]


def adjacency_masks(n: int, edges) -> list[int]:
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj
