"""Generation of small graphs up to isomorphism.

Both generators grow graphs step by step and keep one representative per
isomorphism class at every step, comparing canonical forms. Results are
returned as canonical representatives sorted by their canonical edge lists,
so output does not depend on generation order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .canon import adjacency_masks, canonical_labeling
from .design import erdos_gallai
from .graph6 import decode, encode
from .graphs import SmallGraph, complement_in_complete

MAX_CANON_ORDER = 12


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism-invariant representative: order and relabeled edge list."""

    order: int
    edges: tuple[tuple[int, int], ...]

    def graph(self) -> SmallGraph:
        return SmallGraph(self.order, frozenset(self.edges))

    def graph6(self) -> str:
        return encode(self.graph())


def _canonical(g: SmallGraph, colors: Optional[Sequence[int]] = None) -> tuple[CanonicalForm, tuple]:
    adj = adjacency_masks(g.order, g.edges)
    order, cert = canonical_labeling(g.order, adj, colors)
    pos = [0] * g.order
    for i, v in enumerate(order):
        pos[v] = i
    edges = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in g.edges))
    return CanonicalForm(g.order, edges), cert


def canonical_form(g: SmallGraph) -> CanonicalForm:
    if g.order > MAX_CANON_ORDER:
        raise ValueError(f"canonical forms are supported up to order {MAX_CANON_ORDER}, got {g.order}")
    return _canonical(g)[0]


def is_isomorphic(g: SmallGraph, h: SmallGraph) -> bool:
    return canonical_form(g) == canonical_form(h)


def _graphs_by_edge_addition(n: int, max_edges: int, max_degree: Optional[int] = None):
    """Yield (edge count, canonical class list) for 0..max_edges edges."""
    level = {canonical_form(SmallGraph(n)).edges: SmallGraph(n)}
    yield 0, list(level.values())
    for m in range(1, max_edges + 1):
        nxt: dict = {}
        for g in level.values():
            deg = g.degrees()
            for a, b in combinations(range(n), 2):
                if (a, b) in g.edges:
                    continue
                if max_degree is not None and (deg[a] >= max_degree or deg[b] >= max_degree):
                    continue
                h = SmallGraph(n, g.edges | {(a, b)})
                key = canonical_form(h)
                if key.edges not in nxt:
                    nxt[key.edges] = key.graph()
        level = nxt
        yield m, list(level.values())


def _sorted_canonical(graphs: Iterable[SmallGraph]) -> list[SmallGraph]:
    forms = {canonical_form(g) for g in graphs}
    return [f.graph() for f in sorted(forms)]


def enumerate_even_graphs(order: int, size: int) -> list[SmallGraph]:
    """One representative per class of graphs on ``order`` vertices with
    ``size`` edges and every degree even (isolated vertices allowed)."""
    if not 0 <= order <= 8:
        raise ValueError(f"even-graph enumeration is exhaustive only for order <= 8, got {order}")
    if not 0 <= size <= order * (order - 1) // 2:
        return []
    found: list[SmallGraph] = []
    for m, graphs in _graphs_by_edge_addition(order, size):
        if m == size:
            found = [g for g in graphs if all(d % 2 == 0 for d in g.degrees())]
    return _sorted_canonical(found)


class ParityError(ValueError):
    """No k-regular graph on n vertices exists because n*k is odd."""


def _saturate(n: int, k: int) -> list[SmallGraph]:
    """k-regular graphs on n vertices, built one vertex at a time.

    A state is a graph whose "closed" vertices already have degree k and get
    no further edges. Each step closes the open vertex of largest degree by
    choosing its remaining neighbours among the open vertices. Every regular
    completion of a state is reachable whichever vertex is closed next, so
    states can be deduplicated by their isomorphism class with closed and open
    vertices coloured apart.
    """
    start = SmallGraph(n)
    states = [(start, frozenset())]
    for _ in range(n):
        nxt: dict = {}
        for g, closed in states:
            deg = g.degrees()
            open_ = [x for x in range(n) if x not in closed]
            x = max(open_, key=lambda y: (deg[y], -y))
            need = k - deg[x]
            nbrs = g.adjacency()[x]
            pool = [y for y in open_ if y != x and y not in nbrs and deg[y] < k]
            for pick in combinations(pool, need):
                edges = set(g.edges)
                for y in pick:
                    edges.add((min(x, y), max(x, y)))
                h = SmallGraph(n, frozenset(edges))
                new_closed = closed | {x}
                hdeg = h.degrees()
                residual = [k - hdeg[y] for y in range(n) if y not in new_closed]
                if any(r < 0 for r in residual) or not erdos_gallai(residual):
                    continue
                colors = [1 if y in new_closed else 0 for y in range(n)]
                cert = canonical_labeling(n, adjacency_masks(n, h.edges), colors)[1]
                if cert not in nxt:
                    nxt[cert] = (h, new_closed)
        states = list(nxt.values())
    return [g for g, _ in states if all(d == k for d in g.degrees())]


def enumerate_regular_graphs(order: int, degree: int) -> list[SmallGraph]:
    """One representative per class of ``degree``-regular graphs on ``order`` vertices."""
    n, k = order, degree
    if not 0 <= n <= MAX_CANON_ORDER:
        raise ValueError(f"regular-graph enumeration supports order <= {MAX_CANON_ORDER}, got {n}")
    if not 0 <= k < max(n, 1):
        return []
    if n * k % 2:
        raise ParityError(f"no {k}-regular graph on {n} vertices: {n}*{k} is odd")
    if 2 * k > n - 1:
        # the complement of a k-regular graph is (n-1-k)-regular and has fewer edges
        return _sorted_canonical(complement_in_complete(g) for g in _saturate(n, n - 1 - k))
    return _sorted_canonical(_saturate(n, k))


@dataclass
class FixtureMatch:
    """Correspondence between generated classes and fixture strings."""

    pairs: list[tuple[int, int]] = field(default_factory=list)  # (generated index, fixture index)
    unmatched_generated: list[int] = field(default_factory=list)
    unmatched_fixture: list[int] = field(default_factory=list)
    duplicate_generated: list[int] = field(default_factory=list)
    duplicate_fixture: list[int] = field(default_factory=list)
    sizes: tuple[int, int] = (0, 0)

    @property
    def bijective(self) -> bool:
        return (self.sizes[0] == self.sizes[1] and not self.unmatched_generated
                and not self.unmatched_fixture and not self.duplicate_generated
                and not self.duplicate_fixture)

    def problems(self) -> list[str]:
        out = []
        if self.sizes[0] != self.sizes[1]:
            out.append(f"cardinality mismatch: {self.sizes[0]} generated, {self.sizes[1]} in fixture")
        if self.unmatched_generated:
            out.append(f"generated classes without a fixture match: {self.unmatched_generated}")
        if self.unmatched_fixture:
            out.append(f"fixture entries without a generated match: {self.unmatched_fixture}")
        if self.duplicate_generated:
            out.append(f"isomorphic duplicates among generated graphs: {self.duplicate_generated}")
        if self.duplicate_fixture:
            out.append(f"isomorphic duplicates in fixture: {self.duplicate_fixture}")
        return out


def match_fixture(generated: Sequence[SmallGraph], fixture: Sequence[str]) -> FixtureMatch:
    report = FixtureMatch(sizes=(len(generated), len(fixture)))
    fixture_index: dict = {}
    for j, text in enumerate(fixture):
        form = canonical_form(decode(text))
        if form in fixture_index:
            report.duplicate_fixture.append(j)
        else:
            fixture_index[form] = j
    used: set = set()
    seen: set = set()
    for i, g in enumerate(generated):
        form = canonical_form(g)
        if form in seen:
            report.duplicate_generated.append(i)
            continue
        seen.add(form)
        j = fixture_index.get(form)
        if j is None:
            report.unmatched_generated.append(i)
        else:
            report.pairs.append((i, j))
            used.add(j)
    report.unmatched_fixture = [j for j in fixture_index.values() if j not in used]
    return report
