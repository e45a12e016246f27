"""Level-synchronous cover search with isomorph rejection.

When every surviving edge has demand 1, the subproblem left after choosing
some blocks depends only on the residual graph, so residual graphs that are
isomorphic have the same answer. Each level expands every frontier state on
its most constrained edge, skips candidate blocks equivalent under the
state's automorphisms, and keeps one state per isomorphism class. Once the
frontier grows past a limit, the remaining states are handed one by one to
the depth-first kernel.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .canon import _Orbits, canonical_labeling
from .graphs import Block
from .kernel import _representable

log = logging.getLogger(__name__)


@dataclass
class State:
    adj: list[int]          # residual adjacency, 0-based vertices
    blocks: tuple           # chosen blocks so far, 1-based
    autos: list[list[int]]  # automorphisms of the residual graph (generators)


def _edges(adj: list[int]) -> list[tuple[int, int]]:
    out = []
    for a, m in enumerate(adj):
        m >>= a + 1
        b = a + 1
        while m:
            if m & 1:
                out.append((a, b))
            m >>= 1
            b += 1
    return out


def _cliques_in(adj: list[int], mask: int, k: int) -> list[tuple[int, ...]]:
    """All k-cliques among the vertices of ``mask``."""
    if k == 0:
        return [()]
    out = []
    m = mask
    while m:
        low = m & -m
        x = low.bit_length() - 1
        m ^= low
        # only extend with higher vertices to list each clique once
        for rest in _cliques_in(adj, adj[x] & m, k - 1):
            out.append((x,) + rest)
    return out


def edge_candidates(adj: list[int], a: int, b: int, sizes) -> list[tuple[int, ...]]:
    common = adj[a] & adj[b]
    out = []
    for k in sorted(sizes):
        for rest in _cliques_in(adj, common, k - 2):
            out.append(tuple(sorted((a, b) + rest)))
    return out


def _count_candidates(adj: list[int], a: int, b: int, sizes) -> int:
    common = adj[a] & adj[b]
    total = 0
    for k in sizes:
        if k == 2:
            total += 1
        elif k == 3:
            total += common.bit_count()
        elif k == 4:
            m = common
            inner = 0
            while m:
                low = m & -m
                x = low.bit_length() - 1
                m ^= low
                inner += (adj[x] & m).bit_count()
            total += inner
        else:
            total += len(_cliques_in(adj, common, k - 2))
    return total


def lower_bound(adj: list[int], sizes) -> Optional[int]:
    """Admissible bound on blocks still needed; ``None`` if a vertex is stuck."""
    degs = [m.bit_count() for m in adj]
    for d in degs:
        if not _representable(d, sizes):
            return None
    total = sum(degs) // 2
    largest = max(k * (k - 1) // 2 for k in sizes)
    lb = -(-total // largest)
    if set(sizes) == {3, 4}:
        tri_need = sum((2 * d) % 3 for d in degs)
        tmin = -(-tri_need // 3)
        lb = max(lb, -(-(total + 3 * tmin) // 6))
    return lb


def _pick_edge(adj: list[int], sizes) -> tuple[Optional[tuple[int, int]], int]:
    best, best_count = None, 1 << 30
    for a, b in _edges(adj):
        c = _count_candidates(adj, a, b, sizes)
        if c < best_count:
            best, best_count = (a, b), c
            if c == 0:
                break
    return best, best_count


def _remove_block(adj: list[int], block) -> list[int]:
    out = list(adj)
    for x, y in combinations(block, 2):
        out[x] &= ~(1 << y)
        out[y] &= ~(1 << x)
    return out


def _orbit_representatives(cands: list[tuple[int, ...]], autos: list[list[int]]) -> list[tuple[int, ...]]:
    if not autos or len(cands) < 2:
        return cands
    index = {c: i for i, c in enumerate(cands)}
    orbits = _Orbits(range(len(cands)))
    # close the candidate set under the generators before taking orbits
    pool = list(cands)
    seen = dict(index)
    k = 0
    while k < len(pool):
        c = pool[k]
        for g in autos:
            img = tuple(sorted(g[x] for x in c))
            if img not in seen:
                seen[img] = len(pool)
                pool.append(img)
        k += 1
    orbits = _Orbits(range(len(pool)))
    for c in pool:
        i = seen[c]
        for g in autos:
            orbits.union(i, seen[tuple(sorted(g[x] for x in c))])
    reps, taken = [], set()
    for c in cands:
        r = orbits.find(seen[c])
        if r not in taken:
            taken.add(r)
            reps.append(c)
    return reps


def _labeled(n: int, adj: list[int]) -> tuple[tuple, list[list[int]]]:
    """Certificate and automorphism generators of a residual graph."""
    autos: list[list[int]] = []
    order, cert = canonical_labeling(n, adj, autos_out=autos)
    return cert, autos


@dataclass
class FrontierResult:
    status: str                    # "found", "exhausted", "handoff", "limit"
    blocks: tuple = ()
    frontier: Optional[list[State]] = None
    expanded: int = 0


def frontier_search(n: int, adj: list[int], sizes, budget: Optional[int] = None,
                    frontier_limit: int = 5000, deadline: Optional[float] = None,
                    node_limit: Optional[int] = None, use_symmetry: bool = True) -> FrontierResult:
    """Breadth-first expansion with isomorph rejection.

    Returns ``found`` with the blocks (1-based) of a cover, ``exhausted``
    when no cover exists within ``budget``, ``handoff`` with the surviving
    frontier once it exceeds ``frontier_limit``, or ``limit`` when the
    deadline or node limit is hit.
    """
    sizes = frozenset(sizes)
    if use_symmetry:
        _, autos = _labeled(n, adj)
    else:
        autos = []
    frontier = [State(list(adj), (), autos)]
    expanded = 0
    depth = 0
    while frontier:
        if len(frontier) > frontier_limit:
            return FrontierResult("handoff", frontier=frontier, expanded=expanded)
        log.debug("depth %d: %d states", depth, len(frontier))
        nxt: list[State] = []
        seen: set = set()
        for state in frontier:
            if deadline is not None and time.perf_counter() > deadline:
                return FrontierResult("limit", expanded=expanded)
            if node_limit is not None and expanded >= node_limit:
                return FrontierResult("limit", expanded=expanded)
            expanded += 1
            if not any(state.adj):
                return FrontierResult("found", blocks=state.blocks, expanded=expanded)
            lb = lower_bound(state.adj, sizes)
            if lb is None or (budget is not None and depth + lb > budget):
                continue
            edge, count = _pick_edge(state.adj, sizes)
            if edge is None or count == 0:
                continue
            cands = edge_candidates(state.adj, edge[0], edge[1], sizes)
            if use_symmetry:
                cands = _orbit_representatives(cands, state.autos)
            for c in cands:
                child = _remove_block(state.adj, c)
                block = tuple(x + 1 for x in c)
                if use_symmetry:
                    cert, child_autos = _labeled(n, child)
                    if cert in seen:
                        continue
                    seen.add(cert)
                else:
                    child_autos = []
                nxt.append(State(child, state.blocks + (block,), child_autos))
        frontier = nxt
        depth += 1
    return FrontierResult("exhausted", expanded=expanded)


def blocks_sorted(blocks) -> list[Block]:
    return sorted((tuple(sorted(b)) for b in blocks), key=lambda b: (len(b), b))
