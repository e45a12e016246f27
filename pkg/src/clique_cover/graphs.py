"""Vertex, edge and block bookkeeping.

Complete-graph instances use 1-based vertices ``1..v`` with edges ordered
lexicographically; small explicit graphs (:class:`SmallGraph`) use 0-based
vertices so they compare directly with nauty's ``showg`` output.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

Pair = tuple[int, int]
Block = tuple[int, ...]


@dataclass(frozen=True)
class CompleteGraphSpec:
    order: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")

    @property
    def size(self) -> int:
        return self.order * (self.order - 1) // 2

    def edges(self) -> list[Pair]:
        return list(combinations(range(1, self.order + 1), 2))


def normalize_pair(pair: Sequence[int]) -> Pair:
    a, b = pair
    if a == b:
        raise ValueError(f"self-loop ({a},{b}) is not an edge")
    return (a, b) if a < b else (b, a)


def edge_index(spec: CompleteGraphSpec, pair: Sequence[int]) -> int:
    """1-based position of ``pair`` in the lexicographic edge list of K_v."""
    a, b = normalize_pair(pair)
    v = spec.order
    if a < 1 or b > v:
        raise ValueError(f"pair ({a},{b}) out of range for order {v}")
    # edges starting with 1..a-1 come first
    before = (a - 1) * v - (a - 1) * a // 2
    return before + (b - a)


def edge_from_index(spec: CompleteGraphSpec, index: int) -> Pair:
    if not 1 <= index <= spec.size:
        raise ValueError(f"edge index {index} out of range 1..{spec.size}")
    v = spec.order
    a = 1
    while True:
        row = v - a
        if index <= row:
            return (a, a + index)
        index -= row
        a += 1


def make_block(vertices: Iterable[int]) -> Block:
    block = tuple(sorted(vertices))
    if len(set(block)) != len(block):
        raise ValueError(f"block {block} repeats a vertex")
    return block


def enumerate_blocks(spec: CompleteGraphSpec, size: int) -> list[Block]:
    if size < 2:
        raise ValueError(f"block size must be at least 2, got {size}")
    if size > spec.order:
        raise ValueError(f"block size {size} exceeds order {spec.order}")
    return list(combinations(range(1, spec.order + 1), size))


def block_edges(block: Sequence[int]) -> list[Pair]:
    return list(combinations(block, 2))


@dataclass(frozen=True)
class SmallGraph:
    """Explicit graph on vertices ``0..order-1``."""

    order: int
    edges: frozenset[Pair] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("order must be non-negative")
        clean = set()
        for e in self.edges:
            a, b = normalize_pair(e)
            if a < 0 or b >= self.order:
                raise ValueError(f"edge ({a},{b}) out of range for order {self.order}")
            clean.add((a, b))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]]) -> "SmallGraph":
        pairs = [normalize_pair(e) for e in edges]
        if len(set(pairs)) != len(pairs):
            raise ValueError("duplicate edge")
        return cls(order, frozenset(pairs))

    @classmethod
    def complete(cls, order: int) -> "SmallGraph":
        return cls(order, frozenset(combinations(range(order), 2)))

    def sorted_edges(self) -> list[Pair]:
        return sorted(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.order
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.order)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def relabel(self, perm: Sequence[int]) -> "SmallGraph":
        """Image under the vertex map ``i -> perm[i]``."""
        return SmallGraph(self.order, frozenset(normalize_pair((perm[a], perm[b])) for a, b in self.edges))

    def __len__(self) -> int:
        return len(self.edges)


def complement_in_complete(g: SmallGraph) -> SmallGraph:
    every = set(combinations(range(g.order), 2))
    return SmallGraph(g.order, frozenset(every - g.edges))


def degree_sequence(g: SmallGraph) -> tuple[int, ...]:
    return tuple(sorted(g.degrees(), reverse=True))


def small_to_complete(g: SmallGraph, offset: int = 1) -> list[Pair]:
    """Edges of ``g`` shifted to 1-based complete-graph vertices.

    Vertex ``i`` of ``g`` becomes ``i + offset``, so the default embeds ``g``
    on vertices ``1..n`` of the host.
    """
    return sorted((a + offset, b + offset) for a, b in g.edges)


def complete_to_small(order: int, pairs: Iterable[Sequence[int]], offset: int = 1) -> SmallGraph:
    return SmallGraph.from_edges(order, ((a - offset, b - offset) for a, b in pairs))


def count_blocks(order: int, size: int) -> int:
    return comb(order, size)
