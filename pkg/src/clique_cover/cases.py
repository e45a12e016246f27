"""Exclusion of fixed triangle configurations in K_18 and K_19.

A configuration is a set of edge-disjoint triples placed in K_v. If the
triples of a hypothetical {K3,K4}-decomposition are exactly those, the
remaining edges must split into K4's; proving that they cannot excludes the
configuration. Some sub-cases are ruled out by counting instead; those are
recorded as analytic checks and the counting inequality is evaluated here.

Configurations are written with symbolic vertex names. Heavy vertices
``w1..wh`` get ids ``1..h``, light vertices ``y1..`` follow as ``h+1..``, and
any other symbol gets the next free id in order of first appearance.
"""
from __future__ import annotations

import json
import logging
import os
import re
import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .design import erdos_gallai_check, pbd_exists, triple_distribution_solutions
from .enumeration import canonical_form, enumerate_regular_graphs
from .fixtures import even_picks, regular_listing
from .graph6 import decode, encode
from .graphs import Block, Pair, SmallGraph, complement_in_complete, make_block, small_to_complete
from .cache import OutcomeCache, cached_solve
from .solver import CoverInstance, CoverOutcome, SolverConfig, Status, solve_graph_decomposition

log = logging.getLogger(__name__)


# ---------------------------------------------------------------- configurations

@dataclass(frozen=True)
class Profile:
    """Required number of triples per vertex: ``heavy`` overrides, else ``default``."""

    heavy: Mapping[str, int] = field(default_factory=dict)
    default: int = 1

    def required(self, name: str) -> int:
        return self.heavy.get(name, self.default)


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class TriangleConfiguration:
    host_order: int
    triples: tuple[Block, ...]
    symbolic_map: Mapping[str, int]

    def removed_edges(self) -> frozenset[Pair]:
        return frozenset(p for t in self.triples for p in combinations(t, 2))

    def triple_counts(self) -> Counter:
        return Counter(x for t in self.triples for x in t)

    def instance(self) -> CoverInstance:
        return CoverInstance(self.host_order, frozenset({4}), self.removed_edges())


_NUMBERED = re.compile(r"([wy])(\d+)$")


def _numbered(names: list[str], letter: str) -> list[tuple[int, str]]:
    out = []
    for s in names:
        m = _NUMBERED.match(s)
        if m and m.group(1) == letter:
            out.append((int(m.group(2)), s))
    return sorted(out)


def _symbol_ids(triples: Sequence[Sequence[str]]) -> dict[str, int]:
    names: list[str] = []
    for t in triples:
        for s in t:
            if s not in names:
                names.append(s)
    ws = _numbered(names, "w")
    ys = _numbered(names, "y")
    h = max((k for k, _ in ws), default=0)
    ids: dict[str, int] = {}
    for k, s in ws:
        ids[s] = k
    for k, s in ys:
        ids[s] = h + k
    nxt = max(ids.values(), default=0) + 1
    for s in names:
        if s not in ids:
            ids[s] = nxt
            nxt += 1
    if len(set(ids.values())) != len(ids):
        raise ProfileError(f"symbol numbering collides: {ids}")
    return ids


def build_configuration(symbolic: Sequence[Sequence[str] | str], profile: Profile,
                        host_order: int) -> TriangleConfiguration:
    """Concrete, validated configuration from symbolic triples."""
    triples_sym = [tuple(t.split()) if isinstance(t, str) else tuple(t) for t in symbolic]
    for t in triples_sym:
        if len(t) != 3 or len(set(t)) != 3:
            raise ProfileError(f"{t} is not a triple of distinct symbols")
    ids = _symbol_ids(triples_sym)
    if max(ids.values(), default=0) > host_order:
        raise ProfileError(f"configuration needs {max(ids.values())} vertices, host has {host_order}")
    triples = tuple(make_block(ids[s] for s in t) for t in triples_sym)
    config = TriangleConfiguration(host_order, triples, dict(ids))
    validate(config, profile)
    return config


def validate(config: TriangleConfiguration, profile: Profile) -> None:
    seen: set = set()
    for t in config.triples:
        for p in combinations(t, 2):
            if p in seen:
                raise ProfileError(f"edge {p} lies in two triples")
            seen.add(p)
    counts = config.triple_counts()
    for name, vid in config.symbolic_map.items():
        if counts[vid] != profile.required(name):
            raise ProfileError(f"{name} lies in {counts[vid]} triples, profile requires {profile.required(name)}")
    if sum(counts.values()) != 3 * len(config.triples):
        raise ProfileError("triple count does not match vertex incidences")


def check_configuration(config: TriangleConfiguration, host_order: Optional[int] = None,
                        solver_config: Optional[SolverConfig] = None,
                        cache: Optional[OutcomeCache] = None) -> CoverOutcome:
    """Can K_v minus the configuration's edges be split into K4's?"""
    if host_order is not None and host_order != config.host_order:
        config = TriangleConfiguration(host_order, config.triples, config.symbolic_map)
    return cached_solve(config.instance(), solver_config, cache)


# ---------------------------------------------------------------- analytic checks

def forced_light_triples(h_graph: SmallGraph, per_heavy: int = 4) -> int:
    """Lower bound on triples with exactly one heavy vertex.

    ``h_graph`` is the graph on the heavy vertices whose edges are *not*
    covered by all-heavy triples. A heavy vertex of H-degree d lies in
    (6 - d) / 2 all-heavy triples, and each further triple either uses one of
    its d H-edges or is a triple with two light vertices.
    """
    n = h_graph.order
    total = 0
    for d in h_graph.degrees():
        all_heavy = (n - 1 - d) // 2
        total += max(0, per_heavy - all_heavy - d)
    return total


def unused_edge_bound(h_graph: SmallGraph, per_heavy: int = 4) -> int:
    """Lower bound on edges of H that cannot lie in a two-heavy triple."""
    n = h_graph.order
    excess = []
    for d in h_graph.degrees():
        all_heavy = (n - 1 - d) // 2
        excess.append(max(0, d - (per_heavy - all_heavy)))
    return max(max(excess, default=0), -(-sum(excess) // 2))


@dataclass
class EntryResult:
    name: str
    kind: str                       # "k4", "k3-host", "analytic"
    excluded: bool
    detail: str = ""
    outcome: Optional[CoverOutcome] = None

    def to_json(self, timing: bool = True) -> dict:
        data = {"name": self.name, "kind": self.kind, "excluded": self.excluded, "detail": self.detail}
        if self.outcome is not None:
            data["outcome"] = {k: v for k, v in self.outcome.to_json(timing).items() if k != "blocks"}
            if self.outcome.feasible:
                data["outcome"]["blocks"] = [list(b) for b in self.outcome.blocks]
        return data


@dataclass
class CaseReport:
    lemma_id: str
    entries: list[EntryResult] = field(default_factory=list)
    checkpoint: Optional[int] = None   # next case index for sweeps

    @property
    def verdict(self) -> str:
        if any(e.kind == "k4" and e.outcome is not None and e.outcome.feasible for e in self.entries):
            return "counterexample-found"
        if any(not e.excluded for e in self.entries):
            if any(e.outcome is not None and e.outcome.status is Status.TIMED_OUT for e in self.entries):
                return "incomplete"
            return "counterexample-found"
        if self.checkpoint is not None:
            return "incomplete"
        return "all-infeasible"

    def to_json(self, timing: bool = True) -> dict:
        return {
            "lemma": self.lemma_id,
            "verdict": self.verdict,
            "entries": [e.to_json(timing) for e in self.entries],
            "checkpoint": self.checkpoint,
        }


def _k4_entry(name: str, config: TriangleConfiguration, solver_config, cache=None) -> EntryResult:
    out = check_configuration(config, solver_config=solver_config, cache=cache)
    excluded = out.status is Status.INFEASIBLE
    detail = f"K4 split of the remaining {len(config.instance().surviving_edges())} edges: {out.status.value}"
    return EntryResult(name, "k4", excluded, detail, out)


# ---------------------------------------------------------------- registry

W4 = Profile({f"w{i}": 4 for i in range(1, 8)})


@dataclass(frozen=True)
class ConfigSpec:
    name: str
    triples: tuple[str, ...]
    profile: Profile
    host_order: int = 18
    # for alpha = 13 cases: the even graph left after removing all-heavy triples from K7
    even_graph: Optional[tuple[int, int]] = None  # (edge count, 1-based index in the listing)
    distribution: Optional[tuple[int, int, int, int]] = None

    def build(self) -> TriangleConfiguration:
        config = build_configuration(self.triples, self.profile, self.host_order)
        if self.distribution is not None:
            check_distribution(config, self.distribution)
        if self.even_graph is not None:
            size, index = self.even_graph
            check_even_graph(config, even_picks(7, size).graphs()[index - 1])
        return config


def heavy_split(config: TriangleConfiguration, h: int = 7) -> tuple[int, int, int, int]:
    counts = [0, 0, 0, 0]
    for t in config.triples:
        counts[sum(1 for x in t if x <= h)] += 1
    return tuple(counts)  # type: ignore[return-value]


def check_distribution(config: TriangleConfiguration, expected: tuple[int, int, int, int]) -> None:
    got = heavy_split(config)
    if got != tuple(expected):
        raise ProfileError(f"triple split {got} differs from declared {expected}")


def check_even_graph(config: TriangleConfiguration, h_graph: SmallGraph, h: int = 7) -> None:
    """All-heavy triples must cover exactly the complement of H on w1..wh,
    and every two-heavy triple must use an edge of H."""
    covered = set()
    for t in config.triples:
        heavy = [x for x in t if x <= h]
        if len(heavy) == 3:
            covered |= {(a - 1, b - 1) for a, b in combinations(heavy, 2)}
        elif len(heavy) == 2 and (heavy[0] - 1, heavy[1] - 1) not in h_graph.edges:
            raise ProfileError(f"triple {t} uses a heavy pair outside H")
    if frozenset(covered) != complement_in_complete(h_graph).edges:
        raise ProfileError("all-heavy triples do not cover the complement of H")


def T(*triples: str) -> tuple[str, ...]:
    return tuple(triples)


# Triangle configurations whose remaining edges must not split into K4's.
K18_ALPHA7 = ConfigSpec("hub with 4 triples + 3 disjoint triples", T(
    "u a1 a2", "u a3 a4", "u a5 a6", "u a7 a8", "b1 b2 b3", "c1 c2 c3", "d1 d2 d3"),
    Profile({"u": 4}))

K18_ALPHA9 = ConfigSpec("three hubs sharing pairwise triples", T(
    "u1 u2 s3", "u1 u3 s2", "u2 u3 s1",
    "u1 a1 a2", "u1 a3 a4", "u2 b1 b2", "u2 b3 b4", "u3 c1 c2", "u3 c3 c4"),
    Profile({"u1": 4, "u2": 4, "u3": 4}))

_W5 = Profile({f"w{i}": 4 for i in range(1, 6)})

K18_ALPHA11 = ConfigSpec("heavy triple w1w2w3 joined to w4, w5", T(
    "w1 w2 w3",
    "w1 w4 x14", "w1 w5 x15", "w2 w4 x24", "w2 w5 x25", "w3 w4 x34", "w3 w5 x35",
    "w4 w5 x45",
    "w1 a1 a2", "w2 b1 b2", "w3 c1 c2"), _W5)

K18_ALPHA11_PAIRS = (
    ConfigSpec("all 10 heavy pairs in triples + disjoint triple", T(
        *(f"w{i} w{j} p{i}{j}" for i, j in combinations(range(1, 6), 2)), "x y z"), _W5),
    ConfigSpec("9 heavy pairs in triples, w1w2 apart", T(
        *(f"w{i} w{j} p{i}{j}" for i, j in combinations(range(1, 6), 2) if (i, j) != (1, 2)),
        "w1 x1 z1", "w2 x2 z2"), _W5),
)

K18_C1 = ConfigSpec("C1: six heavy triples, H = C3", T(
    "w1 w4 w5", "w1 w6 w7", "w2 w4 w6", "w2 w5 w7", "w3 w4 w7", "w3 w5 w6",
    "w1 w2 y1", "w1 w3 y2", "w2 w3 y3",
    "w4 y4 y5", "w5 y6 y7", "w6 y8 y9", "w7 y10 y11"), W4, distribution=(0, 4, 3, 6))

_C6_HEAVY = ("w1 w2 w3", "w1 w4 w7", "w2 w4 w6", "w3 w4 w5", "w5 w6 w7")
_BOWTIE_HEAVY = ("w1 w2 w3", "w1 w4 w6", "w2 w4 w5", "w3 w5 w6", "w3 w4 w7")

K18_C2_C6 = ConfigSpec("C2, H = C6", T(
    *_C6_HEAVY, "w4 y1 y2",
    "w1 w5 y3", "w1 w6 y4", "w2 w5 y5", "w2 w7 y6", "w3 w6 y7", "w3 w7 y8", "y9 y10 y11"),
    W4, even_graph=(6, 2), distribution=(1, 1, 6, 5))

K18_C3 = (
    ConfigSpec("C3, H = bowtie", T(
        *_BOWTIE_HEAVY, "w3 y1 y2", "w4 y3 y4",
        "w1 w5 y5", "w1 w7 y6", "w2 w6 y7", "w2 w7 y8", "w5 w7 y9", "w6 y10 y11"),
        W4, even_graph=(6, 1), distribution=(0, 3, 5, 5)),
    ConfigSpec("C3, H = C6", T(
        *_C6_HEAVY, "w4 y1 y2",
        "w1 w5 y3", "w1 w6 y4", "w2 w5 y5", "w2 w7 y6", "w3 w6 y7", "w3 y8 y9", "w7 y10 y11"),
        W4, even_graph=(6, 2), distribution=(0, 3, 5, 5)),
)

_G3_HEAVY = ("w1 w2 w3", "w1 w4 w7", "w2 w4 w6", "w3 w4 w5")
_G4_HEAVY = ("w1 w2 w3", "w1 w5 w6", "w2 w4 w6", "w3 w4 w5")
_G5_HEAVY = ("w1 w2 w7", "w1 w3 w5", "w2 w3 w4", "w4 w5 w6")

K18_C4_G5 = ConfigSpec("C4, H = G5", T(
    *_G5_HEAVY,
    "w1 w4 y1", "w1 w6 y2", "w2 w5 y3", "w2 w6 y4", "w3 w6 y5", "w3 w7 y6", "w4 w7 y7", "w5 w7 y8",
    "y9 y10 y11"), W4, even_graph=(9, 5), distribution=(1, 0, 8, 4))

K18_C5 = (
    ConfigSpec("C5, H = G3", T(
        *_G3_HEAVY, "w4 y1 y2",
        "w1 w5 y3", "w1 w6 y4", "w2 w5 y5", "w2 w7 y6", "w3 w6 y7", "w3 w7 y8", "w5 w7 y9",
        "w6 y10 y11"), W4, even_graph=(9, 3), distribution=(0, 2, 7, 4)),
    ConfigSpec("C5, H = G4, unused w7-edges in one triangle", T(
        *_G4_HEAVY,
        "w1 w4 y1", "w1 w7 y2", "w2 w5 y3", "w2 w7 y4", "w3 w6 y5", "w4 w7 y6", "w5 w7 y7",
        "w3 y8 y9", "w6 y10 y11"), W4, even_graph=(9, 4), distribution=(0, 2, 7, 4)),
    ConfigSpec("C5, H = G4, unused w7-edges in two triangles", T(
        *_G4_HEAVY,
        "w1 w4 y1", "w2 w5 y2", "w3 w6 y3", "w3 w7 y4", "w4 w7 y5", "w5 w7 y6", "w6 w7 y7",
        "w1 y8 y9", "w2 y10 y11"), W4, even_graph=(9, 4), distribution=(0, 2, 7, 4)),
    ConfigSpec("C5, H = G5, light triples at w6 and w3", T(
        *_G5_HEAVY, "w6 y1 y2", "w3 y3 y4",
        "w1 w4 y5", "w1 w6 y6", "w2 w5 y7", "w2 w6 y8", "w3 w7 y9", "w4 w7 y10", "w5 w7 y11"),
        W4, even_graph=(9, 5), distribution=(0, 2, 7, 4)),
    ConfigSpec("C5, H = G5, light triples at w6 and w1", T(
        *_G5_HEAVY, "w6 y1 y2", "w1 y3 y4",
        "w1 w4 y5", "w2 w5 y6", "w2 w6 y7", "w3 w6 y8", "w3 w7 y9", "w4 w7 y10", "w5 w7 y11"),
        W4, even_graph=(9, 5), distribution=(0, 2, 7, 4)),
    ConfigSpec("C5, H = G5, two light triples at w3", T(
        *_G5_HEAVY, "w3 y1 y2", "w3 y3 y4",
        "w1 w4 y5", "w1 w6 y6", "w2 w5 y7", "w2 w6 y8", "w4 w7 y9", "w5 w7 y10", "w6 w7 y11"),
        W4, even_graph=(9, 5), distribution=(0, 2, 7, 4)),
    ConfigSpec("C5, H = G5, light triples at w1 and w4", T(
        *_G5_HEAVY, "w1 y1 y2", "w4 y3 y4",
        "w1 w6 y5", "w2 w5 y6", "w2 w6 y7", "w3 w6 y8", "w3 w7 y9", "w4 w7 y10", "w5 w7 y11"),
        W4, even_graph=(9, 5), distribution=(0, 2, 7, 4)),
)

_H1_HEAVY = ("w1 w2 w3", "w2 w4 w6", "w3 w4 w5")
_H2_HEAVY = ("w1 w2 w3", "w3 w4 w5", "w3 w6 w7")
_H3_HEAVY = ("w1 w2 w3", "w3 w4 w7", "w4 w5 w6")

K18_C6 = (
    ConfigSpec("C6, H = H1, three w7-edges unused", T(
        *_H1_HEAVY,
        "w1 w4 y1", "w1 w5 y2", "w1 w6 y3", "w2 w5 y4", "w2 w7 y5", "w3 w6 y6", "w3 w7 y7",
        "w4 w7 y8", "w5 w6 y9", "w7 y10 y11"), W4, even_graph=(12, 1), distribution=(0, 1, 9, 3)),
    ConfigSpec("C6, H = H1, w1w4 unused", T(
        *_H1_HEAVY, "w4 y1 y2",
        "w1 w5 y3", "w1 w6 y4", "w1 w7 y5", "w2 w5 y6", "w2 w7 y7", "w3 w6 y8", "w3 w7 y9",
        "w4 w7 y10", "w5 w6 y11"), W4, even_graph=(12, 1), distribution=(0, 1, 9, 3)),
    ConfigSpec("C6, H = H1, w1w5 unused", T(
        *_H1_HEAVY, "w5 y1 y2",
        "w1 w4 y3", "w1 w6 y4", "w1 w7 y5", "w2 w5 y6", "w2 w7 y7", "w3 w6 y8", "w3 w7 y9",
        "w4 w7 y10", "w5 w6 y11"), W4, even_graph=(12, 1), distribution=(0, 1, 9, 3)),
    ConfigSpec("C6, H = H2", T(
        *_H2_HEAVY,
        "w1 w5 y1", "w1 w6 y2", "w1 w7 y3", "w2 w4 y4", "w2 w5 y5", "w2 w7 y6", "w4 w6 y7",
        "w4 w7 y8", "w5 w6 y9", "w3 y10 y11"), W4, even_graph=(12, 2), distribution=(0, 1, 9, 3)),
    ConfigSpec("C6, H = H3, light triple at w7", T(
        *_H3_HEAVY, "w7 y1 y2",
        "w1 w4 y3", "w1 w5 y4", "w1 w6 y5", "w2 w4 y6", "w2 w6 y7", "w2 w7 y8", "w3 w5 y9",
        "w3 w6 y10", "w5 w7 y11"), W4, even_graph=(12, 3), distribution=(0, 1, 9, 3)),
    ConfigSpec("C6, H = H3, light triple at w1", T(
        *_H3_HEAVY, "w1 y1 y2",
        "w1 w4 y3", "w1 w6 y4", "w2 w4 y5", "w2 w5 y6", "w2 w7 y7", "w3 w5 y8", "w3 w6 y9",
        "w5 w7 y10", "w6 w7 y11"), W4, even_graph=(12, 3), distribution=(0, 1, 9, 3)),
    ConfigSpec("C6, H = H3, light triple at w3", T(
        *_H3_HEAVY, "w3 y1 y2",
        "w1 w4 y3", "w1 w5 y4", "w1 w6 y5", "w2 w4 y6", "w2 w6 y7", "w2 w7 y8", "w3 w5 y9",
        "w5 w7 y10", "w6 w7 y11"), W4, even_graph=(12, 3), distribution=(0, 1, 9, 3)),
)

K18_C7 = (
    ConfigSpec("C7, disjoint heavy triples", T(
        "w1 w2 w3", "w4 w5 w6",
        "w1 w7 y1", "w2 w7 y2", "w4 w7 y3", "w5 w7 y4",
        "w3 w4 y5", "w3 w5 y6", "w3 w6 y7", "w1 w6 y8", "w2 w6 y9", "w1 w4 y10", "w2 w5 y11"),
        W4, distribution=(0, 0, 11, 2)),
    ConfigSpec("C7, heavy triples share w1, w6w7 paired, split", T(
        "w1 w2 w3", "w1 w4 w5", "w1 w6 y1", "w1 w7 y2", "w6 w7 y3",
        "w2 w6 y4", "w4 w6 y5", "w3 w7 y6", "w5 w7 y7",
        "w2 w4 y8", "w3 w4 y9", "w2 w5 y10", "w3 w5 y11"), W4, distribution=(0, 0, 11, 2)),
    ConfigSpec("C7, heavy triples share w1, w6w7 paired, one side each", T(
        "w1 w2 w3", "w1 w4 w5", "w1 w6 y1", "w1 w7 y2", "w6 w7 y3",
        "w2 w6 y4", "w3 w6 y5", "w4 w7 y6", "w5 w7 y7",
        "w2 w4 y8", "w3 w4 y9", "w2 w5 y10", "w3 w5 y11"), W4, distribution=(0, 0, 11, 2)),
    ConfigSpec("C7, heavy triples share w1, w6w7 apart", T(
        "w1 w2 w3", "w1 w4 w5", "w1 w6 y1", "w1 w7 y2",
        "w2 w6 y3", "w3 w6 y4", "w4 w6 y5", "w2 w7 y6", "w4 w7 y7", "w5 w7 y8",
        "w2 w5 y9", "w3 w4 y10", "w3 w5 y11"), W4, distribution=(0, 0, 11, 2)),
)


@dataclass(frozen=True)
class EvenGraphScreen:
    """Screens the even graphs H left on w1..w7 after the all-heavy triples.

    Each H in the listing is excluded when its complement in K7 has no
    triangle decomposition, or when the counting bounds contradict the case's
    (t1, t2); the rest must be covered by the explicit configurations.
    """

    size: int
    t1: int
    t2: int
    explicit: tuple[int, ...]  # 1-based listing indices handled by configurations


K18_SCREENS = {
    "k18-alpha13-c2": EvenGraphScreen(6, 1, 6, (2,)),
    "k18-alpha13-c3": EvenGraphScreen(6, 3, 5, (1, 2)),
    "k18-alpha13-c4": EvenGraphScreen(9, 0, 8, (5,)),
    "k18-alpha13-c5": EvenGraphScreen(9, 2, 7, (3, 4, 5)),
    "k18-alpha13-c6": EvenGraphScreen(12, 1, 9, (1, 2, 3)),
}


def screen_even_graphs(screen: EvenGraphScreen, solver_config=None) -> list[EntryResult]:
    out = []
    for index, h_graph in enumerate(even_picks(7, screen.size).graphs(), start=1):
        name = f"H{index} = {encode(h_graph)}"
        comp = complement_in_complete(h_graph)
        res = solve_graph_decomposition(comp, 3, solver_config)
        if res.status is Status.INFEASIBLE:
            out.append(EntryResult(name, "k3-host", True, "complement in K7 has no triangle decomposition", res))
            continue
        if res.status is Status.TIMED_OUT:
            out.append(EntryResult(name, "k3-host", False, "triangle decomposition search timed out", res))
            continue
        if index in screen.explicit:
            out.append(EntryResult(name, "k3-host", True,
                                   "complement splits into triangles; handled by explicit configurations", res))
            continue
        light = forced_light_triples(h_graph)
        unused = unused_edge_bound(h_graph)
        if light > screen.t1:
            out.append(EntryResult(name, "analytic", True,
                                   f"needs at least {light} one-heavy triples, case allows {screen.t1}"))
        elif len(h_graph) - unused < screen.t2:
            out.append(EntryResult(name, "analytic", True,
                                   f"at most {len(h_graph) - unused} two-heavy triples, case needs {screen.t2}"))
        else:
            out.append(EntryResult(name, "analytic", False, "not excluded by the counting bounds"))
    return out


def _profile_checks() -> list[EntryResult]:
    eg = erdos_gallai_check((6, 6, 6, 6, 6, 2, 2, 2))
    sols = [t.as_tuple() for t in triple_distribution_solutions(7, 4, 11, 13)]
    return [
        EntryResult("hub in 7 triples: residual degrees (6,6,6,6,6,2,2,2)", "analytic", not eg.graphic,
                    f"Erdős–Gallai fails at k={eg.failing_k}"),
        EntryResult("triple split by heavy count", "analytic", len(sols) == 7,
                    f"{len(sols)} solutions: {sols}"),
    ]


def _k19_alpha7() -> list[EntryResult]:
    exists = pbd_exists(19, 7)
    return [EntryResult("seven triples form a K7: PBD(19,{4,7*},1)", "analytic", not exists,
                        "design exists" if exists else "no such design")]


@dataclass(frozen=True)
class LemmaCase:
    id: str
    description: str
    configurations: tuple[ConfigSpec, ...] = ()
    screen: Optional[EvenGraphScreen] = None
    analytic: Optional[Callable[[], list[EntryResult]]] = None
    sweep: Optional[str] = None


REGISTRY: dict[str, LemmaCase] = {c.id: c for c in (
    LemmaCase("k18-alpha7", "K18 with 7 triples", (K18_ALPHA7,)),
    LemmaCase("k18-alpha9", "K18 with 9 triples", (K18_ALPHA9,)),
    LemmaCase("k18-alpha11-pairs", "K18 with 11 triples, no heavy triple", K18_ALPHA11_PAIRS),
    LemmaCase("k18-alpha11", "K18 with 11 triples", (K18_ALPHA11,)),
    LemmaCase("k18-alpha13-profile", "K18 with 13 triples: vertex profile", analytic=_profile_checks),
    LemmaCase("k18-alpha13-c1", "K18, 13 triples, split C1", (K18_C1,)),
    LemmaCase("k18-alpha13-c2", "K18, 13 triples, split C2", (K18_C2_C6,), K18_SCREENS["k18-alpha13-c2"]),
    LemmaCase("k18-alpha13-c3", "K18, 13 triples, split C3", K18_C3, K18_SCREENS["k18-alpha13-c3"]),
    LemmaCase("k18-alpha13-c4", "K18, 13 triples, split C4", (K18_C4_G5,), K18_SCREENS["k18-alpha13-c4"]),
    LemmaCase("k18-alpha13-c5", "K18, 13 triples, split C5", K18_C5, K18_SCREENS["k18-alpha13-c5"]),
    LemmaCase("k18-alpha13-c6", "K18, 13 triples, split C6", K18_C6, K18_SCREENS["k18-alpha13-c6"]),
    LemmaCase("k18-alpha13-c7", "K18, 13 triples, split C7", K18_C7),
    LemmaCase("k19-alpha7", "K19 with 7 triples", analytic=_k19_alpha7),
    LemmaCase("k19-alpha9", "K19 with 9 triples", sweep="k19-alpha9"),
    LemmaCase("k19-alpha11", "K19 with 11 triples", sweep="k19-alpha11"),
)}


def run_lemma(lemma_id: str, solver_config: Optional[SolverConfig] = None,
              cache: Optional[OutcomeCache] = None, **sweep_args) -> CaseReport:
    try:
        case = REGISTRY[lemma_id]
    except KeyError:
        raise KeyError(f"unknown lemma id {lemma_id!r}; known: {', '.join(REGISTRY)}") from None
    if case.sweep == "k19-alpha9":
        return k19_alpha9_sweep(solver_config, cache)
    if case.sweep == "k19-alpha11":
        return k19_alpha11_sweep(solver_config=solver_config, cache=cache, **sweep_args)
    report = CaseReport(lemma_id)
    if case.analytic is not None:
        report.entries.extend(case.analytic())
    if case.screen is not None:
        report.entries.extend(screen_even_graphs(case.screen, solver_config))
    for spec in case.configurations:
        log.info("%s: %s", lemma_id, spec.name)
        report.entries.append(_k4_entry(spec.name, spec.build(), solver_config, cache))
    return report


# ---------------------------------------------------------------- K19 sweeps

def _embedded_instance(h_graph: SmallGraph, order: int = 19) -> CoverInstance:
    """K_order minus the edges of ``h_graph`` placed on vertices 1..n."""
    return CoverInstance(order, frozenset({4}), frozenset(small_to_complete(h_graph)))


def k19_alpha9_sweep(solver_config: Optional[SolverConfig] = None,
                     cache: Optional[OutcomeCache] = None) -> CaseReport:
    """Nine triples in K19 cover a 6-regular H = K9 - R with R 2-regular."""
    report = CaseReport("k19-alpha9")
    for r_graph in enumerate_regular_graphs(9, 2):
        h_graph = complement_in_complete(r_graph)
        name = f"R = {_cycle_type(r_graph)}"
        k3 = solve_graph_decomposition(h_graph, 3, solver_config)
        if k3.status is Status.INFEASIBLE:
            report.entries.append(EntryResult(name, "k3-host", True, "H has no triangle decomposition", k3))
            continue
        out = cached_solve(_embedded_instance(h_graph), solver_config, cache)
        detail = f"H splits into triangles; K19 - E(H) into K4's: {out.status.value}"
        report.entries.append(EntryResult(name, "k4", out.status is Status.INFEASIBLE, detail, out))
    return report


def _cycle_type(g: SmallGraph) -> str:
    adj = g.adjacency()
    seen: set = set()
    lengths = []
    for s in range(g.order):
        if s in seen:
            continue
        stack, size = [s], 0
        seen.add(s)
        while stack:
            x = stack.pop()
            size += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        lengths.append(size)
    return "+".join(f"C{n}" for n in sorted(lengths, reverse=True))


def _sweep_case(args) -> dict:
    index, text, solver_config, cache_root, h_side = args
    cache = OutcomeCache(cache_root) if cache_root is not None else None
    h_graph = decode(text)
    out = cached_solve(_embedded_instance(h_graph), solver_config, cache)
    rec = {
        "index": index,
        "graph6": text,
        "canonical": canonical_form(h_graph).graph6(),
        "status": out.status.value,
        "nodes": out.nodes,
        "ms": round(out.ms, 3),
    }
    if h_side:
        rec["h_triangle_decomposition"] = solve_graph_decomposition(h_graph, 3, solver_config).status.value
    return rec


def read_checkpoint(path: Path) -> dict[int, dict]:
    done: dict[int, dict] = {}
    if not path.exists():
        return done
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                # a run killed mid-write leaves a partial last line; it is redone
                continue
            done[int(rec["index"])] = rec
    return done


def k19_alpha11_sweep(checkpoint: Optional[os.PathLike | str] = None,
                      solver_config: Optional[SolverConfig] = None,
                      graphs: Optional[Sequence[str]] = None,
                      jobs: int = 1, stop_after: Optional[int] = None,
                      cache: Optional[OutcomeCache] = None,
                      check_h_side: bool = False) -> CaseReport:
    """K4 splits of K19 - E(H) for every 6-regular H on 11 vertices.

    With ``checkpoint`` set, each finished case is appended to that JSON-lines
    file and cases already recorded there are not rerun. ``stop_after`` ends
    the run after that many new cases, leaving the rest for a resumed run.
    ``check_h_side`` also records whether H itself splits into triangles;
    that extra result does not enter the verdict.
    """
    strings = list(graphs) if graphs is not None else list(regular_listing(11, 6).strings)
    path = Path(checkpoint) if checkpoint is not None else None
    done = read_checkpoint(path) if path is not None else {}
    for i, rec in done.items():
        if i >= len(strings) or rec["graph6"] != strings[i]:
            raise ValueError(f"checkpoint entry {i} does not match the graph list")
    todo = [i for i in range(len(strings)) if i not in done]
    if stop_after is not None:
        todo = todo[:stop_after]
    results = dict(done)
    cache_root = cache.root if cache is not None else None
    args = [(i, strings[i], solver_config, cache_root, check_h_side) for i in todo]
    writer = path.open("a", encoding="utf-8") if path is not None else None
    try:
        for rec in _ordered(_sweep_case, args, jobs):
            results[rec["index"]] = rec
            if writer is not None:
                writer.write(json.dumps(rec, sort_keys=True) + "\n")
                writer.flush()
            log.info("case %d: %s (%d nodes)", rec["index"], rec["status"], rec["nodes"])
    finally:
        if writer is not None:
            writer.close()
    report = CaseReport("k19-alpha11")
    for i in sorted(results):
        rec = results[i]
        status = Status(rec["status"])
        outcome = CoverOutcome(status, nodes=rec["nodes"], ms=rec["ms"])
        report.entries.append(EntryResult(f"graph {i + 1} = {rec['graph6']}", "k4",
                                          status is Status.INFEASIBLE, status.value, outcome))
    missing = [i for i in range(len(strings)) if i not in results]
    report.checkpoint = missing[0] if missing else None
    return report


def _ordered(fn, args: list, jobs: int) -> Iterable[dict]:
    if jobs <= 1:
        for a in args:
            yield fn(a)
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(fn, args)
