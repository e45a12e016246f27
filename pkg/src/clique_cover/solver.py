"""Exact cover of a complete graph's edges by clique blocks.

A :class:`CoverInstance` is K_v minus some removed edges, with a demand
(multiplicity) per surviving edge. :func:`solve_exact` looks for a set of
distinct blocks covering every surviving edge exactly its demand;
:func:`solve_minimum` additionally minimises the number of blocks.
"""
from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .graphs import (
    Block,
    CompleteGraphSpec,
    Pair,
    SmallGraph,
    block_edges,
    edge_index,
    enumerate_blocks,
    make_block,
    normalize_pair,
)
from .frontier import _cliques_in, frontier_search
from .kernel import S_EXHAUSTED, S_FOUND, KernelState

CHUNK_NODES = 200_000

log = logging.getLogger(__name__)


class Status(str, enum.Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    TIMED_OUT = "TimedOut"


@dataclass(frozen=True)
class CoverInstance:
    order: int
    block_sizes: frozenset[int]
    removed_edges: frozenset[Pair] = frozenset()
    multiplicity: Mapping[Pair, int] = field(default_factory=dict)
    per_size_edge_restriction: Optional[Mapping[int, frozenset[Pair]]] = None

    def __post_init__(self) -> None:
        spec = CompleteGraphSpec(self.order)
        sizes = frozenset(int(k) for k in self.block_sizes)
        if not sizes:
            raise ValueError("at least one block size is required")
        for k in sizes:
            if k < 2 or k > self.order:
                raise ValueError(f"block size {k} invalid for order {self.order}")
        removed = frozenset(normalize_pair(e) for e in self.removed_edges)
        for e in removed:
            edge_index(spec, e)
        mult = {}
        for e, m in dict(self.multiplicity).items():
            e = normalize_pair(e)
            edge_index(spec, e)
            if e in removed:
                raise ValueError(f"removed edge {e} cannot carry a multiplicity")
            if int(m) < 1:
                raise ValueError(f"multiplicity of {e} must be positive, got {m}")
            mult[e] = int(m)
        restriction = None
        if self.per_size_edge_restriction is not None:
            restriction = {int(k): frozenset(normalize_pair(e) for e in es)
                           for k, es in self.per_size_edge_restriction.items()}
        object.__setattr__(self, "block_sizes", sizes)
        object.__setattr__(self, "removed_edges", removed)
        object.__setattr__(self, "multiplicity", mult)
        object.__setattr__(self, "per_size_edge_restriction", restriction)

    @property
    def spec(self) -> CompleteGraphSpec:
        return CompleteGraphSpec(self.order)

    def surviving_edges(self) -> list[Pair]:
        return [e for e in self.spec.edges() if e not in self.removed_edges]

    def demand(self, edge: Pair) -> int:
        if edge in self.removed_edges:
            return 0
        return self.multiplicity.get(edge, 1)

    def total_demand(self) -> int:
        return sum(self.demand(e) for e in self.surviving_edges())

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "block_sizes": sorted(self.block_sizes),
            "removed_edges": [list(e) for e in sorted(self.removed_edges)],
            "excess": [[list(e), m] for e, m in sorted(self.multiplicity.items()) if m != 1],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CoverInstance":
        excess = data.get("excess") or []
        return cls(
            order=int(data["order"]),
            block_sizes=frozenset(int(k) for k in data["block_sizes"]),
            removed_edges=frozenset(tuple(e) for e in (data.get("removed_edges") or [])),
            multiplicity={tuple(e): int(m) for e, m in excess},
        )


@dataclass
class SolverConfig:
    """Search limits and strategy switches.

    ``restarts`` randomised depth-first probes of ``restart_nodes`` nodes each
    run before the complete search; they only speed up finding covers and
    are reproducible from ``seed``. ``symmetry`` enables the isomorph-rejecting
    frontier search on instances where every demand is 1.
    """

    node_limit: Optional[int] = None
    time_limit: Optional[float] = None  # seconds
    thread_count: int = 1
    seed: int = 0
    iterative_deepening: bool = False
    prune: bool = True
    prefer_large_blocks: Optional[bool] = None  # None: only when minimising
    restarts: int = 0
    restart_nodes: int = 20_000
    symmetry: bool = True
    frontier_limit: int = 20_000

    def __post_init__(self) -> None:
        if self.thread_count < 1:
            raise ValueError("thread_count must be positive")
        if self.restarts < 0 or self.restart_nodes < 1:
            raise ValueError("restart settings must be non-negative")
        if self.frontier_limit < 1:
            raise ValueError("frontier_limit must be positive")


@dataclass
class CoverOutcome:
    status: Status
    blocks: list[Block] = field(default_factory=list)
    minimal: bool = False
    nodes: int = 0
    ms: float = 0.0

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE

    def count_by_size(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for b in self.blocks:
            out[len(b)] = out.get(len(b), 0) + 1
        return out

    def to_json(self, timing: bool = True) -> dict:
        data = {
            "status": self.status.value,
            "blocks": [list(b) for b in self.blocks],
            "block_count": self.block_count,
            "minimal": self.minimal,
            "nodes": self.nodes,
        }
        if timing:
            data["ms"] = round(self.ms, 3)
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "CoverOutcome":
        return cls(Status(data["status"]), [tuple(b) for b in data.get("blocks", [])],
                   bool(data.get("minimal", False)), int(data.get("nodes", 0)), float(data.get("ms", 0.0)))


def build_candidates(instance: CoverInstance) -> list[tuple[Block, list[int]]]:
    """Candidate blocks with their 1-based edge indices, in (size, lex) order."""
    spec = instance.spec
    out = []
    for k in sorted(instance.block_sizes):
        allowed = None
        if instance.per_size_edge_restriction is not None:
            allowed = instance.per_size_edge_restriction.get(k)
        for block in enumerate_blocks(spec, k):
            pairs = block_edges(block)
            if any(p in instance.removed_edges for p in pairs):
                continue
            if allowed is not None and any(p not in allowed for p in pairs):
                continue
            out.append((block, [edge_index(spec, p) for p in pairs]))
    return out


def _kernel_state(instance: CoverInstance, candidates, budget: int, minimise: bool,
                  prefer_large: bool, prune: bool,
                  rng: Optional[np.random.Generator] = None) -> tuple[KernelState, list[Pair]]:
    spec = instance.spec
    surviving = instance.surviving_edges()
    local = {edge_index(spec, e): i for i, e in enumerate(surviving)}
    n_c = len(candidates)
    width = max((len(es) for _, es in candidates), default=1)
    cand_edges = np.zeros((max(n_c, 1), width), dtype=np.int32)
    cand_len = np.zeros(max(n_c, 1), dtype=np.int32)
    per_edge: list[list[int]] = [[] for _ in surviving]
    for c, (_, es) in enumerate(candidates):
        cand_len[c] = len(es)
        for j, g in enumerate(es):
            cand_edges[c, j] = local[g]
            per_edge[local[g]].append(c)
    if n_c == 0:
        cand_len = cand_len[:0]
        cand_edges = cand_edges[:0]
    if rng is not None:
        for lst in per_edge:
            rng.shuffle(lst)
    if prefer_large:
        # stable sort keeps a shuffled order within each block size
        for lst in per_edge:
            lst.sort(key=lambda c: -len(candidates[c][0]))
    edge_ptr = np.zeros(len(surviving) + 1, dtype=np.int32)
    flat: list[int] = []
    for i, lst in enumerate(per_edge):
        flat.extend(lst)
        edge_ptr[i + 1] = len(flat)
    edge_u = np.array([a - 1 for a, _ in surviving], dtype=np.int32)
    edge_v = np.array([b - 1 for _, b in surviving], dtype=np.int32)
    demand = [instance.demand(e) for e in surviving]
    state = KernelState(instance.order, cand_edges, cand_len, edge_ptr,
                        np.array(flat, dtype=np.int32), edge_u, edge_v, demand,
                        sorted(instance.block_sizes), budget=budget,
                        minimise=minimise, prune=prune)
    return state, surviving


@dataclass
class _Limits:
    """Shared node and wall-clock allowance across the phases of one call."""

    node_limit: Optional[int]
    deadline: Optional[float]
    nodes: int = 0

    @classmethod
    def start(cls, config: SolverConfig) -> "_Limits":
        deadline = None
        if config.time_limit is not None:
            deadline = time.perf_counter() + config.time_limit
        return cls(config.node_limit, deadline)

    def nodes_left(self) -> Optional[int]:
        return None if self.node_limit is None else self.node_limit - self.nodes

    def expired(self) -> bool:
        if self.node_limit is not None and self.nodes >= self.node_limit:
            return True
        return self.deadline is not None and time.perf_counter() > self.deadline


def _drive(state: KernelState, limits: _Limits, cap: Optional[int] = None) -> bool:
    """Run the kernel until it finishes, a limit hits or ``cap`` nodes pass."""
    base = state.nodes
    try:
        while True:
            chunk = CHUNK_NODES
            left = limits.nodes_left()
            if left is not None:
                chunk = min(chunk, left - (state.nodes - base))
            if cap is not None:
                chunk = min(chunk, cap - (state.nodes - base))
            if chunk <= 0:
                return False
            status = state.step(chunk)
            if status in (S_FOUND, S_EXHAUSTED):
                return True
            if limits.deadline is not None and time.perf_counter() > limits.deadline:
                return False
    finally:
        limits.nodes += state.nodes - base


def symmetry_applies(instance: CoverInstance) -> bool:
    """Residual graphs determine subproblems only with unit demand and no restriction."""
    return (instance.per_size_edge_restriction is None
            and all(m == 1 for m in instance.multiplicity.values()))


def _restart_probe(instance, candidates, config, limits, budget, prefer) -> Optional[list[Block]]:
    for i in range(config.restarts):
        if limits.expired():
            return None
        rng = np.random.default_rng((config.seed, i))
        state, _ = _kernel_state(instance, candidates, budget, False, prefer, config.prune, rng)
        _drive(state, limits, cap=config.restart_nodes)
        if state.status == S_FOUND:
            return [candidates[c][0] for c in state.current_selection()]
        if state.status == S_EXHAUSTED:
            # a full traversal finished inside the probe: no cover exists
            return []
    return None


def _residual_instance(instance: CoverInstance, adj: list[int]) -> CoverInstance:
    n = instance.order
    removed = [(a + 1, b + 1) for a in range(n) for b in range(a + 1, n) if not adj[a] >> b & 1]
    return CoverInstance(n, instance.block_sizes, frozenset(removed))


def _candidates_from_adjacency(n: int, adj: list[int], sizes) -> list[tuple[Block, list[int]]]:
    """Same list as :func:`build_candidates` for a unit-demand residual graph.

    Enumerating the cliques of the residual graph is much cheaper than
    filtering every block of K_v once most edges are gone.
    """
    spec = CompleteGraphSpec(n)
    index = [[0] * n for _ in range(n)]
    for a, b in spec.edges():
        index[a - 1][b - 1] = edge_index(spec, (a, b))
    out = []
    full = (1 << n) - 1
    for k in sorted(sizes):
        for clique in _cliques_in(adj, full, k):
            edges = [index[x][y] for i, x in enumerate(clique) for y in clique[i + 1:]]
            out.append((tuple(x + 1 for x in clique), edges))
    return out


def _solve_subproblem(args) -> tuple[str, list[Block], int]:
    """Depth-first search below one frontier state (runs in worker processes too)."""
    instance, adj, budget, prefer, prune, node_limit, deadline = args
    limits = _Limits(node_limit, deadline)
    if limits.expired():
        return "limit", [], 0
    candidates = _candidates_from_adjacency(instance.order, adj, instance.block_sizes)
    state, _ = _kernel_state(instance, candidates, budget, False, prefer, prune)
    finished = _drive(state, limits)
    if not finished:
        return "limit", [], state.nodes
    if state.status == S_FOUND:
        return "found", [candidates[c][0] for c in state.current_selection()], state.nodes
    return "exhausted", [], state.nodes


def _frontier_phase(instance, config, limits, budget, prefer) -> tuple[Optional[Status], list[Block]]:
    n = instance.order
    adj = [0] * n
    for a, b in instance.surviving_edges():
        adj[a - 1] |= 1 << (b - 1)
        adj[b - 1] |= 1 << (a - 1)
    res = frontier_search(n, adj, instance.block_sizes, budget=budget,
                          frontier_limit=config.frontier_limit, deadline=limits.deadline,
                          node_limit=limits.nodes_left())
    limits.nodes += res.expanded
    if res.status == "found":
        return Status.FEASIBLE, list(res.blocks)
    if res.status == "exhausted":
        return Status.INFEASIBLE, []
    if res.status == "limit":
        return Status.TIMED_OUT, []
    # hand the frontier to the depth-first kernel, one state at a time
    depth = len(res.frontier[0].blocks)
    log.debug("handing %d states at depth %d to the kernel", len(res.frontier), depth)
    # built lazily so that each sequential job sees the node allowance left over
    jobs = ((_residual_instance(instance, st.adj), st.adj,
             -1 if budget is None else budget - depth, prefer, config.prune,
             limits.nodes_left(), limits.deadline) for st in res.frontier)
    results = _map_ordered(_solve_subproblem, jobs, config.thread_count, len(res.frontier))
    timed_out = False
    for st, (kind, blocks, nodes) in zip(res.frontier, results):
        limits.nodes += nodes
        if kind == "found":
            return Status.FEASIBLE, list(st.blocks) + blocks
        if kind == "limit":
            timed_out = True
            break
    return (Status.TIMED_OUT if timed_out else Status.INFEASIBLE), []


def _map_ordered(fn, jobs, threads: int, count: int):
    """Yield results in job order; later jobs are skipped once one succeeds."""
    if threads <= 1 or count < 2:
        for job in jobs:
            r = fn(job)
            yield r
            if r[0] != "exhausted":
                return
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, job) for job in jobs]
        try:
            for fut in futures:
                r = fut.result()
                yield r
                if r[0] != "exhausted":
                    return
        finally:
            for fut in futures:
                fut.cancel()


def _solve_exact(instance, config, limits, max_blocks, prefer) -> tuple[Status, list[Block]]:
    log.debug("exact search, order %d, budget %s", instance.order, max_blocks)
    candidates = build_candidates(instance)
    budget = -1 if max_blocks is None else max_blocks
    if config.restarts:
        found = _restart_probe(instance, candidates, config, limits, budget, prefer)
        if found:
            return Status.FEASIBLE, found
        if found == []:
            return Status.INFEASIBLE, []
    if config.symmetry and symmetry_applies(instance) and instance.total_demand() > 0:
        return _frontier_phase(instance, config, limits, max_blocks, prefer)
    state, _ = _kernel_state(instance, candidates, budget, False, prefer, config.prune)
    if not _drive(state, limits):
        return Status.TIMED_OUT, []
    if state.status == S_FOUND:
        return Status.FEASIBLE, [candidates[c][0] for c in state.current_selection()]
    return Status.INFEASIBLE, []


def solve_exact(instance: CoverInstance, config: Optional[SolverConfig] = None,
                max_blocks: Optional[int] = None) -> CoverOutcome:
    """Find one exact cover (optionally with at most ``max_blocks`` blocks)."""
    config = config or SolverConfig()
    started = time.perf_counter()
    limits = _Limits.start(config)
    status, blocks = _solve_exact(instance, config, limits, max_blocks,
                                  bool(config.prefer_large_blocks))
    ms = (time.perf_counter() - started) * 1000
    return CoverOutcome(status, sorted(blocks, key=_block_key), nodes=limits.nodes, ms=ms)


def solve_minimum(instance: CoverInstance, config: Optional[SolverConfig] = None) -> CoverOutcome:
    """Exact cover with the fewest blocks.

    With unit demands the search finds any cover and then asks for one with
    fewer blocks until that is proven impossible. Other instances use the
    kernel's own branch and bound, where each improvement tightens the budget
    and exhausting the tree certifies minimality. ``config.iterative_deepening``
    instead grows the budget from the lower bound until the first feasible
    count.
    """
    config = config or SolverConfig()
    started = time.perf_counter()
    prefer = True if config.prefer_large_blocks is None else config.prefer_large_blocks
    limits = _Limits.start(config)
    if config.iterative_deepening:
        return _iterative_deepening(instance, config, limits, started, prefer)
    if config.symmetry and symmetry_applies(instance):
        return _descend(instance, config, limits, started, prefer)
    candidates = build_candidates(instance)
    state, _ = _kernel_state(instance, candidates, -1, True, prefer, config.prune)
    finished = _drive(state, limits)
    ms = (time.perf_counter() - started) * 1000
    best = [candidates[c][0] for c in state.best_selection()]
    if state.st[10] < 0:  # BEST
        status = Status.INFEASIBLE if finished else Status.TIMED_OUT
        return CoverOutcome(status, nodes=limits.nodes, ms=ms)
    return CoverOutcome(Status.FEASIBLE, sorted(best, key=_block_key), minimal=finished,
                        nodes=limits.nodes, ms=ms)


def _descend(instance, config, limits, started, prefer) -> CoverOutcome:
    status, best = _solve_exact(instance, config, limits, None, prefer)
    minimal = False
    if status is Status.FEASIBLE:
        floor = min_blocks_bound(instance)
        while len(best) > floor:
            status, blocks = _solve_exact(instance, config, limits, len(best) - 1, prefer)
            if status is Status.FEASIBLE:
                best = blocks
                continue
            break
        minimal = len(best) <= floor or status is Status.INFEASIBLE
        status = Status.FEASIBLE
    ms = (time.perf_counter() - started) * 1000
    return CoverOutcome(status, sorted(best, key=_block_key), minimal=minimal,
                        nodes=limits.nodes, ms=ms)


def _iterative_deepening(instance, config, limits, started, prefer) -> CoverOutcome:
    total = instance.total_demand()
    budget = min_blocks_bound(instance)
    while budget <= total:
        status, blocks = _solve_exact(instance, config, limits, budget, prefer)
        ms = (time.perf_counter() - started) * 1000
        if status is Status.TIMED_OUT:
            return CoverOutcome(Status.TIMED_OUT, nodes=limits.nodes, ms=ms)
        if status is Status.FEASIBLE:
            return CoverOutcome(Status.FEASIBLE, sorted(blocks, key=_block_key), minimal=True,
                                nodes=limits.nodes, ms=ms)
        budget += 1
    return CoverOutcome(Status.INFEASIBLE, nodes=limits.nodes, ms=(time.perf_counter() - started) * 1000)


def min_blocks_bound(instance: CoverInstance) -> int:
    """ceil(total demand / largest block edge count)."""
    largest = max(k * (k - 1) // 2 for k in instance.block_sizes)
    return -(-instance.total_demand() // largest)


def _block_key(b: Block) -> tuple:
    return (len(b), b)


@dataclass
class CoverageReport:
    coverage: dict[Pair, int]
    exact: bool
    uncovered: list[Pair]
    overcovered: list[Pair]
    removed_hits: list[Pair]
    invalid_blocks: list[tuple[int, Block, str]]

    def defects(self) -> list[Pair]:
        return sorted(set(self.uncovered) | set(self.overcovered) | set(self.removed_hits))

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "edges_checked": len(self.coverage),
            "uncovered": [list(e) for e in self.uncovered],
            "overcovered": [list(e) for e in self.overcovered],
            "removed_hits": [list(e) for e in self.removed_hits],
            "invalid_blocks": [{"index": i, "block": list(b), "reason": r} for i, b, r in self.invalid_blocks],
        }


def verify_cover(instance: CoverInstance, blocks: Iterable[Sequence[int]]) -> CoverageReport:
    """Independent per-edge coverage check; does not use the solver's tables."""
    v = instance.order
    hits: dict[Pair, int] = {}
    invalid = []
    for i, raw in enumerate(blocks):
        verts = tuple(raw)
        if len(set(verts)) != len(verts):
            invalid.append((i, verts, "repeated vertex"))
            continue
        if any(not 1 <= x <= v for x in verts):
            invalid.append((i, verts, f"vertex out of range 1..{v}"))
            continue
        if len(verts) not in instance.block_sizes:
            invalid.append((i, tuple(sorted(verts)), f"size {len(verts)} not allowed"))
        for a in verts:
            for b in verts:
                if a < b:
                    hits[(a, b)] = hits.get((a, b), 0) + 1
    coverage = {}
    uncovered, over, removed_hits = [], [], []
    for a in range(1, v + 1):
        for b in range(a + 1, v + 1):
            e = (a, b)
            got = hits.get(e, 0)
            coverage[e] = got
            if e in instance.removed_edges:
                if got:
                    removed_hits.append(e)
                continue
            want = instance.multiplicity.get(e, 1)
            if got < want:
                uncovered.append(e)
            elif got > want:
                over.append(e)
    exact = not (uncovered or over or removed_hits or invalid)
    return CoverageReport(coverage, exact, uncovered, over, removed_hits, invalid)


def solve_graph_decomposition(host: SmallGraph, size: int,
                              config: Optional[SolverConfig] = None) -> CoverOutcome:
    """Decompose the edges of an arbitrary small graph into ``size``-cliques.

    The host is embedded as K_n minus its non-edges; returned blocks are
    translated back to the host's 0-based labels.
    """
    if host.order < size:
        raise ValueError(f"host order {host.order} smaller than block size {size}")
    non_edges = [(a + 1, b + 1) for a in range(host.order) for b in range(a + 1, host.order)
                 if (a, b) not in host.edges]
    instance = CoverInstance(host.order, frozenset({size}), frozenset(non_edges))
    out = solve_exact(instance, config)
    out.blocks = [tuple(x - 1 for x in b) for b in out.blocks]
    return out


def max_packing(order: int, size: int, config: Optional[SolverConfig] = None) -> CoverOutcome:
    """Maximum set of edge-disjoint ``size``-cliques in K_order.

    Packing is an exact cover where leftover edges are covered by single-edge
    filler blocks; minimising the total block count maximises the cliques.
    The returned outcome lists only the cliques.
    """
    instance = CoverInstance(order, frozenset({2, size}))
    out = solve_minimum(instance, config)
    out.blocks = [b for b in out.blocks if len(b) == size]
    return out
