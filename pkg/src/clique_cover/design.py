"""Counting identities and closed-form results for {K3,K4} coverings of K_v."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence


def _check_order(v: int) -> None:
    if v < 3:
        raise ValueError(f"order must be at least 3, got {v}")


def excess_min(v: int) -> int:
    """Smallest number of doubly covered edges in a {K3,K4}-covering of K_v."""
    _check_order(v)
    if v == 6:
        return 3
    return 2 if v % 3 == 2 else 0


def cover_number(v: int) -> int:
    """Fewest blocks in a {K3,K4}-covering of K_v with minimum excess."""
    _check_order(v)
    special = {6: 3, 9: 12, 10: 12, 18: 33, 19: 35}
    if v in special:
        return special[v]
    r = v % 12
    if r in (1, 4):
        num = v * v - v
    elif r in (7, 10):
        num = v * v - v + 42
    elif r in (0, 3):
        num = v * v + v
    elif r in (6, 9):
        num = v * v + v + 6
    elif r in (5, 8):
        num = v * v + 3 * v - 4
    else:  # 2, 11
        num = v * v + 3 * v + 2
    assert num % 12 == 0, (v, num)
    return num // 12


def lower_bound(v: int) -> int:
    """General lower bound on the covering number for v = 6, 7, 9, 10 (mod 12)."""
    r = v % 12
    if v == 6 or r not in (6, 7, 9, 10):
        raise ValueError(f"no bound family for v={v} (v mod 12 = {r})")
    if r in (6, 9):
        return (v * v + v + 6) // 12
    return (v * v - v + 42) // 12


def edge_count(v: int) -> int:
    return v * (v - 1) // 2


def beta_from_alpha(v: int, alpha: int) -> Optional[int]:
    """Quadruple count forced by ``alpha`` triples, or ``None`` if impossible."""
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    rest = edge_count(v) - 3 * alpha
    if rest < 0 or rest % 6:
        return None
    return rest // 6


def vertex_triple_residue(v: int) -> int:
    """The residue r of alpha_x mod 3 forced by 2*alpha_x + 3*beta_x = v - 1."""
    _check_order(v)
    # 2 is its own inverse mod 3
    return (2 * (v - 1)) % 3


@dataclass(frozen=True)
class DesignCounts:
    v: int
    alpha: int
    beta: int

    @classmethod
    def from_alpha(cls, v: int, alpha: int) -> "DesignCounts":
        beta = beta_from_alpha(v, alpha)
        if beta is None:
            raise ValueError(f"{alpha} triples cannot occur in a decomposition of K_{v}")
        return cls(v, alpha, beta)

    @property
    def blocks(self) -> int:
        return self.alpha + self.beta

    def consistent(self) -> bool:
        return 3 * self.alpha + 6 * self.beta == edge_count(self.v)


def vertex_counts(v: int, alpha_x: int) -> Optional[int]:
    """beta_x for a vertex in ``alpha_x`` triples, or ``None`` if impossible."""
    rest = v - 1 - 2 * alpha_x
    if rest < 0 or rest % 3:
        return None
    return rest // 3


@dataclass(frozen=True)
class GraphicResult:
    graphic: bool
    failing_k: Optional[int] = None  # first k whose prefix inequality fails
    odd_sum: bool = False


def erdos_gallai_check(seq: Sequence[int]) -> GraphicResult:
    d = sorted((int(x) for x in seq), reverse=True)
    if any(x < 0 for x in d):
        raise ValueError("degrees must be non-negative")
    if sum(d) % 2:
        return GraphicResult(False, odd_sum=True)
    n = len(d)
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        rhs = k * (k - 1) + sum(min(x, k) for x in d[k:])
        if prefix > rhs:
            return GraphicResult(False, failing_k=k)
    return GraphicResult(True)


def erdos_gallai(seq: Sequence[int]) -> bool:
    """True iff ``seq`` is the degree sequence of a simple graph."""
    return erdos_gallai_check(seq).graphic


def pbd_exists(v: int, w: int) -> bool:
    """Existence of a PBD(v, {4, w*}, 1): blocks of size 4 plus one block of size w."""
    if not v > w > 0:
        raise ValueError(f"need v > w > 0, got v={v}, w={w}")
    if v < 3 * w + 1:
        return False
    a, b = v % 12, w % 12
    return (a in (1, 4) and b in (1, 4)) or (a in (7, 10) and b in (7, 10))


@lru_cache(maxsize=None)
def max_triangle_packing(n: int) -> int:
    """Maximum number of edge-disjoint triangles in K_n, found by exact search."""
    if not 3 <= n <= 9:
        raise ValueError(f"triangle packing is computed for 3 <= n <= 9, got {n}")
    from .solver import Status, max_packing

    out = max_packing(n, 3)
    if out.status is not Status.FEASIBLE or not out.minimal:
        raise RuntimeError(f"packing search for n={n} did not finish: {out.status}")
    return len(out.blocks)


@dataclass(frozen=True, order=True)
class TripleDistribution:
    """Triples split by how many heavy vertices they contain (t_i has i)."""

    t0: int
    t1: int
    t2: int
    t3: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.t0, self.t1, self.t2, self.t3)


def distribution_violations(t: TripleDistribution, h: int, a: int, l: int, alpha: int) -> list[str]:
    """Names of the constraints that ``t`` breaks (empty when it is a solution)."""
    bad = []
    t0, t1, t2, t3 = t.as_tuple()
    if min(t0, t1, t2, t3) < 0:
        bad.append("nonnegative")
    if t0 + t1 + t2 + t3 != alpha:
        bad.append("total triples")
    if 3 * t3 + 2 * t2 + t1 != h * a:
        bad.append("heavy incidences")
    if 3 * t0 + 2 * t1 + t2 != l:
        bad.append("light incidences")
    if t0 > l // 3:
        bad.append("t0 light capacity")
    if t1 > l // 2:
        bad.append("t1 light capacity")
    if t2 > l:
        bad.append("t2 light capacity")
    if t3 > _packing_bound(h):
        bad.append("heavy triangle packing")
    if t2 + 3 * t3 > h * (h - 1) // 2:
        bad.append("heavy pairs")
    return bad


def _packing_bound(h: int) -> int:
    if h < 3:
        return 0
    return max_triangle_packing(h)


def triple_distribution_solutions(h: int, a: int, l: int, alpha: int) -> list[TripleDistribution]:
    """All splits of ``alpha`` triples among h heavy vertices (each in ``a``
    triples) and l light vertices (each in one triple), in lexicographic order."""
    if min(h, a, l, alpha) < 0:
        raise ValueError("parameters must be non-negative")
    out = []
    for t0, t1, t2 in product(range(alpha + 1), repeat=3):
        t3 = alpha - t0 - t1 - t2
        if t3 < 0:
            continue
        t = TripleDistribution(t0, t1, t2, t3)
        if not distribution_violations(t, h, a, l, alpha):
            out.append(t)
    return sorted(out)
