"""Resumable exact-cover search kernel (Algorithm X over array state).

Items are edges with a residual demand, options are candidate blocks. The
whole search state lives in numpy arrays owned by :class:`KernelState`, so a
call to :func:`run` can stop after a node budget and a later call picks up
exactly where it left off. Time limits and checkpoints are handled by the
Python driver between calls.
"""
from __future__ import annotations

import numpy as np
from numba import njit

# st[] slots
LVL = 0          # number of blocks currently selected
PHASE = 1        # 0: enter new node, 1: advance at level LVL-1... see run()
TOTAL = 2        # sum of residual demand
TRI_NEED = 3     # sum over vertices of the minimum triple count mod 3
BUDGET = 4       # max block count allowed, -1 for none
NODES = 5
STATUS = 6       # 0 paused, 1 solution found, 2 exhausted
BAN_TOP = 7
N_BAD = 8        # vertices whose residual degree is not representable
MODE = 9         # 0 first solution, 1 branch-and-bound minimise
BEST = 10        # best block count found (minimise), -1 if none
USE_TRI = 11     # 1 when block sizes are exactly {3, 4}
NO_PRUNE = 12    # 1 disables the lower-bound pruning (testing)
N_SLOTS = 16

S_PAUSED = 0
S_FOUND = 1
S_EXHAUSTED = 2


@njit(cache=True)
def _block(c, blocked, count, cand_edges, cand_len):
    blocked[c] += 1
    if blocked[c] == 1:
        for j in range(cand_len[c]):
            count[cand_edges[c, j]] -= 1


@njit(cache=True)
def _unblock(c, blocked, count, cand_edges, cand_len):
    blocked[c] -= 1
    if blocked[c] == 0:
        for j in range(cand_len[c]):
            count[cand_edges[c, j]] += 1


@njit(cache=True)
def _vertex_dec(x, vres, bad_res, st):
    old = vres[x]
    new = old - 1
    vres[x] = new
    st[TRI_NEED] += (2 * new) % 3 - (2 * old) % 3
    st[N_BAD] += bad_res[new] - bad_res[old]


@njit(cache=True)
def _vertex_inc(x, vres, bad_res, st):
    old = vres[x]
    new = old + 1
    vres[x] = new
    st[TRI_NEED] += (2 * new) % 3 - (2 * old) % 3
    st[N_BAD] += bad_res[new] - bad_res[old]


@njit(cache=True)
def _select(c, demand, blocked, count, vres, st, cand_edges, cand_len,
            edge_ptr, edge_list, edge_u, edge_v, bad_res):
    _block(c, blocked, count, cand_edges, cand_len)
    for j in range(cand_len[c]):
        f = cand_edges[c, j]
        demand[f] -= 1
        st[TOTAL] -= 1
        _vertex_dec(edge_u[f], vres, bad_res, st)
        _vertex_dec(edge_v[f], vres, bad_res, st)
        if demand[f] == 0:
            for k in range(edge_ptr[f], edge_ptr[f + 1]):
                _block(edge_list[k], blocked, count, cand_edges, cand_len)


@njit(cache=True)
def _unselect(c, demand, blocked, count, vres, st, cand_edges, cand_len,
              edge_ptr, edge_list, edge_u, edge_v, bad_res):
    for j in range(cand_len[c] - 1, -1, -1):
        f = cand_edges[c, j]
        if demand[f] == 0:
            for k in range(edge_ptr[f], edge_ptr[f + 1]):
                _unblock(edge_list[k], blocked, count, cand_edges, cand_len)
        demand[f] += 1
        st[TOTAL] += 1
        _vertex_inc(edge_u[f], vres, bad_res, st)
        _vertex_inc(edge_v[f], vres, bad_res, st)
    _unblock(c, blocked, count, cand_edges, cand_len)


@njit(cache=True)
def _lower_bound(st, max_len):
    total = st[TOTAL]
    lb = (total + max_len - 1) // max_len
    if st[USE_TRI] == 1:
        tmin = (st[TRI_NEED] + 2) // 3
        lb2 = (total + 3 * tmin + 5) // 6
        if lb2 > lb:
            lb = lb2
    return lb


@njit(cache=True)
def run(max_nodes, st, demand, blocked, count, vres,
        stack_edge, stack_pos, stack_sel, ban_start, ban_list, best_sel,
        cand_edges, cand_len, edge_ptr, edge_list, edge_u, edge_v, bad_res,
        max_len):
    """Advance the search by at most ``max_nodes`` nodes.

    Phase 0 evaluates the node reached after ``st[LVL]`` selections; phase 1
    advances the branching level ``st[LVL] - 1`` to its next alive candidate.
    """
    n_edges = demand.shape[0]
    budget_nodes = st[NODES] + max_nodes
    while True:
        if st[PHASE] == 0:
            if st[NODES] >= budget_nodes:
                st[STATUS] = S_PAUSED
                return
            st[NODES] += 1
            lvl = st[LVL]
            dead = False
            if st[TOTAL] == 0:
                if st[MODE] == 0:
                    st[STATUS] = S_FOUND
                    # leave PHASE at 1 so a further call resumes past this solution
                    st[PHASE] = 1
                    return
                st[BEST] = lvl
                for i in range(lvl):
                    best_sel[i] = stack_sel[i]
                st[BUDGET] = lvl - 1
                dead = True
            elif st[N_BAD] > 0:
                dead = True
            elif st[BUDGET] >= 0 and st[NO_PRUNE] == 0 and lvl + _lower_bound(st, max_len) > st[BUDGET]:
                dead = True
            elif st[BUDGET] >= 0 and lvl + 1 > st[BUDGET]:
                dead = True
            if not dead:
                best_e = -1
                best_c = 1 << 30
                for e in range(n_edges):
                    d = demand[e]
                    if d > 0:
                        c = count[e]
                        if c < d:
                            best_e = -1
                            dead = True
                            break
                        if c < best_c:
                            best_c = c
                            best_e = e
                if not dead:
                    stack_edge[lvl] = best_e
                    stack_pos[lvl] = edge_ptr[best_e]
                    stack_sel[lvl] = -1
                    ban_start[lvl] = st[BAN_TOP]
                    st[LVL] = lvl + 1
            st[PHASE] = 1
            if dead:
                if lvl == 0:
                    st[STATUS] = S_EXHAUSTED
                    return
            continue

        # phase 1: advance level L = st[LVL] - 1
        L = st[LVL] - 1
        c = stack_sel[L]
        if c >= 0:
            _unselect(c, demand, blocked, count, vres, st, cand_edges, cand_len,
                      edge_ptr, edge_list, edge_u, edge_v, bad_res)
            _block(c, blocked, count, cand_edges, cand_len)
            ban_list[st[BAN_TOP]] = c
            st[BAN_TOP] += 1
            stack_sel[L] = -1
        e = stack_edge[L]
        pos = stack_pos[L]
        end = edge_ptr[e + 1]
        nxt = -1
        if count[e] >= demand[e] and not (
                st[BUDGET] >= 0 and st[NO_PRUNE] == 0 and L + _lower_bound(st, max_len) > st[BUDGET]):
            while pos < end:
                cc = edge_list[pos]
                pos += 1
                if blocked[cc] == 0:
                    nxt = cc
                    break
        stack_pos[L] = pos
        if nxt >= 0:
            stack_sel[L] = nxt
            _select(nxt, demand, blocked, count, vres, st, cand_edges, cand_len,
                    edge_ptr, edge_list, edge_u, edge_v, bad_res)
            st[PHASE] = 0
            continue
        # level exhausted: lift its bans and return to the parent level
        top = st[BAN_TOP]
        start = ban_start[L]
        for k in range(top - 1, start - 1, -1):
            _unblock(ban_list[k], blocked, count, cand_edges, cand_len)
        st[BAN_TOP] = start
        st[LVL] = L
        if L == 0:
            st[STATUS] = S_EXHAUSTED
            return
        st[PHASE] = 1


class KernelState:
    """Arrays describing one search; picklable so searches can be checkpointed."""

    def __init__(self, n_vertices, cand_edges, cand_len, edge_ptr, edge_list,
                 edge_u, edge_v, demand, sizes, budget=-1, minimise=False, prune=True):
        self.cand_edges = np.ascontiguousarray(cand_edges, dtype=np.int32)
        self.cand_len = np.ascontiguousarray(cand_len, dtype=np.int32)
        self.edge_ptr = np.ascontiguousarray(edge_ptr, dtype=np.int32)
        self.edge_list = np.ascontiguousarray(edge_list, dtype=np.int32)
        self.edge_u = np.ascontiguousarray(edge_u, dtype=np.int32)
        self.edge_v = np.ascontiguousarray(edge_v, dtype=np.int32)
        self.demand = np.array(demand, dtype=np.int32)
        n_edges = len(self.demand)
        n_cands = len(self.cand_len)

        self.max_len = int(max((s * (s - 1) // 2 for s in sizes), default=1))
        self.blocked = np.zeros(n_cands, dtype=np.int32)
        used = np.arange(self.cand_edges.shape[1])[None, :] < self.cand_len[:, None]
        self.count = np.bincount(self.cand_edges[used], minlength=n_edges).astype(np.int32)
        self.vres = (np.bincount(self.edge_u, weights=self.demand, minlength=n_vertices)
                     + np.bincount(self.edge_v, weights=self.demand, minlength=n_vertices)).astype(np.int32)
        max_res = int(self.vres.max(initial=0)) + 1
        self.bad_res = np.array([0 if _representable(r, sizes) else 1 for r in range(max_res)], dtype=np.int32)

        depth = int(self.demand.sum()) + 2
        self.stack_edge = np.zeros(depth, dtype=np.int32)
        self.stack_pos = np.zeros(depth, dtype=np.int32)
        self.stack_sel = np.full(depth, -1, dtype=np.int32)
        self.ban_start = np.zeros(depth, dtype=np.int32)
        self.ban_list = np.zeros(n_cands + 1, dtype=np.int32)
        self.best_sel = np.full(depth, -1, dtype=np.int32)

        st = np.zeros(N_SLOTS, dtype=np.int64)
        st[TOTAL] = int(self.demand.sum())
        st[TRI_NEED] = int(sum((2 * int(r)) % 3 for r in self.vres))
        st[N_BAD] = int(sum(self.bad_res[r] for r in self.vres))
        st[BUDGET] = budget
        st[MODE] = 1 if minimise else 0
        st[BEST] = -1
        st[USE_TRI] = 1 if set(sizes) == {3, 4} else 0
        st[NO_PRUNE] = 0 if prune else 1
        self.st = st

    @property
    def status(self) -> int:
        return int(self.st[STATUS])

    @property
    def nodes(self) -> int:
        return int(self.st[NODES])

    def step(self, max_nodes: int) -> int:
        self.st[STATUS] = S_PAUSED
        run(max_nodes, self.st, self.demand, self.blocked, self.count, self.vres,
            self.stack_edge, self.stack_pos, self.stack_sel, self.ban_start,
            self.ban_list, self.best_sel, self.cand_edges, self.cand_len,
            self.edge_ptr, self.edge_list, self.edge_u, self.edge_v,
            self.bad_res, self.max_len)
        return int(self.st[STATUS])

    def current_selection(self) -> list[int]:
        return [int(c) for c in self.stack_sel[: int(self.st[LVL])]]

    def best_selection(self) -> list[int]:
        best = int(self.st[BEST])
        return [] if best < 0 else [int(c) for c in self.best_sel[:best]]


def _representable(r: int, sizes) -> bool:
    """Can a residual vertex degree ``r`` be written as a sum of (k-1) terms?"""
    steps = sorted({k - 1 for k in sizes})
    reach = [False] * (r + 1)
    reach[0] = True
    for x in range(1, r + 1):
        reach[x] = any(s <= x and reach[x - s] for s in steps)
    return reach[r]
