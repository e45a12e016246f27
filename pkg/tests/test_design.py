from __future__ import annotations

from itertools import product
from math import ceil

import pytest
from hypothesis import given, strategies as st

from clique_cover.design import (
    DesignCounts,
    TripleDistribution,
    beta_from_alpha,
    cover_number,
    distribution_violations,
    edge_count,
    erdos_gallai,
    erdos_gallai_check,
    excess_min,
    lower_bound,
    max_triangle_packing,
    pbd_exists,
    triple_distribution_solutions,
    vertex_counts,
    vertex_triple_residue,
)
from clique_cover.solver import CoverInstance, SolverConfig, Status, solve_exact, solve_minimum

from oracles import DISTRIBUTIONS_C1_TO_C7, havel_hakimi, realizable_sequences, table_cover_number


@pytest.mark.parametrize("v", range(3, 61))
def test_cover_number_table(v):
    assert cover_number(v) == table_cover_number(v)


@pytest.mark.parametrize("v", range(3, 61))
def test_excess_table(v):
    expected = 3 if v == 6 else (2 if v % 3 == 2 else 0)
    assert excess_min(v) == expected


@pytest.mark.parametrize("v", range(3, 61))
def test_cover_number_is_counting_consistent(v):
    # some split into triples and quadruples has the right block and edge totals
    total = edge_count(v) + excess_min(v)
    n = cover_number(v)
    assert any(3 * a + 6 * (n - a) == total for a in range(n + 1))


@pytest.mark.parametrize("v", [v for v in range(7, 61) if v % 12 in (6, 7, 9, 10)])
def test_lower_bounds(v):
    if v % 12 in (6, 9):
        assert lower_bound(v) == ceil((v * v + v) / 12)
    else:
        assert lower_bound(v) == ceil((v * v - v) / 12) + 3
    assert lower_bound(v) <= cover_number(v)


def test_lower_bound_specific_values_and_domain():
    assert lower_bound(18) == 29
    assert lower_bound(19) == 32
    assert lower_bound(21) == 39 == cover_number(21)
    for bad in (6, 8, 11, 12):
        with pytest.raises(ValueError):
            lower_bound(bad)


def test_small_orders_rejected():
    for f in (excess_min, cover_number, vertex_triple_residue):
        with pytest.raises(ValueError):
            f(2)


@pytest.mark.parametrize("v", range(3, 61))
def test_vertex_residue(v):
    r = vertex_triple_residue(v)
    assert (2 * r - (v - 1)) % 3 == 0
    # every feasible per-vertex split has alpha_x in that class
    for ax in range(v):
        if vertex_counts(v, ax) is not None:
            assert ax % 3 == r


def test_named_residues():
    assert vertex_triple_residue(18) == 1
    assert vertex_triple_residue(19) == 0


@given(st.integers(3, 60), st.integers(0, 200))
def test_beta_from_alpha(v, alpha):
    beta = beta_from_alpha(v, alpha)
    if beta is not None:
        assert (3 * alpha - edge_count(v)) % 6 == 0
        assert DesignCounts(v, alpha, beta).consistent()
    else:
        assert 3 * alpha > edge_count(v) or (edge_count(v) - 3 * alpha) % 6


def test_design_counts():
    c = DesignCounts.from_alpha(18, 15)
    assert (c.beta, c.blocks) == (18, 33)
    assert DesignCounts.from_alpha(19, 13).blocks == 35
    with pytest.raises(ValueError):
        DesignCounts.from_alpha(18, 14)


# Small orders: the table against the exact solver, with every placement of
# a two-edge excess (two doubled edges, disjoint or adjacent, or one tripled).
_EXCESS_TWO = ({(1, 2): 2, (3, 4): 2}, {(1, 2): 2, (2, 3): 2}, {(1, 2): 3})


@pytest.mark.parametrize("v", [4, 5, 7, 8, 9, 10, 12, 13])
def test_cover_number_matches_solver(v):
    config = SolverConfig(time_limit=120)
    if excess_min(v) == 0:
        out = solve_minimum(CoverInstance(v, frozenset({3, 4})), config)
        assert out.status is Status.FEASIBLE and out.minimal
        best = out.block_count
    else:
        counts = []
        for mult in _EXCESS_TWO:
            out = solve_minimum(CoverInstance(v, frozenset({3, 4}), multiplicity=mult), config)
            assert out.status is not Status.TIMED_OUT
            if out.feasible:
                assert out.minimal
                counts.append(out.block_count)
        best = min(counts)
    assert best == cover_number(v)


def test_order_six_needs_excess_three():
    assert solve_exact(CoverInstance(6, frozenset({3, 4}))).status is Status.INFEASIBLE
    out = solve_minimum(CoverInstance(6, frozenset({3, 4}), multiplicity={(1, 2): 2, (3, 4): 2, (5, 6): 2}))
    assert out.block_count == cover_number(6) == 3


def test_erdos_gallai_rejects_hub_sequence():
    res = erdos_gallai_check((6, 6, 6, 6, 6, 2, 2, 2))
    assert not res.graphic and res.failing_k == 4


@pytest.mark.parametrize("n", range(1, 7))
def test_erdos_gallai_exhaustive(n):
    realizable = {tuple(sorted(s, reverse=True)) for s in realizable_sequences(n)}
    for seq in product(range(n), repeat=n):
        assert erdos_gallai(seq) == (tuple(sorted(seq, reverse=True)) in realizable), seq


@given(st.lists(st.integers(0, 12), max_size=14))
def test_erdos_gallai_matches_havel_hakimi(seq):
    assert erdos_gallai(seq) == havel_hakimi(seq)


def test_erdos_gallai_details():
    assert erdos_gallai_check((3, 3, 1)).odd_sum
    assert erdos_gallai(())
    with pytest.raises(ValueError):
        erdos_gallai((1, -1))


def test_pbd():
    assert not pbd_exists(19, 7)
    assert pbd_exists(22, 7)
    assert pbd_exists(13, 4)
    assert not pbd_exists(16, 7)  # too small: v < 3w + 1
    with pytest.raises(ValueError):
        pbd_exists(7, 7)


def test_triangle_packings():
    assert [max_triangle_packing(n) for n in range(3, 10)] == [1, 1, 2, 4, 7, 8, 12]


def test_seven_packing_against_milp():
    from oracles import milp_min_blocks

    # packing of K7 is a decomposition: 7 triples
    assert milp_min_blocks(7, {3}) == 7


def test_seven_heavy_distributions():
    sols = triple_distribution_solutions(7, 4, 11, 13)
    assert sorted(t.as_tuple() for t in sols) == sorted(DISTRIBUTIONS_C1_TO_C7)
    for t in sols:
        assert distribution_violations(t, 7, 4, 11, 13) == []


@given(st.integers(0, 8), st.integers(0, 5), st.integers(0, 14), st.integers(0, 16))
def test_distribution_solutions_satisfy_constraints(h, a, l, alpha):
    for t in triple_distribution_solutions(h, a, l, alpha):
        t0, t1, t2, t3 = t.as_tuple()
        assert t0 + t1 + t2 + t3 == alpha
        assert 3 * t3 + 2 * t2 + t1 == h * a
        assert 3 * t0 + 2 * t1 + t2 == l
        assert distribution_violations(t, h, a, l, alpha) == []


def test_distribution_violation_names():
    bad = TripleDistribution(0, 0, 0, 13)
    names = distribution_violations(bad, 7, 4, 11, 13)
    assert "heavy triangle packing" in names and "light incidences" in names
