from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from clique_cover.enumeration import (
    ParityError,
    canonical_form,
    enumerate_even_graphs,
    enumerate_regular_graphs,
    is_isomorphic,
    match_fixture,
)
from clique_cover.fixtures import even_picks, geng_listing, regular_listing
from clique_cover.graph6 import decode, encode
from clique_cover.graphs import SmallGraph

from oracles import brute_canonical, partitions_min_part


def _nx(g: SmallGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges)
    return h


def _shuffled(g: SmallGraph, rng: random.Random) -> SmallGraph:
    perm = list(range(g.order))
    rng.shuffle(perm)
    return g.relabel(perm)


def test_triangle_relabelings_agree():
    a = SmallGraph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
    b = SmallGraph.from_edges(4, [(0, 2), (2, 3), (0, 3)])
    assert canonical_form(a) == canonical_form(b)


def test_bowtie_and_hexagon_differ():
    bowtie, hexagon = decode("F?`EW"), decode("F?qb?")
    assert canonical_form(bowtie) != canonical_form(hexagon)
    assert not is_isomorphic(bowtie, hexagon)


def test_order_limit():
    with pytest.raises(ValueError):
        canonical_form(SmallGraph(13))


def graphs_up_to(n_max: int):
    return st.integers(1, n_max).flatmap(
        lambda n: st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                          .filter(lambda p: p[0] < p[1]))
        .map(lambda es: SmallGraph(n, frozenset(es))))


@given(graphs_up_to(7), st.randoms(use_true_random=False))
def test_canonical_form_matches_exhaustive_minimum_classes(g, rng):
    # equal canonical forms exactly when the exhaustive lex-least forms agree
    h = _shuffled(g, rng)
    assert canonical_form(g) == canonical_form(h)
    assert brute_canonical(g.order, g.edges) == brute_canonical(h.order, h.edges)


@settings(max_examples=300)
@given(graphs_up_to(6), graphs_up_to(6))
def test_canonical_form_decides_isomorphism(g, h):
    if g.order != h.order:
        return
    same = brute_canonical(g.order, g.edges) == brute_canonical(h.order, h.edges)
    assert (canonical_form(g) == canonical_form(h)) == same


@settings(max_examples=200)
@given(graphs_up_to(11), graphs_up_to(11))
def test_canonical_form_agrees_with_networkx(g, h):
    if g.order != h.order or len(g) != len(h):
        return
    assert (canonical_form(g) == canonical_form(h)) == nx.is_isomorphic(_nx(g), _nx(h))


@given(graphs_up_to(12))
def test_canonical_form_is_idempotent(g):
    form = canonical_form(g)
    assert canonical_form(form.graph()) == form
    assert nx.is_isomorphic(_nx(form.graph()), _nx(g))


def _fixture_graphs():
    out = []
    for size in (6, 9, 12):
        out += [decode(s) for s in even_picks(7, size).strings]
    out += [decode(s) for s in regular_listing(11, 6).strings]
    return out


def test_relabeling_invariance_on_fixture_graphs():
    rng = random.Random(20260101)
    for g in _fixture_graphs():
        form = canonical_form(g)
        for _ in range(100):
            assert canonical_form(_shuffled(g, rng)) == form


@pytest.mark.parametrize("size,count", [(6, 3), (9, 6), (12, 6)])
def test_even_graph_counts_and_fixture_bijection(size, count):
    graphs = enumerate_even_graphs(7, size)
    assert len(graphs) == count
    for g in graphs:
        assert len(g) == size and all(d % 2 == 0 for d in g.degrees())
    report = match_fixture(graphs, even_picks(7, size).strings)
    assert report.bijective, report.problems()


@pytest.mark.parametrize("size", [6, 9, 12])
def test_even_picks_are_the_even_members_of_the_full_listing(size):
    # independent route: filter the full listing by degree parity
    full = [decode(s) for s in geng_listing(7, size).strings]
    even = [encode(g) for g in full if all(d % 2 == 0 for d in g.degrees())]
    assert even == list(even_picks(7, size).strings)


def test_full_listings_are_complete_and_distinct():
    for size, count in ((6, 41), (9, 131), (12, 131)):
        forms = {canonical_form(decode(s)) for s in geng_listing(7, size).strings}
        assert len(forms) == count


def test_two_regular_counts_match_partitions():
    for n in range(3, 11):
        assert len(enumerate_regular_graphs(n, 2)) == partitions_min_part(n, 3)
    assert len(enumerate_regular_graphs(9, 2)) == 4


def test_cycle_types_on_nine_vertices():
    lengths = set()
    for g in enumerate_regular_graphs(9, 2):
        comps = sorted((len(c) for c in nx.connected_components(_nx(g))), reverse=True)
        lengths.add(tuple(comps))
    assert lengths == {(9,), (6, 3), (5, 4), (3, 3, 3)}


@pytest.mark.parametrize("n,k,count", [(4, 3, 1), (6, 3, 2), (8, 3, 6), (10, 3, 21), (7, 4, 2), (8, 4, 6)])
def test_small_regular_counts(n, k, count):
    graphs = enumerate_regular_graphs(n, k)
    assert len(graphs) == count
    assert all(set(g.degrees()) == {k} for g in graphs)


def test_parity_error():
    with pytest.raises(ParityError):
        enumerate_regular_graphs(7, 3)


def test_six_regular_order_eleven_bijection():
    graphs = enumerate_regular_graphs(11, 6)
    assert len(graphs) == 266
    assert len({canonical_form(g) for g in graphs}) == 266
    assert all(set(g.degrees()) == {6} for g in graphs)
    report = match_fixture(graphs, regular_listing(11, 6).strings)
    assert report.bijective, report.problems()


def test_match_fixture_detects_problems():
    strings = list(even_picks(7, 6).strings)
    same = match_fixture([decode(s) for s in strings], strings)
    assert same.bijective and sorted(same.pairs) == [(0, 0), (1, 1), (2, 2)]
    missing = match_fixture([decode(s) for s in strings[:2]], strings)
    assert not missing.bijective and missing.unmatched_fixture == [2]
    g = decode(strings[0])
    dup = match_fixture([g, g.relabel([6, 5, 4, 3, 2, 1, 0])] + [decode(s) for s in strings[1:]], strings)
    assert dup.duplicate_generated == [1]


def test_output_is_sorted_and_canonical():
    graphs = enumerate_even_graphs(7, 9)
    forms = [canonical_form(g) for g in graphs]
    assert forms == sorted(forms)
    assert [f.graph() for f in forms] == graphs
