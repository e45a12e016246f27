from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from clique_cover.fixtures import (
    all_listing_strings,
    even_picks,
    even_picks_edges,
    geng_listing,
    load_graph6,
    regular_listing,
    regular_listing_edges,
)
from clique_cover.graph6 import Graph6Error, decode, encode, encoded_length, restore_padding
from clique_cover.graphs import SmallGraph


def test_decode_examples():
    assert decode("F?`EW") == SmallGraph.from_edges(7, [(0, 4), (0, 6), (1, 5), (1, 6), (4, 6), (5, 6)])
    assert decode("FCQQO") == SmallGraph.from_edges(7, [(0, 3), (0, 5), (1, 4), (1, 6), (3, 5), (4, 6)])


def test_encode_examples():
    assert encode(SmallGraph.from_edges(7, [(0, 4), (0, 6), (1, 5), (1, 6), (4, 6), (5, 6)])) == "F?`EW"
    assert encode(SmallGraph(1)) == "@"
    assert encode(SmallGraph(0)) == "?"


def test_first_regular_graph_encoding_includes_padding():
    first = regular_listing_edges(11, 6)[0]
    assert encode(first) == "J?B~vr{}fq?"
    assert restore_padding("J?B~vr{}fq") == "J?B~vr{}fq?"
    assert decode("J?B~vr{}fq?") == first


@pytest.mark.parametrize("bad", [
    "",                 # empty
    "F?`E",             # too short for order 7
    "F?`EWW",           # too long
    "F?`EX",            # nonzero padding bits
    "F?`E ",            # outside the alphabet
    "~~~",              # multi-byte header
])
def test_decode_rejects(bad):
    with pytest.raises(Graph6Error):
        decode(bad)


def test_encode_rejects_large_order():
    with pytest.raises(Graph6Error):
        encode(SmallGraph(63))


def test_header_prefix_accepted():
    assert decode(">>graph6<<F?`EW") == decode("F?`EW")


@given(st.integers(0, 20).flatmap(
    lambda n: st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0)))
                      .filter(lambda p: p[0] < p[1]))
    .map(lambda es: SmallGraph(n, frozenset(es)))))
def test_round_trip_random(g):
    text = encode(g)
    assert len(text) == encoded_length(g.order)
    assert decode(text) == g
    assert encode(decode(text)) == text


def test_round_trip_all_listing_strings():
    strings = all_listing_strings()
    assert len(strings) == 41 + 131 + 131 + 266 == 569
    for s in strings:
        assert encode(decode(s)) == s


def test_listing_sizes_and_padding():
    assert len(geng_listing(7, 6).strings) == 41
    assert len(geng_listing(7, 9).strings) == 131
    assert len(geng_listing(7, 12).strings) == 131
    reg = regular_listing(11, 6)
    assert len(reg.strings) == 266
    # transcribed order-11 strings lost their trailing "?" in most cases
    assert reg.padded == 223
    assert load_graph6("geng_7_6.g6").padded == 0


def test_edge_listings_agree_with_graph6():
    for size in (6, 9, 12):
        assert [decode(s) for s in even_picks(7, size).strings] == even_picks_edges(7, size)
    assert regular_listing(11, 6).graphs() == regular_listing_edges(11, 6)


def test_regular_listing_headers():
    for g in regular_listing(11, 6).graphs():
        assert g.order == 11 and len(g) == 33
        assert set(g.degrees()) == {6}
