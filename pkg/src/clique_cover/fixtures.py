"""Bundled reference data: explicit decompositions and graph listings.

Graph listings are stored exactly as transcribed (``*.g6``); loaders restore
graph6 padding characters that were dropped in transcription and report how
many strings needed it.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterator

from .graph6 import decode, restore_padding
from .graphs import Block, SmallGraph

PACKAGE = "clique_cover.data"

GENG_LISTINGS = {
    (7, 6): "geng_7_6.g6",
    (7, 9): "geng_7_9.g6",
    (7, 12): "geng_7_12.g6",
}
EVEN_PICKS = {
    (7, 6): "even_7_6.g6",
    (7, 9): "even_7_9.g6",
    (7, 12): "even_7_12.g6",
}
REGULAR_LISTINGS = {(11, 6): "regular_11_6.g6"}
DECOMPOSITIONS = {18: "k18_33_blocks.json", 19: "k19_35_blocks.json"}


def read_text(name: str) -> str:
    return resources.files(PACKAGE).joinpath(name).read_text(encoding="utf-8")


def digest(name: str) -> str:
    """SHA-256 of a fixture file, recorded in run manifests."""
    data = resources.files(PACKAGE).joinpath(name).read_bytes()
    return hashlib.sha256(data).hexdigest()


@dataclass(frozen=True)
class Graph6Listing:
    name: str
    strings: tuple[str, ...]
    padded: int  # strings that needed trailing "?" restored

    def graphs(self) -> list[SmallGraph]:
        return [decode(s) for s in self.strings]


def load_graph6(name: str) -> Graph6Listing:
    raw = [tok for line in read_text(name).splitlines() for tok in line.split()]
    fixed = [restore_padding(t) for t in raw]
    padded = sum(1 for a, b in zip(raw, fixed) if a != b)
    return Graph6Listing(name, tuple(fixed), padded)


def all_listing_strings() -> list[str]:
    """Every graph6 string generated in the listings, in listing order."""
    out: list[str] = []
    for name in list(GENG_LISTINGS.values()) + list(REGULAR_LISTINGS.values()):
        out.extend(load_graph6(name).strings)
    return out


def parse_edge_listing(text: str) -> Iterator[SmallGraph]:
    """Parse ``showg -e`` / ``listg -e`` output into graphs.

    Each record is ``Graph k, order n.`` then ``n m`` then ``m`` pairs spread
    over any number of lines.
    """
    tokens = text.split()
    i = 0
    while i < len(tokens):
        if tokens[i] != "Graph":
            raise ValueError(f"expected 'Graph' at token {i}, found {tokens[i]!r}")
        n = int(tokens[i + 3].rstrip("."))
        n2, m = int(tokens[i + 4]), int(tokens[i + 5])
        if n2 != n:
            raise ValueError(f"order mismatch in record at token {i}")
        nums = [int(t) for t in tokens[i + 6:i + 6 + 2 * m]]
        if len(nums) != 2 * m:
            raise ValueError("truncated edge list")
        yield SmallGraph.from_edges(n, zip(nums[::2], nums[1::2]))
        i += 6 + 2 * m


def load_edge_listing(name: str) -> list[SmallGraph]:
    return list(parse_edge_listing(read_text(name)))


def geng_listing(order: int, size: int) -> Graph6Listing:
    return load_graph6(GENG_LISTINGS[(order, size)])


def even_picks(order: int, size: int) -> Graph6Listing:
    return load_graph6(EVEN_PICKS[(order, size)])


def even_picks_edges(order: int, size: int) -> list[SmallGraph]:
    return load_edge_listing(EVEN_PICKS[(order, size)].replace(".g6", "_showg.txt"))


def regular_listing(order: int, degree: int) -> Graph6Listing:
    return load_graph6(REGULAR_LISTINGS[(order, degree)])


def regular_listing_edges(order: int, degree: int) -> list[SmallGraph]:
    return load_edge_listing(REGULAR_LISTINGS[(order, degree)].replace(".g6", "_listg.txt"))


def decomposition(order: int) -> list[Block]:
    data = json.loads(read_text(DECOMPOSITIONS[order]))
    if data["order"] != order:
        raise ValueError(f"fixture for order {order} declares order {data['order']}")
    return [tuple(b) for b in data["blocks"]]
