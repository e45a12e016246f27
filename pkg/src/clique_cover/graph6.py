"""graph6 encoding for graphs of order at most 62.

The format is one header byte ``chr(63 + n)`` followed by the upper triangle
of the adjacency matrix read column by column (bit for ``(i, j)``, ``i < j``,
in order of ``j`` then ``i``), packed six bits per byte, big-endian, each
byte offset by 63. The final byte is padded with zero bits.
"""
from __future__ import annotations

from .graphs import SmallGraph

MAX_ORDER = 62


class Graph6Error(ValueError):
    pass


def _data_chars(n: int) -> int:
    return -(-(n * (n - 1) // 2) // 6)


def encoded_length(n: int) -> int:
    """Number of characters in the graph6 string of an order-``n`` graph."""
    return 1 + _data_chars(n)


def encode(g: SmallGraph) -> str:
    n = g.order
    if not 0 <= n <= MAX_ORDER:
        raise Graph6Error(f"graph6 here supports orders 0..{MAX_ORDER}, got {n}")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in g.edges else 0)
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        out.append(chr(63 + value))
    return "".join(out)


def decode(text: str) -> SmallGraph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text:
        raise Graph6Error("empty graph6 string")
    for ch in text:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} is outside the graph6 alphabet")
    n = ord(text[0]) - 63
    if n > MAX_ORDER:
        raise Graph6Error("multi-byte order headers (n > 62) are not supported")
    need = _data_chars(n)
    if len(text) - 1 != need:
        raise Graph6Error(f"order {n} needs {need} data characters, got {len(text) - 1}")
    bits = []
    for ch in text[1:]:
        value = ord(ch) - 63
        bits.extend((value >> s) & 1 for s in range(5, -1, -1))
    n_bits = n * (n - 1) // 2
    if any(bits[n_bits:]):
        raise Graph6Error("padding bits after the adjacency data must be zero")
    edges = set()
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.add((i, j))
            k += 1
    return SmallGraph(n, frozenset(edges))


def restore_padding(text: str) -> str:
    """Re-append trailing ``?`` characters lost when a listing was copied.

    A trailing ``?`` encodes six zero bits, so text-extraction tools that
    strip it produce a string that is too short. Only ``?`` is appended,
    which cannot change the encoded graph.
    """
    text = text.strip()
    if not text or not 63 <= ord(text[0]) <= 126:
        return text
    n = ord(text[0]) - 63
    if n > MAX_ORDER:
        return text
    missing = encoded_length(n) - len(text)
    return text + "?" * missing if missing > 0 else text
