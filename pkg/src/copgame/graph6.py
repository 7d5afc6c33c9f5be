"""Bit-exact graph6 and edge-list text input-output.

graph6 records: printable bytes 63..126 carrying 6 bits each, size prefix
first (1 byte for n < 63, '~' plus 3 bytes for 63 <= n < 2^18; the 8-byte
huge form is rejected), then the upper triangle in column-major order
(for k = 1..n-1, for j = 0..k-1: bit (j,k)), MSB first, zero-padded to a
multiple of 6 bits. One record per line, optional ">>graph6<<" header.

Padding bits must be zero on input by default; ``lenient=True`` downgrades
nonzero padding to acceptance. The empty graph (n = 0, record "?") is
rejected as input: the game is undefined on it.
"""

from __future__ import annotations

from typing import Iterator

from .errors import Graph6ParseError, GraphConstructionError
from .graphs import Graph

HEADER = ">>graph6<<"

_MAX_N = 1 << 18


def parse_graph6(line: str, lenient: bool = False) -> Graph:
    """Decode one graph6 record (header and trailing newline tolerated)."""
    record = line.strip()
    if record.startswith(HEADER):
        record = record[len(HEADER):]
    if not record:
        raise Graph6ParseError("empty graph6 record")
    try:
        data = record.encode("ascii")
    except UnicodeEncodeError as exc:
        raise Graph6ParseError(
            f"non-ASCII character in graph6 record", exc.start
        ) from exc
    for off, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6ParseError(f"byte {byte!r} outside graph6 range 63..126", off)

    n, body_start = _parse_size(data)
    if n == 0:
        raise Graph6ParseError("empty graph (n=0) is not accepted as input")

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[body_start:]
    if len(body) < nbytes:
        raise Graph6ParseError(
            f"truncated bit payload: need {nbytes} bytes, got {len(body)}",
            body_start + len(body),
        )
    if len(body) > nbytes:
        raise Graph6ParseError(
            f"unexpected trailing bytes after {nbytes}-byte payload",
            body_start + nbytes,
        )

    masks = [0] * n
    bit = 0
    pad_ok = True
    for i, byte in enumerate(body):
        group = byte - 63
        for shift in range(5, -1, -1):
            if bit >= nbits:
                if group >> shift & 1:
                    pad_ok = False
                bit += 1
                continue
            if group >> shift & 1:
                j, k = _PAIR_CACHE.pair(bit)
                masks[j] |= 1 << k
                masks[k] |= 1 << j
            bit += 1
    if not pad_ok and not lenient:
        raise Graph6ParseError(
            "nonzero padding bits (use lenient mode to accept)",
            body_start + nbytes - 1,
        )
    return Graph(n, masks)


def emit_graph6(g: Graph) -> str:
    """Encode a graph as a graph6 record; round-trips with parse_graph6."""
    n = g.n
    if n == 0:
        raise GraphConstructionError("the empty graph has no graph6 form here")
    if n >= _MAX_N:
        raise GraphConstructionError(f"n={n} exceeds the supported graph6 range")
    out = bytearray()
    if n < 63:
        out.append(n + 63)
    else:
        out.append(126)
        out.append(63 + (n >> 12 & 0x3F))
        out.append(63 + (n >> 6 & 0x3F))
        out.append(63 + (n & 0x3F))
    group = 0
    filled = 0
    for k in range(1, n):
        col = g.masks[k]
        for j in range(k):
            group = group << 1 | (col >> j & 1)
            filled += 1
            if filled == 6:
                out.append(63 + group)
                group = 0
                filled = 0
    if filled:
        out.append(63 + (group << (6 - filled)))
    return out.decode("ascii")


def iter_graph6_lines(text: str, lenient: bool = False) -> Iterator[Graph]:
    """Parse every nonempty line of a graph6 text block.

    A bare ">>graph6<<" header line (as nauty tools emit) is skipped.
    """
    for line in text.splitlines():
        line = line.strip()
        if line and line != HEADER:
            yield parse_graph6(line, lenient=lenient)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format: first line "n m", then m lines "u v"."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise GraphConstructionError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphConstructionError(f"bad edge-list header {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphConstructionError(f"bad edge-list header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphConstructionError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphConstructionError(f"bad edge line {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphConstructionError(f"bad edge line {ln!r}") from exc
    return Graph.from_edges(n, edges)


def emit_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _parse_size(data: bytes) -> tuple[int, int]:
    """Return (n, payload byte offset)."""
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        raise Graph6ParseError("8-byte size prefix (n >= 2^18) not supported", 1)
    if len(data) < 4:
        raise Graph6ParseError("truncated 4-byte size prefix", len(data))
    n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
    if n < 63:
        raise Graph6ParseError(f"non-canonical long size prefix for n={n}", 1)
    if n >= _MAX_N:
        raise Graph6ParseError(f"n={n} outside supported range", 1)
    return n, 4


class _PairTable:
    """Maps a column-major upper-triangle bit index to its (j, k) pair."""

    def __init__(self):
        self._pairs: list[tuple[int, int]] = []
        self._next_k = 1

    def pair(self, bit: int) -> tuple[int, int]:
        while bit >= len(self._pairs):
            k = self._next_k
            self._pairs.extend((j, k) for j in range(k))
            self._next_k += 1
        return self._pairs[bit]


_PAIR_CACHE = _PairTable()
