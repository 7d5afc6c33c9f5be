"""Labeled small-graph enumeration.

All 2^C(n,2) labeled graphs are generated in edge-mask order (bit i of
the mask is the i-th vertex pair in lexicographic order) and filtered to
connected ones. There is no isomorphism deduplication: every check run
over these corpora is isomorphism-invariant, so duplicates only cost
time. Larger corpora (n >= 8) come from external canonical listings via
graph6 input.
"""

from __future__ import annotations

from typing import Iterator

from ..errors import ParameterError
from ..graphs import Graph

MAX_ENUM_N = 7


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """All connected labeled graphs on n vertices, edge-mask order."""
    if not 1 <= n <= MAX_ENUM_N:
        raise ParameterError(
            f"internal enumerator supports 1 <= n <= {MAX_ENUM_N}, got {n}"
        )
    yield from _enumerate(n, connected_only=True)


def iter_all_labeled_graphs(n: int) -> Iterator[Graph]:
    """All labeled graphs on n vertices (connected or not)."""
    if not 1 <= n <= MAX_ENUM_N:
        raise ParameterError(
            f"internal enumerator supports 1 <= n <= {MAX_ENUM_N}, got {n}"
        )
    yield from _enumerate(n, connected_only=False)


def _enumerate(n: int, connected_only: bool) -> Iterator[Graph]:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    nbits = len(pairs)
    rows = [0] * n
    full = (1 << n) - 1
    for mask in range(1 << nbits):
        if mask:
            # incrementing flips a block of trailing bits
            flipped = mask ^ (mask - 1)
            bit = 0
            while flipped:
                i, j = pairs[bit]
                rows[i] ^= 1 << j
                rows[j] ^= 1 << i
                flipped >>= 1
                bit += 1
        if connected_only and not _connected(rows, full):
            continue
        yield Graph(n, rows)


def _connected(rows: list[int], full: int) -> bool:
    reached = 1 | rows[0]
    if reached == full:
        return True
    while True:
        grow = reached
        rest = reached >> 1
        v = 1
        while rest:
            if rest & 1:
                grow |= rows[v]
            rest >>= 1
            v += 1
        if grow == reached:
            return False
        if grow == full:
            return True
        reached = grow
