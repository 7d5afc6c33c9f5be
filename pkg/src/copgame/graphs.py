"""Immutable simple undirected graphs and their basic metrics.

Vertices are dense 0-based integers. Every deterministic tie-break in the
package uses ascending vertex id. Graphs are immutable after construction
and safe to share across workers.

Alongside the per-vertex adjacency sets, each graph carries per-vertex
adjacency bitmasks (``masks[u]`` has bit ``v`` set iff ``uv`` is an edge).
The hot loops elsewhere in the package work on these masks.
"""

from __future__ import annotations

import math
from collections import deque
from enum import Enum
from typing import Iterable, Iterator

from .errors import GraphConstructionError


class SmallClass(Enum):
    """Recognized small isomorphism classes, in precedence order."""

    K1 = "K1"
    K2 = "K2"
    COMPLETE = "COMPLETE"
    C5 = "C5"
    PATH = "PATH"
    OTHER = "OTHER"


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Invariants: adjacency is symmetric and irreflexive. ``n == 0`` is
    permitted only as the result of vertex deletion; game-facing code
    requires ``n >= 1``.
    """

    __slots__ = ("n", "adj", "masks", "closed_masks", "m")

    def __init__(self, n: int, adj_masks: Iterable[int]):
        masks = tuple(adj_masks)
        if n < 0 or len(masks) != n:
            raise GraphConstructionError(f"bad adjacency data for n={n}")
        self.n = n
        self.masks = masks
        self.closed_masks = tuple(mask | (1 << v) for v, mask in enumerate(masks))
        self.adj = tuple(frozenset(_bits(mask)) for mask in masks)
        self.m = sum(mask.bit_count() for mask in masks) // 2

    # -- construction ----------------------------------------------------

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an edge list; duplicate edges collapse."""
        if n < 0:
            raise GraphConstructionError(f"negative vertex count {n}")
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphConstructionError(
                    f"edge ({u},{v}) has an endpoint outside 0..{n - 1}"
                )
            if u == v:
                raise GraphConstructionError(f"loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return Graph(n, masks)

    # -- basic accessors -------------------------------------------------

    def degree(self, u: int) -> int:
        return self.masks[u].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def neighbors(self, u: int) -> frozenset[int]:
        return self.adj[u]

    def closed_neighborhood(self, u: int) -> frozenset[int]:
        """N[u] = N(u) plus u itself."""
        return self.adj[u] | {u}

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, ascending lexicographically."""
        for u in range(self.n):
            rest = self.masks[u] >> (u + 1)
            v = u + 1
            while rest:
                if rest & 1:
                    yield (u, v)
                rest >>= 1
                v += 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs --------------------------------------------------

    def induced_subgraph(self, keep: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``keep``.

        Returns the subgraph together with the relabel map as a tuple
        ``old_ids`` where ``old_ids[new] = old`` (ascending, so the map is
        the order-preserving bijection onto 0-based ids).
        """
        old_ids = tuple(sorted(set(keep)))
        index = {old: new for new, old in enumerate(old_ids)}
        masks = []
        for old in old_ids:
            mask = 0
            row = self.masks[old]
            for other in old_ids:
                if row >> other & 1:
                    mask |= 1 << index[other]
            masks.append(mask)
        return Graph(len(old_ids), masks), old_ids


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph with exactly the listed edges (duplicates collapsed).

    Raises GraphConstructionError on an out-of-range endpoint or a loop.
    """
    return Graph.from_edges(n, edges)


def delete_closed_neighborhood(g: Graph, u: int) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on V(G) minus N[u], with its relabel map.

    The result may be the empty graph (n == 0), which is permitted here
    as a distinguishable sentinel even though game-facing operations
    reject it.
    """
    if not 0 <= u < g.n:
        raise GraphConstructionError(f"vertex {u} outside 0..{g.n - 1}")
    removed = g.closed_masks[u]
    keep = [v for v in range(g.n) if not (removed >> v & 1)]
    return g.induced_subgraph(keep)


def components(g: Graph) -> list[tuple[int, ...]]:
    """Maximal connected vertex sets, ordered by smallest member."""
    seen = 0
    out: list[tuple[int, ...]] = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = _reach_mask(g, start)
        seen |= comp
        out.append(tuple(_bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    """True iff g has one connected component (requires n >= 1)."""
    if g.n == 0:
        return False
    full = (1 << g.n) - 1
    return _reach_mask(g, 0) == full


def diameter(g: Graph) -> int | float:
    """Max shortest-path length over vertex pairs; inf when disconnected."""
    if g.n == 0:
        raise GraphConstructionError("diameter of the empty graph is undefined")
    if not is_connected(g):
        return math.inf
    best = 0
    for src in range(g.n):
        ecc = _eccentricity(g, src)
        if ecc > best:
            best = ecc
    return best


def bipartition(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """2-coloring of a connected graph, or None if an odd cycle exists.

    Color classes are returned as sorted tuples; the class of vertex 0
    comes first. Requires a connected graph.
    """
    color = [-1] * g.n
    color[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if color[v] == -1:
                color[v] = 1 - color[u]
                queue.append(v)
            elif color[v] == color[u]:
                return None
    side0 = tuple(v for v in range(g.n) if color[v] == 0)
    side1 = tuple(v for v in range(g.n) if color[v] == 1)
    return side0, side1


def classify_small(g: Graph) -> SmallClass:
    """Recognize K1, K2, complete graphs, C5, and paths.

    Precedence: K1 > K2 > COMPLETE > C5 > PATH > OTHER. C5 recognition
    is degree-based (n=5, connected, 2-regular), not general isomorphism.
    """
    n = g.n
    if n == 0:
        return SmallClass.OTHER
    if n == 1:
        return SmallClass.K1
    if n == 2:
        return SmallClass.K2 if g.m == 1 else SmallClass.OTHER
    if g.m == n * (n - 1) // 2:
        return SmallClass.COMPLETE
    if n == 5 and all(g.degree(v) == 2 for v in range(5)) and is_connected(g):
        return SmallClass.C5
    if _is_path(g):
        return SmallClass.PATH
    return SmallClass.OTHER


def _is_path(g: Graph) -> bool:
    # Callers have already ruled out n <= 2.
    if g.m != g.n - 1 or not is_connected(g):
        return False
    degs = [g.degree(v) for v in range(g.n)]
    return degs.count(1) == 2 and degs.count(2) == g.n - 2


def _reach_mask(g: Graph, start: int) -> int:
    reached = 1 << start
    frontier = reached
    while frontier:
        grow = 0
        for v in _bits(frontier):
            grow |= g.masks[v]
        frontier = grow & ~reached
        reached |= frontier
    return reached


def _eccentricity(g: Graph, src: int) -> int:
    reached = 1 << src
    frontier = reached
    dist = 0
    while True:
        grow = 0
        for v in _bits(frontier):
            grow |= g.masks[v]
        frontier = grow & ~reached
        if not frontier:
            return dist
        reached |= frontier
        dist += 1


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
