"""Detection of induced 2K2, rK2 (induced matchings), and P_t copies.

All searches are exhaustive and deterministic: candidates are expanded in
ascending vertex/edge order, so the returned witness is the
lexicographically least one under that expansion order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import BudgetExceededError, ParameterError
from .graphs import Graph

MAX_PATH_T = 31
DEFAULT_NODE_BUDGET = 5_000_000


class InducedKind(Enum):
    TWO_K2 = "TWO_K2"
    R_K2 = "R_K2"
    P_T = "P_T"


@dataclass(frozen=True)
class InducedWitness:
    """Vertex list realizing an induced copy of the claimed pattern."""

    kind: InducedKind
    vertices: tuple[int, ...]
    param: int

    def verify(self, g: Graph) -> bool:
        """Re-check the induced edge/non-edge pattern on g."""
        vs = self.vertices
        if len(set(vs)) != len(vs):
            return False
        if self.kind is InducedKind.P_T:
            want = {(min(a, b), max(a, b)) for a, b in zip(vs, vs[1:])}
        else:
            pairs = zip(vs[0::2], vs[1::2])
            want = {(min(a, b), max(a, b)) for a, b in pairs}
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                has = g.has_edge(a, b)
                if has != ((min(a, b), max(a, b)) in want):
                    return False
        return True


def find_induced_2k2(g: Graph) -> InducedWitness | None:
    """Least pair of disjoint edges with no edge between their endpoints."""
    w = _find_induced_matching(g, 2)
    if w is None:
        return None
    return InducedWitness(InducedKind.TWO_K2, w, 2)


def find_induced_rk2(g: Graph, r: int) -> InducedWitness | None:
    """Least induced matching of size r, or None. r=1 asks for any edge."""
    if r < 1:
        raise ParameterError(f"r must be >= 1, got {r}")
    w = _find_induced_matching(g, r)
    if w is None:
        return None
    return InducedWitness(InducedKind.R_K2, w, r)


def find_induced_path(
    g: Graph, t: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> InducedWitness | None:
    """Least induced path on t vertices under id-order DFS expansion.

    The search is exponential in general; it aborts with
    BudgetExceededError after ``node_budget`` partial-path extensions.
    """
    if t < 2:
        raise ParameterError(f"t must be >= 2, got {t}")
    if t > MAX_PATH_T:
        raise ParameterError(f"t must be <= {MAX_PATH_T}, got {t}")
    masks = g.masks
    budget = node_budget
    path = [0] * t
    full = (1 << g.n) - 1

    def extend(depth: int, last: int, path_mask: int, blocked: int) -> bool:
        nonlocal budget
        if depth == t:
            return True
        cand = masks[last] & ~blocked & ~path_mask & full
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            budget -= 1
            if budget < 0:
                raise BudgetExceededError(
                    f"induced-path search budget exhausted (t={t})"
                )
            path[depth] = w
            if extend(depth + 1, w, path_mask | low, blocked | masks[last]):
                return True
        return False

    for start in range(g.n):
        path[0] = start
        if extend(1, start, 1 << start, 0):
            return InducedWitness(InducedKind.P_T, tuple(path), t)
    return None


def cantmove_violation(
    g: Graph,
) -> tuple[tuple[int, int], int, int] | None:
    """Quadruple (edge vw, u, x) with u non-adjacent to v,w and x in N(u)
    adjacent to neither; None iff no such quadruple exists.

    The quadruple exists iff the graph contains an induced 2K2 (ux and vw
    form one), so this is the edge-nonneighbor reformulation of
    2K2-freeness.
    """
    masks = g.masks
    for v, w in g.edges():
        covered = masks[v] | masks[w] | (1 << v) | (1 << w)
        outside = ~covered & ((1 << g.n) - 1)
        cand_u = outside
        while cand_u:
            low = cand_u & -cand_u
            u = low.bit_length() - 1
            cand_u ^= low
            xs = masks[u] & ~(masks[v] | masks[w])
            if xs:
                x = (xs & -xs).bit_length() - 1
                return (v, w), u, x
    return None


def _find_induced_matching(g: Graph, r: int) -> tuple[int, ...] | None:
    edges = list(g.edges())
    masks = g.masks
    # touch[i]: vertices of edge i plus everything adjacent to either end;
    # a later edge is compatible iff disjoint from this set.
    touch = [
        masks[u] | masks[v] | (1 << u) | (1 << v) for u, v in edges
    ]
    chosen: list[int] = []

    def extend(start: int, blocked: int) -> bool:
        if len(chosen) == r:
            return True
        for i in range(start, len(edges)):
            u, v = edges[i]
            if blocked >> u & 1 or blocked >> v & 1:
                continue
            chosen.append(i)
            if extend(i + 1, blocked | touch[i]):
                return True
            chosen.pop()
        return False

    if extend(0, 0):
        out: list[int] = []
        for i in chosen:
            out.extend(edges[i])
        return tuple(out)
    return None


def is_2k2_free(g: Graph) -> bool:
    return find_induced_2k2(g) is None


def is_rk2_free(g: Graph, r: int) -> bool:
    return find_induced_rk2(g, r) is None
