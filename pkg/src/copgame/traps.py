"""Traps: detection, classification, enumeration, and constructive search.

A vertex u is trapped by two other vertices x1, x2 when N[u] is contained
in N[x1] union N[x2]: with cops on x1 and x2 the robber on u cannot move
safely and is caught next turn. Flags: type-I when exactly one of x1, x2
is adjacent to u, type-II when both are; a trap is connected when x1 and
x2 are adjacent. A witness where neither x1 nor x2 is adjacent to u gets
both type flags false and counts toward neither type.

``find_connected_trap`` mirrors the inductive argument that every
connected 2K2-free graph is K1, K2, C5, or contains a connected trap;
``five_cycle_trap_witness`` handles the branch where deleting a closed
neighborhood leaves a 5-cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ContractError, InternalInvariantError, ParameterError
from .forbidden import find_induced_2k2
from .graphs import (
    Graph,
    SmallClass,
    classify_small,
    components,
    delete_closed_neighborhood,
    is_connected,
)


@dataclass(frozen=True)
class TrapWitness:
    """Certificate that ``pair`` traps ``u``."""

    u: int
    pair: tuple[int, int]
    type_one: bool
    type_two: bool
    connected: bool

    @property
    def x1(self) -> int:
        return self.pair[0]

    @property
    def x2(self) -> int:
        return self.pair[1]


class TrapOutcome(Enum):
    IS_K1 = "IS_K1"
    IS_K2 = "IS_K2"
    IS_C5 = "IS_C5"
    WITNESS = "WITNESS"


@dataclass(frozen=True)
class TrapSearchResult:
    outcome: TrapOutcome
    witness: TrapWitness | None = None


def is_trap_by(g: Graph, u: int, x1: int, x2: int) -> TrapWitness | None:
    """Witness with flags iff N[u] is covered by N[x1] union N[x2]."""
    n = g.n
    if not (0 <= u < n and 0 <= x1 < n and 0 <= x2 < n):
        raise ParameterError("trap vertices must be valid vertex ids")
    if x1 == u or x2 == u or x1 == x2:
        raise ParameterError("trap test needs x1, x2 distinct from u and each other")
    if g.closed_masks[u] & ~(g.closed_masks[x1] | g.closed_masks[x2]):
        return None
    a1 = g.has_edge(x1, u)
    a2 = g.has_edge(x2, u)
    lo, hi = (x1, x2) if x1 < x2 else (x2, x1)
    return TrapWitness(
        u=u,
        pair=(lo, hi),
        type_one=a1 != a2,
        type_two=a1 and a2,
        connected=g.has_edge(x1, x2),
    )


def enumerate_traps(g: Graph) -> list[TrapWitness]:
    """All (u, {x1, x2}) triples that pass is_trap_by, ascending by
    (u, x1, x2). Pairs are unordered, so each triple appears once."""
    out: list[TrapWitness] = []
    for u in range(g.n):
        for x1 in range(g.n):
            if x1 == u:
                continue
            for x2 in range(x1 + 1, g.n):
                if x2 == u:
                    continue
                w = is_trap_by(g, u, x1, x2)
                if w is not None:
                    out.append(w)
    return out


def five_cycle_trap_witness(g: Graph, u: int) -> TrapWitness:
    """Connected trap in a connected 2K2-free graph whose remainder after
    deleting N[u] is a 5-cycle.

    Follows the three-branch analysis in order: (a) some v in N(u)
    adjacent to three consecutive cycle vertices traps the middle one
    together with u; (b) two vertices of N(u) with identical cycle
    neighborhoods trap one another with u; (c) otherwise u itself is
    trapped by a remaining vertex of N(u) and its matching cycle vertex.
    Branch exhaustion is impossible on valid input and raises loudly.
    """
    if not 0 <= u < g.n:
        raise ParameterError(f"vertex {u} outside 0..{g.n - 1}")
    if not is_connected(g):
        raise ContractError("five_cycle_trap_witness requires a connected graph")
    if find_induced_2k2(g) is not None:
        raise ContractError("five_cycle_trap_witness requires a 2K2-free graph")
    h, old_ids = delete_closed_neighborhood(g, u)
    if classify_small(h) is not SmallClass.C5:
        raise ContractError("deleting N[u] must leave a 5-cycle")

    cycle = [old_ids[i] for i in _cycle_order(h)]
    pos = {v: i for i, v in enumerate(cycle)}
    nbrs = sorted(g.adj[u])

    # (a) three consecutive cycle vertices in one neighborhood
    for v in nbrs:
        row = g.masks[v]
        for i in range(5):
            prev_c, mid, nxt = cycle[i - 1], cycle[i], cycle[(i + 1) % 5]
            if row >> prev_c & 1 and row >> mid & 1 and row >> nxt & 1:
                return _validated(g, mid, u, v)

    # Every v in N(u) now has cycle neighborhood {a_i, a_i+2, a_i+3} for a
    # unique i; anything else contradicts the 2K2-free precondition.
    pattern: dict[int, int] = {}
    for v in nbrs:
        on_cycle = sorted(pos[c] for c in cycle if g.masks[v] >> c & 1)
        idx = _pattern_index(on_cycle)
        if idx is None:
            raise InternalInvariantError(
                f"vertex {v} has cycle neighborhood {on_cycle}, impossible "
                "for 2K2-free input"
            )
        pattern[v] = idx

    # (b) duplicate cycle neighborhoods
    for a_pos, v1 in enumerate(nbrs):
        for v2 in nbrs[a_pos + 1:]:
            if pattern[v1] == pattern[v2]:
                return _validated(g, v1, u, v2)

    # (c) u trapped by the least neighbor and its matching cycle vertex
    if not nbrs:
        raise InternalInvariantError("N(u) empty yet graph claimed connected")
    b = nbrs[0]
    return _validated(g, u, b, cycle[pattern[b]])


def find_connected_trap(g: Graph) -> TrapSearchResult:
    """Constructive trichotomy for connected 2K2-free graphs.

    Returns IS_K1/IS_K2/IS_C5 for the three trap-free classes and a
    validated connected TrapWitness otherwise. The induction pivots on
    vertex 0 of the current (relabeled) graph at every level; witnesses
    found in a remainder lift back through the composed relabel maps.
    """
    if g.n == 0 or not is_connected(g):
        raise ContractError("find_connected_trap requires a connected graph")
    if find_induced_2k2(g) is not None:
        raise ContractError("find_connected_trap requires a 2K2-free graph")
    return _search(g)


def _search(g: Graph) -> TrapSearchResult:
    if g.n == 1:
        return TrapSearchResult(TrapOutcome.IS_K1)
    if g.n == 2:
        return TrapSearchResult(TrapOutcome.IS_K2)
    if classify_small(g) is SmallClass.C5:
        return TrapSearchResult(TrapOutcome.IS_C5)

    u = 0
    h, old_ids = delete_closed_neighborhood(g, u)

    if h.n == 0:
        # u dominates; its two least neighbors trap the least of them.
        x1, x2 = sorted(g.adj[u])[:2]
        return _witness_result(g, x1, u, x2)

    comps = components(h)
    for comp in comps:
        if len(comp) == 1:
            y = old_ids[comp[0]]
            z = min(g.adj[y])
            return _witness_result(g, y, u, z)

    if h.n == 2:
        # remainder is a single edge x1x2
        x1, x2 = old_ids[0], old_ids[1]
        common = sorted(g.adj[x1] & g.adj[x2])
        if common:
            return _witness_result(g, x1, common[0], u)
        side_a = sorted(g.adj[x1] - {x2})
        side_b = sorted(g.adj[x2] - {x1})
        if len(side_a) < len(side_b):
            x1, x2 = x2, x1
            side_a, side_b = side_b, side_a
        if len(side_a) >= 2:
            a1, a2 = side_a[:2]
            return _witness_result(g, a1, a2, u)
        if len(side_a) == 1 and len(side_b) == 0:
            # the whole graph is a 4-vertex path ending at u
            a = side_a[0]
            return _witness_result(g, u, a, x1)
        if len(side_a) == 1 and len(side_b) == 1:
            a, b = side_a[0], side_b[0]
            if g.has_edge(a, b):
                return _witness_result(g, u, a, b)
            # a 5-cycle; normally caught by the classify_small check above
            return TrapSearchResult(TrapOutcome.IS_C5)
        raise InternalInvariantError("isolated remainder edge in a connected graph")

    if classify_small(h) is SmallClass.C5:
        w = five_cycle_trap_witness(g, u)
        return TrapSearchResult(TrapOutcome.WITNESS, w)

    if len(comps) != 1:
        raise InternalInvariantError(
            "remainder with no isolated vertex must be connected when 2K2-free"
        )
    sub = _search(h)
    if sub.outcome is not TrapOutcome.WITNESS:
        raise InternalInvariantError(
            f"remainder on {h.n} >= 3 vertices classified {sub.outcome}"
        )
    w = sub.witness
    return _witness_result(
        g, old_ids[w.u], old_ids[w.pair[0]], old_ids[w.pair[1]]
    )


def _witness_result(g: Graph, u: int, x1: int, x2: int) -> TrapSearchResult:
    return TrapSearchResult(TrapOutcome.WITNESS, _validated(g, u, x1, x2))


def _validated(g: Graph, u: int, x1: int, x2: int) -> TrapWitness:
    w = is_trap_by(g, u, x1, x2)
    if w is None or not w.connected:
        raise InternalInvariantError(
            f"constructed trap ({u}; {x1},{x2}) failed validation"
        )
    return w


def _cycle_order(h: Graph) -> list[int]:
    """Vertices of a 5-cycle in traversal order, starting at the least
    vertex and continuing toward its lesser neighbor."""
    start = 0
    first = min(h.adj[start])
    order = [start, first]
    while len(order) < 5:
        nxt = [v for v in h.adj[order[-1]] if v != order[-2]]
        order.append(nxt[0])
    return order


def _pattern_index(on_cycle: list[int]) -> int | None:
    """Index i such that the cycle positions are {i, i+2, i+3} mod 5."""
    if len(on_cycle) != 3:
        return None
    present = set(on_cycle)
    for i in range(5):
        if present == {i, (i + 2) % 5, (i + 3) % 5}:
            return i
    return None
