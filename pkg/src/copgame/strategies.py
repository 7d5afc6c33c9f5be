"""Scripted cop strategies: the 3-cop edge freeze and the recursive
(2r-2)-cop guard script for graphs without an induced matching of size r.

Freeze script: two cops sit on the ends of the lexicographically least
edge and never move except to capture once the robber enters the edge's
closed neighborhoods; on a 2K2-free graph the robber outside that region
cannot move safely, so a third cop walking a shortest path (recomputed
every turn) catches it.

Guard script: two cops freeze an edge, confining the robber to one
component of what remains outside the guarded closed neighborhoods; that
component has no induced matching of size r-1, so the remaining 2r-4
cops walk in and run the same script one level down. The r=2 base is an
optimal 2-cop policy from the solver.

Strategies are stateful per game instance: build a fresh one per
simulation.
"""

from __future__ import annotations

from collections import deque
from typing import Callable

from .errors import ContractError, InternalInvariantError
from .forbidden import find_induced_2k2, find_induced_rk2
from .graphs import Graph, components, is_connected
from .solver import CopPolicy, GameTrace, assign_moves, extract_cop_policy

GUARD = "GUARD"
WALKER = "WALKER"
RECURSED = "RECURSED"

BasePolicySource = Callable[[Graph], CopPolicy]


def default_base_policy(g: Graph) -> CopPolicy:
    """Optimal 2-cop policy from the exact solver."""
    return extract_cop_policy(g, 2)


class FreezeEdgeStrategy:
    """3-cop freeze: guards on the least edge, one shortest-path walker."""

    def __init__(self, g: Graph):
        self.g = g
        self.cop_count = 3
        edge = next(g.edges(), None)
        if edge is None:
            # K1: everything stacks on the only vertex, capture at placement
            self.guard_edge = None
            self.region = 1
            self._placement = (0, 0, 0)
            return
        v, w = edge
        self.guard_edge = (v, w)
        self.region = g.closed_masks[v] | g.closed_masks[w]
        self._placement = (v, w, v)

    def place(self) -> tuple[int, ...]:
        return self._placement

    def phases(self) -> tuple[str, ...]:
        return (GUARD, GUARD, WALKER)

    def next_move(self, trace: GameTrace, cops: tuple[int, ...], robber: int
                  ) -> tuple[int, ...]:
        g = self.g
        out = list(cops)
        caught = False
        for i, pos in enumerate(cops):
            if g.has_edge(pos, robber):
                out[i] = robber
                caught = True
        if not caught:
            out[2] = _next_hop(g, cops[2], robber)
        return tuple(out)

    def robber_frozen(self, robber: int) -> bool:
        """Freeze invariant at this robber vertex: outside the guarded
        region, every move leads into it."""
        if self.region >> robber & 1:
            return True  # inside the region the invariant says nothing
        return self.g.masks[robber] & ~self.region == 0


def freeze_edge_strategy(g: Graph) -> FreezeEdgeStrategy:
    """Fresh freeze script for a connected 2K2-free graph.

    K1 degenerates to stacking every cop on the single vertex.
    """
    if g.n == 0 or not is_connected(g):
        raise ContractError("freeze strategy requires a connected graph")
    if find_induced_2k2(g) is not None:
        raise ContractError("freeze strategy requires a 2K2-free graph")
    return FreezeEdgeStrategy(g)


class BasePolicyStrategy:
    """Recursion base: follow an optimal 2-cop table policy."""

    def __init__(self, g: Graph, policy: CopPolicy):
        self.g = g
        self.policy = policy
        self.cop_count = policy.k

    def place(self) -> tuple[int, ...]:
        return self.policy.placement

    def phases(self) -> tuple[str, ...]:
        return (RECURSED,) * self.cop_count

    def next_move(self, trace: GameTrace, cops: tuple[int, ...], robber: int
                  ) -> tuple[int, ...]:
        target = self.policy.next_config(cops, robber)
        return assign_moves(self.g, cops, target)


class RkGuardStrategy:
    """(2r-2)-cop guard script, one recursion level per r above 2."""

    def __init__(self, g: Graph, r: int, base: BasePolicySource):
        self.g = g
        self.r = r
        self.base = base
        self.cop_count = 2 * r - 2
        self.restarts = 0
        edge = next(g.edges(), None)
        if edge is None:
            self.guard_edge = None
            self.region = 1
            self._placement = (0,) * self.cop_count
        else:
            v, w = edge
            self.guard_edge = (v, w)
            self.region = g.closed_masks[v] | g.closed_masks[w]
            self._placement = (v, w) + (v,) * (self.cop_count - 2)
        self._inner = None
        self._inner_ids: tuple[int, ...] = ()
        self._inner_pos: dict[int, int] = {}
        self._component_mask = 0
        self._targets: tuple[int, ...] = ()
        self._walking = False

    def place(self) -> tuple[int, ...]:
        return self._placement

    def phases(self) -> tuple[str, ...]:
        if self._inner is None or self._walking:
            free = (WALKER,) * (self.cop_count - 2)
        else:
            free = (RECURSED,) * (self.cop_count - 2)
        return (GUARD, GUARD) + free

    @property
    def robber_component(self) -> tuple[int, ...]:
        """Vertices of the component currently confining the robber."""
        return self._inner_ids

    def next_move(self, trace: GameTrace, cops: tuple[int, ...], robber: int
                  ) -> tuple[int, ...]:
        g = self.g
        out = list(cops)
        caught = False
        for i, pos in enumerate(cops):
            if g.has_edge(pos, robber):
                out[i] = robber
                caught = True
        if caught:
            return tuple(out)
        if self.region >> robber & 1:
            raise InternalInvariantError(
                f"robber at {robber} inside the guarded region yet no cop "
                "adjacent"
            )

        if self._inner is None or not self._component_mask >> robber & 1:
            if self._inner is not None:
                # cannot happen while the guards hold; restart defensively
                self.restarts += 1
            self._setup_inner(robber)

        free = list(cops[2:])
        if self._walking:
            moved = [
                _next_hop(g, pos, tgt) if pos != tgt else pos
                for pos, tgt in zip(free, self._targets)
            ]
            out[2:] = moved
            if tuple(moved) == self._targets:
                self._walking = False
            return tuple(out)

        sub_cops = tuple(self._inner_pos[p] for p in free)
        sub_robber = self._inner_pos[robber]
        sub_move = self._inner.next_move(trace, sub_cops, sub_robber)
        out[2:] = [self._inner_ids[p] for p in sub_move]
        return tuple(out)

    def _setup_inner(self, robber: int) -> None:
        g = self.g
        outside = [v for v in range(g.n) if not self.region >> v & 1]
        rest, rest_ids = g.induced_subgraph(outside)
        back = {old: new for new, old in enumerate(rest_ids)}
        comp = next(c for c in components(rest) if back[robber] in c)
        sub, sub_ids = rest.induced_subgraph(comp)
        old_ids = tuple(rest_ids[i] for i in sub_ids)

        if self.r - 1 == 2:
            self._inner = BasePolicyStrategy(sub, self.base(sub))
        else:
            self._inner = RkGuardStrategy(sub, self.r - 1, self.base)
        self._inner_ids = old_ids
        self._inner_pos = {old: new for new, old in enumerate(old_ids)}
        self._component_mask = 0
        for v in old_ids:
            self._component_mask |= 1 << v
        self._targets = tuple(old_ids[p] for p in self._inner.place())
        self._walking = True


def rk2_guard_strategy(
    g: Graph, r: int, base: BasePolicySource = default_base_policy
):
    """Fresh (2r-2)-cop guard script for a connected graph with no
    induced matching of size r. At r=2 this is the base 2-cop policy."""
    if r < 2:
        raise ContractError(f"guard strategy needs r >= 2, got {r}")
    if g.n == 0 or not is_connected(g):
        raise ContractError("guard strategy requires a connected graph")
    if find_induced_rk2(g, r) is not None:
        raise ContractError(f"guard strategy requires an {r}K2-free graph")
    if r == 2:
        return BasePolicyStrategy(g, base(g))
    return RkGuardStrategy(g, r, base)


def _next_hop(g: Graph, src: int, dst: int) -> int:
    """Least-id neighbor of src one step closer to dst (src if there)."""
    if src == dst:
        return src
    dist = _bfs_dist(g, dst)
    step = [v for v in sorted(g.adj[src]) if dist[v] == dist[src] - 1]
    return step[0]


def _bfs_dist(g: Graph, src: int) -> list[int]:
    dist = [-1] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if dist[v] == -1:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist
