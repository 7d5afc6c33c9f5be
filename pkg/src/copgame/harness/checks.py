"""Per-graph verification checks.

Each check returns PASS, FAIL (with a witness string), or SKIP when it
does not apply to the graph; SKIP keeps summaries honest about coverage.
Contract errors raised by the underlying modules are caught by the
runner and recorded as ERROR outcomes.

Bound checks (PT_BOUND, RK2_BOUND) first try a dominating-set
certificate (cops placed on a dominating set capture on their first
move) and fall back to the exact game solver; THEOREM_MAIN always runs
the exact solve, since it is the headline verification.
"""

from __future__ import annotations

import re
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Callable, NamedTuple

from ..errors import ParameterError
from ..forbidden import cantmove_violation, find_induced_2k2, find_induced_path, find_induced_rk2
from ..graphs import (
    Graph,
    SmallClass,
    bipartition,
    classify_small,
    components,
    diameter,
    is_connected,
)
from ..solver import (
    best_robber_policy,
    cop_number,
    k_cop_win_verdict,
    layered_solve,
    simulate_game,
)
from ..strategies import freeze_edge_strategy, rk2_guard_strategy
from ..traps import TrapOutcome, find_connected_trap, is_trap_by


class CheckStatus(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIP = "SKIP"
    ERROR = "ERROR"


class CheckResult(NamedTuple):
    name: str
    status: CheckStatus
    witness: str | None


class GraphFacts:
    """One graph plus lazily computed facts shared between checks."""

    def __init__(self, g: Graph, k_max: int = 4):
        self.g = g
        self.k_max = k_max

    @cached_property
    def connected(self) -> bool:
        return is_connected(self.g)

    @cached_property
    def two_k2_free(self) -> bool:
        return find_induced_2k2(self.g) is None


Check = Callable[[GraphFacts], CheckResult]


def _skip(name: str) -> CheckResult:
    return CheckResult(name, CheckStatus.SKIP, None)


def _verdict(name: str, ok: bool, witness: str) -> CheckResult:
    if ok:
        return CheckResult(name, CheckStatus.PASS, None)
    return CheckResult(name, CheckStatus.FAIL, witness)


def check_theorem_main(facts: GraphFacts) -> CheckResult:
    """Connected 2K2-free graphs are 2-cop-win (exact solve, no shortcuts)."""
    name = "THEOREM_MAIN"
    if not facts.connected or not facts.two_k2_free:
        return _skip(name)
    return _verdict(name, k_cop_win_verdict(facts.g, 2), "cop_number exceeds 2")


def check_trichotomy(facts: GraphFacts) -> CheckResult:
    """find_connected_trap agrees with classify_small on the trap-free
    classes and yields a validated connected trap otherwise."""
    name = "TRICHOTOMY"
    if not facts.connected or not facts.two_k2_free:
        return _skip(name)
    g = facts.g
    result = find_connected_trap(g)
    small = classify_small(g)
    expect = {
        SmallClass.K1: TrapOutcome.IS_K1,
        SmallClass.K2: TrapOutcome.IS_K2,
        SmallClass.C5: TrapOutcome.IS_C5,
    }.get(small)
    if expect is not None:
        return _verdict(
            name, result.outcome is expect,
            f"classify_small={small.value} but outcome={result.outcome.value}",
        )
    if result.outcome is not TrapOutcome.WITNESS:
        return _verdict(name, False, f"no witness on non-small graph: {result.outcome.value}")
    w = result.witness
    again = is_trap_by(g, w.u, w.pair[0], w.pair[1])
    ok = again is not None and again.connected and again == w
    return _verdict(name, ok, f"witness {w} failed revalidation")


def check_diameter3(facts: GraphFacts) -> CheckResult:
    name = "DIAMETER3"
    if not facts.connected or not facts.two_k2_free:
        return _skip(name)
    d = diameter(facts.g)
    return _verdict(name, d <= 3, f"diameter={d}")


def check_cantmove_equiv(facts: GraphFacts) -> CheckResult:
    """Both directions of the edge-nonneighbor reformulation, on any graph."""
    name = "CANTMOVE_EQUIV"
    g = facts.g
    violation = cantmove_violation(g)
    two_k2 = find_induced_2k2(g)
    ok = (violation is None) == (two_k2 is None)
    return _verdict(
        name, ok, f"cantmove={violation} vs induced_2k2={two_k2}"
    )


def check_bipartite_dom(facts: GraphFacts) -> CheckResult:
    """Each colour class of a connected bipartite 2K2-free graph has a
    vertex adjacent to the entire other class. Needs n >= 2 so both
    classes are nonempty."""
    name = "BIPARTITE_DOM"
    g = facts.g
    if not facts.connected or not facts.two_k2_free or g.n < 2:
        return _skip(name)
    parts = bipartition(g)
    if parts is None:
        return _skip(name)
    for mine, other in (parts, parts[::-1]):
        want = 0
        for v in other:
            want |= 1 << v
        if not any(g.masks[v] & want == want for v in mine):
            return _verdict(name, False, f"class {mine} dominates no full other side")
    return _verdict(name, True, "")


def make_pt_bound(t: int) -> Check:
    if t < 3:
        raise ParameterError(f"PT_BOUND needs t >= 3, got {t}")

    def check(facts: GraphFacts) -> CheckResult:
        name = f"PT_BOUND({t})"
        if not facts.connected:
            return _skip(name)
        if find_induced_path(facts.g, t) is not None:
            return _skip(name)
        ok = _cop_number_at_most(facts.g, t - 2)
        return _verdict(name, ok, f"cop_number exceeds {t - 2}")

    return check


def make_rk2_bound(r: int) -> Check:
    if r < 2:
        raise ParameterError(f"RK2_BOUND needs r >= 2, got {r}")

    def check(facts: GraphFacts) -> CheckResult:
        name = f"RK2_BOUND({r})"
        if not facts.connected:
            return _skip(name)
        if find_induced_rk2(facts.g, r) is not None:
            return _skip(name)
        ok = _cop_number_at_most(facts.g, 2 * r - 2)
        return _verdict(name, ok, f"cop_number exceeds {2 * r - 2}")

    return check


def check_freeze_sim(facts: GraphFacts) -> CheckResult:
    """Simulate the 3-cop freeze script against the table-optimal robber:
    capture within 2n cop turns and the freeze invariant holds at every
    robber position."""
    name = "FREEZE_SIM"
    if not facts.connected or not facts.two_k2_free:
        return _skip(name)
    g = facts.g
    strategy = freeze_edge_strategy(g)
    robber = best_robber_policy(layered_solve(g, 3))
    trace = simulate_game(g, strategy, robber, 2 * g.n)
    if not trace.captured:
        return _verdict(name, False, f"no capture within {2 * g.n} cop turns")
    positions = [trace.robber_start] + [
        pos for kind, pos in trace.events if kind == "robber"
    ]
    for pos in positions:
        if not strategy.robber_frozen(pos):
            return _verdict(name, False, f"freeze invariant tripped at vertex {pos}")
    return _verdict(name, True, "")


def make_rk2_sim(r: int) -> Check:
    if r < 2:
        raise ParameterError(f"RK2_SIM needs r >= 2, got {r}")

    def check(facts: GraphFacts) -> CheckResult:
        name = f"RK2_SIM({r})"
        if not facts.connected:
            return _skip(name)
        g = facts.g
        if find_induced_rk2(g, r) is not None:
            return _skip(name)
        cap = 2 * g.n * r
        strategy = rk2_guard_strategy(g, r)
        robber = best_robber_policy(layered_solve(g, 2 * r - 2))
        trace = simulate_game(g, strategy, robber, cap)
        if not trace.captured:
            return _verdict(name, False, f"no capture within {cap} cop turns")
        if getattr(strategy, "restarts", 0):
            return _verdict(name, False, "robber component changed mid-game")
        problem = _guard_containment_problem(g, strategy, trace)
        if problem:
            return _verdict(name, False, problem)
        return _verdict(name, True, "")

    return check


def _guard_containment_problem(g, strategy, trace) -> str | None:
    """Guarded-region invariant: the robber never reaches a component of
    the remainder other than its own, and entering the guarded region is
    immediately punished."""
    region = getattr(strategy, "region", None)
    if region is None or getattr(strategy, "guard_edge", None) is None:
        return None  # base-policy game, nothing to contain
    if region >> trace.robber_start & 1:
        return None  # placed inside the region: captured on turn one
    outside = [v for v in range(g.n) if not region >> v & 1]
    rest, rest_ids = g.induced_subgraph(outside)
    back = {old: new for new, old in enumerate(rest_ids)}
    comp = next(c for c in components(rest) if back[trace.robber_start] in c)
    allowed = {rest_ids[i] for i in comp}
    positions = [trace.robber_start] + [
        pos for kind, pos in trace.events if kind == "robber"
    ]
    for i, pos in enumerate(positions):
        if pos in allowed:
            continue
        if region >> pos & 1:
            is_last = i == len(positions) - 1
            if is_last and trace.captured:
                continue
            return f"robber lingered in the guarded region at {pos}"
        return f"robber escaped to a foreign component via {pos}"
    return None


def check_degree1_invariance(facts: GraphFacts) -> CheckResult:
    """Removing a degree-1 vertex never changes the cop number."""
    name = "DEGREE1_INVARIANCE"
    g = facts.g
    if not facts.connected or g.n < 2:
        return _skip(name)
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    if not leaves:
        return _skip(name)
    base = cop_number(g, facts.k_max, fast=True)
    if base is None:
        return CheckResult(name, CheckStatus.ERROR, f"k_max={facts.k_max} too small")
    for x in leaves:
        sub, _ = g.induced_subgraph([v for v in range(g.n) if v != x])
        if not is_connected(sub):
            continue
        c_sub = cop_number(sub, facts.k_max, fast=True)
        if c_sub != base:
            return _verdict(
                name, False, f"removing leaf {x}: {base} -> {c_sub}"
            )
    return _verdict(name, True, "")


def check_shadow_bound(facts: GraphFacts) -> CheckResult:
    """If N(x) is contained in N(u) for some other vertex u, playing the
    winning strategy of G-x against the robber's shadow gives
    c(G) <= max(c(G-x), 2)."""
    name = "SHADOW_BOUND"
    g = facts.g
    if not facts.connected or g.n < 2:
        return _skip(name)
    shadowed = sorted(
        {
            x
            for x in range(g.n)
            for u in range(g.n)
            if u != x and g.masks[x] & ~g.masks[u] == 0
        }
    )
    if not shadowed:
        return _skip(name)
    base = cop_number(g, facts.k_max, fast=True)
    if base is None:
        return CheckResult(name, CheckStatus.ERROR, f"k_max={facts.k_max} too small")
    if base <= 2:
        return _verdict(name, True, "")
    for x in shadowed:
        sub, _ = g.induced_subgraph([v for v in range(g.n) if v != x])
        if not is_connected(sub):
            continue
        c_sub = cop_number(sub, facts.k_max, fast=True)
        if c_sub is None:
            return CheckResult(name, CheckStatus.ERROR, f"k_max={facts.k_max} too small")
        if base > max(c_sub, 2):
            return _verdict(
                name, False, f"shadow vertex {x}: c(G)={base} > max({c_sub}, 2)"
            )
    return _verdict(name, True, "")


def _cop_number_at_most(g: Graph, bound: int) -> bool:
    """Sound bound check: dominating-set certificate, then exact solve.

    Cops placed on a dominating set capture on their first move, so a
    dominating set of size <= bound certifies the bound without a solve.
    """
    if _has_dominating_set(g, min(bound, 4)):
        return True
    return k_cop_win_verdict(g, bound)


def _has_dominating_set(g: Graph, max_size: int) -> bool:
    full = (1 << g.n) - 1
    closed = g.closed_masks
    for size in range(1, min(max_size, g.n) + 1):
        for combo in combinations(range(g.n), size):
            mask = 0
            for v in combo:
                mask |= closed[v]
            if mask == full:
                return True
    return False


_PARAM_RE = re.compile(r"^([A-Z0-9_]+)(?:[(:](\d+)\)?)?$")

_PLAIN_CHECKS: dict[str, Check] = {
    "THEOREM_MAIN": check_theorem_main,
    "TRICHOTOMY": check_trichotomy,
    "DIAMETER3": check_diameter3,
    "CANTMOVE_EQUIV": check_cantmove_equiv,
    "BIPARTITE_DOM": check_bipartite_dom,
    "FREEZE_SIM": check_freeze_sim,
    "DEGREE1_INVARIANCE": check_degree1_invariance,
    "SHADOW_BOUND": check_shadow_bound,
}

_PARAM_CHECKS: dict[str, tuple[Callable[[int], Check], int]] = {
    # factory and default parameter
    "PT_BOUND": (make_pt_bound, 5),
    "RK2_BOUND": (make_rk2_bound, 3),
    "RK2_SIM": (make_rk2_sim, 3),
}

ALL_CHECKS_SPEC = (
    "THEOREM_MAIN,TRICHOTOMY,DIAMETER3,CANTMOVE_EQUIV,BIPARTITE_DOM,"
    "PT_BOUND(4),PT_BOUND(5),RK2_BOUND(3),FREEZE_SIM,RK2_SIM(3),"
    "DEGREE1_INVARIANCE,SHADOW_BOUND"
)


def available_check_names() -> list[str]:
    return sorted([*_PLAIN_CHECKS, *_PARAM_CHECKS])


def parse_check_spec(spec: str) -> list[str]:
    """Normalize a comma-separated check list; 'all' expands the menu."""
    names: list[str] = []
    for raw in spec.split(","):
        raw = raw.strip()
        if not raw:
            continue
        if raw.lower() == "all":
            names.extend(parse_check_spec(ALL_CHECKS_SPEC))
            continue
        match = _PARAM_RE.match(raw.upper())
        if not match:
            raise ParameterError(f"bad check name {raw!r}")
        base, param = match.group(1), match.group(2)
        if base in _PLAIN_CHECKS:
            if param is not None:
                raise ParameterError(f"check {base} takes no parameter")
            names.append(base)
        elif base in _PARAM_CHECKS:
            value = int(param) if param is not None else _PARAM_CHECKS[base][1]
            names.append(f"{base}({value})")
        else:
            raise ParameterError(f"unknown check {raw!r}")
    if not names:
        raise ParameterError("no checks selected")
    return names


def build_checks(names: list[str]) -> list[tuple[str, Check]]:
    """Instantiate checks from normalized names (see parse_check_spec)."""
    out: list[tuple[str, Check]] = []
    for name in names:
        match = _PARAM_RE.match(name)
        if not match:
            raise ParameterError(f"bad check name {name!r}")
        base, param = match.group(1), match.group(2)
        if base in _PLAIN_CHECKS:
            out.append((base, _PLAIN_CHECKS[base]))
        elif base in _PARAM_CHECKS:
            factory, default = _PARAM_CHECKS[base]
            value = int(param) if param is not None else default
            out.append((f"{base}({value})", factory(value)))
        else:
            raise ParameterError(f"unknown check {name!r}")
    return out
