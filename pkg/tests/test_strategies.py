import pytest

from copgame.errors import ContractError
from copgame.graphs import from_edge_list
from copgame.harness.checks import _guard_containment_problem
from copgame.solver import best_robber_policy, layered_solve, simulate_game
from copgame.strategies import (
    GUARD,
    RECURSED,
    WALKER,
    BasePolicyStrategy,
    freeze_edge_strategy,
    rk2_guard_strategy,
)

from conftest import c5, load_corpus, path, two_k2, wheel_with_pendant


def optimal_robber(g, k):
    return best_robber_policy(layered_solve(g, k))


def run_freeze(g, turn_cap=None):
    strategy = freeze_edge_strategy(g)
    trace = simulate_game(g, strategy, optimal_robber(g, 3), turn_cap or 2 * g.n)
    return strategy, trace


def test_freeze_on_c5():
    strategy, trace = run_freeze(c5())
    assert strategy.guard_edge == (0, 1)
    # only vertex 3 is outside both guarded closed neighborhoods
    assert trace.robber_start == 3
    assert trace.captured and trace.cop_turns <= 3
    assert strategy.phases() == (GUARD, GUARD, WALKER)


def test_freeze_on_wheel_pendant_captures_first_turn():
    # the guarded edge's closed neighborhoods cover every vertex
    g = wheel_with_pendant()
    strategy, trace = run_freeze(g)
    assert strategy.guard_edge == (0, 1)
    assert trace.captured and trace.cop_turns <= 1


def test_freeze_invariant_every_robber_position():
    for n in range(1, 7):
        for g in load_corpus(f"conn_2k2free_n{n}"):
            strategy, trace = run_freeze(g)
            assert trace.captured and trace.cop_turns <= 2 * g.n
            positions = [trace.robber_start] + [
                pos for kind, pos in trace.events if kind == "robber"
            ]
            assert all(strategy.robber_frozen(p) for p in positions)


def test_freeze_guards_never_move_until_capture():
    g = c5()
    strategy, trace = run_freeze(g)
    v, w = strategy.guard_edge
    for kind, pos in trace.events[:-1]:
        if kind == "cops":
            assert pos[0] == v and pos[1] == w


def test_freeze_k1_degenerate():
    g = from_edge_list(1, [])
    strategy, trace = run_freeze(g)
    assert strategy.guard_edge is None
    assert trace.captured and trace.cop_turns == 0


def test_freeze_contract_errors():
    with pytest.raises(ContractError):
        freeze_edge_strategy(two_k2())
    with pytest.raises(ContractError):
        freeze_edge_strategy(path(5))


def test_rk2_r2_reduces_to_base_policy():
    g = c5()
    strategy = rk2_guard_strategy(g, 2)
    assert isinstance(strategy, BasePolicyStrategy)
    assert strategy.cop_count == 2
    trace = simulate_game(g, strategy, optimal_robber(g, 2), 20)
    assert trace.captured


def test_rk2_r3_on_c5():
    g = c5()
    strategy = rk2_guard_strategy(g, 3)
    assert strategy.cop_count == 4
    trace = simulate_game(g, strategy, optimal_robber(g, 4), 6 * g.n)
    assert trace.captured
    assert strategy.restarts == 0


def test_rk2_phases_progress():
    # an 8-vertex 3K2-free graph where the recursion actually walks
    g = from_edge_list(
        8,
        [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7),
         (5, 7), (3, 5), (4, 6)],
    )
    strategy = rk2_guard_strategy(g, 3)
    assert strategy.phases()[:2] == (GUARD, GUARD)
    trace = simulate_game(g, strategy, optimal_robber(g, 4), 6 * g.n)
    assert trace.captured
    assert strategy.phases()[2:] in ((WALKER, WALKER), (RECURSED, RECURSED))


def test_rk2_corpus_small_sizes():
    for n in range(1, 7):
        for g in load_corpus(f"conn_3k2free_n{n}"):
            strategy = rk2_guard_strategy(g, 3)
            trace = simulate_game(g, strategy, optimal_robber(g, 4), 6 * g.n)
            assert trace.captured, f"no capture on n={n}"
            assert strategy.restarts == 0
            assert _guard_containment_problem(g, strategy, trace) is None


def test_rk2_contract_errors():
    with pytest.raises(ContractError):
        rk2_guard_strategy(c5(), 1)
    with pytest.raises(ContractError):
        rk2_guard_strategy(two_k2(), 2)  # disconnected
    with pytest.raises(ContractError):
        rk2_guard_strategy(path(5), 2)  # contains an induced 2K2


def test_rk2_guard_edge_is_least():
    g = from_edge_list(4, [(1, 3), (0, 2), (2, 3), (0, 3)])
    strategy = rk2_guard_strategy(g, 3)
    assert strategy.guard_edge == (0, 2)


class RandomRobber:
    def __init__(self, g, seed):
        import random

        self.g = g
        self.rng = random.Random(seed)

    def place(self, cops):
        return self.rng.randrange(self.g.n)

    def next_move(self, cops, robber):
        return self.rng.choice(sorted(self.g.adj[robber] | {robber}))


def test_scripts_capture_random_robbers_too():
    for seed in (1, 2, 3):
        for n in range(1, 7):
            for g in load_corpus(f"conn_2k2free_n{n}"):
                trace = simulate_game(
                    g, freeze_edge_strategy(g), RandomRobber(g, seed), 2 * g.n
                )
                assert trace.captured
            for g in load_corpus(f"conn_3k2free_n{n}"):
                trace = simulate_game(
                    g, rk2_guard_strategy(g, 3), RandomRobber(g, seed), 6 * g.n
                )
                assert trace.captured
