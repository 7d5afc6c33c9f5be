from itertools import combinations

import pytest

from copgame.errors import ContractError, ParameterError
from copgame.forbidden import find_induced_2k2
from copgame.graphs import SmallClass, classify_small, delete_closed_neighborhood, from_edge_list
from copgame.traps import (
    TrapOutcome,
    enumerate_traps,
    find_connected_trap,
    five_cycle_trap_witness,
    is_trap_by,
)

from conftest import c5, complete, load_corpus, path, petersen, two_k2, wheel_with_pendant


def brute_force_traps(g):
    """Direct set-containment oracle over all (u, {x1,x2}) triples."""
    out = []
    for u in range(g.n):
        others = [v for v in range(g.n) if v != u]
        for x1, x2 in combinations(others, 2):
            cover = g.closed_neighborhood(x1) | g.closed_neighborhood(x2)
            if g.closed_neighborhood(u) <= cover:
                out.append((u, x1, x2))
    return out


def test_is_trap_by_star():
    star = from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
    w = is_trap_by(star, 1, 0, 2)
    assert w is not None
    assert w.type_one and not w.type_two and w.connected
    assert w.pair == (0, 2)


def test_is_trap_by_wheel_pendant():
    g = wheel_with_pendant()
    # cycle vertex 2 is trapped by the hub (1) and the pendant (0)
    w = is_trap_by(g, 2, 1, 0)
    assert w is not None
    assert w.type_one and not w.type_two and w.connected
    assert w.pair == (0, 1)


def test_is_trap_by_c5_cases():
    g = c5()
    w = is_trap_by(g, 0, 1, 4)
    assert w is not None and w.type_two and not w.type_one
    assert not w.connected
    assert is_trap_by(g, 0, 2, 3) is None


@pytest.mark.parametrize("u, x1, x2", [(0, 0, 1), (0, 1, 1), (0, 2, 0), (0, 9, 1)])
def test_is_trap_by_parameter_errors(u, x1, x2):
    with pytest.raises(ParameterError):
        is_trap_by(c5(), u, x1, x2)


def test_enumerate_traps_matches_bruteforce():
    for g in [c5(), path(4), complete(3), complete(4), petersen(),
              two_k2(), wheel_with_pendant()]:
        got = [(w.u, w.pair[0], w.pair[1]) for w in enumerate_traps(g)]
        assert got == brute_force_traps(g)
        assert got == sorted(got)


def test_enumerate_traps_petersen_empty():
    assert enumerate_traps(petersen()) == []


def test_enumerate_traps_c5():
    traps = enumerate_traps(c5())
    keyed = {(w.u, w.pair): w for w in traps}
    # the pair of u's own neighbors always traps u, type-II
    neighbor_pair = keyed[(0, (1, 4))]
    assert neighbor_pair.type_two and not neighbor_pair.type_one
    # a distance-2 pair covers the whole cycle, trapping u as type-I
    far_pair = keyed[(0, (1, 3))]
    assert far_pair.type_one and not far_pair.type_two
    # no adjacent pair covers any closed neighborhood: C5 has no
    # connected trap
    assert not any(w.connected for w in traps)


def test_enumerate_traps_k3():
    traps = enumerate_traps(complete(3))
    # one unordered pair per trapped vertex
    assert [(w.u, w.pair) for w in traps] == [(0, (1, 2)), (1, (0, 2)), (2, (0, 1))]
    assert all(w.connected and w.type_two for w in traps)


def test_five_cycle_branch_a_wheel_pendant():
    g = wheel_with_pendant()
    w = five_cycle_trap_witness(g, 0)
    assert w.u == 2  # least cycle vertex
    assert w.pair == (0, 1)  # pendant and hub
    assert w.connected and w.type_one


def test_five_cycle_branch_a_duplicate_hub():
    # second hub with the same closed neighborhood as the first
    g = from_edge_list(
        8,
        [(0, 1), (0, 7), (1, 7)]
        + [(1, a) for a in range(2, 7)]
        + [(7, a) for a in range(2, 7)]
        + [(2, 3), (3, 4), (4, 5), (5, 6), (2, 6)],
    )
    assert find_induced_2k2(g) is None
    h, _ = delete_closed_neighborhood(g, 0)
    assert classify_small(h) is SmallClass.C5
    w = five_cycle_trap_witness(g, 0)
    assert w.u == 2 and w.pair == (0, 1)


def test_five_cycle_branch_b_twin_attachments():
    # two vertices of N(u) with the same three-vertex cycle pattern
    g = from_edge_list(
        8,
        [(0, 1), (0, 2)]
        + [(1, 3), (1, 5), (1, 6), (2, 3), (2, 5), (2, 6), (1, 2)]
        + [(3, 4), (4, 5), (5, 6), (6, 7), (3, 7)],
    )
    assert find_induced_2k2(g) is None
    h, old_ids = delete_closed_neighborhood(g, 0)
    assert classify_small(h) is SmallClass.C5
    w = five_cycle_trap_witness(g, 0)
    assert w.u == 1 and w.pair == (0, 2)
    assert w.connected


def test_five_cycle_branch_c_single_b_vertex():
    # u(0) - b(1) - cycle 2..6 with b adjacent to the {a1, a3, a4} pattern
    g = from_edge_list(
        7,
        [(0, 1), (1, 2), (1, 4), (1, 5),
         (2, 3), (3, 4), (4, 5), (5, 6), (2, 6)],
    )
    assert find_induced_2k2(g) is None
    w = five_cycle_trap_witness(g, 0)
    assert w.u == 0 and w.pair == (1, 2)
    assert w.connected and w.type_one


def test_five_cycle_contract_errors():
    with pytest.raises(ContractError):
        five_cycle_trap_witness(two_k2(), 0)  # disconnected
    with pytest.raises(ContractError):
        five_cycle_trap_witness(path(5), 0)  # not 2K2-free
    with pytest.raises(ContractError):
        five_cycle_trap_witness(c5(), 0)  # remainder is K2, not C5


def test_find_connected_trap_small_classes():
    assert find_connected_trap(c5()).outcome is TrapOutcome.IS_C5
    assert find_connected_trap(from_edge_list(2, [(0, 1)])).outcome is TrapOutcome.IS_K2
    assert find_connected_trap(from_edge_list(1, [])).outcome is TrapOutcome.IS_K1


def test_find_connected_trap_p4_endpoint():
    result = find_connected_trap(path(4))
    assert result.outcome is TrapOutcome.WITNESS
    w = result.witness
    assert w.connected
    assert w.u == 0 and w.pair == (1, 2)


def test_find_connected_trap_contract_errors():
    with pytest.raises(ContractError):
        find_connected_trap(two_k2())
    with pytest.raises(ContractError):
        find_connected_trap(path(5))


def test_trichotomy_on_corpus_classes():
    # constructive trichotomy over every 2K2-free class on <= 8 vertices
    for n in range(1, 9):
        for g in load_corpus(f"conn_2k2free_n{n}"):
            result = find_connected_trap(g)
            small = classify_small(g)
            if small is SmallClass.K1:
                assert result.outcome is TrapOutcome.IS_K1
            elif small is SmallClass.K2:
                assert result.outcome is TrapOutcome.IS_K2
            elif small is SmallClass.C5:
                assert result.outcome is TrapOutcome.IS_C5
            else:
                assert result.outcome is TrapOutcome.WITNESS
                w = result.witness
                again = is_trap_by(g, w.u, w.pair[0], w.pair[1])
                assert again == w and again.connected


def test_five_cycle_instance_coverage_up_to_9():
    # wherever deleting a closed neighborhood leaves a 5-cycle, the
    # constructive search must succeed
    hits = 0
    for n in range(6, 10):
        for g in load_corpus(f"conn_2k2free_n{n}"):
            for u in range(g.n):
                h, _ = delete_closed_neighborhood(g, u)
                if h.n == 5 and classify_small(h) is SmallClass.C5:
                    w = five_cycle_trap_witness(g, u)
                    assert w.connected
                    hits += 1
    assert hits > 0


def test_corner_generalization_on_stars_and_cliques():
    # a vertex dominated by a single other vertex is trapped with any
    # third vertex adjacent to the dominator
    for g in [from_edge_list(5, [(0, i) for i in range(1, 5)]), complete(5)]:
        for u in range(g.n):
            for x1 in range(g.n):
                if x1 == u:
                    continue
                if g.closed_neighborhood(u) <= g.closed_neighborhood(x1):
                    for z in g.adj[x1] - {u, x1}:
                        assert is_trap_by(g, u, x1, z) is not None
