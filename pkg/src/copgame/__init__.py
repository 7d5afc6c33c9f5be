"""copgame: exact cops-and-robbers game solving, trap detection, scripted
strategies, and batch verification over small-graph corpora."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    ContractError,
    CopgameError,
    Graph6ParseError,
    GraphConstructionError,
    InternalInvariantError,
    ParameterError,
    SimulationError,
)
from .graphs import (
    Graph,
    SmallClass,
    bipartition,
    classify_small,
    components,
    delete_closed_neighborhood,
    diameter,
    from_edge_list,
    is_connected,
)
from .graph6 import emit_graph6, parse_graph6
from .forbidden import (
    InducedKind,
    InducedWitness,
    cantmove_violation,
    find_induced_2k2,
    find_induced_path,
    find_induced_rk2,
)
from .traps import (
    TrapOutcome,
    TrapSearchResult,
    TrapWitness,
    enumerate_traps,
    find_connected_trap,
    five_cycle_trap_witness,
    is_trap_by,
)
from .solver import (
    CopPolicy,
    GameState,
    GameTrace,
    RobberPolicy,
    SolveTable,
    Turn,
    best_robber_policy,
    capture_time,
    cop_number,
    extract_cop_policy,
    is_k_cop_win,
    k_cop_win_verdict,
    layered_solve,
    simulate_game,
    solve_game,
)
from .strategies import freeze_edge_strategy, rk2_guard_strategy

__all__ = [name for name in dir() if not name.startswith("_")]
