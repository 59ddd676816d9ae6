"""Switch-search games on single-source directed (multi)graphs.

Every non-sink vertex hides a switch selecting one of its out-edges; the
switches route a flow from the source to a sink. Questions reveal
switches, up to k per round, and the library computes how many rounds it
takes to pin down the flow's sink or its whole path against worst-case
switch settings: exact values by memoized minimax, plus questioner and
adversary strategies whose duels realize the proven bounds.
"""

from .game import (
    Adversary,
    AdversaryResponse,
    FixedAssignmentAdversary,
    FlowPath,
    GraphIndex,
    MatchResult,
    ProtocolViolation,
    Questioner,
    StrategyError,
    askable_vertices,
    best_response_rounds,
    flow,
    is_determined,
    possible_sinks,
    run_match,
    worst_case_rounds,
)
from .graph import (
    Edge,
    Graph,
    GraphError,
    SchemaError,
    Vertex,
    check_assignment,
    dumps,
    from_json_doc,
    loads,
    to_dot,
    to_json_doc,
    validate,
)
from .reduce import (
    ReductionResult,
    apply_answer_multi,
    apply_answer_simple,
    longest_generalized_path_len,
    longest_path_len,
    merge_set_multi,
    merge_set_simple,
    reachability_preserved_check,
    reduce_multi,
    reduce_simple,
)
from .solver import SolveResult, SolverConfig, SolveStats, solve_curve, solve_exact

__all__ = [name for name in dir() if not name.startswith("_")]
