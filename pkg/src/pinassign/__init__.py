"""Pin-assignment engine for hardware/software interface boards.

Given a pin-capability table and a requested multiset of functions, finds
one feasible, all possible, or the minimum-cost assignment of functions to
physical pins, counts the configuration space exactly, and emits equivalent
Prolog/Alloy model-checking inputs and a DOT visualization of the domain.
"""

from .board import (
    Board,
    BoardParseError,
    FunctionEntry,
    NO_DETAIL,
    Pin,
    board_stats,
    canonical_kind,
    cost_of,
    parse_board,
    serialize_board,
)
from .codegen import (
    DEFAULT_FACT_CAP,
    EmitterCapError,
    EmitterOutput,
    emit_alloy_best_assertions,
    emit_alloy_feasibility_assertion,
    emit_alloy_spec,
    emit_graph_dot,
    emit_prolog,
    estimate_prolog_facts,
)
from .configops import (
    BoardMismatchError,
    ConfigDiff,
    PinChange,
    apply_diff,
    diff_assignments,
    extend_assignment,
    merge_requests,
)
from .counting import binomial, config_space, config_space_board, k_factor
from .request import (
    Rejection,
    Request,
    RequestParseError,
    canonicalize,
    parse_request,
    quick_reject,
)
from .solver import (
    AllPinsUsedWarning,
    Assignment,
    BestStrategy,
    Binding,
    EligibilityRule,
    EnumerationLimitError,
    Infeasible,
    Semantics,
    SolveOptions,
    SolveOutcome,
    Witness,
    assignment_cost,
    check_witness,
    enumerate_all,
    find_best,
    find_feasible,
    icu_channel_rule,
    iter_assignments,
)

__all__ = [
    "AllPinsUsedWarning",
    "Assignment",
    "BestStrategy",
    "Binding",
    "Board",
    "BoardMismatchError",
    "BoardParseError",
    "ConfigDiff",
    "DEFAULT_FACT_CAP",
    "EligibilityRule",
    "EmitterCapError",
    "EmitterOutput",
    "EnumerationLimitError",
    "FunctionEntry",
    "Infeasible",
    "NO_DETAIL",
    "Pin",
    "PinChange",
    "Rejection",
    "Request",
    "RequestParseError",
    "Semantics",
    "SolveOptions",
    "SolveOutcome",
    "Witness",
    "apply_diff",
    "assignment_cost",
    "binomial",
    "board_stats",
    "canonical_kind",
    "canonicalize",
    "check_witness",
    "config_space",
    "config_space_board",
    "cost_of",
    "diff_assignments",
    "emit_alloy_best_assertions",
    "emit_alloy_feasibility_assertion",
    "emit_alloy_spec",
    "emit_graph_dot",
    "emit_prolog",
    "enumerate_all",
    "estimate_prolog_facts",
    "extend_assignment",
    "find_best",
    "find_feasible",
    "icu_channel_rule",
    "iter_assignments",
    "k_factor",
    "merge_requests",
    "parse_board",
    "parse_request",
    "quick_reject",
    "serialize_board",
]

__version__ = "0.1.0"
