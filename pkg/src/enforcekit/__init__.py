"""Toolkit for deciding and executing runtime enforcement of
finite-state security policies under a four-level capability lattice."""

from .classify import (
    Bounds,
    Equivalence,
    Verdict,
    enforceable_exact,
    enforceable_insertion,
    enforceable_on,
    enforceable_suppression,
    is_forced_completion_case,
    is_lattice_renewal,
    is_lattice_safety,
    is_liveness,
    is_renewal,
    is_safety,
    unique_completion,
    unique_completion_tail,
)
from .enforce import (
    EditEvent,
    EnforcementBreachError,
    EnforcementResult,
    EnforcerSession,
    EventKind,
    Strategy,
    new_session,
    run,
)
from .nonuniform import enforceable_exact_restricted
from .oracle import (
    CheckReport,
    GameBudgetError,
    brute_classify,
    cross_check,
    enumerate_finite,
    enumerate_lassos,
    game_enforceable,
)
from .policy import (
    Action,
    ActionLattice,
    Capability,
    InfiniteMode,
    Policy,
    PolicySyntaxError,
    PolicyValidationError,
    PropertyAutomaton,
    UnknownActionError,
    load_policy,
    parse_policy,
    serialize_policy,
)
from .temporal import temporal_check
from .traces import (
    EmptyTraceError,
    FiniteTrace,
    LassoWord,
    TraceSyntaxError,
    acts,
    concat,
    format_trace,
    is_prefix,
    is_subword,
    last,
    left_cancel_action,
    left_cancel_word,
    longest_common_subword,
    parse_trace,
    prefixes_upto,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
