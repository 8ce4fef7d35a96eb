"""Deciding whether a state of a state-avoiding FOND task is safe.

A state is safe when some policy keeps every execution away from the fail
states forever.  Four deciders are provided (TarjanSafe, Prop-U, naive and
improved policy iteration), together with a task file format, lazy expansion
of factored models, benchmark generators and a brute-force oracle.
"""
from .algorithms import ALGORITHMS, SAFE, UNSAFE, OrderingSpec, Verdict, decide, ipi, npi, prop_u, tarjansafe
from .errors import (BudgetExhausted, ExpansionError, FondSafeError, ModelSyntaxError, NoApplicableAction,
                     OutOfRangeAssignment, RecursionDepthExceeded, StateSpaceLimitExceeded, UndefinedPolicyAt,
                     UnknownAction, UnknownState, ValidationError)
from .expand import LazySystem, as_system, expand_reachable
from .model import RunStats, TransitionSystem, check_policy_safe
from .oracle import oracle_safe, oracle_safe_set, oracle_unsafe_set
from .parser import FactoredModel, load_task, parse_task, save_task, serialize

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "SAFE", "UNSAFE", "BudgetExhausted", "ExpansionError", "FactoredModel", "FondSafeError",
    "LazySystem", "ModelSyntaxError", "NoApplicableAction", "OrderingSpec", "OutOfRangeAssignment",
    "RecursionDepthExceeded", "RunStats", "StateSpaceLimitExceeded", "TransitionSystem", "UndefinedPolicyAt",
    "UnknownAction", "UnknownState", "ValidationError", "Verdict", "as_system", "check_policy_safe", "decide",
    "expand_reachable", "ipi", "load_task", "npi", "oracle_safe", "oracle_safe_set", "oracle_unsafe_set",
    "parse_task", "prop_u", "save_task", "serialize", "tarjansafe",
]
