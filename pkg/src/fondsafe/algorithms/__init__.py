"""The four safety deciders behind one entry point, :func:`decide`."""
from ..errors import FondSafeError
from ..expand import DEFAULT_STATE_LIMIT, as_system
from ..model import RunStats
from .common import SAFE, UNSAFE, ValueTable, Verdict, q_value
from .ordering import OrderingSpec, rand_permutation
from .pi import ipi, npi
from .propu import prop_u
from .tarjansafe import tarjansafe

ALGORITHMS = ("tarjansafe", "prop-u", "npi", "ipi")


def decide(task, algo, s0=None, ordering=None, state_limit=DEFAULT_STATE_LIMIT, budget_ns=None):
    """Run ``algo`` on ``task`` (explicit system, lazy system or factored model).

    Prop-U expands the whole reachable space; the others expand on demand.
    """
    stats = RunStats(budget_ns=budget_ns)
    if algo == "prop-u":
        return prop_u(task, s0, stats=stats, state_limit=state_limit)
    system = as_system(task, lazy=True, state_limit=state_limit)
    if algo == "tarjansafe":
        return tarjansafe(system, s0, ordering, stats)
    if algo == "npi":
        return npi(system, s0, ordering, stats)
    if algo == "ipi":
        return ipi(system, s0, ordering, stats)
    raise FondSafeError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")


__all__ = ["ALGORITHMS", "SAFE", "UNSAFE", "OrderingSpec", "ValueTable", "Verdict", "decide",
           "ipi", "npi", "prop_u", "q_value", "rand_permutation", "tarjansafe"]
