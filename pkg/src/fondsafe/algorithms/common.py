"""Value bookkeeping and verdicts shared by the deciders."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..model import Policy, RunStats

SAFE = "SAFE"
UNSAFE = "UNSAFE"


class ValueTable:
    """``v[s] = 1`` once ``s`` is proved unsafe, ``0`` while undecided.

    Entries are created on first access (fail states start at 1), so the
    table works over lazily materialized systems.  ``q`` holds the
    materialized ``(s, action_index) -> 1`` marks where an algorithm keeps
    Q separately from V.
    """

    __slots__ = ("system", "stats", "v", "q")

    def __init__(self, system, stats):
        self.system = system
        self.stats = stats
        self.v = []
        self.q = {}

    def value(self, s):
        v = self.v
        if s >= len(v):
            is_fail = self.system.is_fail
            v.extend(1 if is_fail(t) else 0 for t in range(len(v), s + 1))
        return v[s]

    def mark_unsafe(self, s):
        self.value(s)
        if self.v[s]:
            return False
        self.v[s] = 1
        self.stats.v_flips += 1
        return True

    def unsafe_states(self):
        return {s for s, x in enumerate(self.v) if x}


def q_value(vt: ValueTable, system, s, a):
    """``max`` of V over the effects of action index ``a`` in ``s``."""
    vt.stats.q_evals += 1
    value = vt.value
    for t in system.actions(s)[a].effects:
        if value(t):
            return 1
    return 0


@dataclass
class Verdict:
    algo: str
    safe: bool
    certificate: Optional[Policy] = None
    stats: RunStats = field(default_factory=RunStats)
    values: Optional[ValueTable] = field(default=None, repr=False)

    @property
    def safety(self):
        return SAFE if self.safe else UNSAFE
