"""Core types for state-avoiding FOND tasks, policies and policy graphs.

States are dense integer ids.  A task exposes its structure through a small
query surface (``initial``, ``actions(s)``, ``is_fail(s)``, ``key(s)``,
``describe(s)``, ``num_states``) that both the eager :class:`TransitionSystem`
and the lazy expander in :mod:`fondsafe.expand` implement, so the algorithms
never care which one they got.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field, fields
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import BudgetExhausted, UndefinedPolicyAt, ValidationError

StateId = int
#: Partial map from state id to an index into ``actions(s)``.
Policy = Dict[int, int]


class ActionRef(NamedTuple):
    name: str
    effects: Tuple[int, ...]


def dedup(items):
    """Drop repeats, keeping the order of first occurrence."""
    return tuple(dict.fromkeys(items))


class TransitionSystem:
    """Explicit task: states, per-state ordered actions, initial state, fail set.

    ``states`` holds one descriptor per state (a name, or a tuple of variable
    values for expanded factored models).  Fail states may have no actions;
    every other state must have at least one.  Effects are deduplicated here.
    """

    __slots__ = ("states", "actions_of", "initial", "fail", "var_names", "_fail_mask")

    def __init__(self, states, actions_of, initial, fail, var_names=None):
        states = tuple(states)
        n = len(states)
        if len(actions_of) != n:
            raise ValidationError("actions_of must have one entry per state")
        if not 0 <= initial < n:
            raise ValidationError(f"initial state {initial} out of range")
        fail = frozenset(fail)
        for f in fail:
            if not 0 <= f < n:
                raise ValidationError(f"fail state {f} out of range")
        norm = []
        for s, acts in enumerate(actions_of):
            row = []
            for a in acts:
                name, effects = a
                effects = dedup(effects)
                if not effects:
                    raise ValidationError(f"action {name!r} of state {s} has no effects")
                for t in effects:
                    if not 0 <= t < n:
                        raise ValidationError(f"action {name!r} of state {s} targets {t}, out of range")
                row.append(ActionRef(name, effects))
            if not row and s not in fail:
                raise ValidationError(f"non-fail state {states[s]!r} has no applicable action")
            norm.append(tuple(row))
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "actions_of", tuple(norm))
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "fail", fail)
        object.__setattr__(self, "var_names", tuple(var_names) if var_names else None)
        mask = [False] * n
        for f in fail:
            mask[f] = True
        object.__setattr__(self, "_fail_mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("TransitionSystem is immutable")

    def __eq__(self, other):
        if not isinstance(other, TransitionSystem):
            return NotImplemented
        return (self.states == other.states and self.actions_of == other.actions_of
                and self.initial == other.initial and self.fail == other.fail)

    def __hash__(self):
        return hash((self.states, self.actions_of, self.initial, self.fail))

    def __repr__(self):
        return (f"TransitionSystem(n={len(self.states)}, m={self.num_actions}, "
                f"initial={self.initial}, |fail|={len(self.fail)})")

    # query surface shared with the lazy expander
    @property
    def num_states(self):
        return len(self.states)

    @property
    def num_actions(self):
        return sum(len(a) for a in self.actions_of)

    @property
    def branching(self):
        return max((len(a.effects) for acts in self.actions_of for a in acts), default=0)

    def actions(self, s) -> Sequence[ActionRef]:
        return self.actions_of[s]

    def is_fail(self, s) -> bool:
        return self._fail_mask[s]

    def key(self, s):
        return self.states[s]

    def describe(self, s) -> str:
        return describe_state(self.states[s], self.var_names)

    def lookup(self, descriptor) -> Optional[int]:
        for i, d in enumerate(self.states):
            if d == descriptor or describe_state(d, self.var_names) == descriptor:
                return i
        return None

    def predecessors(self):
        """Index mapping each state to the ``(s, action_index)`` pairs reaching it.

        Built once in ``O(bm)``.
        """
        pred: List[List[Tuple[int, int]]] = [[] for _ in self.states]
        for s, acts in enumerate(self.actions_of):
            for i, a in enumerate(acts):
                for t in a.effects:
                    pred[t].append((s, i))
        return pred


def describe_state(descriptor, var_names=None) -> str:
    if isinstance(descriptor, tuple) and var_names:
        return ",".join(f"{n}={v}" for n, v in zip(var_names, descriptor))
    return str(descriptor)


@dataclass
class RunStats:
    """Instrumentation counters for one run of an algorithm.

    ``budget_ns`` is an optional wall-clock budget checked cooperatively
    every ``POLL_EVERY`` expansions.
    """

    expansions: int = 0
    q_evals: int = 0
    v_flips: int = 0
    pops: int = 0
    outer_iters: int = 0
    path_enumerations: int = 0
    wall_ns: int = 0
    n_materialized: int = 0
    # Prop-U only: cost of building the predecessor index, kept apart from loop work
    index_edges: int = 0
    index_ns: int = 0
    budget_ns: Optional[int] = field(default=None, repr=False, compare=False)
    _start: int = field(default=0, repr=False, compare=False)

    POLL_EVERY = 1 << 14

    COUNTERS = ("expansions", "q_evals", "v_flips", "pops", "outer_iters",
                "path_enumerations", "wall_ns", "n_materialized")

    def start(self):
        self._start = time.perf_counter_ns()

    def stop(self):
        self.wall_ns = time.perf_counter_ns() - self._start

    def expand(self):
        self.expansions += 1
        if self.budget_ns is not None and self.expansions % self.POLL_EVERY == 0:
            if time.perf_counter_ns() - self._start > self.budget_ns:
                raise BudgetExhausted(f"budget of {self.budget_ns} ns exhausted")

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)
                if f.name in self.COUNTERS}


def policy_graph_successors(ts, p: Policy, s) -> Tuple[int, ...]:
    """``T(s, p(s))``; raises :class:`UndefinedPolicyAt` if ``p`` skips ``s``."""
    if s not in p:
        raise UndefinedPolicyAt(s)
    return ts.actions(s)[p[s]].effects


class PolicyWitness(NamedTuple):
    """Why a policy is not safe: ``kind`` is ``"fail"`` or ``"undefined"``.

    ``path`` runs from the start state to the offending state.
    """

    kind: str
    path: Tuple[int, ...]


def check_policy_safe(ts, p: Policy, s0=None):
    """Decide whether ``p`` avoids the fail states on every path from ``s0``.

    Returns ``(True, None)`` or ``(False, PolicyWitness)``.  A reachable state
    where ``p`` is undefined counts as unsafe.
    """
    if s0 is None:
        s0 = ts.initial
    parent = {s0: None}
    queue = deque([s0])

    def path_to(s):
        out = []
        while s is not None:
            out.append(s)
            s = parent[s]
        return tuple(reversed(out))

    while queue:
        s = queue.popleft()
        if ts.is_fail(s):
            return False, PolicyWitness("fail", path_to(s))
        if s not in p:
            return False, PolicyWitness("undefined", path_to(s))
        for t in ts.actions(s)[p[s]].effects:
            if t not in parent:
                parent[t] = s
                queue.append(t)
    return True, None


def envelope(ts, p: Policy, s0=None):
    """States reachable from ``s0`` in the policy graph (stops where ``p`` is undefined)."""
    if s0 is None:
        s0 = ts.initial
    seen = {s0}
    stack = [s0]
    while stack:
        s = stack.pop()
        if s in p:
            for t in ts.actions(s)[p[s]].effects:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
    return seen
