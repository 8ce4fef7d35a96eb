"""Explicit states from factored models, eagerly or on demand.

Valuations are tuples of ints in declaration order.  States are interned in
first-visit order, so the initial valuation is always state 0.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache

from . import expr as E
from .errors import NoApplicableAction, OutOfRangeAssignment, StateSpaceLimitExceeded, ValidationError
from .model import ActionRef, TransitionSystem, dedup, describe_state

DEFAULT_STATE_LIMIT = 10 ** 7


class _Compiled:
    __slots__ = ("names", "bounds", "fail", "commands")

    def __init__(self, fm):
        index = {v.name: i for i, v in enumerate(fm.variables)}
        self.names = fm.var_names
        self.bounds = [(v.min, v.max) for v in fm.variables]
        self.fail = E.compile_expr(fm.fail, index)
        self.commands = []
        for c in fm.commands:
            alts = [[(index[a.var], a.var, E.compile_expr(a.expr, index)) for a in alt]
                    for alt in c.alternatives]
            self.commands.append((c.name, E.compile_expr(c.guard, index), alts))


@lru_cache(maxsize=64)
def _compile(fm):
    return _Compiled(fm)


def _successors(cm, v):
    out = []
    for name, guard, alts in cm.commands:
        if not guard(v):
            continue
        posts = []
        for alt in alts:
            if not alt:
                posts.append(v)
                continue
            new = list(v)
            for i, var, f in alt:
                val = f(v)  # simultaneous: every rhs reads the pre-state
                lo, hi = cm.bounds[i]
                if not lo <= val <= hi:
                    raise OutOfRangeAssignment(name, var, val)
                new[i] = val
            posts.append(tuple(new))
        out.append((name, list(dedup(posts))))
    return out


def successors(fm, v):
    """Applicable commands at ``v`` in declaration order, each with its post-valuations.

    Raises :class:`NoApplicableAction` if nothing applies in a non-fail valuation.
    """
    cm = _compile(fm)
    v = tuple(v)
    out = _successors(cm, v)
    if not out and not cm.fail(v):
        raise NoApplicableAction(describe_state(v, fm.var_names))
    return out


def is_fail(fm, v):
    return bool(_compile(fm).fail(tuple(v)))


class LazySystem:
    """A factored model viewed as a transition system, expanded on demand.

    Implements the same query surface as :class:`TransitionSystem`.  Only
    states whose ``actions`` were requested are expanded; their successors
    are interned (materialized) but not expanded.
    """

    def __init__(self, fm, state_limit=DEFAULT_STATE_LIMIT):
        self.model = fm
        self.state_limit = state_limit
        self._cm = _compile(fm)
        self._ids = {}
        self._vals = []
        self._fail = []
        self._actions = []
        self.var_names = fm.var_names
        self.initial = self.intern(fm.init)

    def intern(self, v):
        sid = self._ids.get(v)
        if sid is None:
            sid = len(self._vals)
            if sid >= self.state_limit:
                raise StateSpaceLimitExceeded(self.state_limit)
            self._ids[v] = sid
            self._vals.append(v)
            self._fail.append(bool(self._cm.fail(v)))
            self._actions.append(None)
        return sid

    @property
    def num_states(self):
        return len(self._vals)

    @property
    def num_expanded(self):
        return sum(a is not None for a in self._actions)

    def actions(self, s):
        acts = self._actions[s]
        if acts is None:
            v = self._vals[s]
            succ = _successors(self._cm, v)
            if not succ and not self._fail[s]:
                raise NoApplicableAction(describe_state(v, self.var_names))
            acts = tuple(ActionRef(name, tuple(self.intern(p) for p in posts))
                         for name, posts in succ)
            self._actions[s] = acts
        return acts

    def is_fail(self, s):
        return self._fail[s]

    def key(self, s):
        return self._vals[s]

    def valuation(self, s):
        return self._vals[s]

    def describe(self, s):
        return describe_state(self._vals[s], self.var_names)

    def lookup(self, descriptor):
        if isinstance(descriptor, str):
            from .parser import parse_valuation
            descriptor = parse_valuation(descriptor, self.model)
        return self._ids.get(tuple(descriptor))


def expand_reachable(fm, state_limit=DEFAULT_STATE_LIMIT, require_fail=False):
    """Breadth-first expansion of everything reachable from the initial valuation.

    With ``require_fail`` an empty reachable fail set is a :class:`ValidationError`.
    """
    lazy = LazySystem(fm, state_limit)
    queue = deque([lazy.initial])
    while queue:
        s = queue.popleft()
        known = lazy.num_states
        lazy.actions(s)
        queue.extend(range(known, lazy.num_states))
    fail = [s for s in range(lazy.num_states) if lazy.is_fail(s)]
    if require_fail and not fail:
        raise ValidationError("no reachable state satisfies the fail predicate")
    return TransitionSystem(lazy._vals, [lazy.actions(s) for s in range(lazy.num_states)],
                            lazy.initial, fail, var_names=fm.var_names)


def as_system(task, lazy=True, state_limit=DEFAULT_STATE_LIMIT):
    """Accept a :class:`TransitionSystem` or factored model and return something queryable."""
    if isinstance(task, (TransitionSystem, LazySystem)):
        return task
    if lazy:
        return LazySystem(task, state_limit)
    return expand_reachable(task, state_limit)
