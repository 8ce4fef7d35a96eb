"""Depth-first safety search with known-safe/known-unsafe labels and lowlinks.

A state is tried action by action; an action is accepted when every effect
comes back safe.  The recursion stops early when the state is a fail state,
is labelled unsafe or safe, or has an action whose effects are all on the
current DFS path.  A state leaves the path when its call returns, and only
an SCC root (lowlink equal to its own index) is labelled safe, so states
inside an open SCC are expanded again on every path that reaches them.
On the layered family this enumerates all ``2^d`` paths.
"""
from __future__ import annotations

from ..errors import RecursionDepthExceeded
from ..model import RunStats
from .common import Verdict
from .ordering import OrderingSpec

_INF = float("inf")
_MISSING = object()


class _Frame:
    __slots__ = ("s", "idx", "acts", "ai", "ei", "low", "jmark")

    def __init__(self, s, idx, acts, jmark):
        self.s = s
        self.idx = idx
        self.acts = acts
        self.ai = 0
        self.ei = 0
        self.low = idx
        self.jmark = jmark


def tarjansafe(system, s0=None, ordering=None, stats=None, depth_limit=None):
    """Decide whether ``s0`` is safe. Returns a :class:`Verdict`.

    ``stats.expansions`` counts expanded visits (re-expansions included) and
    ``stats.path_enumerations`` counts visits that bottomed out because an
    action led only back onto the path.
    """
    stats = stats or RunStats()
    stats.start()
    if s0 is None:
        s0 = system.initial
    order = (ordering or OrderingSpec.app()).bind(system)
    actions, is_fail = system.actions, system.is_fail

    known_safe = set()
    known_unsafe = set()
    on_path = {}  # state -> DFS index while on the current path
    policy = {}
    journal = []  # (state, previous choice) so abandoned attempts can be undone
    cert = {}
    counter = 0
    stack = []

    def choose(s, a):
        journal.append((s, policy.get(s, _MISSING)))
        policy[s] = a

    def rollback(mark):
        while len(journal) > mark:
            s, prev = journal.pop()
            if prev is _MISSING:
                del policy[s]
            else:
                policy[s] = prev

    def commit(mark):
        for s, _ in journal[mark:]:
            if s not in cert and s in policy:
                cert[s] = policy[s]

    def enter(s):
        """Visit ``s``: return ``(ok, low)`` if decided on the spot, else push a frame."""
        nonlocal counter
        if is_fail(s) or s in known_unsafe:
            return False, _INF
        if s in known_safe:
            return True, _INF
        stats.expand()
        idx = counter
        counter += 1
        on_path[s] = idx
        acts = order(s)
        mark = len(journal)
        for a in acts:
            effects = actions(s)[a].effects
            if all(t in on_path for t in effects):
                stats.path_enumerations += 1
                choose(s, a)
                low = min(on_path[t] for t in effects)
                del on_path[s]
                if low >= idx:
                    known_safe.add(s)
                    commit(mark)
                return True, low
        if not acts:
            del on_path[s]
            known_unsafe.add(s)
            return False, _INF
        if depth_limit is not None and len(stack) >= depth_limit:
            raise RecursionDepthExceeded(depth_limit)
        stack.append(_Frame(s, idx, acts, mark))
        choose(s, acts[0])
        return None

    result = enter(s0)
    while stack:
        f = stack[-1]
        s = f.s
        if result is not None:
            ok, low = result
            result = None
            if ok:
                if low < f.low:
                    f.low = low
                f.ei += 1
            else:
                # abandon this action and everything chosen beneath it
                rollback(f.jmark)
                f.ai += 1
                f.ei = 0
                f.low = f.idx
                if f.ai == len(f.acts):
                    stack.pop()
                    del on_path[s]
                    known_unsafe.add(s)
                    result = (False, _INF)
                    continue
                choose(s, f.acts[f.ai])
        effects = actions(s)[f.acts[f.ai]].effects
        while f.ei < len(effects):
            t = effects[f.ei]
            if t in on_path:
                if on_path[t] < f.low:
                    f.low = on_path[t]
                f.ei += 1
                continue
            result = enter(t)
            if result is None:
                break  # descended into t
            if result[0]:
                if result[1] < f.low:
                    f.low = result[1]
                result = None
                f.ei += 1
                continue
            break  # t is unsafe; handled at the top of the loop
        else:
            stack.pop()
            del on_path[s]
            if f.low >= f.idx:
                known_safe.add(s)
                commit(f.jmark)
            result = (True, f.low)

    safe = bool(result[0])
    stats.n_materialized = system.num_states
    stats.stop()
    return Verdict("tarjansafe", safe, dict(cert) if safe else None, stats)
