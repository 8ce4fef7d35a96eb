"""Backward propagation of the unsafe region from the fail states.

This is the linear-time attractor computation of reachability games phrased
with V and Q: Q is kept as its own table rather than recomputed from V.
"""
from __future__ import annotations

import time

from ..expand import DEFAULT_STATE_LIMIT, LazySystem, expand_reachable
from ..model import RunStats, TransitionSystem
from .common import ValueTable, Verdict


def prop_u(task, s0=None, stats=None, early_stop=True, state_limit=DEFAULT_STATE_LIMIT):
    """Decide whether ``s0`` is safe by propagating unsafety backwards.

    Needs the whole system (factored or lazy inputs are expanded first).  The
    predecessor index is built before the loop; its size and time go to
    ``stats.index_edges``/``stats.index_ns``.  Loop work is ``stats.pops``
    (worklist pops) and ``stats.q_evals`` (inner-loop iterations, one Q
    update each).  With ``early_stop`` the run ends once ``s0`` is proved
    unsafe; otherwise it runs until the worklist is empty and the returned
    ``values`` hold exactly the unsafe region.
    """
    stats = stats or RunStats()
    stats.start()
    if isinstance(task, LazySystem):
        task = task.model
    ts = task if isinstance(task, TransitionSystem) else expand_reachable(task, state_limit)
    if s0 is None:
        s0 = ts.initial
    n = ts.num_states
    stats.expansions = n
    stats.n_materialized = n

    t0 = time.perf_counter_ns()
    pred = ts.predecessors()
    stats.index_edges = sum(len(p) for p in pred)
    stats.index_ns = time.perf_counter_ns() - t0

    vt = ValueTable(ts, stats)
    vt.value(n - 1)
    v = vt.v
    q = [[0] * len(ts.actions(s)) for s in range(n)]
    unsafe_actions = [0] * n  # number of a with Q(s, a) = 1
    n_actions = [len(row) for row in q]
    worklist = list(ts.fail)

    done = early_stop and v[s0] == 1
    while worklist and not done:
        t = worklist.pop()
        stats.pops += 1
        for s, a in pred[t]:
            stats.q_evals += 1
            if not q[s][a]:
                q[s][a] = 1
                unsafe_actions[s] += 1
            if v[s] == 0 and unsafe_actions[s] == n_actions[s]:
                vt.mark_unsafe(s)
                worklist.append(s)
                if early_stop and s == s0:
                    done = True
                    break

    safe = v[s0] == 0
    cert = _extract_policy(ts, s0, q) if safe else None
    vt.q = {(s, a): 1 for s in range(n) for a, x in enumerate(q[s]) if x}
    stats.stop()
    return Verdict("prop-u", safe, cert, stats, vt)


def _extract_policy(ts, s0, q):
    # after exhaustion Q(s, a) = 0 exactly when every effect of a is safe
    policy = {}
    stack = [s0]
    while stack:
        s = stack.pop()
        if s in policy:
            continue
        a = q[s].index(0)
        policy[s] = a
        stack.extend(t for t in ts.actions(s)[a].effects if t not in policy)
    return policy
