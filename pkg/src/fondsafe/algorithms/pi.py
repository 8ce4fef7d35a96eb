"""Policy iteration for state safety: the naive two-phase loop and the improved one."""
from __future__ import annotations

from ..model import RunStats
from .common import ValueTable, Verdict, q_value
from .ordering import OrderingSpec


def npi(system, s0=None, ordering=None, stats=None):
    """Naive policy iteration.

    Each pass evaluates the current policy by a post-order sweep over its
    policy graph, backing up ``V(s) <- min_a Q(s, a)``, and stops when the
    sweep met no unsafe state or ``V(s0) = 1``.  Otherwise the next policy is
    greedy in Q (ties go to the earliest action in the ordering).  The first
    policy takes the first action of the ordering everywhere.
    """
    stats = stats or RunStats()
    stats.start()
    if s0 is None:
        s0 = system.initial
    order = (ordering or OrderingSpec.app()).bind(system)
    vt = ValueTable(system, stats)
    value = vt.value
    policy = {}
    initial_pass = True

    while True:
        stats.outer_iters += 1
        saw_unsafe = _mark_unsafe(system, s0, vt, policy, order if initial_pass else None)
        initial_pass = False
        if not saw_unsafe or value(s0) == 1:
            break
        policy = _greedy(system, s0, vt, order)

    safe = value(s0) == 0
    stats.n_materialized = system.num_states
    stats.stop()
    cert = _restrict(system, policy, s0) if safe else None
    return Verdict("npi", safe, cert, stats, vt)


def _mark_unsafe(system, s0, vt, policy, first_choice):
    """Post-order backup over the policy graph from ``s0``; True if it met V = 1.

    States already at V = 1 are leaves of the sweep. ``first_choice`` fills
    in the policy where it is undefined (initial pass only).
    """
    stats = vt.stats
    value = vt.value
    saw = False
    if value(s0):
        return True
    visited = {s0}
    stats.expand()
    if first_choice is not None and s0 not in policy:
        policy[s0] = first_choice(s0)[0]
    stack = [(s0, iter(system.actions(s0)[policy[s0]].effects))]
    while stack:
        s, children = stack[-1]
        for t in children:
            if t in visited:
                continue
            visited.add(t)
            if value(t):
                saw = True
                continue
            stats.expand()
            if first_choice is not None and t not in policy:
                policy[t] = first_choice(t)[0]
            stack.append((t, iter(system.actions(t)[policy[t]].effects)))
            break
        else:
            stack.pop()
            # V(s) <- min over actions of Q(s, a); stop at the first Q = 0
            if all(q_value(vt, system, s, a) for a in range(len(system.actions(s)))):
                vt.mark_unsafe(s)
                saw = True
    return saw


def _greedy(system, s0, vt, order):
    stats = vt.stats
    value = vt.value
    policy = {}
    stack = [s0]
    while stack:
        s = stack.pop()
        if s in policy or value(s):
            continue
        stats.expand()
        acts = order(s)
        best = next((a for a in acts if not q_value(vt, system, s, a)), acts[0])
        policy[s] = best
        stack.extend(t for t in system.actions(s)[best].effects if t not in policy)
    return policy


def _restrict(system, policy, s0):
    out = {}
    stack = [s0]
    while stack:
        s = stack.pop()
        if s in out or s not in policy:
            continue
        out[s] = policy[s]
        stack.extend(t for t in system.actions(s)[policy[s]].effects if t not in out)
    return out


def ipi(system, s0=None, ordering=None, stats=None, outer_loop=True):
    """Improved policy iteration: build and check the candidate policy in one descent.

    Each pass walks from ``s0`` once; every newly reached state takes the
    first action in the ordering that is not yet known to be unsafe and
    descends into its effects.  Meeting a state with ``V = 1`` abandons the
    action on the spot (its Q is set to 1 for good) and the next action is
    tried; a state that runs out of actions gets ``V = 1``.  States already
    reached in this pass count as fine.  Passes repeat until one meets no
    unsafe state (safe) or ``V(s0) = 1`` (unsafe).

    ``outer_loop=False`` stops after a single pass; that variant is unsound
    and exists only to show why the loop is needed.
    """
    stats = stats or RunStats()
    stats.start()
    if s0 is None:
        s0 = system.initial
    order = (ordering or OrderingSpec.app()).bind(system)
    vt = ValueTable(system, stats)
    value, qmark = vt.value, vt.q
    actions = system.actions

    while True:
        stats.outer_iters += 1
        policy = {}
        saw_unsafe = False
        seen = set()
        # frame: [state, ordered actions, position in them, next effect index]
        stack = []
        result = None

        def enter(t):
            nonlocal saw_unsafe
            if value(t):
                saw_unsafe = True
                return False
            if t in seen:
                return True
            seen.add(t)
            stats.expand()
            frame = [t, order(t), -1, 0]
            stack.append(frame)
            return _next_action(frame)

        def _next_action(frame):
            t, acts, i = frame[0], frame[1], frame[2] + 1
            while i < len(acts) and (t, acts[i]) in qmark:
                i += 1
            if i == len(acts):
                stack.pop()
                vt.mark_unsafe(t)
                return False
            frame[2], frame[3] = i, 0
            policy[t] = acts[i]
            stats.q_evals += 1
            return None

        result = enter(s0)
        while stack:
            frame = stack[-1]
            s = frame[0]
            if result is False:
                qmark[(s, frame[1][frame[2]])] = 1
                result = _next_action(frame)
                continue
            result = None
            effects = actions(s)[frame[1][frame[2]]].effects
            while frame[3] < len(effects):
                r = enter(effects[frame[3]])
                if r is None:
                    break  # descended
                if r is False:
                    result = False
                    break
                frame[3] += 1
            else:
                stack.pop()
                result = True

        if value(s0) or not saw_unsafe or not outer_loop:
            break

    safe = value(s0) == 0
    stats.n_materialized = system.num_states
    stats.stop()
    cert = _restrict(system, policy, s0) if safe else None
    return Verdict("ipi", safe, cert, stats, vt)
