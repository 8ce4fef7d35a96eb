"""Ground truth for tests: the safe set as a greatest fixpoint, and brute force.

Kept deliberately naive and independent of the deciders in
:mod:`fondsafe.algorithms`.
"""
from __future__ import annotations

import itertools

from .model import check_policy_safe


def oracle_safe_set(ts):
    """Largest set Z of non-fail states where every state has an action with all effects in Z.

    Round-based: start from all non-fail states and drop states without
    such an action until nothing changes.
    """
    z = {s for s in range(ts.num_states) if not ts.is_fail(s)}
    changed = True
    while changed:
        changed = False
        for s in sorted(z):
            if not any(all(t in z for t in a.effects) for a in ts.actions(s)):
                z.discard(s)
                changed = True
    return z


def oracle_safe(ts, s0=None):
    if s0 is None:
        s0 = ts.initial
    return s0 in oracle_safe_set(ts)


def oracle_unsafe_set(ts):
    return set(range(ts.num_states)) - oracle_safe_set(ts)


def count_policies(ts):
    total = 1
    for s in range(ts.num_states):
        total *= max(1, len(ts.actions(s)))
    return total


def enumerate_safe_policy(ts, s0=None, limit=10 ** 6):
    """Search every memoryless deterministic policy for one that is safe from ``s0``.

    Returns the first safe policy found, or ``None``.  Raises ``ValueError``
    when there are more than ``limit`` policies.
    """
    if s0 is None:
        s0 = ts.initial
    if count_policies(ts) > limit:
        raise ValueError("too many policies to enumerate")
    choosable = [s for s in range(ts.num_states) if ts.actions(s)]
    for combo in itertools.product(*(range(len(ts.actions(s))) for s in choosable)):
        policy = dict(zip(choosable, combo))
        if check_policy_safe(ts, policy, s0)[0]:
            return policy
    return None
