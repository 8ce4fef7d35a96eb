"""Invariants of the deciders, checked on generated tasks."""
import random

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from fondsafe.algorithms import OrderingSpec, decide, ipi, npi, prop_u, tarjansafe
from fondsafe.algorithms import common
from fondsafe.model import check_policy_safe
from fondsafe.oracle import oracle_safe, oracle_unsafe_set
from randtasks import random_task

seeds = st.integers(0, 2 ** 32)


class _MonotoneList(list):
    def __setitem__(self, i, value):
        if self[i] == 1 and value == 0:
            raise AssertionError(f"V({i}) went from 1 to 0")
        super().__setitem__(i, value)


@pytest.fixture
def monotone_values(monkeypatch):
    original = common.ValueTable.__init__

    def init(self, system, stats):
        original(self, system, stats)
        self.v = _MonotoneList()
    monkeypatch.setattr(common.ValueTable, "__init__", init)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_all_deciders_match_oracle(seed):
    ts = random_task(seed)
    want = oracle_safe(ts)
    for algo in ("tarjansafe", "prop-u", "npi", "ipi"):
        v = decide(ts, algo)
        assert v.safe == want, algo
        if v.safe:
            assert check_policy_safe(ts, v.certificate, ts.initial)[0], algo


def test_monotone_guard_bites():
    vals = _MonotoneList([0, 1])
    vals[0] = 1
    with pytest.raises(AssertionError):
        vals[1] = 0


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(seeds)
def test_values_monotone_and_sound(monotone_values, seed):
    ts = random_task(seed)
    unsafe = oracle_unsafe_set(ts)
    for run in (npi, ipi, prop_u):
        v = run(ts)
        assert v.values.unsafe_states() <= unsafe
        assert v.stats.v_flips <= ts.num_states


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_prop_u_exhaustive_is_the_unsafe_region(seed):
    ts = random_task(seed)
    v = prop_u(ts, early_stop=False)
    unsafe = oracle_unsafe_set(ts)
    assert v.values.unsafe_states() == unsafe
    assert v.stats.pops == len(unsafe)
    assert v.stats.q_evals <= ts.branching * ts.num_actions


@settings(max_examples=200, deadline=None)
@given(seeds, st.integers(0, 1000))
def test_verdict_independent_of_ordering(seed, oseed):
    ts = random_task(seed)
    rng = random.Random(oseed)
    prefs = {ts.key(s): rng.choice(ts.actions(s)).name for s in range(ts.num_states)
             if ts.actions(s) and rng.random() < 0.5}
    orders = [OrderingSpec.app(), OrderingSpec.rand(oseed), OrderingSpec.learn(prefs)]
    want = oracle_safe(ts)
    for run in (tarjansafe, npi, ipi):
        for order in orders:
            v = run(ts, ordering=order)
            assert v.safe == want
            if v.safe:
                assert check_policy_safe(ts, v.certificate, ts.initial)[0]


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_policy_iteration_progress(seed):
    ts = random_task(seed)
    for run in (npi, ipi):
        st_ = run(ts).stats
        assert st_.outer_iters <= st_.v_flips + 2
        assert st_.outer_iters <= ts.num_states


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_counters_start_clean(seed):
    ts = random_task(seed)
    a, b = tarjansafe(ts).stats.as_dict(), tarjansafe(ts).stats.as_dict()
    a.pop("wall_ns"), b.pop("wall_ns")
    assert a == b
