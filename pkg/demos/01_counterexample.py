"""
Why policy iteration needs its outer loop
=========================================

Four states: from s0 the agent picks a0 (to s1) or a0' (to s2); s1's only
action may fall into the fail state x or move to s2; s2 goes back to s1.
Every state is unsafe, but a single construct-and-check pass over the
policy graph does not notice.
"""
import pathlib

from fondsafe import check_policy_safe, ipi, load_task, oracle_unsafe_set

here = pathlib.Path(__file__).resolve().parent
ts = load_task(here.parent / "tests" / "fixtures" / "counterexample.json")
names = [ts.describe(s) for s in range(ts.num_states)]
print("states:", names, " fail:", sorted(names[s] for s in ts.fail))
print("unsafe according to the fixpoint oracle:", sorted(names[s] for s in oracle_unsafe_set(ts)))

# %%
# One pass only.  The descent tries a0 first, goes s1 -> s2 -> back to s1
# (already on the way, so "fine"), then reaches x, which rules out a1 and
# makes s1 unsafe.  s2 was already accepted, so nothing re-checks it, and
# the pass settles on a0' at s0.
single = ipi(ts, outer_loop=False)
policy = {names[s]: ts.actions(s)[a].name for s, a in single.certificate.items()}
print("\nsingle pass says", single.safety, "with policy", policy)
ok, witness = check_policy_safe(ts, single.certificate, ts.initial)
print("that policy is safe?", ok, "- counterexample path:", [names[s] for s in witness.path])

# %%
# The real algorithm repeats the pass while it keeps discovering unsafe states.
full = ipi(ts)
print("\nwith the outer loop:", full.safety, "after", full.stats.outer_iters, "passes,",
      full.stats.v_flips, "states marked unsafe")
