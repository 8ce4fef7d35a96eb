"""
Growing the unsafe region backwards from the fail states
========================================================

Prop-U pops proved-unsafe states from a worklist and marks the actions
leading into them.  A state whose every action is marked joins the
worklist.  The work is proportional to the unsafe region plus the
actions touching it, never to the safe part of the task.
"""
from fondsafe import oracle_unsafe_set, prop_u
from fondsafe.expand import expand_reachable
from fondsafe.generators import gen_chain, gen_layered, gen_line

# %%
# Best case: a safe task where the fail sinks have no predecessors.
for k in (1, 10, 100):
    v = prop_u(gen_layered(10, fail_sinks=k))
    print(f"layered + {k:3d} sinks: {v.safety}, pops={v.stats.pops}, flips={v.stats.v_flips}")

# %%
# Worst case: a chain that ends in failure.  Everything is unsafe and
# every state is popped once.
for n in (10, 100, 1000):
    ts = gen_chain(n)
    v = prop_u(ts)
    print(f"chain of {n:4d}: {v.safety}, pops={v.stats.pops}, inner iterations={v.stats.q_evals}, "
          f"b*m={ts.branching * ts.num_actions}")

# %%
# Run to exhaustion, the flipped states are exactly the unsafe region.
# A two-way truck with a move deadline: late states cannot finish in time.
ts = expand_reachable(gen_line(4, 2, two_way=True, deadline=8))
v = prop_u(ts, early_stop=False)
region = v.values.unsafe_states()
print(f"\ntwo-way line, deadline 8: {len(region)} of {ts.num_states} states unsafe; "
      f"matches oracle: {region == oracle_unsafe_set(ts)}")
print(f"predecessor index: {v.stats.index_edges} edges built in {v.stats.index_ns / 1e3:.0f} us "
      f"(reported apart from the {v.stats.q_evals} loop iterations)")
