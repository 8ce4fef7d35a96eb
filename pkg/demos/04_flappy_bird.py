"""
Flappy bird: where depth-first search struggles
===============================================

The bird moves up or down every step and may drift one column right; at
the right edge it wraps to column 0.  Walls with two-row gaps make it keep
re-aligning.  Both solvers find a safe policy, but the depth-first search
revisits the open strongly connected component on every path.
"""
from fondsafe import OrderingSpec, decide
from fondsafe.errors import BudgetExhausted
from fondsafe.generators import flappy_walls, gen_flappy


def expansions(fm, algo, ordering=None, budget_s=2):
    try:
        return decide(fm, algo, ordering=ordering, budget_ns=int(budget_s * 1e9)).stats.expansions
    except BudgetExhausted:
        return "timeout"


# %%
# Without obstacles and in model order the bird climbs to the ceiling and
# loops there right away: the best case for both algorithms.
print("obstacle-free, model order")
for w in (4, 8, 16, 32):
    fm = gen_flappy(w, 5)
    print(f"  width {w:2d}: tarjansafe {expansions(fm, 'tarjansafe'):>6}  ipi {expansions(fm, 'ipi'):>4}")

# %%
# With gap walls the contrast appears.
print("gap walls, model order")
for w in (4, 6, 8, 10, 12):
    fm = gen_flappy(w, 5, flappy_walls(w, 5))
    print(f"  width {w:2d}: tarjansafe {expansions(fm, 'tarjansafe'):>7}  ipi {expansions(fm, 'ipi'):>4}")

# %%
# A shuffled action order already breaks the easy obstacle-free case.
print("obstacle-free, random order (seed 0)")
rand = OrderingSpec.rand(0)
for w in (4, 8, 12):
    fm = gen_flappy(w, 5)
    print(f"  width {w:2d}: tarjansafe {expansions(fm, 'tarjansafe', rand):>7}  "
          f"ipi {expansions(fm, 'ipi', rand):>4}")
