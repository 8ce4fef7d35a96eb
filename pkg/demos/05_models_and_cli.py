"""
Writing a factored model and checking it from the command line
==============================================================

Tasks are JSON.  A factored task declares bounded integer variables,
guarded commands whose effects list the non-deterministic alternatives,
and a fail predicate.  States are expanded lazily during search.
"""
import json
import pathlib
import subprocess
import sys
import tempfile

from fondsafe import decide, expand_reachable, parse_task
from fondsafe.parser import parse_ordering

# A robot on cells 0..4; cell 4 is a cliff.  "walk" may slip one cell
# further, "wait" stays put but is only allowed on even cells.
doc = {
    "kind": "factored",
    "variables": [{"name": "pos", "min": 0, "max": 4, "init": 0}],
    "actions": [
        {"name": "walk", "guard": "pos < 4",
         "effects": [[{"var": "pos", "expr": "pos + 1"}], [{"var": "pos", "expr": "min(pos + 2, 4)"}]]},
        {"name": "wait", "guard": "pos == 0 or pos == 2", "effects": [[]]},
    ],
    "fail": "pos == 4",
}
model = parse_task(json.dumps(doc))
ts = expand_reachable(model)
print("reachable states:", [ts.describe(s) for s in range(ts.num_states)])

for algo in ("tarjansafe", "prop-u", "npi", "ipi"):
    v = decide(model, algo, state_limit=100)
    print(f"{algo:>10}: {v.safety}  expansions={v.stats.expansions}")

# %%
# Starting at pos=1 instead, every choice can slip onto odd cells and then the cliff.
doc["variables"][0]["init"] = 1
print("from pos=1:", decide(parse_task(json.dumps(doc)), "ipi").safety)
doc["variables"][0]["init"] = 0

# %%
# Preferred actions can be read from a file; the verdict never changes.
prefs = parse_ordering(b'{"pos=0": "walk"}', model)
print("\nwith walk preferred at pos=0:", decide(model, "ipi", ordering=prefs).safety)

# %%
# The same through the command line.
with tempfile.TemporaryDirectory() as tmp:
    path = pathlib.Path(tmp) / "robot.json"
    path.write_text(json.dumps(doc))
    stats = pathlib.Path(tmp) / "stats.json"
    cmd = [sys.executable, "-m", "fondsafe.cli", "check", "--model", str(path), "--algo", "ipi",
           "--stats", str(stats)]
    out = subprocess.run(cmd, capture_output=True, text=True)
    print("\n$ fondsafe check --model robot.json --algo ipi --stats stats.json")
    print(out.stdout.strip(), "(exit", out.returncode, ")")
    print(stats.read_text().strip())
