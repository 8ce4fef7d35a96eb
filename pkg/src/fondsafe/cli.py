"""Command-line front end.

Exit codes: 0 when a decision was made (either verdict), 2 for usage
errors, 3 for model, file or state-limit errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import generators
from .algorithms import ALGORITHMS, OrderingSpec, decide
from .errors import BudgetExhausted, FondSafeError
from .expand import DEFAULT_STATE_LIMIT, expand_reachable
from .model import TransitionSystem
from .oracle import oracle_safe_set
from .parser import load_task, parse_ordering, serialize

USAGE_ERROR = 2
MODEL_ERROR = 3

STATS_FIELDS = ("algo", "verdict", "expansions", "q_evals", "v_flips", "pops", "outer_iters",
                "path_enumerations", "wall_ns", "n_materialized")
CSV_HEADER = ("suite", "param", "algo", "order", "verdict", "expansions", "q_evals", "v_flips",
              "pops", "outer_iters", "path_enumerations", "wall_ns", "timeout")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _default_limit():
    raw = os.environ.get("FONDSAFE_STATE_LIMIT")
    return int(raw) if raw else DEFAULT_STATE_LIMIT


def _ordering(args, task):
    if args.order == "learn":
        if not args.policy:
            raise _Usage("--order learn needs --policy FILE")
        with open(args.policy, "rb") as fh:
            return parse_ordering(fh.read(), task)
    if args.order == "rand":
        return OrderingSpec.rand(args.seed)
    return OrderingSpec.app()


class _Usage(Exception):
    pass


def cmd_check(args):
    task = load_task(args.model)
    ordering = _ordering(args, task)
    verdict = decide(task, args.algo, ordering=ordering, state_limit=args.state_limit)
    print(verdict.safety)
    if args.stats:
        record = {"algo": args.algo, "verdict": verdict.safety}
        record.update({k: getattr(verdict.stats, k) for k in STATS_FIELDS[2:]})
        with open(args.stats, "w", encoding="utf-8") as fh:
            json.dump(record, fh, indent=1)
            fh.write("\n")
    return 0


def parse_range(text):
    """``"4..10"`` (inclusive) or ``"4,6,8"``, or a mix like ``"2,4..6"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError("empty parameter range")
    return out


def build_instance(suite, param, height=5, packages=1, two_way=False, walls=False):
    if suite == "layered":
        return generators.gen_layered(param)
    if suite == "flappy":
        obstacles = generators.flappy_walls(param, height) if walls else ()
        return generators.gen_flappy(param, height, obstacles)
    if suite == "line":
        return generators.gen_line(param, packages, two_way)
    raise ValueError(f"unknown suite {suite!r}")


def _bench_row(job):
    suite, param, algo, order, seed, timeout_ms, state_limit, family = job
    task = build_instance(suite, param, **family)
    ordering = OrderingSpec.rand(seed) if order == "rand" else OrderingSpec.app()
    budget = timeout_ms * 1_000_000 if timeout_ms else None
    start = time.perf_counter_ns()
    row = {"suite": suite, "param": param, "algo": algo, "order": "" if algo == "prop-u" else order}
    try:
        v = decide(task, algo, ordering=ordering, state_limit=state_limit, budget_ns=budget)
    except BudgetExhausted:
        elapsed = time.perf_counter_ns() - start
        row.update({k: "" for k in CSV_HEADER if k not in row})
        row.update(wall_ns=elapsed, timeout=1)
        return row
    st = v.stats
    # with a budget, a run that finished just past it still counts as a timeout
    timed_out = budget is not None and st.wall_ns > budget
    row.update(verdict="" if timed_out else v.safety, expansions=st.expansions, q_evals=st.q_evals,
               v_flips=st.v_flips, pops=st.pops, outer_iters=st.outer_iters,
               path_enumerations=st.path_enumerations, wall_ns=st.wall_ns, timeout=int(timed_out))
    return row


def cmd_bench(args):
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    if not algos:
        raise _Usage("--algos must name at least one algorithm")
    for a in algos:
        if a not in ALGORITHMS:
            raise _Usage(f"unknown algorithm {a!r}")
    try:
        params = parse_range(args.params)
    except ValueError as err:
        raise _Usage(f"bad --params: {err}") from None
    family = {"height": args.height, "packages": args.packages, "two_way": args.two_way,
              "walls": args.walls}
    jobs = [(args.suite, p, a, args.order, args.seed, args.timeout_ms, args.state_limit, family)
            for p in params for a in algos]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_bench_row, jobs))
    else:
        rows = [_bench_row(j) for j in jobs]
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        writer.writeheader()
        writer.writerows(rows)
    return 0


def _parse_cells(text):
    cells = []
    for part in filter(None, (p.strip() for p in text.split(";"))):
        x, y = part.split(",")
        cells.append((int(x), int(y)))
    return cells


def cmd_gen(args):
    if args.family == "layered":
        model = generators.gen_layered(args.d, args.fail_sinks)
    elif args.family == "chain":
        model = generators.gen_chain(args.n)
    elif args.family == "flappy":
        obstacles = _parse_cells(args.obstacles) if args.obstacles else []
        if args.walls:
            obstacles += generators.flappy_walls(args.width, args.height)
        model = generators.gen_flappy(args.width, args.height, obstacles)
    else:
        model = generators.gen_line(args.length, args.packages, args.two_way, args.deadline)
    text = serialize(model)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args):
    task = load_task(args.model)
    ts = task if isinstance(task, TransitionSystem) else expand_reachable(task, args.state_limit)
    safe = oracle_safe_set(ts)
    print("SAFE" if ts.initial in safe else "UNSAFE")
    if args.list_unsafe:
        for s in range(ts.num_states):
            if s not in safe:
                print(ts.describe(s))
    return 0


def build_parser():
    p = _Parser(prog="fondsafe", description="Decide safety of states in state-avoiding FOND tasks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="decide whether the initial state is safe")
    c.add_argument("--model", required=True)
    c.add_argument("--algo", required=True, choices=ALGORITHMS)
    c.add_argument("--order", default="app", choices=("app", "learn", "rand"))
    c.add_argument("--policy", help="action-preference file for --order learn")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--state-limit", type=int, default=_default_limit())
    c.add_argument("--stats", help="write run counters as JSON here")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", help="sweep a benchmark family and write CSV")
    b.add_argument("--suite", required=True, choices=("layered", "flappy", "line"))
    b.add_argument("--params", required=True, help="e.g. 4..10 or 4,8,16")
    b.add_argument("--algos", required=True, help="comma-separated algorithms")
    b.add_argument("--order", default="app", choices=("app", "rand"))
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--csv", required=True)
    b.add_argument("--timeout-ms", type=int, default=0)
    b.add_argument("--state-limit", type=int, default=_default_limit())
    b.add_argument("--height", type=int, default=5, help="flappy grid height")
    b.add_argument("--walls", action="store_true", help="flappy with gap walls")
    b.add_argument("--packages", type=int, default=1, help="line packages")
    b.add_argument("--two-way", action="store_true")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("gen", help="write a benchmark instance")
    gs = g.add_subparsers(dest="family", required=True, parser_class=_Parser)
    gl = gs.add_parser("layered")
    gl.add_argument("--d", type=int, required=True)
    gl.add_argument("--fail-sinks", type=int, default=1)
    gc = gs.add_parser("chain")
    gc.add_argument("--n", type=int, required=True)
    gf = gs.add_parser("flappy")
    gf.add_argument("--width", type=int, required=True)
    gf.add_argument("--height", type=int, required=True)
    gf.add_argument("--obstacles", help='cells as "x,y;x,y"')
    gf.add_argument("--walls", action="store_true")
    gn = gs.add_parser("line")
    gn.add_argument("--length", type=int, required=True)
    gn.add_argument("--packages", type=int, default=1)
    gn.add_argument("--two-way", action="store_true")
    gn.add_argument("--deadline", type=int)
    for sp in (gl, gc, gf, gn):
        sp.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="fixpoint ground truth for a model")
    o.add_argument("--model", required=True)
    o.add_argument("--list-unsafe", action="store_true")
    o.add_argument("--state-limit", type=int, default=_default_limit())
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as err:
        print(f"fondsafe: error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except (FondSafeError, OSError, ValueError) as err:
        print(f"fondsafe: {err}", file=sys.stderr)
        return MODEL_ERROR


if __name__ == "__main__":
    sys.exit(main())
