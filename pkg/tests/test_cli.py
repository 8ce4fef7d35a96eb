import csv
import json
import subprocess
import sys

import pytest

from fondsafe.cli import CSV_HEADER, STATS_FIELDS, main, parse_range
from fondsafe.parser import load_task
from fondsafe.expand import expand_reachable
from fondsafe.model import TransitionSystem
from fondsafe.oracle import oracle_safe


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_counterexample(capsys, fixtures_dir):
    code, out, _ = run(capsys, "check", "--model", str(fixtures_dir / "counterexample.json"), "--algo", "ipi")
    assert code == 0 and out.splitlines()[0] == "UNSAFE"


def test_check_stats_sidecar(capsys, tmp_path):
    model, stats = tmp_path / "l6.json", tmp_path / "s.json"
    assert run(capsys, "gen", "layered", "--d", "6", "-o", str(model))[0] == 0
    code, out, _ = run(capsys, "check", "--model", str(model), "--algo", "tarjansafe", "--stats", str(stats))
    assert code == 0 and out == "SAFE\n"
    record = json.loads(stats.read_text())
    assert tuple(record) == STATS_FIELDS
    assert record["path_enumerations"] == 64 and record["verdict"] == "SAFE"


def test_state_limit_exit_code(capsys, tmp_path):
    model = tmp_path / "f.json"
    run(capsys, "gen", "flappy", "--width", "30", "--height", "30", "-o", str(model))
    code, _, err = run(capsys, "check", "--model", str(model), "--algo", "prop-u", "--state-limit", "50")
    assert code == 3 and "limit" in err


def test_state_limit_from_environment(capsys, tmp_path, monkeypatch):
    model = tmp_path / "f.json"
    run(capsys, "gen", "flappy", "--width", "30", "--height", "30", "-o", str(model))
    monkeypatch.setenv("FONDSAFE_STATE_LIMIT", "50")
    assert run(capsys, "check", "--model", str(model), "--algo", "prop-u")[0] == 3
    monkeypatch.setenv("FONDSAFE_STATE_LIMIT", "5000")
    assert run(capsys, "check", "--model", str(model), "--algo", "prop-u")[0] == 0


@pytest.mark.parametrize("argv", [
    ["check", "--algo", "ipi"],
    ["check", "--model", "m.json", "--algo", "vi"],
    ["bench", "--suite", "layered", "--params", "4", "--algos", "", "--csv", "o.csv"],
    ["bench", "--suite", "layered", "--params", "4", "--algos", "ipi,nope", "--csv", "o.csv"],
    ["bench", "--suite", "layered", "--params", "x..y", "--algos", "ipi", "--csv", "o.csv"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 2


def test_learn_needs_policy(capsys, fixtures_dir):
    code, _, err = run(capsys, "check", "--model", str(fixtures_dir / "counterexample.json"),
                       "--algo", "ipi", "--order", "learn")
    assert code == 2 and "--policy" in err


def test_learn_with_policy(capsys, fixtures_dir):
    code, out, _ = run(capsys, "check", "--model", str(fixtures_dir / "counterexample.json"), "--algo", "ipi",
                       "--order", "learn", "--policy", str(fixtures_dir / "learn_counterexample.json"))
    assert code == 0 and out == "UNSAFE\n"


def test_model_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "explicit", "states": [')
    assert run(capsys, "check", "--model", str(bad), "--algo", "ipi")[0] == 3
    assert run(capsys, "check", "--model", str(tmp_path / "missing.json"), "--algo", "ipi")[0] == 3
    assert run(capsys, "oracle", "--model", str(bad))[0] == 3


def _read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [dict(zip(header, row)) for row in reader]


def test_bench_layered(capsys, tmp_path):
    out = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--suite", "layered", "--params", "4..10",
                     "--algos", "tarjansafe,ipi", "--csv", str(out))
    assert code == 0
    header, rows = _read_csv(out)
    assert tuple(header) == CSV_HEADER
    assert len(rows) == 14
    assert [(int(r["param"]), r["algo"]) for r in rows] == [(d, a) for d in range(4, 11) for a in ("tarjansafe", "ipi")]
    paths = [int(r["path_enumerations"]) for r in rows if r["algo"] == "tarjansafe"]
    assert all(b == 2 * a for a, b in zip(paths, paths[1:]))
    assert all(r["timeout"] == "0" and r["verdict"] == "SAFE" for r in rows)


def test_bench_flappy_matches_oracle(capsys, tmp_path):
    out = tmp_path / "b.csv"
    run(capsys, "bench", "--suite", "flappy", "--params", "3,5,8", "--algos", "ipi", "--csv", str(out))
    _, rows = _read_csv(out)
    from fondsafe.cli import build_instance
    for r in rows:
        want = oracle_safe(expand_reachable(build_instance("flappy", int(r["param"]))))
        assert r["verdict"] == ("SAFE" if want else "UNSAFE") == "SAFE"


def test_bench_timeout_row(capsys, tmp_path):
    out = tmp_path / "b.csv"
    run(capsys, "bench", "--suite", "flappy", "--walls", "--params", "40", "--algos", "tarjansafe,ipi",
        "--timeout-ms", "50", "--csv", str(out))
    _, rows = _read_csv(out)
    slow, fast = rows
    assert slow["timeout"] == "1" and slow["verdict"] == "" and slow["expansions"] == ""
    assert fast["timeout"] == "0" and fast["verdict"] == "SAFE"


def test_bench_parallel_rows_match(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["bench", "--suite", "line", "--params", "3..5", "--algos", "prop-u,npi,ipi"]
    run(capsys, *args, "--csv", str(a))
    run(capsys, *args, "--csv", str(b), "--jobs", "2")
    strip = lambda rows: [{k: v for k, v in r.items() if k != "wall_ns"} for r in rows]  # noqa: E731
    assert strip(_read_csv(a)[1]) == strip(_read_csv(b)[1])
    assert all(r["order"] == "" for r in _read_csv(a)[1] if r["algo"] == "prop-u")


def test_gen_then_oracle(capsys, tmp_path):
    m = tmp_path / "m.json"
    run(capsys, "gen", "layered", "--d", "5", "-o", str(m))
    assert run(capsys, "oracle", "--model", str(m))[1] == "SAFE\n"
    run(capsys, "gen", "flappy", "--width", "3", "--height", "1", "-o", str(m))
    assert run(capsys, "oracle", "--model", str(m))[1] == "SAFE\n"


def test_gen_to_stdout(capsys):
    code, out, _ = run(capsys, "gen", "line", "--length", "3", "--packages", "1", "--two-way")
    assert code == 0 and json.loads(out)["kind"] == "factored"


def test_oracle_lists_unsafe_in_id_order(capsys, fixtures_dir):
    code, out, _ = run(capsys, "oracle", "--model", str(fixtures_dir / "counterexample.json"), "--list-unsafe")
    assert code == 0 and out.splitlines() == ["UNSAFE", "s0", "s1", "s2", "x"]


def test_repeated_checks_identical(capsys, fixtures_dir, tmp_path):
    outputs = []
    for k in range(2):
        stats = tmp_path / f"s{k}.json"
        _, out, _ = run(capsys, "check", "--model", str(fixtures_dir / "flappy_walls.json"), "--algo", "npi",
                        "--order", "rand", "--seed", "3", "--stats", str(stats))
        record = json.loads(stats.read_text())
        record.pop("wall_ns")
        outputs.append((out, record))
    assert outputs[0] == outputs[1]


FIXTURE_MODELS = sorted(p.name for p in __import__("conftest").FIXTURES.glob("*.json")
                        if not p.name.startswith("learn_"))


@pytest.mark.parametrize("name", FIXTURE_MODELS)
def test_check_agrees_with_oracle_on_fixtures(capsys, fixtures_dir, name):
    path = str(fixtures_dir / name)
    task = load_task(path)
    ts = task if isinstance(task, TransitionSystem) else expand_reachable(task)
    want = "SAFE" if oracle_safe(ts) else "UNSAFE"
    assert run(capsys, "oracle", "--model", path)[1].splitlines()[0] == want
    for algo in ("tarjansafe", "prop-u", "npi", "ipi"):
        code, out, _ = run(capsys, "check", "--model", path, "--algo", algo)
        assert code == 0 and out.splitlines()[0] == want, algo


def test_parse_range():
    assert parse_range("4..6") == [4, 5, 6]
    assert parse_range("2, 4..5,9") == [2, 4, 5, 9]
    with pytest.raises(ValueError):
        parse_range("")


def test_console_script(fixtures_dir):
    proc = subprocess.run([sys.executable, "-m", "fondsafe.cli", "check", "--model",
                           str(fixtures_dir / "best_case_tree.json"), "--algo", "tarjansafe"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "SAFE\n"
