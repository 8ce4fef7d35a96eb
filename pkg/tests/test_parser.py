import json

import pytest

from fondsafe.algorithms import OrderingSpec
from fondsafe.errors import ModelSyntaxError, UnknownAction, UnknownState, ValidationError
from fondsafe.expand import expand_reachable
from fondsafe.generators import gen_flappy
from fondsafe.model import TransitionSystem
from fondsafe.parser import FactoredModel, parse_ordering, parse_task, parse_valuation, serialize


def test_counterexample_is_explicit(counterexample):
    assert isinstance(counterexample, TransitionSystem)
    assert counterexample.num_states == 4
    assert counterexample.num_actions == 4
    assert {counterexample.describe(s) for s in counterexample.fail} == {"x"}


DEGENERATE = """{
 "kind": "factored",
 "variables": [{"name": "x", "min": 0, "max": 0, "init": 0}],
 "actions": [{"name": "loop", "guard": "true", "effects": [[{"var": "x", "expr": "x"}]]}],
 "fail": "x > 0"
}"""


def test_degenerate_factored_model_parses():
    fm = parse_task(DEGENERATE.encode())
    assert isinstance(fm, FactoredModel)
    ts = expand_reachable(fm)
    assert ts.num_states == 1 and not ts.fail
    with pytest.raises(ValidationError):
        expand_reachable(fm, require_fail=True)


def test_json_syntax_error_position():
    with pytest.raises(ModelSyntaxError) as info:
        parse_task(b'{\n "kind": "explicit",\n "states": [}')
    assert info.value.line == 3


def test_expression_error_points_into_file():
    bad = DEGENERATE.replace('"x > 0"', '"x >> 0"')
    with pytest.raises(ModelSyntaxError) as info:
        parse_task(bad)
    line = bad.splitlines()[info.value.line - 1]
    assert info.value.line == 5
    assert line[info.value.col - 1] == ">"


@pytest.mark.parametrize("doc", [
    {"kind": "explicit", "states": ["a", "x"], "initial": "a", "fail": [], "actions": [
        {"from": "a", "name": "go", "to": ["a"]}]},
    {"kind": "explicit", "states": ["a", "x"], "initial": "a", "fail": ["x"], "actions": [
        {"from": "a", "name": "go", "to": []}]},
    {"kind": "explicit", "states": ["a", "x"], "initial": "a", "fail": ["x"], "actions": [
        {"from": "a", "name": "go", "to": ["nowhere"]}]},
    {"kind": "factored", "variables": [{"name": "x", "min": 0, "max": 1, "init": 2}],
     "actions": [], "fail": "x > 0"},
    {"kind": "factored", "variables": [{"name": "x", "min": 0, "max": 1, "init": 0}],
     "actions": [{"name": "go", "guard": "y > 0", "effects": [[]]}], "fail": "x > 0"},
    {"kind": "factored", "variables": [{"name": "x", "min": 0, "max": 1, "init": 0}],
     "actions": [{"name": "go", "effects": []}], "fail": "x > 0"},
    {"kind": "mdp"},
])
def test_validation_errors(doc):
    with pytest.raises(ValidationError):
        parse_task(json.dumps(doc))


def test_round_trip_explicit(counterexample):
    again = parse_task(serialize(counterexample))
    assert again == counterexample
    assert serialize(again) == serialize(counterexample)


def test_round_trip_factored():
    fm = gen_flappy(4, 3, [(2, 0)])
    assert parse_task(serialize(fm)) == fm


def _order(ordering, ts, s):
    return [ts.actions(s)[i].name for i in ordering.bind(ts)(s)]


def test_empty_ordering_is_model_order(counterexample):
    ordering = parse_ordering(b"{}", counterexample)
    for s in range(counterexample.num_states):
        assert ordering.bind(counterexample)(s) == OrderingSpec.app().bind(counterexample)(s)


def test_preference_moves_action_first(counterexample):
    ordering = parse_ordering(b'{"s0": "a0\'"}', counterexample)
    assert _order(ordering, counterexample, counterexample.lookup("s0")) == ["a0'", "a0"]


def test_preference_errors(counterexample):
    with pytest.raises(UnknownAction):
        parse_ordering(b'{"s1": "a2"}', counterexample)
    with pytest.raises(UnknownState):
        parse_ordering(b'{"s9": "a2"}', counterexample)


def test_preference_on_factored_model():
    fm = gen_flappy(3, 3)
    ordering = parse_ordering(b'{"x=0,y=1": "down"}', fm)
    assert ordering.preferences == {(0, 1): "down"}
    with pytest.raises(UnknownState):
        parse_ordering(b'{"x=0": "down"}', fm)
    with pytest.raises(UnknownAction):
        parse_ordering(b'{"x=0,y=1": "left"}', fm)


def test_parse_valuation():
    fm = gen_flappy(3, 3)
    assert parse_valuation("y=2, x=1", fm) == (1, 2)
    for bad in ("x=1", "x=1,y=9", "x=1,y=1,z=0", "x:1,y=1"):
        with pytest.raises(UnknownState):
            parse_valuation(bad, fm)
