"""Reading and writing task files and action-preference files.

Two JSON task formats are understood, told apart by ``"kind"``::

    {"kind": "explicit", "states": [...], "initial": name, "fail": [...],
     "actions": [{"from": name, "name": label, "to": [names...]}, ...]}

    {"kind": "factored",
     "variables": [{"name", "min", "max", "init"}, ...],
     "actions": [{"name", "guard": expr, "effects": [[{"var", "expr"}, ...], ...]}, ...],
     "fail": expr}

Action order in the file is the model order ``A(s)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Tuple

from . import expr as E
from .errors import ModelSyntaxError, UnknownAction, UnknownState, ValidationError
from .model import TransitionSystem


@dataclass(frozen=True)
class Variable:
    name: str
    min: int
    max: int
    init: int


@dataclass(frozen=True)
class Assignment:
    var: str
    expr: E.Expr


@dataclass(frozen=True)
class Command:
    name: str
    guard: E.Expr
    alternatives: Tuple[Tuple[Assignment, ...], ...]


@dataclass(frozen=True)
class FactoredModel:
    """Bounded-integer variables, guarded non-deterministic commands, fail predicate.

    Assignments inside one alternative are simultaneous.
    """

    variables: Tuple[Variable, ...]
    commands: Tuple[Command, ...]
    fail: E.Expr

    def __post_init__(self):
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate variable name")
        for v in self.variables:
            if not v.min <= v.init <= v.max:
                raise ValidationError(f"variable {v.name!r}: init {v.init} not in [{v.min}, {v.max}]")
        declared = set(names)
        if E.type_of(self.fail, declared) != "bool":
            raise ValidationError("fail predicate must be boolean")
        for c in self.commands:
            if E.type_of(c.guard, declared) != "bool":
                raise ValidationError(f"guard of {c.name!r} must be boolean")
            if not c.alternatives:
                raise ValidationError(f"command {c.name!r} has no effects")
            for alt in c.alternatives:
                seen = set()
                for asg in alt:
                    if asg.var not in declared:
                        raise ValidationError(f"command {c.name!r} assigns undeclared variable {asg.var!r}")
                    if asg.var in seen:
                        raise ValidationError(f"command {c.name!r} assigns {asg.var!r} twice in one effect")
                    seen.add(asg.var)
                    if E.type_of(asg.expr, declared) != "int":
                        raise ValidationError(f"command {c.name!r}: value for {asg.var!r} must be int")

    @property
    def var_names(self):
        return tuple(v.name for v in self.variables)

    @property
    def init(self):
        return tuple(v.init for v in self.variables)


def _syntax_from_json(err: json.JSONDecodeError):
    return ModelSyntaxError(err.lineno, err.colno, err.msg)


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ValidationError(f"{where}.{key}: expected integer")
    if kind is not int and not isinstance(val, kind):
        raise ValidationError(f"{where}.{key}: expected {kind.__name__}")
    return val


def _expr(text, source, where):
    try:
        return E.parse_expr(text)
    except ModelSyntaxError as err:
        # map the offset inside the string back to the file when the literal is findable
        lit = json.dumps(text)
        idx = source.find(lit)
        if idx >= 0 and "\n" not in text and "\\" not in lit:
            off = idx + 1 + err.col - 1
            line = source.count("\n", 0, off) + 1
            col = off - (source.rfind("\n", 0, off) + 1) + 1
            raise ModelSyntaxError(line, col, f"{where}: {err.message}") from None
        raise ModelSyntaxError(err.line, err.col, f"{where}: {err.message}") from None


def parse_task(data):
    """Parse task bytes/text into a :class:`TransitionSystem` or :class:`FactoredModel`."""
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise _syntax_from_json(err) from None
    if not isinstance(doc, dict):
        raise ValidationError("top level must be an object")
    kind = doc.get("kind")
    if kind == "explicit":
        return _parse_explicit(doc)
    if kind == "factored":
        return _parse_factored(doc, text)
    raise ValidationError(f"unknown kind {kind!r}; expected 'explicit' or 'factored'")


def _parse_explicit(doc):
    names = _require(doc, "states", list, "task")
    if not all(isinstance(n, str) for n in names):
        raise ValidationError("task.states: names must be strings")
    index = {}
    for i, n in enumerate(names):
        if n in index:
            raise ValidationError(f"duplicate state name {n!r}")
        index[n] = i

    def sid(name, where):
        if name not in index:
            raise ValidationError(f"{where}: dangling state name {name!r}")
        return index[name]

    initial = sid(_require(doc, "initial", str, "task"), "task.initial")
    fail_names = _require(doc, "fail", list, "task")
    if not fail_names:
        raise ValidationError("task.fail: an explicit task needs at least one fail state")
    fail = {sid(n, "task.fail") for n in fail_names}
    actions_of = [[] for _ in names]
    for k, a in enumerate(_require(doc, "actions", list, "task")):
        where = f"task.actions[{k}]"
        src = sid(_require(a, "from", str, where), where + ".from")
        label = _require(a, "name", str, where)
        to = _require(a, "to", list, where)
        if not to:
            raise ValidationError(f"{where}: empty effects list")
        actions_of[src].append((label, [sid(t, where + ".to") for t in to]))
    return TransitionSystem(names, actions_of, initial, fail)


def _parse_factored(doc, source):
    variables = []
    for k, v in enumerate(_require(doc, "variables", list, "task")):
        where = f"task.variables[{k}]"
        variables.append(Variable(_require(v, "name", str, where), _require(v, "min", int, where),
                                  _require(v, "max", int, where), _require(v, "init", int, where)))
    commands = []
    for k, c in enumerate(_require(doc, "actions", list, "task")):
        where = f"task.actions[{k}]"
        name = _require(c, "name", str, where)
        guard = _expr(c.get("guard", "true"), source, where + ".guard")
        alts = []
        effects = _require(c, "effects", list, where)
        if not effects:
            raise ValidationError(f"{where}: empty effects list")
        for j, alt in enumerate(effects):
            if not isinstance(alt, list):
                raise ValidationError(f"{where}.effects[{j}]: expected a list of assignments")
            asgs = []
            for i, asg in enumerate(alt):
                w = f"{where}.effects[{j}][{i}]"
                asgs.append(Assignment(_require(asg, "var", str, w),
                                       _expr(_require(asg, "expr", str, w), source, w + ".expr")))
            alts.append(tuple(asgs))
        commands.append(Command(name, guard, tuple(alts)))
    fail = _expr(_require(doc, "fail", str, "task"), source, "task.fail")
    return FactoredModel(tuple(variables), tuple(commands), fail)


def to_document(model):
    """The JSON-ready ``dict`` for a task."""
    if isinstance(model, FactoredModel):
        return {
            "kind": "factored",
            "variables": [{"name": v.name, "min": v.min, "max": v.max, "init": v.init}
                          for v in model.variables],
            "actions": [{"name": c.name, "guard": E.to_source(c.guard),
                         "effects": [[{"var": a.var, "expr": E.to_source(a.expr)} for a in alt]
                                     for alt in c.alternatives]}
                        for c in model.commands],
            "fail": E.to_source(model.fail),
        }
    names = [model.describe(s) for s in range(model.num_states)]
    return {
        "kind": "explicit",
        "states": names,
        "initial": names[model.initial],
        "fail": [names[s] for s in sorted(model.fail)],
        "actions": [{"from": names[s], "name": a.name, "to": [names[t] for t in a.effects]}
                    for s in range(model.num_states) for a in model.actions(s)],
    }


def serialize(model) -> str:
    return json.dumps(to_document(model), indent=1) + "\n"


def load_task(path):
    with open(path, "rb") as fh:
        return parse_task(fh.read())


def save_task(model, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(model))


def parse_valuation(descriptor: str, model: FactoredModel):
    """``"x=1,y=2"`` to a valuation tuple; every variable must be given, in range."""
    vals = {}
    for part in descriptor.split(","):
        name, eq, num = part.partition("=")
        name = name.strip()
        try:
            vals[name] = int(num)
        except ValueError:
            raise UnknownState(descriptor) from None
        if not eq:
            raise UnknownState(descriptor)
    out = []
    for v in model.variables:
        if v.name not in vals or not v.min <= vals[v.name] <= v.max:
            raise UnknownState(descriptor)
        out.append(vals.pop(v.name))
    if vals:
        raise UnknownState(descriptor)
    return tuple(out)


def parse_ordering(data, task):
    """Read a ``{state descriptor: preferred action name}`` file into an ordering.

    ``task`` is the :class:`TransitionSystem`, :class:`FactoredModel` or lazy
    system the preferences refer to.
    """
    from .algorithms.ordering import OrderingSpec
    from .expand import LazySystem, successors

    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise _syntax_from_json(err) from None
    if not isinstance(doc, dict) or not all(isinstance(v, str) for v in doc.values()):
        raise ValidationError("ordering file must map state descriptors to action names")
    if isinstance(task, LazySystem):
        task = task.model
    prefs = {}
    for desc, name in doc.items():
        if isinstance(task, FactoredModel):
            key = parse_valuation(desc, task)
            names = [a for a, _ in successors(task, key)]
        else:
            sid = task.lookup(desc)
            if sid is None:
                raise UnknownState(desc)
            key = task.key(sid)
            names = [a.name for a in task.actions(sid)]
        if name not in names:
            raise UnknownAction(desc, name)
        prefs[key] = name
    return OrderingSpec.learn(prefs)
