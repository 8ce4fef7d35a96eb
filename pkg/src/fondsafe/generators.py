"""Benchmark families.

``gen_layered`` is the literal graph on which TarjanSafe has to enumerate
``2^d`` paths; flappy bird and the one/two-way line are factored models.
"""
from __future__ import annotations

from . import expr as E
from .errors import ValidationError
from .model import TransitionSystem
from .parser import Assignment, Command, FactoredModel, Variable


def gen_layered(d, fail_sinks=1):
    """Layered task with ``2d + 2`` states, all safe, plus unreachable fail sinks.

    ``s0`` branches into the first layer ``{s1, s1'}``; both states of layer
    ``i`` branch into both states of layer ``i + 1``; the last layer leads to
    ``s{d+1}``, whose action returns to ``s0``.  The sinks have no actions.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    if fail_sinks < 1:
        raise ValueError("a state-avoiding task needs at least one fail state")
    names = ["s0"]
    for i in range(1, d + 1):
        names += [f"s{i}", f"s{i}'"]
    names.append(f"s{d + 1}")
    sink0 = len(names)
    names += ["x"] if fail_sinks == 1 else [f"x{k}" for k in range(fail_sinks)]
    upper = lambda i: 2 * i - 1  # noqa: E731
    lower = lambda i: 2 * i  # noqa: E731
    last = 2 * d + 1

    actions = [[] for _ in names]
    actions[0].append(("a0", [upper(1), lower(1)]))
    for i in range(1, d + 1):
        nxt = [upper(i + 1), lower(i + 1)] if i < d else [last]
        actions[upper(i)].append((f"a{i}", nxt))
        actions[lower(i)].append((f"a{i}'", nxt))
    actions[last].append((f"a{d + 1}", [0]))
    return TransitionSystem(names, actions, 0, range(sink0, len(names)))


def gen_chain(n):
    """``n`` states in a row, each with one action to the next; the last one leads to the fail state."""
    if n < 1:
        raise ValueError("n must be at least 1")
    names = [f"c{i}" for i in range(n)] + ["x"]
    actions = [[("next", [i + 1])] for i in range(n)] + [[]]
    return TransitionSystem(names, actions, 0, [n])


def _var(name):
    return E.Var(name)


def _int(v):
    return E.Int(v)


def _and(*parts):
    out = parts[0]
    for p in parts[1:]:
        out = E.Binary("and", out, p)
    return out


def _or(parts):
    if not parts:
        return E.Bool(False)
    out = parts[0]
    for p in parts[1:]:
        out = E.Binary("or", out, p)
    return out


def _eq(a, b):
    return E.Binary("==", a, b)


def gen_flappy(width, height, obstacles=()):
    """Flappy bird on a ``width x height`` grid.

    The bird starts at ``(0, height // 2)``.  ``up`` and ``down`` move one row
    (clamped at the edges) and may also move one column right; leaving the
    right edge wraps to column 0.  Hitting an obstacle cell is failure.
    """
    if width < 2 or height < 1:
        raise ValueError("need width >= 2 and height >= 1")
    obstacles = sorted(set(tuple(o) for o in obstacles))
    for x, y in obstacles:
        if not (0 <= x < width and 0 <= y < height):
            raise ValidationError(f"obstacle {(x, y)} outside the grid")
    start = (0, height // 2)
    if start in obstacles:
        raise ValidationError("the start cell is blocked")
    x, y = _var("x"), _var("y")
    # (x + 1) mod width, written with min: the factor is 0 only in the last column
    wrap = E.Binary("*", E.Binary("+", x, _int(1)),
                    E.Call("min", (_int(1), E.Binary("-", _int(width - 1), x))))
    up = E.Call("min", (E.Binary("+", y, _int(1)), _int(height - 1)))
    down = E.Call("max", (E.Binary("-", y, _int(1)), _int(0)))
    commands = tuple(
        Command(name, E.Bool(True), (
            (Assignment("y", move),),
            (Assignment("y", move), Assignment("x", wrap)),
        ))
        for name, move in (("up", up), ("down", down))
    )
    fail = _or([_and(_eq(x, _int(ox)), _eq(y, _int(oy))) for ox, oy in obstacles])
    variables = (Variable("x", 0, width - 1, start[0]), Variable("y", 0, height - 1, start[1]))
    return FactoredModel(variables, commands, fail)


def flappy_walls(width, height=5):
    """Obstacles for a flappy grid: a wall in every odd column, each with a two-row gap.

    Gaps alternate between rows ``{c-1, c}`` and ``{c, c+1}`` around the
    centre row ``c``, so the bird has to keep re-aligning.  Needs
    ``height >= 3``.
    """
    if height < 3:
        raise ValueError("walls need height >= 3")
    c = height // 2
    gaps = ((c - 1, c), (c, c + 1))
    obstacles = []
    for k, x in enumerate(range(1, width, 2)):
        obstacles += [(x, y) for y in range(height) if y not in gaps[k % 2]]
    return obstacles


def gen_line(length, packages, two_way=False, deadline=None):
    """Truck on a line of ``length`` cells carrying packages to the right end.

    Variables: truck position ``pos`` in ``[0, length]``, where ``length`` is
    the overrun cell past the end; per package ``i`` its cell ``loc_i`` and a
    ``held_i`` flag.  Package ``i`` starts at cell ``i % (length - 1)``.
    ``load_i`` picks up a package lying at the truck, ``unload_i`` drops a held
    package at the last cell, and ``restart`` puts everything back once all
    packages are delivered.  Driving right from the last cell overruns, which
    is failure.  With ``two_way`` the truck can also move left, and a move
    counter ``t`` fails when it reaches ``deadline`` (default ``2 * length``);
    ``restart`` resets it.  All effects are deterministic.
    """
    if length < 2 or packages < 1:
        raise ValueError("need length >= 2 and packages >= 1")
    end = length - 1
    pos = _var("pos")
    homes = [i % end for i in range(packages)]
    variables = [Variable("pos", 0, length, 0)]
    for i, h in enumerate(homes):
        variables += [Variable(f"loc{i}", 0, end, h), Variable(f"held{i}", 0, 1, 0)]
    if two_way:
        deadline = 2 * length if deadline is None else deadline
        if deadline < 1:
            raise ValueError("deadline must be positive")
        variables.append(Variable("t", 0, deadline, 0))
    tick = ((Assignment("t", E.Call("min", (E.Binary("+", _var("t"), _int(1)), _int(deadline)))),)
            if two_way else ())

    commands = [Command("right", E.Binary("<", pos, _int(length)),
                        ((Assignment("pos", E.Binary("+", pos, _int(1))),) + tick,))]
    if two_way:
        commands.append(Command("left", E.Binary(">", pos, _int(0)),
                                ((Assignment("pos", E.Binary("-", pos, _int(1))),) + tick,)))
    for i in range(packages):
        loc, held = _var(f"loc{i}"), _var(f"held{i}")
        commands.append(Command(
            f"load{i}",
            _and(_eq(held, _int(0)), _eq(loc, pos), E.Binary("<", loc, _int(end))),
            ((Assignment(f"held{i}", _int(1)),),)))
        commands.append(Command(
            f"unload{i}",
            _and(_eq(held, _int(1)), _eq(pos, _int(end))),
            ((Assignment(f"held{i}", _int(0)), Assignment(f"loc{i}", _int(end))),)))
    delivered = _and(*[_and(_eq(_var(f"loc{i}"), _int(end)), _eq(_var(f"held{i}"), _int(0)))
                       for i in range(packages)])
    reset = [Assignment("pos", _int(0))]
    for i, h in enumerate(homes):
        reset.append(Assignment(f"loc{i}", _int(h)))
    if two_way:
        reset.append(Assignment("t", _int(0)))
    commands.append(Command("restart", delivered, (tuple(reset),)))

    fail = _eq(pos, _int(length))
    if two_way:
        fail = E.Binary("or", fail, _eq(_var("t"), _int(deadline)))
    return FactoredModel(tuple(variables), tuple(commands), fail)
