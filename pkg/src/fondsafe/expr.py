"""Integer/boolean expressions for guards, assignments and fail predicates.

Grammar, loosest binding first::

    or_expr  := and_expr ("or" and_expr)*
    and_expr := cmp_expr ("and" cmp_expr)*
    cmp_expr := sum_expr (("=="|"!="|"<"|"<="|">"|">=") sum_expr)?
    sum_expr := prod (("+"|"-") prod)*
    prod     := unary ("*" unary)*
    unary    := ("not" | "-") unary | atom
    atom     := INT | "true" | "false" | NAME | ("min"|"max") "(" or_expr "," or_expr ")"
              | "(" or_expr ")"

Expressions compile to closures over a valuation tuple.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping, Tuple, Union

from .errors import ModelSyntaxError, ValidationError


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Bool:
    value: bool


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "not" | "-"
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str  # "min" | "max"
    args: Tuple["Expr", "Expr"]


Expr = Union[Int, Bool, Var, Unary, Binary, Call]

ARITH = ("+", "-", "*")
COMPARE = ("==", "!=", "<", "<=", ">", ">=")
LOGIC = ("and", "or")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(==|!=|<=|>=|[-+*<>(),]))")


def _tokenize(text):
    pos = 0
    out = []
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise _error(text, bad, f"unexpected character {text[bad]!r}")
        if m.group(1):
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        else:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _error(text, offset, message):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return ModelSyntaxError(line, col, message)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.next()
        if tok[1] != value or tok[0] == "int":
            raise _error(self.text, tok[2], f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return tok

    def at(self, *values):
        kind, val, _ = self.peek()
        return kind in ("op", "name") and val in values

    def parse(self):
        e = self.or_expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise _error(self.text, off, f"unexpected {val!r}")
        return e

    def or_expr(self):
        e = self.and_expr()
        while self.at("or"):
            self.next()
            e = Binary("or", e, self.and_expr())
        return e

    def and_expr(self):
        e = self.cmp_expr()
        while self.at("and"):
            self.next()
            e = Binary("and", e, self.cmp_expr())
        return e

    def cmp_expr(self):
        e = self.sum_expr()
        if self.at(*COMPARE):
            op = self.next()[1]
            e = Binary(op, e, self.sum_expr())
            if self.at(*COMPARE):
                raise _error(self.text, self.peek()[2], "comparisons do not chain; add parentheses")
        return e

    def sum_expr(self):
        e = self.prod()
        while self.at("+", "-"):
            op = self.next()[1]
            e = Binary(op, e, self.prod())
        return e

    def prod(self):
        e = self.unary()
        while self.at("*"):
            self.next()
            e = Binary("*", e, self.unary())
        return e

    def unary(self):
        if self.at("not", "-"):
            op = self.next()[1]
            operand = self.unary()
            if op == "-" and isinstance(operand, Int):
                return Int(-operand.value)
            return Unary(op, operand)
        return self.atom()

    def atom(self):
        kind, val, off = self.next()
        if kind == "int":
            return Int(int(val))
        if kind == "name":
            if val in ("true", "false"):
                return Bool(val == "true")
            if val in ("min", "max"):
                self.expect("(")
                a = self.or_expr()
                self.expect(",")
                b = self.or_expr()
                self.expect(")")
                return Call(val, (a, b))
            if val in ("and", "or", "not"):
                raise _error(self.text, off, f"unexpected keyword {val!r}")
            return Var(val)
        if val == "(":
            e = self.or_expr()
            self.expect(")")
            return e
        raise _error(self.text, off, f"unexpected {val or 'end of input'!r}")


def parse_expr(text: str) -> Expr:
    """Parse an infix expression string; raises :class:`ModelSyntaxError`."""
    return _Parser(text).parse()


def variables(e: Expr):
    """Names referenced by ``e``."""
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Unary):
        return variables(e.operand)
    if isinstance(e, Binary):
        return variables(e.left) | variables(e.right)
    if isinstance(e, Call):
        return variables(e.args[0]) | variables(e.args[1])
    return set()


def type_of(e: Expr, declared) -> str:
    """Return ``"int"`` or ``"bool"``; raises :class:`ValidationError` on misuse."""
    if isinstance(e, Int):
        return "int"
    if isinstance(e, Bool):
        return "bool"
    if isinstance(e, Var):
        if e.name not in declared:
            raise ValidationError(f"undeclared variable {e.name!r}")
        return "int"
    if isinstance(e, Unary):
        want = "bool" if e.op == "not" else "int"
        if type_of(e.operand, declared) != want:
            raise ValidationError(f"operand of {e.op!r} must be {want}: {to_source(e)}")
        return want
    if isinstance(e, Call):
        for a in e.args:
            if type_of(a, declared) != "int":
                raise ValidationError(f"arguments of {e.fn} must be int: {to_source(e)}")
        return "int"
    lt, rt = type_of(e.left, declared), type_of(e.right, declared)
    if e.op in LOGIC:
        if lt != "bool" or rt != "bool":
            raise ValidationError(f"operands of {e.op!r} must be bool: {to_source(e)}")
        return "bool"
    if lt != "int" or rt != "int":
        raise ValidationError(f"operands of {e.op!r} must be int: {to_source(e)}")
    return "bool" if e.op in COMPARE else "int"


_PREC = {"or": 1, "and": 2, **{c: 3 for c in COMPARE}, "+": 4, "-": 4, "*": 5}
_UNARY_PREC = 6


def _prec(e):
    if isinstance(e, Binary):
        return _PREC[e.op]
    if isinstance(e, Unary):
        return _UNARY_PREC
    if isinstance(e, Int) and e.value < 0:
        return _UNARY_PREC
    return 7


def to_source(e: Expr) -> str:
    """Render ``e`` with the minimal parentheses needed to parse back to ``e``."""
    if isinstance(e, Int):
        return str(e.value)
    if isinstance(e, Bool):
        return "true" if e.value else "false"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.fn}({to_source(e.args[0])}, {to_source(e.args[1])})"
    if isinstance(e, Unary):
        inner = to_source(e.operand)
        if _prec(e.operand) < _UNARY_PREC or (e.op == "-" and isinstance(e.operand, (Int, Unary))):
            inner = f"({inner})"
        return f"not {inner}" if e.op == "not" else f"-{inner}"
    p = _PREC[e.op]
    left, right = to_source(e.left), to_source(e.right)
    # comparisons do not chain, so an equal-precedence child needs brackets on both sides
    if _prec(e.left) < p or (_prec(e.left) == p and e.op in COMPARE):
        left = f"({left})"
    if _prec(e.right) <= p:
        right = f"({right})"
    return f"{left} {e.op} {right}"


_BINOPS: Mapping[str, Callable] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def compile_expr(e: Expr, index: Mapping[str, int]) -> Callable[[tuple], object]:
    """Turn ``e`` into a function of a valuation tuple (variables by position)."""
    if isinstance(e, (Int, Bool)):
        v = e.value
        return lambda vals: v
    if isinstance(e, Var):
        i = index[e.name]
        return lambda vals: vals[i]
    if isinstance(e, Unary):
        f = compile_expr(e.operand, index)
        if e.op == "not":
            return lambda vals: not f(vals)
        return lambda vals: -f(vals)
    if isinstance(e, Call):
        f, g = compile_expr(e.args[0], index), compile_expr(e.args[1], index)
        if e.fn == "min":
            return lambda vals: min(f(vals), g(vals))
        return lambda vals: max(f(vals), g(vals))
    f, g = compile_expr(e.left, index), compile_expr(e.right, index)
    if e.op == "and":
        return lambda vals: f(vals) and g(vals)
    if e.op == "or":
        return lambda vals: f(vals) or g(vals)
    op = _BINOPS[e.op]
    return lambda vals: op(f(vals), g(vals))
