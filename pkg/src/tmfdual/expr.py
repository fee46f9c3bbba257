"""Expressions in ``c4 c6 D J E2 q`` for the command line.

Grammar (precedence climbing, ``^`` right-associative and binding tighter
than unary minus)::

    expr   := unary (("+" | "-" | "*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?
    atom   := INT | NAME | "(" expr ")"

Evaluation stays inside :class:`MFElement` for as long as possible.  ``J``,
``E2``, ``q`` and division by anything other than ``c4^i D^k`` switch to
plain q-series at the requested precision.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .modforms import C4, C6, DELTA, MFElement, e2_series, expand, j_series
from .qseries import QSeries

__all__ = [
    "ExprSyntaxError",
    "NonIntegerExponent",
    "Num",
    "Name",
    "Neg",
    "BinOp",
    "parse",
    "Series",
    "evaluate",
    "evaluate_to_series",
]


class ExprSyntaxError(SyntaxError):
    """Parse failure; ``offset`` is the 1-based column of the bad token."""

    def __init__(self, msg: str, src: str, offset: int):
        super().__init__(msg, ("<expr>", 1, offset, src))


class NonIntegerExponent(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


Node = Union[Num, Name, Neg, BinOp]

ATOMS = ("c4", "c6", "D", "J", "E2", "q")

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")

_BINARY = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30}
_UNARY_BP = 25


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int  # 1-based


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(src):
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m or m.end() == i:
            raise ExprSyntaxError(f"unexpected character {src[i]!r}", src, i + 1)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start + 1))
        i = m.end()
    toks.append(_Tok("end", "", len(src) + 1))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, tok: _Tok, what: str):
        shown = tok.text or "end of input"
        raise ExprSyntaxError(f"{what}, got {shown!r}", self.src, tok.pos)

    def expr(self, min_bp: int = 0) -> Node:
        tok = self.take()
        if tok.kind == "op" and tok.text == "-":
            left: Node = Neg(self.expr(_UNARY_BP))
        elif tok.kind == "op" and tok.text == "+":
            left = self.expr(_UNARY_BP)
        elif tok.kind == "int":
            left = Num(int(tok.text))
        elif tok.kind == "name":
            if tok.text not in ATOMS:
                self.fail(tok, f"expected one of {', '.join(ATOMS)}")
            left = Name(tok.text)
        elif tok.kind == "op" and tok.text == "(":
            left = self.expr(0)
            close = self.take()
            if close.text != ")":
                self.fail(close, "expected ')'")
        else:
            self.fail(tok, "expected a number, a name or '('")

        while True:
            tok = self.peek()
            if tok.kind == "end" or tok.text == ")":
                break
            if tok.kind != "op" or tok.text not in _BINARY:
                self.fail(tok, "expected an operator")
            bp = _BINARY[tok.text]
            if bp <= min_bp:
                break
            self.take()
            # right-associative power: parse the exponent one level lower
            right = self.expr(bp - 1 if tok.text == "^" else bp)
            left = BinOp(tok.text, left, right)
        return left


def parse(src: str) -> Node:
    p = _Parser(src)
    node = p.expr(0)
    tail = p.peek()
    if tail.kind != "end":
        p.fail(tail, "unexpected trailing input")
    return node


# -- evaluation ---------------------------------------------------------------


@dataclass(frozen=True)
class Series:
    """A q-series together with its weight when that is known."""

    series: QSeries
    weight: int | None


Value = Union[Fraction, MFElement, Series]


def _to_series(v: Value, prec: int) -> Series:
    if isinstance(v, Series):
        return v
    if isinstance(v, Fraction):
        return Series(QSeries.monomial(0, prec, v), 0)
    return Series(expand(v, prec), v.weight)


def _join_weight(a: int | None, b: int | None, op: str) -> int | None:
    if a is None or b is None:
        return None
    if op in "+-":
        return a if a == b else None
    return a + b if op == "*" else a - b


def _is_invertible_monomial(v: MFElement) -> bool:
    mc = v.as_monomial()
    return mc is not None and mc[0].j == 0


def _integer(v: Value) -> int:
    if not isinstance(v, Fraction) or v.denominator != 1:
        raise NonIntegerExponent(f"exponent must be an integer, got {v}")
    return int(v)


def _binop(op: str, a: Value, b: Value, prec: int) -> Value:
    if op == "^":
        n = _integer(b)
        if isinstance(a, Fraction):
            return a**n
        if isinstance(a, MFElement) and (n >= 0 or _is_invertible_monomial(a)):
            return a**n
        s = _to_series(a, prec)
        w = None if s.weight is None else s.weight * n
        if n >= 0:
            return Series(s.series**n, w)
        return Series(1 / (s.series ** (-n)), w)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        return a / b
    if not isinstance(a, Series) and not isinstance(b, Series):
        ma = a if isinstance(a, MFElement) else MFElement.scalar(a)
        mb = b if isinstance(b, MFElement) else MFElement.scalar(b)
        if op == "*":
            return ma * mb
        if op in "+-" and (ma.weight == mb.weight or ma.is_zero() or mb.is_zero()):
            return ma + mb if op == "+" else ma - mb
        if op == "/" and _is_invertible_monomial(mb):
            return ma * mb.inverse_monomial()
    sa, sb = _to_series(a, prec), _to_series(b, prec)
    w = _join_weight(sa.weight, sb.weight, op)
    x, y = sa.series, sb.series
    out = {"+": lambda: x + y, "-": lambda: x - y, "*": lambda: x * y, "/": lambda: x / y}[op]()
    return Series(out, w)


def _eval(node: Node, prec: int) -> Value:
    if isinstance(node, Num):
        return Fraction(node.value)
    if isinstance(node, Name):
        if node.name == "c4":
            return C4
        if node.name == "c6":
            return C6
        if node.name == "D":
            return DELTA
        if node.name == "J":
            return Series(j_series(prec), 0)
        if node.name == "E2":
            return Series(e2_series(prec), 2)
        return Series(QSeries.monomial(1, prec), None)  # q
    if isinstance(node, Neg):
        v = _eval(node.operand, prec)
        if isinstance(v, Series):
            return Series(-v.series, v.weight)
        return -v
    return _binop(node.op, _eval(node.left, prec), _eval(node.right, prec), prec)


def evaluate(src: str | Node, prec: int) -> Value:
    """Evaluate to a scalar, an :class:`MFElement`, or a :class:`Series` known mod ``q^prec``."""
    node = parse(src) if isinstance(src, str) else src
    return _eval(node, prec)


def evaluate_to_series(src: str | Node, prec: int) -> Series:
    return _to_series(evaluate(src, prec), prec)
