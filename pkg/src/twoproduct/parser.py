"""Recursive-descent parser for polynomial and matrix expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | base ('^' nat)?
    base   := rational | 'J' | 'hbar' | var | '(' expr ')' | matrix
    var    := ('q' | 'p') digits?
    matrix := '[' row (',' row)* ']'
    row    := '[' expr (',' expr)* ']'

``q`` and ``p`` alone mean ``q1`` and ``p1``. The composition class (and hence
the meaning of ``J*J``) comes from the caller, never from the literal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .matrix import SquareMatrix
from .phase import PhasePoly
from .scalar import PairScalar


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"syntax error at offset {position}: {message}")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()\[\],]))"
)
_VAR = re.compile(r"([qp])(\d*)$")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        i = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, eps: int, hbar):
        self.toks = _tokenize(text)
        self.i = 0
        self.eps = eps
        self.hbar = hbar

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self, text: str | None = None) -> _Tok:
        t = self.tok
        if text is not None and t.text != text:
            what = "end of input" if t.kind == "end" else repr(t.text)
            raise ParseError(f"expected {text!r}, found {what}", t.pos)
        self.i += 1
        return t

    def parse(self):
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return value

    def expr(self):
        value = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = _combine(value, rhs, op)
        return value

    def term(self):
        value = self.factor()
        while self.tok.text == "*":
            op = self.take()
            rhs = self.factor()
            value = _combine(value, rhs, op)
        return value

    def factor(self):
        if self.tok.text in ("+", "-"):
            op = self.take()
            value = self.factor()
            return -value if op.text == "-" else value
        value = self.base()
        if self.tok.text == "^":
            self.take()
            t = self.tok
            if t.kind != "num" or "/" in t.text:
                what = "end of input" if t.kind == "end" else repr(t.text)
                raise ParseError(f"expected a natural-number exponent, found {what}", t.pos)
            self.take()
            value = value ** int(t.text)
        return value

    def base(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            return PhasePoly.constant(Fraction(t.text), 1, self.eps)
        if t.kind == "name":
            self.take()
            if t.text == "J":
                return PhasePoly.constant(PairScalar.unit(self.eps), 1, self.eps)
            if t.text == "hbar":
                if self.hbar is not None:
                    return PhasePoly.constant(self.hbar, 1, self.eps)
                return PhasePoly.hbar(1, self.eps)
            m = _VAR.match(t.text)
            if m:
                idx = int(m.group(2)) if m.group(2) else 1
                if idx < 1:
                    raise ParseError(f"variable index must be >= 1 in {t.text!r}", t.pos)
                ctor = PhasePoly.q if m.group(1) == "q" else PhasePoly.p
                return ctor(idx, None, self.eps)
            raise ParseError(f"unknown identifier {t.text!r}", t.pos)
        if t.text == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if t.text == "[":
            return self.matrix()
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"expected a value, found {what}", t.pos)

    def matrix(self):
        start = self.take("[")
        rows = [self.row()]
        while self.tok.text == ",":
            self.take()
            rows.append(self.row())
        self.take("]")
        if any(len(r) != len(rows) for r in rows):
            raise ParseError("matrix must be square", start.pos)
        return SquareMatrix(rows, self.eps)

    def row(self):
        self.take("[")
        entries = [self.entry()]
        while self.tok.text == ",":
            self.take()
            entries.append(self.entry())
        self.take("]")
        return entries

    def entry(self):
        pos = self.tok.pos
        value = self.expr()
        if not isinstance(value, PhasePoly) or not value.is_constant():
            raise ParseError("matrix entries must be constants", pos)
        return value.constant_term()


def _combine(a, b, op: _Tok):
    sym = op.text
    if isinstance(a, SquareMatrix) or isinstance(b, SquareMatrix):
        if sym == "*":
            if isinstance(a, PhasePoly):
                a, b = b, a
            if isinstance(b, PhasePoly):
                if not b.is_constant():
                    raise ParseError("cannot multiply a matrix by a non-constant polynomial", op.pos)
                return a.scale(b.constant_term())
            return a.matmul(b)
        if not (isinstance(a, SquareMatrix) and isinstance(b, SquareMatrix)):
            raise ParseError("cannot add a matrix and a scalar", op.pos)
        if a.dim != b.dim:
            raise ParseError("matrix dimensions differ", op.pos)
        return a + b if sym == "+" else a - b
    if sym == "+":
        return a + b
    if sym == "-":
        return a - b
    return a * b


def parse_expression(text: str, eps: int = -1, hbar=None):
    """Parse ``text`` into a :class:`PhasePoly` or :class:`SquareMatrix`.

    ``eps`` is the class value ``J^2``. A numeric ``hbar`` is substituted for
    the symbol; otherwise ``hbar`` stays formal.
    """
    return _Parser(text, eps, hbar).parse()
