"""Recursive-descent parser for scalar expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | NAME | 'exp' '(' expr ')' | '(' expr ')'

Division is only by nonzero rational constants.  Negative exponents are only
allowed on bare Laurent-flagged variables.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .chart import Chart
from .errors import (
    NegativePower,
    NonPolynomialExponent,
    ParseError,
    UnknownVariable,
)
from .scalar import Scalar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Tok:
    __slots__ = ("kind", "text", "col")

    def __init__(self, kind, text, col):
        self.kind, self.text, self.col = kind, text, col


def _tokenize(text: str, line: int, col0: int):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(_Tok("int", num, col0 + start))
        elif name is not None:
            toks.append(_Tok("name", name, col0 + start))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", line, col0 + start)
            toks.append(_Tok(op, op, col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, chart: Chart, line: int, col0: int):
        self.chart = chart
        self.line = line
        self.toks = _tokenize(text, line, col0)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = "end of expression" if kind == "end" else repr(kind)
            got = "end of expression" if tok.kind == "end" else repr(tok.text)
            raise ParseError(f"expected {want}, found {got}", self.line, tok.col)
        self.i += 1
        return tok

    def error(self, msg, tok):
        return ParseError(msg, self.line, tok.col)

    def expr(self) -> Scalar:
        acc = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Scalar:
        acc = self.unary()
        while self.peek().kind in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            if tok.kind == "*":
                acc = acc * rhs
            else:
                c = rhs.constant_value()
                if c is None:
                    raise self.error("division is only allowed by rational constants", tok)
                if c == 0:
                    raise self.error("division by zero", tok)
                acc = acc * (Fraction(1) / c)
        return acc

    def unary(self) -> Scalar:
        tok = self.peek()
        if tok.kind == "-":
            self.take()
            return -self.unary()
        if tok.kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Scalar:
        base, bare = self.atom()
        if self.peek().kind != "^":
            return base
        caret = self.take()
        neg = False
        if self.peek().kind == "-":
            self.take()
            neg = True
        n_tok = self.take("int")
        n = int(n_tok.text)
        if not neg:
            return base ** n
        if bare is None or not self.chart.is_laurent(bare):
            what = f"non-Laurent variable {bare!r}" if bare else "a non-variable base"
            raise NegativePower(
                f"negative exponent on {what} (line {self.line}, column {caret.col})"
            )
        return base ** (-n)

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return Scalar.const(self.chart, int(tok.text)), None
        if tok.kind == "name":
            if tok.text == "exp":
                self.take("(")
                arg_tok = self.peek()
                arg = self.expr()
                self.take(")")
                try:
                    return Scalar.exp(arg), None
                except NonPolynomialExponent as exc:
                    raise NonPolynomialExponent(
                        f"{exc} (line {self.line}, column {arg_tok.col})"
                    ) from None
            if tok.text not in self.chart:
                raise UnknownVariable(
                    f"unknown variable {tok.text!r} in chart {self.chart.name!r} "
                    f"(line {self.line}, column {tok.col})"
                )
            return Scalar.variable(self.chart, tok.text), tok.text
        if tok.kind == "(":
            inner = self.expr()
            self.take(")")
            return inner, None
        got = "end of expression" if tok.kind == "end" else repr(tok.text)
        raise self.error(f"unexpected {got}", tok)


def parse_scalar(text: str, chart: Chart, *, line: int = 1, column: int = 1) -> Scalar:
    """Parse ``text`` into an exact Scalar on ``chart``.

    ``line``/``column`` locate ``text`` inside a larger document for error
    messages.
    """
    p = _Parser(text, chart, line, column)
    if p.peek().kind == "end":
        raise ParseError("empty expression", line, column)
    value = p.expr()
    p.take("end")
    return value
