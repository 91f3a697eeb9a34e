"""Recursive-descent parser for polynomial / rational-function expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ['-'] base ('^' uint)?
    base   := var | const | '(' expr ')'
    const  := integer | generator symbol (``g`` by default)

Any single letter other than the generator symbol is an indeterminate; a
univariate expression may use at most one of them.  ``inf`` is accepted only
by :func:`parse_value`.
"""

from __future__ import annotations

import re
from typing import Sequence

from .bivariate import BivariatePolynomial
from .errors import ParseError, UnknownSymbol, ZeroDenominator
from .gf import FieldElement, FiniteField
from .poly import Polynomial
from .ratfunc import INF, RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", position=pos)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", position=0)
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", position=pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                node = (val, node, self.term(), pos)
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                node = (val, node, self.factor(), pos)
            else:
                return node

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return ("neg", self.factor(), pos)
        node = self.base()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, e, epos = self.take()
            if k != "num":
                raise ParseError("exponent must be a nonnegative integer", position=epos)
            node = ("^", node, int(e), pos)
        return node

    def base(self):
        kind, val, pos = self.take()
        if kind == "num":
            return ("num", int(val), pos)
        if kind == "name":
            return ("name", val, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {val or 'end of input'!r}", position=pos)


class _RationalDomain:
    """Evaluate into RationalFunction with at most one indeterminate."""

    def __init__(self, field: FiniteField, variable: str | None = None):
        self.field = field
        self.variable = variable

    def num(self, n):
        return RationalFunction.constant(self.field, n)

    def name(self, s, pos):
        F = self.field
        if s == F.symbol:
            return RationalFunction.constant(F, F.generator)
        if len(s) != 1:
            raise UnknownSymbol(f"unknown symbol {s!r}", position=pos)
        if self.variable is None:
            self.variable = s
        elif s != self.variable:
            raise UnknownSymbol(
                f"second indeterminate {s!r} (already using {self.variable!r})", position=pos
            )
        return RationalFunction.identity(F)

    def div(self, a, b, pos):
        if b.num.is_zero():
            raise ZeroDenominator(f"division by zero at position {pos}")
        return a / b


class _BivariateDomain:
    """Evaluate into BivariatePolynomial in (old, new) variables."""

    def __init__(self, field: FiniteField, old: str, new: str):
        self.field = field
        self.old, self.new = old, new

    def num(self, n):
        return BivariatePolynomial(self.field, [Polynomial(self.field, [n])])

    def name(self, s, pos):
        F = self.field
        if s == F.symbol:
            return BivariatePolynomial(F, [Polynomial(F, [F.generator])])
        if s == self.old:
            return BivariatePolynomial(F, [Polynomial.x(F)])
        if s == self.new:
            return BivariatePolynomial(F, [Polynomial._raw(F, ()), Polynomial._raw(F, (1,))])
        raise UnknownSymbol(f"unknown symbol {s!r}", position=pos)

    def div(self, a, b, pos):
        if b.deg_t != 0 or b.rows[0].degree != 0:
            raise ParseError("bivariate expressions may only divide by constants", position=pos)
        return a.scale(self.field.inv(b.rows[0].coeffs[0]))


def _evaluate(node, dom):
    tag = node[0]
    if tag == "num":
        return dom.num(node[1])
    if tag == "name":
        return dom.name(node[1], node[2])
    if tag == "neg":
        return -_evaluate(node[1], dom)
    if tag == "^":
        return _evaluate(node[1], dom) ** node[2]
    a = _evaluate(node[1], dom)
    b = _evaluate(node[2], dom)
    if tag == "+":
        return a + b
    if tag == "-":
        return a - b
    if tag == "*":
        return a * b
    if tag == "/":
        return dom.div(a, b, node[3])
    raise AssertionError(tag)


def parse_rational(text: str, field: FiniteField, variable: str | None = None) -> RationalFunction:
    """Parse into a canonical RationalFunction (polynomials have denominator 1)."""
    return _evaluate(_Parser(text).parse(), _RationalDomain(field, variable))


def parse_expression(text: str, field: FiniteField) -> Polynomial | RationalFunction:
    """Parse; return a Polynomial when the canonical denominator is 1."""
    r = parse_rational(text, field)
    return r.num if r.is_polynomial() else r


def parse_bivariate(text: str, field: FiniteField, old: str = "x", new: str = "y") -> BivariatePolynomial:
    return _evaluate(_Parser(text).parse(), _BivariateDomain(field, old, new))


def expression_variable(text: str, field: FiniteField) -> str | None:
    """The indeterminate letter an expression uses, if any."""
    dom = _RationalDomain(field)
    _evaluate(_Parser(text).parse(), dom)
    return dom.variable


def parse_value(text: str, field: FiniteField):
    """Parse a point of P^1(F_q): ``inf`` or a constant expression."""
    if text.strip() == "inf":
        return INF
    r = parse_rational(text, field)
    if not r.is_constant():
        raise ParseError(f"{text!r} is not a constant", position=0)
    return FieldElement(field, r.num.coeff(0))


def parse_zp_polynomial(text: str, p: int) -> list[int]:
    """Coefficients (constant first) of a polynomial over F_p, e.g. a field modulus."""
    from .gf import make_field

    prime = make_field(p, (0, 1))
    r = parse_rational(text, prime)
    if not r.is_polynomial():
        raise ParseError(f"modulus {text!r} is not a polynomial", position=0)
    return list(r.num.coeffs)


def parse_coefficients(values: Sequence[int], field: FiniteField) -> Polynomial:
    return Polynomial(field, values)
