"""Recursive-descent parser for ternary forms.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := NUMBER | VAR | '(' expr ')'

NUMBER is an integer or a decimal literal, VAR is one of x, y, z or the
aliases x0, x1, x2.  Division is only allowed by a nonzero constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .ring import QQ, MultiPoly, TernaryForm, format_poly, ternary_ring

VARIABLES = {"x": 0, "y": 1, "z": 2, "x0": 0, "x1": 1, "x2": 2}
NAMES = ("x", "y", "z")


class ParseError(ValueError):
    """Malformed expression; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        self.reason = message
        super().__init__(f"{message} at position {position}")

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


class DegreeError(ValueError):
    """The expression is not a homogeneous form of the requested degree."""


@dataclass(frozen=True)
class Token:
    kind: str  # num, var, op, lpar, rpar, end
    value: str
    pos: int


_TOKEN = re.compile(r"(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^])|(\()|(\)))")


def tokenize(text: str) -> list:
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = pos
        num, ident, op, lp, rp = m.groups()
        if num is not None:
            out.append(Token("num", num, start))
        elif ident is not None:
            if ident not in VARIABLES:
                raise ParseError(f"unknown identifier {ident!r}", start, text)
            out.append(Token("var", ident, start))
        elif op is not None:
            out.append(Token("op", op, start))
        elif lp is not None:
            out.append(Token("lpar", "(", start))
        else:
            out.append(Token("rpar", ")", start))
        pos = m.end()
    out.append(Token("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, field):
        self.text = text
        self.field = field
        self.ring = ternary_ring(field, NAMES)
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos, self.text)

    def parse(self) -> MultiPoly:
        if self.peek().kind == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().value!r}")
        return p

    def expr(self) -> MultiPoly:
        p = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MultiPoly:
        p = self.unary()
        while self.peek().kind == "op" and self.peek().value in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op.value == "*":
                p = p * q
            else:
                if q.total_degree() > 0 or q.is_zero():
                    self.error("division only by a nonzero constant", op)
                p = p.scale(self.field.inv(q.coeff((0, 0, 0))))
        return p

    def unary(self) -> MultiPoly:
        t = self.peek()
        if t.kind == "op" and t.value in "+-":
            self.take()
            p = self.unary()
            return p if t.value == "+" else -p
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.value in ("^", "**"):
            self.take()
            e = self.peek()
            if e.kind != "num" or not e.value.isdigit():
                self.error("exponent must be a non-negative integer")
            self.take()
            return base ** int(e.value)
        return base

    def atom(self) -> MultiPoly:
        t = self.take()
        if t.kind == "num":
            try:
                c = self.field(Fraction(t.value))
            except ZeroDivisionError:
                raise ParseError("literal not representable in the field", t.pos, self.text) from None
            return self.ring.const(c)
        if t.kind == "var":
            return self.ring.var(VARIABLES[t.value])
        if t.kind == "lpar":
            p = self.expr()
            if self.peek().kind != "rpar":
                self.error("expected ')'")
            self.take()
            return p
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos, self.text)
        raise ParseError(f"unexpected {t.value!r}", t.pos, self.text)


def parse_poly(text: str, field=QQ) -> MultiPoly:
    return _Parser(text, field).parse()


def parse_form(text: str, degree: int | None = None, field=QQ) -> TernaryForm:
    """Parse a homogeneous ternary form, optionally of a fixed degree."""
    p = parse_poly(text, field)
    if p.is_zero():
        if degree is None:
            raise DegreeError("the zero polynomial has no degree")
        return TernaryForm.zero(field, degree)
    if not p.is_homogeneous():
        degs = sorted({sum(e) for e in p.as_dict()})
        raise DegreeError(f"expression is not homogeneous (term degrees {degs})")
    if degree is not None and p.total_degree() != degree:
        raise DegreeError(f"expected a form of degree {degree}, got degree {p.total_degree()}")
    return TernaryForm.from_poly(p)


def parse_quartic(text: str, field=QQ) -> TernaryForm:
    return parse_form(text, 4, field)


def format_form(f: TernaryForm) -> str:
    """Text that :func:`parse_form` maps back to the same coefficients."""
    if f.is_zero():
        return "0"
    return format_poly(f.to_poly(ternary_ring(f.field, NAMES)))
