"""Text form of polynomials and rational functions.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | NAME | '(' expr ')'

Rational literals are written as quotients, e.g. ``2/3*x1``.
"""

import re

from gmpy2 import mpq

from ..errors import ParseError, UnknownVariable
from .poly import Polynomial
from .ratfunc import RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        if m.group(1):
            out.append(("int", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r} at offset {m.start(3)}")
            out.append(("op", ch))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, vars):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(vars)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r}, found {t[1]!r}")

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        r = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return r

    def expr(self):
        r = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            r = r + rhs if op == "+" else r - rhs
        return r

    def term(self):
        r = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            r = r * rhs if op == "*" else r / rhs
        return r

    def unary(self):
        t = self.peek()
        if t == ("op", "-"):
            self.take()
            return -self.unary()
        if t == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer literal")
            return base ** (sign * val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return RationalFunction.const(self.vars, val)
        if kind == "name":
            if val not in self.vars:
                raise UnknownVariable(f"variable {val!r} not in {self.vars}")
            return RationalFunction.var(self.vars, val)
        if (kind, val) == ("op", "("):
            r = self.expr()
            self.expect(")")
            return r
        raise ParseError(f"unexpected token {val!r}")


def parse_expr(text, vars):
    """Parse text into a RationalFunction over ``vars``."""
    if not isinstance(text, str):
        raise ParseError("expression must be a string")
    return _Parser(text, vars).parse()


def parse_polynomial(text, vars):
    r = parse_expr(text, vars)
    if not r.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return r.as_polynomial()


def _format_rational(c):
    return str(mpq(c))


def format_polynomial(p):
    if not p.terms:
        return "0"
    parts = []
    for exps, c in p.items():
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(p.vars, exps) if e
        )
        mag = abs(c)
        if not mono:
            body = _format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_rational(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def format_expr(f):
    if isinstance(f, Polynomial):
        return format_polynomial(f)
    if f.den.is_constant() and f.den.constant_term() == 1:
        return format_polynomial(f.num)
    return f"({format_polynomial(f.num)})/({format_polynomial(f.den)})"
