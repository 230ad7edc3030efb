"""Text form of polynomials: ``3*l^2*m^-1 - 1/2*m + 7``.

Terms are printed in descending lexicographic order of exponent vectors,
which is the canonical serialization used by every report.
"""

import re
from fractions import Fraction

from ..errors import PolynomialSyntaxError
from .domains import QQ

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _format_coeff(c):
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _format_monomial(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f):
    if not f.terms:
        return "0"
    out = []
    for exps, c in f.sorted_terms():
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(f.ring.names, exps)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise PolynomialSyntaxError(f"unexpected input at column {pos + 1}")
            num, name, sym = m.groups()
            col = m.start(m.lastindex) + 1
            if num is not None:
                self.tokens.append(("num", int(num), col))
            elif name is not None:
                self.tokens.append(("name", name, col))
            else:
                self.tokens.append(("sym", sym, col))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text) + 1)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind or "token"
            raise PolynomialSyntaxError(f"expected {want!r} at column {tok[2]}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial")
        f = self.expr()
        if self.i != len(self.tokens):
            raise PolynomialSyntaxError(f"trailing input at column {self.peek()[2]}")
        return f

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "sym" and tok[1] in "+-":
            self.i += 1
            sign = -1 if tok[1] == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            tok = self.peek()
            if tok[0] == "sym" and tok[1] in "+-":
                self.i += 1
                neg = tok[1] == "-"
                nxt = self.peek()
                if nxt[0] == "sym" and nxt[1] in "+-":
                    # a signed term such as "x + -2"
                    self.i += 1
                    neg ^= nxt[1] == "-"
                g = self.term()
                f = f - g if neg else f + g
            else:
                return f

    def term(self):
        f = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "sym" and tok[1] == "*":
                self.i += 1
                f = f * self.power()
            elif tok[0] == "sym" and tok[1] == "/":
                self.i += 1
                d = self.take("num")[1]
                f = f / d
            else:
                return f

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "sym" and tok[1] == "^":
            self.i += 1
            neg = False
            t = self.peek()
            if t[0] == "sym" and t[1] == "-":
                self.i += 1
                neg = True
            e = self.take("num")[1]
            return base ** (-e if neg else e)
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.i += 1
            return self.ring.constant(tok[1])
        if tok[0] == "name":
            self.i += 1
            if tok[1] not in self.ring.names:
                raise PolynomialSyntaxError(f"unknown variable {tok[1]!r} at column {tok[2]}")
            return self.ring.gen(tok[1])
        if tok[0] == "sym" and tok[1] == "(":
            self.i += 1
            f = self.expr()
            self.take("sym", ")")
            return f
        raise PolynomialSyntaxError(f"unexpected {tok[1]!r} at column {tok[2]}")


def parse_poly(text, ring=None):
    """Parse ``text``; without a ring, variables are inferred (sorted, over QQ,
    Laurent wherever a negative exponent appears)."""
    if ring is None:
        from .poly import PolyRing

        names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text)))
        ring = PolyRing(QQ, names, laurent=names)
        f = _Parser(text, ring).parse()
        neg = {n for n, col in zip(names, zip(*f.terms)) if min(col) < 0} if f.terms else set()
        return f.convert(PolyRing(QQ, names, laurent=neg))
    return _Parser(text, ring).parse()
