"""Textual expression grammar for algebra elements.

Grammar (round-trips with the element repr):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-'* atom ('^' INT)?
    atom   := INT | 's' | 'i' | IDENT | '(' expr ')'

Identifiers are K, Kinv, E, F for U_q elements and a, astar, b, bstar for
Pol elements.  Scalars are rational expressions in s (and i); division is
only defined when the divisor is scalar-valued.  Negative powers are allowed
for scalars and for the invertible generators K, Kinv (and a, astar when
mu = 0).
"""

from __future__ import annotations

import re

from . import pol, scalars, uq
from .scalars import ExactScalar, from_fraction

__all__ = ["ParseError", "parse_uq", "parse_pol", "parse_scalar"]

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z0-9_]*|\^|\*|\+|-|/|\(|\))")

_UQ_GENS = {"K", "Kinv", "E", "F"}
_POL_GENS = {"a", "astar", "b", "bstar"}
_INVERT = {"K": "Kinv", "Kinv": "K", "a": "astar", "astar": "a"}


class ParseError(Exception):
    pass


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"bad character at {pos}: {text[pos:pos+10]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, make_gen, gen_names, one):
        self.toks = tokens
        self.i = 0
        self.make_gen = make_gen
        self.gen_names = gen_names
        self.one = one

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ParseError(f"expected {expect!r}, got {tok!r}")
        self.i += 1
        return tok

    # values are ('s', ExactScalar) or ('e', element)

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at token {self.peek()!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            w = self.term()
            v = self._add(v, w if op == "+" else self._neg(w))
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            w = self.factor()
            v = self._mul(v, w) if op == "*" else self._div(v, w)
        return v

    def factor(self):
        neg = False
        while self.peek() == "-":
            self.take()
            neg = not neg
        v = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            n = self.take()
            if not n.isdigit():
                raise ParseError(f"expected integer exponent, got {n!r}")
            v = self._pow(v, sign * int(n))
        return self._neg(v) if neg else v

    def atom(self):
        tok = self.take()
        if tok == "(":
            v = self.expr()
            self.take(")")
            return v
        if tok.isdigit():
            return ("s", from_fraction(int(tok)))
        if tok == "s":
            return ("s", scalars.s_power(1))
        if tok == "i":
            return ("s", from_fraction(0, 1))
        if tok in self.gen_names:
            return ("e", self.make_gen(tok))
        raise ParseError(f"unknown identifier {tok!r}")

    def _promote(self, v):
        kind, val = v
        if kind == "e":
            return val
        return self.one.scale(val)

    def _add(self, v, w):
        if v[0] == "s" and w[0] == "s":
            return ("s", v[1] + w[1])
        return ("e", self._promote(v) + self._promote(w))

    def _neg(self, v):
        if v[0] == "s":
            return ("s", -v[1])
        return ("e", v[1].scale(-scalars.ONE))

    def _mul(self, v, w):
        if v[0] == "s" and w[0] == "s":
            return ("s", v[1] * w[1])
        if v[0] == "s":
            return ("e", w[1].scale(v[1]))
        if w[0] == "s":
            return ("e", v[1].scale(w[1]))
        return ("e", v[1] * w[1])

    def _div(self, v, w):
        if w[0] != "s":
            raise ParseError("division is only defined by scalar values")
        if v[0] == "s":
            return ("s", v[1] / w[1])
        return ("e", v[1].scale(w[1].inv()))

    def _pow(self, v, n):
        if v[0] == "s":
            if n == 0:
                return ("s", scalars.ONE)
            base = v[1] if n > 0 else v[1].inv()
            out = scalars.ONE
            for _ in range(abs(n)):
                out = out * base
            return ("s", out)
        el = v[1]
        if n == 0:
            return ("e", self.one)
        if n < 0:
            el = self._invert_element(el)
            n = -n
        out = el
        for _ in range(n - 1):
            out = out * el
        return ("e", out)

    def _invert_element(self, el):
        if len(el.terms) == 1:
            ((mono, coeff),) = el.terms.items()
            if isinstance(el, uq.UqElement) and mono[1] == 0 and mono[2] == 0:
                return uq.uq_monomial(el.tag, -mono[0], 0, 0, coeff.inv())
            if isinstance(el, pol.PolElement) and el.mu == 0 and mono[1] == 0 and mono[2] == 0:
                return pol.pol_monomial(el.mu, -mono[0], 0, 0, coeff.inv())
        raise ParseError("negative powers only apply to scalars and K/a monomials")


def parse_uq(text, tag):
    """Parse an element of U_q(tag) from the expression grammar."""
    p = _Parser(_tokenize(text), lambda g: uq.uq_gen(tag, g), _UQ_GENS, uq.uq_one(tag))
    kind, val = p.parse()
    return val if kind == "e" else uq.uq_one(tag).scale(val)


def parse_pol(text, mu):
    """Parse an element of Pol_q(mu) from the expression grammar."""
    p = _Parser(_tokenize(text), lambda g: pol.pol_gen(mu, g), _POL_GENS, pol.pol_one(mu))
    kind, val = p.parse()
    return val if kind == "e" else pol.pol_one(mu).scale(val)


def parse_scalar(text):
    """Parse an ExactScalar (no generator identifiers allowed)."""
    p = _Parser(_tokenize(text), lambda g: None, frozenset(), None)
    kind, val = p.parse()
    if kind != "s":
        raise ParseError("expected a scalar expression")
    return val
