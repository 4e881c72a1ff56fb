"""The polynomial Hopf *-algebras Pol_q(+) (quantum SU(2)) and Pol_q(0)
(quantum Etilde(2)).

Basis monomials are a^r b^s (b*)^t with r in Z, s,t in N; for mu = + a
negative r stands for (a*)^{-r}, for mu = 0 the generator a is unitary and
a^{-1} = a*.  All mixed words rewrite to this basis via

    a b = q b a,  a* b = q^{-1} b a*,  b b* = b* b,
    a* a = 1 - b* b,   a a* = 1 - q^2 b b*      (mu = +)
    a* a = a a* = 1                             (mu = 0),

with the same phases for b* in place of b.
"""

from __future__ import annotations

from functools import lru_cache

from . import scalars
from .scalars import q_power
from .tensors import TagError, TensorElement

__all__ = [
    "PolLeg",
    "PolElement",
    "pol_zero",
    "pol_one",
    "pol_monomial",
    "pol_gen",
    "pol_multiply",
    "pol_star",
    "pol_counit",
    "pol_antipode",
    "pol_comultiply",
]


def _q(k):
    return q_power(k)


def _mul_gen(mu, terms, gen):
    """Right-multiply a mono->coeff dict by a single generator."""
    out = {}

    def add(key, val):
        acc = out.get(key)
        s = val if acc is None else acc + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    for (r, s, t), c in terms.items():
        if gen == "b":
            add((r, s + 1, t), c)
        elif gen == "bstar":
            add((r, s, t + 1), c)
        elif gen == "a":
            c2 = c * _q(-(s + t))
            if r >= 0 or mu == 0:
                add((r + 1, s, t), c2)
            else:
                # (a*)^{-r} a = (a*)^{-r-1} (1 - b* b)
                add((r + 1, s, t), c2)
                add((r + 1, s + 1, t + 1), -c2)
        elif gen == "astar":
            c2 = c * _q(s + t)
            if r <= 0 or mu == 0:
                add((r - 1, s, t), c2)
            else:
                # a^r a* = a^{r-1} (1 - q^2 b b*)
                add((r - 1, s, t), c2)
                add((r - 1, s + 1, t + 1), -c2 * _q(2))
        else:
            raise ValueError(f"unknown generator {gen!r}")
    return out


def _mono_mul(mu, x, y):
    r2, s2, t2 = y
    terms = {x: scalars.ONE}
    gen_a = "a" if r2 >= 0 else "astar"
    for _ in range(abs(r2)):
        terms = _mul_gen(mu, terms, gen_a)
    for _ in range(s2):
        terms = _mul_gen(mu, terms, "b")
    for _ in range(t2):
        terms = _mul_gen(mu, terms, "bstar")
    return terms


def _mono_str(mono):
    r, s, t = mono
    if r == s == t == 0:
        return "1"
    bits = []
    if r:
        name = "a" if r > 0 else "astar"
        bits.append(name if abs(r) == 1 else f"{name}^{abs(r)}")
    if s:
        bits.append("b" if s == 1 else f"b^{s}")
    if t:
        bits.append("bstar" if t == 1 else f"bstar^{t}")
    return "*".join(bits)


class PolLeg:
    """Leg descriptor for TensorElement over Pol_q(mu)."""

    __slots__ = ("mu",)
    one_mono = (0, 0, 0)

    def __init__(self, mu):
        object.__setattr__(self, "mu", mu)

    def __setattr__(self, *a):
        raise AttributeError("PolLeg is immutable")

    def mono_mul(self, a, b):
        return _mono_mul(self.mu, a, b)

    def mono_str(self, mono):
        return _mono_str(mono)

    def __eq__(self, other):
        return isinstance(other, PolLeg) and self.mu == other.mu

    def __hash__(self):
        return hash(("pol", self.mu))

    def __repr__(self):
        return f"Pol({'+' if self.mu else '0'})"


class PolElement:
    __slots__ = ("mu", "terms")

    def __init__(self, mu, terms=None):
        object.__setattr__(self, "mu", mu)
        clean = {}
        if terms:
            for k, v in terms.items():
                if not v.is_zero():
                    clean[k] = v
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("PolElement is immutable")

    def __add__(self, other):
        if self.mu != other.mu:
            raise TagError("Pol tag mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k)
            s = c if acc is None else acc + c
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return PolElement(self.mu, terms)

    def __sub__(self, other):
        return self + other.scale(-scalars.ONE)

    def scale(self, c):
        if c.is_zero():
            return PolElement(self.mu)
        return PolElement(self.mu, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        return pol_multiply(self, other)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, PolElement)
            and self.mu == other.mu
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.mu, frozenset(self.terms.items())))

    def coefficient(self, mono):
        return self.terms.get(mono, scalars.ZERO)

    def degree(self):
        return max((abs(r) + s + t for (r, s, t) in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            ms = _mono_str(mono)
            cs = repr(c)
            if cs == "1":
                bits.append(ms)
            elif ms == "1":
                bits.append(f"({cs})")
            else:
                bits.append(f"({cs})*{ms}")
        return " + ".join(bits)


def pol_zero(mu):
    return PolElement(mu)


def pol_one(mu):
    return PolElement(mu, {(0, 0, 0): scalars.ONE})


def pol_monomial(mu, r, s, t, coeff=None):
    return PolElement(mu, {(r, s, t): coeff if coeff is not None else scalars.ONE})


def pol_gen(mu, name):
    mono = {"a": (1, 0, 0), "astar": (-1, 0, 0), "b": (0, 1, 0), "bstar": (0, 0, 1)}[name]
    return pol_monomial(mu, *mono)


def pol_multiply(x, y):
    if x.mu != y.mu:
        raise TagError("Pol tag mismatch")
    out = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            c = cx * cy
            if c.is_zero():
                continue
            for mono, coef in _mono_mul(x.mu, mx, my).items():
                val = c * coef
                acc = out.get(mono)
                s = val if acc is None else acc + val
                if s.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = s
    return PolElement(x.mu, out)


def pol_star(x):
    """(a^r b^s (b*)^t)* = q^{r(s+t)} a^{-r} b^t (b*)^s, antilinear."""
    out = {}
    for (r, s, t), c in x.terms.items():
        key = (-r, t, s)
        val = c.conjugate() * _q(r * (s + t))
        acc = out.get(key)
        out[key] = val if acc is None else acc + val
    return PolElement(x.mu, out)


def pol_counit(x):
    """epsilon(a^r b^s (b*)^t) = delta_{s,0} delta_{t,0}."""
    total = scalars.ZERO
    for (r, s, t), c in x.terms.items():
        if s == 0 and t == 0:
            total = total + c
    return total


def pol_antipode(x):
    """S(a) = a*, S(a*) = a, S(b) = -q b, S(b*) = -q^{-1} b*."""
    out = {}
    for (r, s, t), c in x.terms.items():
        key = (-r, s, t)
        val = c * _q(s - t) * _q(r * (s + t))
        if (s + t) % 2:
            val = -val
        acc = out.get(key)
        out[key] = val if acc is None else acc + val
    return PolElement(x.mu, out)


@lru_cache(maxsize=None)
def _delta_gen_power(mu, gen, n):
    leg = PolLeg(mu)
    legs = (leg, leg)
    one = scalars.ONE
    if gen == "a":
        if mu:
            base = TensorElement(
                legs,
                {((1, 0, 0), (1, 0, 0)): one, ((0, 0, 1), (0, 1, 0)): -_q(1)},
            )
        else:
            base = TensorElement(legs, {((1, 0, 0), (1, 0, 0)): one})
    elif gen == "astar":
        if mu:
            base = TensorElement(
                legs,
                {((-1, 0, 0), (-1, 0, 0)): one, ((0, 1, 0), (0, 0, 1)): -_q(1)},
            )
        else:
            base = TensorElement(legs, {((-1, 0, 0), (-1, 0, 0)): one})
    elif gen == "b":
        base = TensorElement(
            legs, {((0, 1, 0), (1, 0, 0)): one, ((-1, 0, 0), (0, 1, 0)): one}
        )
    else:  # bstar
        base = TensorElement(
            legs, {((0, 0, 1), (-1, 0, 0)): one, ((1, 0, 0), (0, 0, 1)): one}
        )
    if n == 0:
        return TensorElement.unit(legs)
    if n == 1:
        return base
    return _delta_gen_power(mu, gen, n - 1) * base


def pol_comultiply(x):
    """Delta_mu on the basis monomials, as a two-leg TensorElement."""
    mu = x.mu
    leg = PolLeg(mu)
    legs = (leg, leg)
    total = TensorElement(legs)
    for (r, s, t), c in x.terms.items():
        part = TensorElement.unit(legs).scale(c)
        if r:
            part = part * _delta_gen_power(mu, "a" if r > 0 else "astar", abs(r))
        if s:
            part = part * _delta_gen_power(mu, "b", s)
        if t:
            part = part * _delta_gen_power(mu, "bstar", t)
        total = total + part
    return total
