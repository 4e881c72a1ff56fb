"""Exact scalar arithmetic over the field Q(i)(s), where s stands for q^(1/2).

Every structure constant in the toolkit lives in this field: powers q^(m/2)
are monomials s^m, and lam = (q - q^{-1})^{-1} = s^2/(s^4 - 1).  Scalars are
kept as gcd-reduced numerator/denominator pairs with a monic denominator, so
equality is plain structural equality.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "GaussRat",
    "ExactScalar",
    "QPoint",
    "ZERO",
    "ONE",
    "from_fraction",
    "from_int",
    "s_power",
    "q_power",
    "lam",
    "poly_to_string",
]


class GaussRat:
    """Gaussian rational a + b*i with Fraction components. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", re if isinstance(re, Fraction) else Fraction(re))
        object.__setattr__(self, "im", im if isinstance(im, Fraction) else Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussRat is immutable")

    def __add__(self, other):
        return GaussRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussRat(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inv(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * other.inv()

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        return isinstance(other, GaussRat) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(self.re, self.im)

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


_G0 = GaussRat(0)
_G1 = GaussRat(1)

# Polynomials in s are tuples of GaussRat, lowest degree first, no trailing zeros.
# The empty tuple is the zero polynomial.

_P0 = ()
_P1 = (_G1,)


def _ptrim(cs):
    n = len(cs)
    while n and cs[n - 1].is_zero():
        n -= 1
    return tuple(cs[:n])


def _padd(a, b):
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _ptrim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return _P0
    if a == _P1:
        return b
    if b == _P1:
        return a
    out = [_G0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return _ptrim(out)


def _pscale(a, c):
    if c.is_zero() or not a:
        return _P0
    if c == _G1:
        return a
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    """Euclidean division in Q(i)[s]; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a or len(a) < len(b):
        return _P0, a
    rem = list(a)
    quo = [_G0] * (len(a) - len(b) + 1)
    inv_lead = b[-1].inv()
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv_lead
        if c.is_zero():
            continue
        quo[k] = c
        for j, cb in enumerate(b):
            rem[k + j] = rem[k + j] - c * cb
    return _ptrim(quo), _ptrim(rem)


def _pmonic(a):
    if not a or a[-1] == _G1:
        return a
    return _pscale(a, a[-1].inv())


def _ptrailing(a):
    for i, c in enumerate(a):
        if not c.is_zero():
            return i
    return 0


def _pis_monomial(a):
    return bool(a) and all(c.is_zero() for c in a[:-1])


def _pgcd(a, b):
    """Monic gcd in Q(i)[s], with fast paths for units and monomials."""
    if not a:
        return _pmonic(b)
    if not b:
        return _pmonic(a)
    if len(a) == 1 or len(b) == 1:
        return _P1
    if _pis_monomial(a):
        k = min(len(a) - 1, _ptrailing(b))
        return (_G0,) * k + (_G1,) if k else _P1
    if _pis_monomial(b):
        k = min(len(b) - 1, _ptrailing(a))
        return (_G0,) * k + (_G1,) if k else _P1
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _peval(a, s):
    acc = 0j
    for c in reversed(a):
        acc = acc * s + complex(c)
    return acc


def poly_to_string(a):
    """Render a polynomial in s for the expression grammar (round-trippable)."""
    if not a:
        return "0"
    parts = []
    for k, c in enumerate(a):
        if c.is_zero():
            continue
        if c.im == 0:
            coef = str(c.re)
        elif c.re == 0:
            coef = f"{c.im}*i" if c.im != 1 else "i"
        else:
            coef = f"({c.re} + {c.im}*i)" if c.im > 0 else f"({c.re} - {-c.im}*i)"
        if k == 0:
            parts.append(coef)
        else:
            spow = "s" if k == 1 else f"s^{k}"
            parts.append(spow if coef == "1" else f"{coef}*{spow}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class ExactScalar:
    """Element of Q(i)(s), normalized: monic denominator, gcd(num, den) = 1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=_P1, *, _normalized=False):
        if not _normalized:
            num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("ExactScalar is immutable")

    # --- ring/field operations -------------------------------------------

    def __add__(self, other):
        if self.den == other.den:
            n = _padd(self.num, other.num)
            if self.den == _P1:
                return ExactScalar(n, _P1, _normalized=True)
            return ExactScalar(n, self.den)
        return ExactScalar(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExactScalar(_pneg(self.num), self.den, _normalized=True)

    def __mul__(self, other):
        if self.den == _P1 and other.den == _P1:
            return ExactScalar(_pmul(self.num, other.num), _P1, _normalized=True)
        # cross-cancel before multiplying to keep degrees down
        g1 = _pgcd(self.num, other.den)
        g2 = _pgcd(other.num, self.den)
        n1 = self.num if g1 == _P1 else _pdivmod(self.num, g1)[0]
        d2 = other.den if g1 == _P1 else _pdivmod(other.den, g1)[0]
        n2 = other.num if g2 == _P1 else _pdivmod(other.num, g2)[0]
        d1 = self.den if g2 == _P1 else _pdivmod(self.den, g2)[0]
        num = _pmul(n1, n2)
        den = _pmul(d1, d2)
        if den != _P1 and den[-1] != _G1:
            inv = den[-1].inv()
            num, den = _pscale(num, inv), _pscale(den, inv)
        return ExactScalar(num, den, _normalized=True)

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverse of 0 in Q(i)(s)")
        num, den = self.den, self.num
        if den[-1] != _G1:
            c = den[-1].inv()
            num, den = _pscale(num, c), _pscale(den, c)
        return ExactScalar(num, den, _normalized=True)

    def __truediv__(self, other):
        return self * other.inv()

    def conjugate(self):
        """Complex conjugation: fixes s, conjugates the Q(i) coefficients."""
        return ExactScalar(
            tuple(c.conjugate() for c in self.num),
            tuple(c.conjugate() for c in self.den),
            _normalized=True,
        )

    def is_zero(self):
        return not self.num

    def __eq__(self, other):
        return (
            isinstance(other, ExactScalar)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.num)

    # --- evaluation --------------------------------------------------------

    def eval(self, q):
        """Evaluate at s = sqrt(q); q may be a QPoint or a positive number."""
        s = q.s if isinstance(q, QPoint) else math.sqrt(q)
        d = _peval(self.den, s)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this q")
        return _peval(self.num, s) / d

    def eval_mp(self, q, dps=50):
        """High-precision evaluation (mpmath), for cancellation-heavy values.

        Rational coefficients are converted exactly; returns an mpmath
        complex number at the requested decimal precision.
        """
        import mpmath

        with mpmath.workdps(dps):
            s = mpmath.sqrt(mpmath.mpf(q.q if isinstance(q, QPoint) else q))

            def horner(poly):
                acc = mpmath.mpc(0)
                for c in reversed(poly):
                    re = mpmath.mpf(c.re.numerator) / c.re.denominator
                    im = mpmath.mpf(c.im.numerator) / c.im.denominator
                    acc = acc * s + mpmath.mpc(re, im)
                return acc

            d = horner(self.den)
            if d == 0:
                raise ZeroDivisionError("denominator vanishes at this q")
            return horner(self.num) / d

    def __repr__(self):
        if self.den == _P1:
            return poly_to_string(self.num)
        return f"({poly_to_string(self.num)}) / ({poly_to_string(self.den)})"


def _normalize(num, den):
    num = _ptrim(num)
    den = _ptrim(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return _P0, _P1
    if den != _P1:
        g = _pgcd(num, den)
        if g != _P1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        if den[-1] != _G1:
            c = den[-1].inv()
            num, den = _pscale(num, c), _pscale(den, c)
    return num, den


ZERO = ExactScalar(_P0, _P1, _normalized=True)
ONE = ExactScalar(_P1, _P1, _normalized=True)


def from_fraction(re, im=0):
    c = GaussRat(Fraction(re), Fraction(im))
    return ZERO if c.is_zero() else ExactScalar((c,), _P1, _normalized=True)


def from_int(n):
    return from_fraction(n)


def s_power(k):
    """s^k = q^(k/2), for any integer k."""
    if k >= 0:
        return ExactScalar((_G0,) * k + (_G1,), _P1, _normalized=True)
    return ExactScalar(_P1, (_G0,) * (-k) + (_G1,), _normalized=True)


def q_power(k):
    """q^k as an exact scalar."""
    return s_power(2 * k)


def lam():
    """lam = (q - q^{-1})^{-1} = s^2 / (s^4 - 1); negative for 0 < q < 1."""
    return ExactScalar((_G0, _G0, _G1), (-_G1, _G0, _G0, _G0, _G1))


class QPoint:
    """A numeric evaluation point 0 < q < 1 with derived s = sqrt(q)."""

    __slots__ = ("q", "s", "digits")

    def __init__(self, q, digits=None):
        q = float(q)
        if not 0.0 < q < 1.0:
            raise ValueError(f"q must satisfy 0 < q < 1, got {q}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "s", math.sqrt(q))
        object.__setattr__(self, "digits", digits)

    def __setattr__(self, *a):
        raise AttributeError("QPoint is immutable")

    def __repr__(self):
        return f"QPoint({self.q})"
