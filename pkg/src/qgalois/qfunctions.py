"""q-Pochhammer symbols, the q-exponential E_q, q-binomials, Gauss factors
G_n, and Wall polynomials.

The finite constructions work generically over ExactScalar or over plain
complex/float scalars; the infinite Pochhammer exists only numerically and is
truncated once the multiplicative update is within tolerance.
"""

from __future__ import annotations

import math

from . import scalars
from .scalars import ExactScalar, from_fraction, from_int, q_power, s_power

__all__ = [
    "QConvergenceError",
    "QDomainError",
    "qpoch",
    "qpoch_inf",
    "eq_exp",
    "qbinom",
    "qbinom_exact",
    "gauss_g",
    "wall",
    "wall_exact",
]

DEFAULT_TOL = 1e-15


class QConvergenceError(Exception):
    """Raised when an infinite q-product cannot converge (|q| >= 1)."""


class QDomainError(Exception):
    """Raised on out-of-domain arguments (m > n, vanishing Pochhammer, ...)."""


def qpoch(a, q, n, tol=DEFAULT_TOL):
    """(a; q)_n = prod_{k=0}^{n-1} (1 - q^k a); n may be math.inf (numeric only)."""
    if n is None or n == math.inf:
        return qpoch_inf(a, q, tol)
    if n < 0:
        raise QDomainError("qpoch needs n >= 0")
    if isinstance(a, ExactScalar) or isinstance(q, ExactScalar):
        one = scalars.ONE
        out = one
        qk = one
        for _ in range(n):
            out = out * (one - qk * a)
            qk = qk * q
        return out
    out = 1.0 + 0.0j if isinstance(a, complex) or isinstance(q, complex) else 1.0
    qk = out
    for _ in range(n):
        out = out * (1 - qk * a)
        qk = qk * q
    return out


def qpoch_inf(a, q, tol=DEFAULT_TOL):
    """(a; q)_inf as a truncated product; |q| < 1 required."""
    if abs(q) >= 1:
        raise QConvergenceError(f"(a;q)_inf diverges for |q| = {abs(q)} >= 1")
    out = 1.0
    qk = 1.0
    while True:
        factor = 1 - qk * a
        out = out * factor
        qk = qk * q
        if abs(qk * a) < tol:
            return out


def eq_exp(z, q, terms):
    """Partial sum of E_q(z) = sum_k q^{k(k-1)/2} z^k / (q;q)_k."""
    exact = isinstance(z, ExactScalar) or isinstance(q, ExactScalar)
    one = scalars.ONE if exact else 1.0
    total = one
    term = one
    qk = one
    zq = z
    for k in range(1, terms + 1):
        qk = qk * q  # q^k
        # term_k = term_{k-1} * q^{k-1} z / (1 - q^k)
        term = term * zq / (one - qk)
        total = total + term
        zq = zq * q
    return total


def qbinom(n, m, q):
    """Gaussian binomial [n m]_q = (q;q)_n / ((q;q)_{n-m} (q;q)_m)."""
    if m < 0 or m > n:
        raise QDomainError(f"qbinom requires 0 <= m <= n, got ({n}, {m})")
    num = qpoch(q, q, n)
    return num / (qpoch(q, q, n - m) * qpoch(q, q, m))


def qbinom_exact(n, m):
    """[n m]_q in ExactScalar with the formal q = s^2."""
    return qbinom(n, m, q_power(1))


def gauss_g(n):
    """G_n(q) = (q^2;q^2)_n / (q^{n(n-1)/2} (1-q^2)^n), exact in ExactScalar."""
    if n < 0:
        raise QDomainError("gauss_g needs n >= 0")
    q2 = q_power(2)
    num = qpoch(q2, q2, n)
    den = s_power(n * (n - 1))  # q^{n(n-1)/2}
    one_minus_q2 = scalars.ONE - q2
    for _ in range(n):
        den = den * one_minus_q2
    return num / den


def wall(n, x, a, q):
    """Wall polynomial p_n(x; a, 0 | q) = 2phi1(q^{-n}, 0; qa | q, qx).

    Evaluated as the terminating sum of n+1 terms.  Raises QDomainError if
    (qa; q)_k vanishes for some k <= n.
    """
    exact = any(isinstance(v, ExactScalar) for v in (x, a, q))
    one = scalars.ONE if exact else 1.0 + 0.0j if isinstance(x, complex) else 1.0
    total = one
    term = one
    qinv = one / q
    qmn = one
    for _ in range(n):
        qmn = qmn * qinv  # q^{-n} after the loop
    qk = one  # q^{k-1} inside the loop
    apow = one  # q^k a accumulates as (qa) * q^{k-1}
    for k in range(1, n + 1):
        num_factor = one - qmn * qk  # 1 - q^{k-1} q^{-n}
        poch_a = one - q * a * qk  # 1 - q^k a
        poch_q = one - q * qk  # 1 - q^k
        if (poch_a.is_zero() if exact else poch_a == 0):
            raise QDomainError(f"(qa;q)_{k} vanishes in wall polynomial")
        term = term * num_factor * (q * x) / (poch_a * poch_q)
        total = total + term
        qk = qk * q
    return total


def wall_exact(n, a_exact, q_exact=None):
    """p_n(x; a, 0 | q) as exact coefficients of x^0..x^n.

    The base defaults to the formal q = s^2; pass q_exact = q^2 for the
    Wall polynomials in base q^2.  Returns [c_0, ..., c_n] with
    p_n(x) = sum_k c_k x^k.
    """
    q = q_exact if q_exact is not None else q_power(1)
    one = scalars.ONE
    coeffs = [one]
    term = one
    qinv = one / q
    qmn = one
    for _ in range(n):
        qmn = qmn * qinv
    qk = one
    for k in range(1, n + 1):
        num_factor = one - qmn * qk
        poch_a = one - q * a_exact * qk
        poch_q = one - q * qk
        if poch_a.is_zero():
            raise QDomainError(f"(qa;q)_{k} vanishes in wall polynomial")
        term = term * num_factor * q / (poch_a * poch_q)
        coeffs.append(term)
        qk = qk * q
    return coeffs
