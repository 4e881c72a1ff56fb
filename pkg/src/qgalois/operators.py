"""Concrete truncated operators: the SU_q(2) generators on H_+, the
Etilde_q(2) generators on H_{0+}, the intertwiner L_{0+}, the sphere
operators, and realizations of Pol/Galois-module elements as operator sums.

An OperatorContext fixes (q, truncations, Pochhammer tolerance) and caches
the generator and monomial operators built on top of them.
"""

from __future__ import annotations

import numpy as np

from .pol import pol_comultiply
from .qfunctions import qpoch, qpoch_inf
from .spaces import ColOp, OpSum, TensorOp, diag_op, h_plus, h_zeroplus, podles_space, shift_op
from .xmodule import g_entry

__all__ = ["wall_values_mp", "OperatorContext", "eval_word"]


def wall_values_mp(deg, q, n_points, d, dps):
    """Wall values p_deg(q^{2n}; q^{2d}, 0 | q^2) for n in n_points.

    The terminating series has terms up to q^{-deg^2} that cancel down to
    tiny values, and those values are ill-conditioned in q itself; so the
    base, the parameter and the arguments are all formed from the one double
    q inside the working precision.
    """
    import mpmath

    out = np.empty(len(n_points))
    with mpmath.workdps(dps):
        qm = mpmath.mpf(q)
        base = qm * qm
        am = qm ** (2 * d)
        qmn = base ** (-deg)
        for i, n in enumerate(n_points):
            xm = qm ** (2 * n)
            total = mpmath.mpf(1)
            term = mpmath.mpf(1)
            qk = mpmath.mpf(1)
            for k in range(1, deg + 1):
                term = term * (1 - qmn * qk) * base * xm / ((1 - base * am * qk) * (1 - qk * base))
                total += term
                qk *= base
            out[i] = float(total)
    return out


def _wall_dps(q, deg, d):
    """Working precision covering the q^{-deg(deg+2d)} coefficient growth."""
    return 30 + int((deg * deg + 2 * d * deg + 10) * (-np.log10(q)))


class OperatorContext:
    """Operator factory over fixed truncations N, M, W at one q."""

    def __init__(self, q, N, M, W, tol=1e-15, podles_dim=None):
        if M < N:
            raise ValueError("need M >= N so that L_{0+} lands inside H_{0+}")
        self.q = float(q)
        self.N, self.M, self.W = N, M, W
        self.tol = tol
        self.hp = h_plus(N, W)
        self.hz = h_zeroplus(M, W)
        self.pod = podles_space(podles_dim if podles_dim is not None else N)
        self.q2poch_inf = qpoch_inf(q * q, q * q, tol)
        self._gens = None
        self._pol_cache = {}
        self._theta_cache = {}
        self._v0_cache = {}

    # --- generators --------------------------------------------------------

    @property
    def gens(self):
        if self._gens is None:
            q = self.q
            hp, hz, pod = self.hp, self.hz, self.pod
            sq = lambda arr: np.sqrt(np.maximum(arr, 0.0))
            self._gens = {
                "a": shift_op(hp, hp, (-1, 0), lambda n, k: sq(1 - q ** (2 * n))),
                "astar": shift_op(hp, hp, (1, 0), lambda n, k: sq(1 - q ** (2 * (n + 1)))),
                "b": shift_op(hp, hp, (0, 1), lambda n, k: q**n + 0j),
                "bstar": shift_op(hp, hp, (0, -1), lambda n, k: q**n + 0j),
                "v0": shift_op(hz, hz, (-1, 0), lambda n, k: np.ones(n.size)),
                "v0star": shift_op(hz, hz, (1, 0), lambda n, k: np.ones(n.size)),
                "n0": shift_op(hz, hz, (0, 1), lambda n, k: (q + 0j) ** n),
                "n0star": shift_op(hz, hz, (0, -1), lambda n, k: (q + 0j) ** n),
                "L": shift_op(hp, hz, (0, 0), lambda n, k: self._l_weight(n)),
                "Lstar": shift_op(hz, hp, (0, 0), lambda n, k: self._l_weight(n)),
                "u": shift_op(hp, hz, (0, 0), lambda n, k: np.ones(n.size)),
                "X": shift_op(pod, pod, (-1,), lambda k: q**k * sq(1 - q ** (2 * k))),
                "Xstar": shift_op(
                    pod, pod, (1,), lambda k: q ** (k + 1) * sq(1 - q ** (2 * (k + 1)))
                ),
                "Z": diag_op(pod, lambda k: q ** (2 * k) + 0j),
                "A": shift_op(pod, pod, (-1,), lambda k: sq(1 - q ** (2 * k))),
                "Astar": shift_op(pod, pod, (1,), lambda k: sq(1 - q ** (2 * (k + 1)))),
                "B": diag_op(pod, lambda k: q**k + 0j),
            }
        return self._gens

    def _l_weight(self, n):
        """((q^2;q^2)_inf / (q^2;q^2)_n)^{1/2}, zero for n < 0."""
        q2 = self.q * self.q
        nmax = int(n.max()) if n.size else 0
        poch = np.ones(max(nmax, 0) + 1)
        for j in range(1, poch.size):
            poch[j] = poch[j - 1] * (1 - q2**j)
        w = np.zeros(n.size, dtype=complex)
        ok = n >= 0
        w[ok] = np.sqrt(self.q2poch_inf / poch[n[ok]])
        return w

    def identity(self, space):
        return diag_op(space, lambda *c: np.ones(space.dim))

    def qpoch_diag(self, a_weight_exp, base_exp, count=None):
        """Diagonal (q^{a} b*b ; q^{base})_count-style operator on H_+.

        Returns diag over (n,k) of prod_{j=0}^{count-1} (1 - q^{base*j + a + 2n});
        count=None means the infinite product.
        """
        q = self.q

        def weight(n, k):
            vals = np.ones(n.size, dtype=complex)
            for i in range(n.size):
                x = q ** (a_weight_exp + 2 * n[i])
                vals[i] = (
                    qpoch_inf(x, q**base_exp, self.tol)
                    if count is None
                    else qpoch(x, q**base_exp, count)
                )
            return vals

        return diag_op(self.hp, weight)

    # --- realizations ------------------------------------------------------

    def v0_pow(self, r):
        op = self._v0_cache.get(r)
        if op is None:
            base = self.gens["v0"] if r >= 0 else self.gens["v0star"]
            op = self.identity(self.hz)
            for _ in range(abs(r)):
                op = base @ op
            self._v0_cache[r] = op
        return op

    def pol_plus_op(self, mono):
        """Operator of the Pol(+) basis monomial a^r b^s (b*)^t on H_+."""
        op = self._pol_cache.get(mono)
        if op is None:
            r, s, t = mono
            g = self.gens
            op = self.identity(self.hp)
            for _ in range(abs(r)):
                op = op @ (g["a"] if r > 0 else g["astar"])
            for _ in range(s):
                op = op @ g["b"]
            for _ in range(t):
                op = op @ g["bstar"]
            self._pol_cache[mono] = op
        return op

    def pol_plus_elem(self, p):
        """OpSum of a Pol(+) element, coefficients evaluated at q."""
        ops = []
        for mono, c in p.terms.items():
            ops.append(self.pol_plus_op(mono).scale(complex(c.eval(self.q))))
        return OpSum(self.hp, self.hp, ops)

    def x_mono_op(self, mono):
        """v_0^r L b^s (b*)^t as a ColOp H_+ -> H_{0+}."""
        r, s, t = mono
        return self.v0_pow(r) @ self.gens["L"] @ self.pol_plus_op((0, s, t))

    def x_elem(self, x, scale=1.0):
        """Realize an XElement under a_0 -> v_0, theta^* -> L_{0+}."""
        ops = []
        for mono, c in x.terms.items():
            ops.append(self.x_mono_op(mono).scale(scale * complex(c.eval(self.q))))
        return OpSum(self.hp, self.hz, ops)

    def x_elem_grouped(self, x, scale=1.0, dps=60):
        """Realize an XElement, collapsing same-shift monomials diagonally.

        Monomials sharing (r, s - t) superpose on the same matrix positions;
        their combined diagonal weight is summed exactly and evaluated in mp
        precision per n, so cancellation-heavy sums (Wall expansions) stay
        accurate.
        """
        import mpmath

        groups = {}
        for (r, s, t), c in x.terms.items():
            groups.setdefault((r, s - t), []).append((s + t, c))
        ops = []
        narr = np.arange(self.N)
        for (r, dk), parts in groups.items():
            with mpmath.workdps(dps):
                qm = mpmath.mpf(self.q)
                cvals = [(e, c.eval_mp(self.q, dps)) for e, c in parts]
                w = np.array(
                    [complex(sum(cv * qm ** (int(n) * e) for e, cv in cvals)) for n in narr]
                )
            bpart = shift_op(self.hp, self.hp, (0, dk), lambda n, k, w=w: w[n])
            ops.append((self.v0_pow(r) @ self.gens["L"] @ bpart).scale(scale))
        return OpSum(self.hp, self.hz, ops)

    def g_entry_op(self, t, s):
        """Numeric evaluation of the symbolic g_entry (exact route)."""
        g = g_entry(t, s)
        dps = _wall_dps(self.q, min(t, s), abs(t - s))
        return self.x_elem_grouped(g.element, scale=g.prefactor(self.q), dps=dps)

    def gmatrix(self, t, s):
        """Corepresentation entry built directly from numeric Wall data.

        Independent of the exact g_entry route: the Wall polynomial values
        are evaluated pointwise from the terminating series (in mp working
        precision) and folded into one weighted shift.
        """
        q = self.q
        q2 = q * q
        deg = min(t, s)
        d = abs(t - s)
        dps = _wall_dps(q, deg, d)
        wall_diag = wall_values_mp(deg, q, range(self.N), d, dps)
        if t <= s:
            pref = q ** (t * (t - s)) / qpoch(q2, q2, d)
            pref *= np.sqrt(qpoch(q2, q2, s) / qpoch(q2, q2, t))
            bpart = shift_op(
                self.hp,
                self.hp,
                (0, d),
                lambda n, k: wall_diag[n] * q ** (n * d) + 0j,
            )
        else:
            pref = q ** (s * (s - t)) / qpoch(q2, q2, d)
            pref *= np.sqrt(qpoch(q2, q2, t) / qpoch(q2, q2, s))
            pref *= (-q) ** d
            bpart = shift_op(
                self.hp,
                self.hp,
                (0, -d),
                lambda n, k: wall_diag[n] * q ** (n * d) + 0j,
            )
        op = (self.v0_pow(s + t) @ self.gens["L"] @ bpart).scale(pref)
        return OpSum(self.hp, self.hz, [op])

    def coproduct_op(self, p):
        """Delta_+(p) for p in Pol(+), as a TensorOp on H_+ (x) H_+."""
        dp = pol_comultiply(p)
        terms = []
        for (m1, m2), c in dp.terms.items():
            terms.append(
                (complex(c.eval(self.q)), (self.pol_plus_op(m1), self.pol_plus_op(m2)))
            )
        return TensorOp((self.hp, self.hp), (self.hp, self.hp), terms)

    def theta_op(self, mono):
        """theta-evaluation of a Pol(+) monomial on the sphere space."""
        op = self._theta_cache.get(mono)
        if op is None:
            r, s, t = mono
            g = self.gens
            op = self.identity(self.pod)
            for _ in range(abs(r)):
                op = op @ (g["A"] if r > 0 else g["Astar"])
            for _ in range(s + t):
                op = op @ g["B"]
            self._theta_cache[mono] = op
        return op

    def theta_elem(self, p):
        ops = [self.theta_op(m).scale(complex(c.eval(self.q))) for m, c in p.terms.items()]
        return OpSum(self.pod, self.pod, ops)

    def s_series(self, P):
        """Truncated coproduct series of L_{0+}:

        sum_{p<=P} (q^2;q^2)_p^{-1} v_0^p L b^p (x) v_0^p L (-q b*)^p
        """
        q = self.q
        q2 = q * q
        terms = []
        for p in range(P + 1):
            c = ((-q) ** p) / qpoch(q2, q2, p)
            terms.append((c, (self.x_mono_op((p, p, 0)), self.x_mono_op((p, 0, p)))))
        return TensorOp((self.hp, self.hp), (self.hz, self.hz), terms)

    def s_series_tail_bound(self, P):
        """Majorant sum_{p>P} (q^2;q^2)_p^{-1} q^p <= q^{P+1}/((q^2;q^2)_inf (1-q))."""
        return self.q ** (P + 1) / (self.q2poch_inf * (1 - self.q))


def eval_word(ctx, names, space=None):
    """Compose named generator operators left to right as a product.

    eval_word(ctx, ["a", "astar"]) is the operator a a^*; the empty word is
    the identity on `space` (default H_+).  Domain/codomain chaining is
    checked by the composition itself.
    """
    if not names:
        return ctx.identity(space if space is not None else ctx.hp)
    op = ctx.gens[names[0]]
    for name in names[1:]:
        op = op @ ctx.gens[name]
    return op
