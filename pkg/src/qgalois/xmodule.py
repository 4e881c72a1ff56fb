"""The module C[X]: linear span of a_0^r theta^* b_+^s (b_+*)^t.

These monomials are a vector-space basis; words with Pol(+) a-generators to
the right of theta^* normalize back onto it through the starred commutation
rules

    theta^* a_+^*  = a_0^{-1} theta^*
    theta^* a_+    = a_0 (1 - b_0^* b_0) theta^*
    b_0 theta^*    = theta^* b_+,     b_0^* theta^* = theta^* b_+^*.

The corepresentation-matrix entries g_entry(t, s) carry their square-root
prefactor as a separate exact tag, evaluated only numerically.
"""

from __future__ import annotations

from . import scalars
from .pairing import conv_eval, pol_item, theta_star_item
from .pol import PolElement, pol_monomial, pol_multiply
from .qfunctions import qpoch, wall_exact
from .scalars import q_power
from .tensors import TagError

__all__ = ["XElement", "x_normalize", "x_normalize_word", "x_mul_pol", "GEntry", "g_entry", "pair_x"]


class XElement:
    """Finite sum of basis monomials (r, s, t) with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, v in terms.items():
                if not v.is_zero():
                    clean[k] = v
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("XElement is immutable")

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k)
            s = c if acc is None else acc + c
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return XElement(terms)

    def __sub__(self, other):
        return self + other.scale(-scalars.ONE)

    def scale(self, c):
        if c.is_zero():
            return XElement()
        return XElement({k: v * c for k, v in self.terms.items()})

    def shift_a0(self, k):
        """Left multiplication by a_0^k."""
        return XElement({(r + k, s, t): c for (r, s, t), c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, XElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (r, s, t) in sorted(self.terms):
            c = self.terms[(r, s, t)]
            word = []
            if r:
                word.append(f"a0^{r}" if r != 1 else "a0")
            word.append("theta*")
            if s:
                word.append(f"b^{s}" if s != 1 else "b")
            if t:
                word.append(f"bstar^{t}" if t != 1 else "bstar")
            bits.append(f"({c!r})*" + "*".join(word))
        return " + ".join(bits)


def x_normalize(pre, post):
    """Normalize pre * theta^* * post with pre in Pol(0), post in Pol(+)."""
    if pre.mu != 0 or post.mu != 1:
        raise TagError("x_normalize expects Pol(0) * theta^* * Pol(+)")
    out = {}
    work = []
    for pm, pc in pre.terms.items():
        for qm, qc in post.terms.items():
            work.append((pc * qc, pm, qm))
    while work:
        c, pm, qm = work.pop()
        if c.is_zero():
            continue
        rho, sig, tau = qm
        if rho == 0:
            # flush: a0^r b0^s b0*^t theta^* = a0^r theta^* b^s b*^t
            r0, s0, t0 = pm
            key = (r0, s0 + sig, t0 + tau)
            acc = out.get(key)
            s = c if acc is None else acc + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
            continue
        if rho > 0:
            # theta^* a_+ = a_0 (1 - b_0^* b_0) theta^*
            absorbed = pol_monomial(0, 1, 0, 0) - pol_monomial(0, 1, 1, 1)
            rest = (rho - 1, sig, tau)
        else:
            # theta^* a_+^* = a_0^{-1} theta^*
            absorbed = pol_monomial(0, -1, 0, 0)
            rest = (rho + 1, sig, tau)
        new_pre = pol_multiply(PolElement(0, {pm: c}), absorbed)
        for pm2, pc2 in new_pre.terms.items():
            work.append((pc2, pm2, rest))
    return XElement(out)


def x_normalize_word(tokens):
    """Normalize a token word containing theta^* exactly once.

    Tokens left of "theta_star" are Pol(0) generators ("a0", "a0inv", "b0",
    "b0star"); tokens right of it are Pol(+) generators ("a", "astar", "b",
    "bstar").
    """
    tokens = list(tokens)
    hits = [i for i, t in enumerate(tokens) if t == "theta_star"]
    if len(hits) != 1:
        raise ValueError("word must contain theta_star exactly once")
    cut = hits[0]
    gen0 = {"a0": (1, 0, 0), "a0inv": (-1, 0, 0), "b0": (0, 1, 0), "b0star": (0, 0, 1)}
    genp = {"a": (1, 0, 0), "astar": (-1, 0, 0), "b": (0, 1, 0), "bstar": (0, 0, 1)}
    pre = pol_monomial(0, 0, 0, 0)
    for t in tokens[:cut]:
        pre = pol_multiply(pre, pol_monomial(0, *gen0[t]))
    post = pol_monomial(1, 0, 0, 0)
    for t in tokens[cut + 1 :]:
        post = pol_multiply(post, pol_monomial(1, *genp[t]))
    return x_normalize(pre, post)


def x_mul_pol(x, p):
    """Right Pol(+)-module action on C[X]."""
    if p.mu != 1:
        raise TagError("right module action takes Pol(+)")
    total = XElement()
    for (r, s, t), c in x.terms.items():
        post = pol_multiply(pol_monomial(1, 0, s, t), p)
        total = total + x_normalize(pol_monomial(0, r, 0, 0), post).scale(c)
    return total


class GEntry:
    """g_entry value: (sqrt of `sqrt_arg`) times the XElement `element`."""

    __slots__ = ("sqrt_arg", "element")

    def __init__(self, sqrt_arg, element):
        object.__setattr__(self, "sqrt_arg", sqrt_arg)
        object.__setattr__(self, "element", element)

    def __setattr__(self, *a):
        raise AttributeError("GEntry is immutable")

    def prefactor(self, q):
        arg = self.sqrt_arg.eval(q)
        return complex(arg) ** 0.5

    def __repr__(self):
        return f"sqrt({self.sqrt_arg!r}) * [{self.element!r}]"


def g_entry(t, s):
    """Symbolic corepresentation-matrix entry as a GEntry.

    For t <= s:
        q^{t(t-s)} ((q2;q2)_s/(q2;q2)_t)^{1/2} (q2;q2)_{s-t}^{-1}
            a_0^{s+t} theta^* b^{s-t} p_t(b* b; q^{2(s-t)}, 0 | q^2),
    and the mirrored formula with (-q b*)^{t-s} for t >= s.
    """
    q2 = q_power(2)
    terms = {}
    if t <= s:
        d = s - t
        pref = q_power(t * (t - s)) / qpoch(q2, q2, d)
        sqrt_arg = qpoch(q2, q2, s) / qpoch(q2, q2, t)
        coeffs = wall_exact(t, q_power(2 * d), q2)
        for k, c in enumerate(coeffs):
            terms[(s + t, d + k, k)] = pref * c
    else:
        d = t - s
        pref = q_power(s * (s - t)) / qpoch(q2, q2, d)
        pref = pref * q_power(d) * (scalars.ONE if d % 2 == 0 else -scalars.ONE)
        sqrt_arg = qpoch(q2, q2, t) / qpoch(q2, q2, s)
        coeffs = wall_exact(s, q_power(2 * d), q2)
        for k, c in enumerate(coeffs):
            terms[(t + s, k, d + k)] = pref * c
    return GEntry(sqrt_arg, XElement(terms))


def pair_x(x, u):
    """Pairing of an XElement (or GEntry element) against u in U_q(0,+).

    <a_0^r theta^* b^s b*^t, u> expands u through Delta^0 then Delta^+ and
    pairs the three legs with a_0^r, theta^*, and b^s b*^t.
    """
    if isinstance(x, GEntry):
        raise TypeError("pass g.element and apply g.prefactor separately")
    if u.tag != (0, 1):
        raise TagError("pair_x probes live in U_q(0,+)")
    total = scalars.ZERO
    for (r, s, t), c in x.terms.items():
        chain = (
            pol_item(pol_monomial(0, r, 0, 0)),
            theta_star_item((0, 1)),
            pol_item(pol_monomial(1, 0, s, t)),
        )
        v = conv_eval(chain, u)
        if not v.is_zero():
            total = total + c * v
    return total
