"""PBW engines for the four *-algebras U_q(mu,nu), mu,nu in {0,+}.

Elements are finite sums of ordered monomials K^m E^n F^l with exact scalar
coefficients.  Products are rewritten to this basis with the rules

    E K^m = q^{-m} K^m E,   F K^m = q^m K^m F,
    F E   = E F - lam * (mu K^2 - nu K^{-2}),

where the sign pair (mu, nu) selects which K^{+-2} terms survive.  Sign 0 is
written 0 and sign + is written 1 internally.
"""

from __future__ import annotations

from functools import lru_cache

from . import scalars
from .scalars import ExactScalar, lam, q_power
from .tensors import TagError, TensorElement

__all__ = [
    "SIGNS",
    "TAGS",
    "UqLeg",
    "UqElement",
    "uq_zero",
    "uq_one",
    "uq_monomial",
    "uq_gen",
    "uq_multiply",
    "uq_star",
    "uq_counit",
    "uq_counit_flagged",
    "uq_antipode",
    "uq_comultiply",
    "uq_comultiply2",
    "coassoc_pair",
    "casimir",
    "casimir_second_form",
    "reduce_casimir",
    "default_tau",
    "mu_action",
    "podles_embed",
    "podles_relations",
    "reorder_kfe",
    "sign_str",
]

SIGNS = (0, 1)  # 0 and +
TAGS = tuple((a, b) for a in SIGNS for b in SIGNS)


def sign_str(s):
    return "+" if s else "0"


def _q(k):
    return q_power(k)


@lru_cache(maxsize=None)
def _nf_fe1(tag, l):
    """Normal form of F^l E in U_q(tag), as a mono -> coeff tuple of pairs."""
    if l == 0:
        return (((0, 1, 0), scalars.ONE),)
    mu, nu = tag
    out = {}
    for (a, b, c), coef in _nf_fe1(tag, l - 1):
        out[(a, b, c + 1)] = out.get((a, b, c + 1), scalars.ZERO) + coef
    L = lam()
    if mu:
        key = (2, 0, l - 1)
        out[key] = out.get(key, scalars.ZERO) - L * _q(2 * (l - 1))
    if nu:
        key = (-2, 0, l - 1)
        out[key] = out.get(key, scalars.ZERO) + L * _q(-2 * (l - 1))
    return tuple((k, v) for k, v in out.items() if not v.is_zero())


@lru_cache(maxsize=None)
def _nf_fe(tag, l, n):
    """Normal form of F^l E^n in U_q(tag)."""
    if n == 0:
        return (((0, 0, l), scalars.ONE),)
    if l == 0:
        return (((0, n, 0), scalars.ONE),)
    out = {}
    for (a, b, c), coef in _nf_fe(tag, l, n - 1):
        for (a2, b2, c2), coef2 in _nf_fe1(tag, c):
            key = (a + a2, b + b2, c2)
            val = coef * coef2 * _q(-b * a2)
            acc = out.get(key)
            s = val if acc is None else acc + val
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return tuple(out.items())


def _mono_mul(tag, x, y):
    """Product of two PBW monomials, as a dict mono -> coeff."""
    m1, n1, l1 = x
    m2, n2, l2 = y
    phase = _q(m2 * (l1 - n1))
    out = {}
    for (a, b, c), coef in _nf_fe(tag, l1, n2):
        key = (m1 + m2 + a, n1 + b, c + l2)
        val = phase * coef * _q(-n1 * a)
        acc = out.get(key)
        s = val if acc is None else acc + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return out


class UqLeg:
    """Leg descriptor for TensorElement over one U_q(mu,nu)."""

    __slots__ = ("tag",)
    one_mono = (0, 0, 0)

    def __init__(self, tag):
        object.__setattr__(self, "tag", tag)

    def __setattr__(self, *a):
        raise AttributeError("UqLeg is immutable")

    def mono_mul(self, a, b):
        return _mono_mul(self.tag, a, b)

    def mono_str(self, mono):
        return _mono_str(mono)

    def __eq__(self, other):
        return isinstance(other, UqLeg) and self.tag == other.tag

    def __hash__(self):
        return hash(("uq", self.tag))

    def __repr__(self):
        return f"U({sign_str(self.tag[0])},{sign_str(self.tag[1])})"


def _mono_str(mono):
    m, n, l = mono
    if m == n == l == 0:
        return "1"
    bits = []
    if m:
        name = "K" if m > 0 else "Kinv"
        bits.append(name if abs(m) == 1 else f"{name}^{abs(m)}")
    if n:
        bits.append("E" if n == 1 else f"E^{n}")
    if l:
        bits.append("F" if l == 1 else f"F^{l}")
    return "*".join(bits)


class UqElement:
    """Finite linear combination of PBW monomials in one U_q(mu,nu)."""

    __slots__ = ("tag", "terms")

    def __init__(self, tag, terms=None):
        object.__setattr__(self, "tag", tag)
        clean = {}
        if terms:
            for k, v in terms.items():
                if not v.is_zero():
                    clean[k] = v
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("UqElement is immutable")

    def __add__(self, other):
        if self.tag != other.tag:
            raise TagError(f"tag mismatch: {self.tag} vs {other.tag}")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k)
            s = c if acc is None else acc + c
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return UqElement(self.tag, terms)

    def __sub__(self, other):
        return self + other.scale(-scalars.ONE)

    def scale(self, c):
        if c.is_zero():
            return UqElement(self.tag)
        return UqElement(self.tag, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        return uq_multiply(self, other)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, UqElement)
            and self.tag == other.tag
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.tag, frozenset(self.terms.items())))

    def coefficient(self, mono):
        return self.terms.get(mono, scalars.ZERO)

    def pbw_degree(self):
        return max((abs(m) + n + l for (m, n, l) in self.terms), default=0)

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


def uq_zero(tag):
    return UqElement(tag)


def uq_one(tag):
    return UqElement(tag, {(0, 0, 0): scalars.ONE})


def uq_monomial(tag, m, n, l, coeff=None):
    return UqElement(tag, {(m, n, l): coeff if coeff is not None else scalars.ONE})


def uq_gen(tag, name):
    """One of the generators K, Kinv, E, F."""
    mono = {"K": (1, 0, 0), "Kinv": (-1, 0, 0), "E": (0, 1, 0), "F": (0, 0, 1)}[name]
    return uq_monomial(tag, *mono)


def uq_multiply(x, y):
    if x.tag != y.tag:
        raise TagError(f"tag mismatch: {x.tag} vs {y.tag}")
    out = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            c = cx * cy
            if c.is_zero():
                continue
            for mono, coef in _mono_mul(x.tag, mx, my).items():
                val = c * coef
                acc = out.get(mono)
                s = val if acc is None else acc + val
                if s.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = s
    return UqElement(x.tag, out)


def uq_star(x):
    """The *-involution: K* = K, E* = F, antilinear and antimultiplicative."""
    out = {}
    for (m, n, l), c in x.terms.items():
        out[(m, l, n)] = c.conjugate() * _q(m * (n - l))
    return UqElement(x.tag, out)


def uq_counit(x):
    """epsilon(K^m E^n F^l) = delta_{n,0} delta_{l,0}; 0 off the diagonal."""
    return uq_counit_flagged(x)[0]


def uq_counit_flagged(x):
    """Counit value plus a flag telling whether the tag was diagonal."""
    diagonal = x.tag[0] == x.tag[1]
    if not diagonal:
        return scalars.ZERO, False
    total = scalars.ZERO
    for (m, n, l), c in x.terms.items():
        if n == 0 and l == 0:
            total = total + c
    return total, True


def uq_antipode(x):
    """S: U_q(mu,nu) -> U_q(nu,mu); S(K) = K^{-1}, S(E) = -qE, S(F) = -q^{-1}F."""
    mu, nu = x.tag
    target = (nu, mu)
    out = {}
    for (m, n, l), c in x.terms.items():
        scale = c * _q((n - l) * (m + 1))
        if (n + l) % 2:
            scale = -scale
        for (a, b, cc), coef in _nf_fe(target, l, n):
            key = (a - m, b, cc)
            val = scale * coef
            acc = out.get(key)
            s = val if acc is None else acc + val
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return UqElement(target, out)


@lru_cache(maxsize=None)
def _delta_gen_power(leg_tags, which, n):
    """(Delta E)^n or (Delta F)^n on the given pair of legs, cached."""
    legs = tuple(UqLeg(t) for t in leg_tags)
    if which == "E":
        base = TensorElement(
            legs,
            {
                ((0, 1, 0), (1, 0, 0)): scalars.ONE,  # E (x) K
                ((-1, 0, 0), (0, 1, 0)): scalars.ONE,  # K^{-1} (x) E
            },
        )
    else:
        base = TensorElement(
            legs,
            {
                ((0, 0, 1), (1, 0, 0)): scalars.ONE,  # F (x) K
                ((-1, 0, 0), (0, 0, 1)): scalars.ONE,  # K^{-1} (x) F
            },
        )
    if n == 0:
        return TensorElement.unit(legs)
    if n == 1:
        return base
    return _delta_gen_power(leg_tags, which, n - 1) * base


def uq_comultiply(x, upsilon):
    """Delta_{mu nu}^{upsilon}: U_q(mu,nu) -> U_q(mu,ups) (x) U_q(ups,nu)."""
    mu, nu = x.tag
    leg_tags = ((mu, upsilon), (upsilon, nu))
    legs = tuple(UqLeg(t) for t in leg_tags)
    total = TensorElement(legs)
    for (m, n, l), c in x.terms.items():
        t = TensorElement(legs, {((m, 0, 0), (m, 0, 0)): c})
        if n:
            t = t * _delta_gen_power(leg_tags, "E", n)
        if l:
            t = t * _delta_gen_power(leg_tags, "F", l)
        total = total + t
    return total


def uq_comultiply2(x, ups1, ups2):
    """Two-step coproduct (iota (x) Delta^{ups2}) Delta^{ups1}, three legs."""
    first = uq_comultiply(x, ups1)
    mid_tag = first.legs[1].tag

    def expand(mono):
        return uq_comultiply(UqElement(mid_tag, {mono: scalars.ONE}), ups2)

    leg2 = (UqLeg((mid_tag[0], ups2)), UqLeg((ups2, mid_tag[1])))
    return first.apply_leg(1, expand, leg2)


def coassoc_pair(x, k, l):
    """Both sides of (Delta_{ik}^l (x) iota) Delta_{ij}^k = (iota (x) Delta_{lj}^k) Delta_{ij}^l."""
    first = uq_comultiply(x, k)
    left_tag = first.legs[0].tag

    def expand_left(mono):
        return uq_comultiply(UqElement(left_tag, {mono: scalars.ONE}), l)

    new_legs = (UqLeg((left_tag[0], l)), UqLeg((l, left_tag[1])))
    lhs = first.apply_leg(0, expand_left, new_legs)
    rhs = uq_comultiply2(x, l, k)
    return lhs, rhs


def casimir(tag):
    """C = EF + lam^2 (q^{-1} mu K^2 + q nu K^{-2})."""
    mu, nu = tag
    L2 = lam() * lam()
    terms = {(0, 1, 1): scalars.ONE}
    if mu:
        terms[(2, 0, 0)] = L2 * _q(-1)
    if nu:
        terms[(-2, 0, 0)] = L2 * _q(1)
    return UqElement(tag, terms)


def casimir_second_form(tag):
    """The equivalent form FE + lam^2 (q mu K^2 + q^{-1} nu K^{-2})."""
    mu, nu = tag
    L2 = lam() * lam()
    fe = uq_multiply(uq_gen(tag, "F"), uq_gen(tag, "E"))
    extra = {}
    if mu:
        extra[(2, 0, 0)] = L2 * _q(1)
    if nu:
        extra[(-2, 0, 0)] = L2 * _q(-1)
    return fe + UqElement(tag, extra)


def default_tau():
    """tau = q^{-1} lam^2, the normalization used for A_{0+}."""
    return _q(-1) * lam() * lam()


def reduce_casimir(x, tau=None):
    """Normal form in the quotient A^tau = U_q(tag)/(C = tau).

    Monomials with both E- and F-powers are eliminated through
    EF = tau - lam^2 (q^{-1} mu K^2 + q nu K^{-2}); the reduced basis is
    {K^m E^n} union {K^m F^l}.
    """
    if tau is None:
        tau = default_tau()
    mu, nu = x.tag
    L2 = lam() * lam()
    c_k2 = L2 * _q(-1) if mu else None
    c_km2 = L2 * _q(1) if nu else None
    out = {}
    work = list(x.terms.items())
    while work:
        (m, n, l), c = work.pop()
        if c.is_zero():
            continue
        if n == 0 or l == 0:
            acc = out.get((m, n, l))
            s = c if acc is None else acc + c
            if s.is_zero():
                out.pop((m, n, l), None)
            else:
                out[(m, n, l)] = s
            continue
        # K^m E^n F^l = K^m E^{n-1} (EF) F^{l-1}
        work.append(((m, n - 1, l - 1), c * tau))
        if c_k2 is not None:
            work.append(((m + 2, n - 1, l - 1), -c * c_k2 * _q(-2 * (n - 1))))
        if c_km2 is not None:
            work.append(((m - 2, n - 1, l - 1), -c * c_km2 * _q(2 * (n - 1))))
    return UqElement(x.tag, out)


def mu_action(x, y):
    """Right Miyashita-Ulbrich action of U_q(+,+) on U_q(0,+):

    x <| y = S_{+0}(y_(1)+0) * x * y_(2)0+, using Delta_{++}^0 of y.
    """
    if x.tag != (0, 1) or y.tag != (1, 1):
        raise TagError("mu_action needs x in U_q(0,+) and y in U_q(+,+)")
    dy = uq_comultiply(y, 0)  # legs (+,0), (0,+)
    total = uq_zero((0, 1))
    for (m1, m2), c in dy.terms.items():
        left = uq_antipode(UqElement((1, 0), {m1: c}))
        total = total + uq_multiply(uq_multiply(left, x), UqElement((0, 1), {m2: scalars.ONE}))
    return total


# --- standard Podles sphere inside A_{0+} ----------------------------------


def _podles_generators():
    """Images Xb, Xb*, Zb of the sphere generators inside U_q(0,+)."""
    tag = (0, 1)
    c = scalars.s_power(1) * (_q(-1) - _q(1))  # q^{1/2} (q^{-1} - q)
    # Xb = c * E K^{-1}; in PBW order E K^{-1} = q K^{-1} E
    xb = UqElement(tag, {(-1, 1, 0): c * _q(1)})
    xbs = uq_star(xb)
    zb = uq_monomial(tag, -2, 0, 0)
    return xb, xbs, zb


def podles_embed(words):
    """Map a *-polynomial in the sphere generators into A_{0+}.

    `words` is an iterable of (coeff, word) with word a tuple over
    {"X", "Xs", "Z", "Zs"}; the result is reduced modulo C = q^{-1} lam^2.
    """
    xb, xbs, zb = _podles_generators()
    images = {"X": xb, "Xs": xbs, "Z": zb, "Zs": uq_star(zb)}
    tag = (0, 1)
    total = uq_zero(tag)
    for coeff, word in words:
        acc = uq_one(tag).scale(coeff)
        for sym in word:
            acc = uq_multiply(acc, images[sym])
        total = total + acc
    return reduce_casimir(total)


def podles_relations():
    """The five defining relations of Pol(S^2_{q0}) as (name, words) pairs.

    Each words list maps to zero in A_{0+} under podles_embed.
    """
    one = scalars.ONE
    q2 = _q(2)
    q4 = _q(4)
    return [
        ("Z_selfadjoint", [(one, ("Zs",)), (-one, ("Z",))]),
        ("XZ_commutation", [(one, ("X", "Z")), (-q2, ("Z", "X"))]),
        ("XsZ_commutation", [(one, ("Xs", "Z")), (-_q(-2), ("Z", "Xs"))]),
        ("XsX_sphere", [(one, ("Xs", "X")), (-one, ("Z",)), (one, ("Z", "Z"))]),
        ("XXs_sphere", [(one, ("X", "Xs")), (-q2, ("Z",)), (q4, ("Z", "Z"))]),
    ]


def reorder_kfe(tag, m, l, n):
    """The word K^m F^l E^n expressed in the PBW basis K^m' E^n' F^l'."""
    out = {}
    for (a, b, c), coef in _nf_fe(tag, l, n):
        out[(m + a, b, c)] = coef
    return UqElement(tag, out)
