"""Hopf pairings <U_q(mu), Pol_q(mu)> and the theta-functionals.

Two independent evaluation routes are kept side by side:

* pair_closed -- the closed product formula through the Gauss factors G_n,
* pair_oracle -- recursive coproduct expansion seeded only by the four
  generator pairings (and the forced K^{-1} values).

The theta-functionals on the off-diagonal algebras pick out the pure-K
coefficient; their stars and convolution products are evaluated through
`conv_eval`, which expands a probe along a chain of composable functionals.
"""

from __future__ import annotations

from . import scalars
from .pol import PolElement, pol_comultiply
from .qfunctions import gauss_g
from .scalars import q_power, s_power
from .tensors import TagError
from .uq import UqElement, uq_antipode, uq_comultiply, uq_star

__all__ = [
    "pair_closed",
    "pair_closed_mono",
    "pair_oracle",
    "pair_oracle_mono",
    "pair_theta",
    "pair_theta_star",
    "theta_item",
    "theta_star_item",
    "pol_item",
    "conv_eval",
    "chain_signs",
]

_SEED = {
    ("K", "a"): s_power(-1),
    ("K", "astar"): s_power(1),
    ("Kinv", "a"): s_power(1),
    ("Kinv", "astar"): s_power(-1),
    ("E", "b"): scalars.ONE,
    ("F", "bstar"): -q_power(-1),
}

_GEN_COPRO = {
    "K": (("K", "K"),),
    "Kinv": (("Kinv", "Kinv"),),
    "E": (("E", "K"), ("Kinv", "E")),
    "F": (("F", "K"), ("Kinv", "F")),
}

_GEN_EPS = {"K": scalars.ONE, "Kinv": scalars.ONE, "E": scalars.ZERO, "F": scalars.ZERO}


def _peel_uq(mono):
    m, n, l = mono
    if m > 0:
        return "K", (m - 1, n, l)
    if m < 0:
        return "Kinv", (m + 1, n, l)
    if n > 0:
        return "E", (0, n - 1, l)
    return "F", (0, 0, l - 1)


def _peel_pol(mono):
    r, s, t = mono
    if r > 0:
        return "a", (r - 1, s, t)
    if r < 0:
        return "astar", (r + 1, s, t)
    if s > 0:
        return "b", (0, s - 1, t)
    return "bstar", (0, 0, t - 1)


def _pol_gen_name(mono):
    r, s, t = mono
    if (abs(r), s, t) == (1, 0, 0):
        return "a" if r > 0 else "astar"
    if (r, s, t) == (0, 1, 0):
        return "b"
    if (r, s, t) == (0, 0, 1):
        return "bstar"
    return None


_gen_cache = {}


def _pair_gen(gen, pmono, mu):
    """<gen, pmono> for one U_q generator against a Pol basis monomial."""
    key = (gen, pmono, mu)
    hit = _gen_cache.get(key)
    if hit is not None:
        return hit
    if pmono == (0, 0, 0):
        val = _GEN_EPS[gen]
    else:
        name = _pol_gen_name(pmono)
        if name is not None:
            val = _SEED.get((gen, name), scalars.ZERO)
        else:
            h, rest = _peel_pol(pmono)
            hmono = {
                "a": (1, 0, 0),
                "astar": (-1, 0, 0),
                "b": (0, 1, 0),
                "bstar": (0, 0, 1),
            }[h]
            val = scalars.ZERO
            for g1, g2 in _GEN_COPRO[gen]:
                c1 = _pair_gen(g1, hmono, mu)
                if c1.is_zero():
                    continue
                c2 = _pair_gen(g2, rest, mu)
                if not c2.is_zero():
                    val = val + c1 * c2
    _gen_cache[key] = val
    return val


_pol_copro_cache = {}


def _pol_copro_mono(mu, mono):
    key = (mu, mono)
    hit = _pol_copro_cache.get(key)
    if hit is None:
        hit = tuple(pol_comultiply(PolElement(mu, {mono: scalars.ONE})).terms.items())
        _pol_copro_cache[key] = hit
    return hit


_oracle_cache = {}


def pair_oracle_mono(umono, pmono, mu):
    """Recursive pairing of PBW monomial against Pol monomial, seeds only."""
    key = (umono, pmono, mu)
    hit = _oracle_cache.get(key)
    if hit is not None:
        return hit
    if umono == (0, 0, 0):
        r, s, t = pmono
        val = scalars.ONE if s == 0 and t == 0 else scalars.ZERO
    elif pmono == (0, 0, 0):
        m, n, l = umono
        val = scalars.ONE if n == 0 and l == 0 else scalars.ZERO
    else:
        g, rest = _peel_uq(umono)
        val = scalars.ZERO
        for (p1, p2), c in _pol_copro_mono(mu, pmono):
            c1 = _pair_gen(g, p1, mu)
            if c1.is_zero():
                continue
            c2 = pair_oracle_mono(rest, p2, mu)
            if not c2.is_zero():
                val = val + c * c1 * c2
    _oracle_cache[key] = val
    return val


def pair_closed_mono(umono, pmono, mu):
    """Prop.-formula pairing; negative Pol(+) a-powers route to the oracle."""
    r, s, t = pmono
    if mu == 1 and r < 0:
        return pair_oracle_mono(umono, pmono, mu)
    m, n, l = umono
    if s != n or t != l:
        return scalars.ZERO
    # basis change (b*)^t = (-q)^{-t} (-q b*)^t
    val = s_power(m * (-r + s - t)) * s_power(r * (n + l)) * gauss_g(n) * gauss_g(l)
    val = val * s_power(-2 * t)
    if t % 2:
        val = -val
    return val


def _bilinear(fn):
    def paired(u, p, mu=None):
        if mu is None:
            if u.tag[0] != u.tag[1] or u.tag[0] != p.mu:
                raise TagError("pairing needs matching diagonal tags")
            mu = p.mu
        total = scalars.ZERO
        for um, uc in u.terms.items():
            for pm, pc in p.terms.items():
                v = fn(um, pm, mu)
                if not v.is_zero():
                    total = total + uc * pc * v
        return total

    return paired


pair_closed = _bilinear(pair_closed_mono)
pair_oracle = _bilinear(pair_oracle_mono)


def pair_theta(w):
    """<theta, K^m E^n F^l> = delta_{n,0} delta_{l,0}: the pure-K coefficient sum."""
    total = scalars.ZERO
    for (m, n, l), c in w.terms.items():
        if n == 0 and l == 0:
            total = total + c
    return total


_theta_star_cache = {}


def pair_theta_star(w):
    """<theta_{nu mu}^*, x> = conj <theta_{nu mu}, S(x)^*> on U_q(mu,nu)."""
    total = scalars.ZERO
    for mono, c in w.terms.items():
        key = (w.tag, mono)
        val = _theta_star_cache.get(key)
        if val is None:
            el = uq_star(uq_antipode(UqElement(w.tag, {mono: scalars.ONE})))
            val = pair_theta(el).conjugate()
            _theta_star_cache[key] = val
        if not val.is_zero():
            total = total + c * val
    return total


# --- convolution chains -----------------------------------------------------
#
# A chain item is a hashable tuple describing one functional together with its
# sign pair (left, right):
#
#   ("pol", mu, PolElement)        on U_q(mu,mu)
#   ("theta", (mu, nu))            on U_q(mu,nu), mu != nu
#   ("theta_star", (mu, nu))       on U_q(mu,nu): the star of theta_{nu mu}


def pol_item(p):
    return ("pol", p.mu, p)


def theta_item(tag):
    return ("theta", tag)


def theta_star_item(tag):
    return ("theta_star", tag)


def _item_signs(item):
    if item[0] == "pol":
        return (item[1], item[1])
    return item[1]


def chain_signs(chain):
    """Composed (left, right) sign pair of a chain; raises if not composable."""
    left, right = _item_signs(chain[0])
    for item in chain[1:]:
        l2, r2 = _item_signs(item)
        if l2 != right:
            raise TagError("chain items are not composable")
        right = r2
    return (left, right)


def _item_eval(item, w):
    kind = item[0]
    if kind == "pol":
        return pair_closed(w, item[2], item[1])
    if kind == "theta":
        return pair_theta(w)
    return pair_theta_star(w)


_conv_cache = {}


def conv_eval(chain, w):
    """Evaluate the convolution product of the chain against w.

    The product of functionals f_1 ... f_k with composable sign pairs is a
    functional on U_q(left_1, right_k); the probe is expanded along the
    intermediate coproducts.
    """
    chain = tuple(chain)
    signs = chain_signs(chain)
    if w.tag != signs:
        raise TagError(f"probe tag {w.tag} does not match chain signs {signs}")
    total = scalars.ZERO
    for mono, c in w.terms.items():
        v = _conv_eval_mono(chain, w.tag, mono)
        if not v.is_zero():
            total = total + c * v
    return total


def _conv_eval_mono(chain, tag, mono):
    key = (chain, tag, mono)
    hit = _conv_cache.get(key)
    if hit is not None:
        return hit
    el = UqElement(tag, {mono: scalars.ONE})
    if len(chain) == 1:
        val = _item_eval(chain[0], el)
    else:
        ups = _item_signs(chain[0])[1]
        d = uq_comultiply(el, ups)
        left_tag = d.legs[0].tag
        rest = chain[1:]
        val = scalars.ZERO
        for (m1, m2), c in d.terms.items():
            c1 = _item_eval(chain[0], UqElement(left_tag, {m1: scalars.ONE}))
            if c1.is_zero():
                continue
            c2 = _conv_eval_mono(rest, d.legs[1].tag, m2)
            if not c2.is_zero():
                val = val + c * c1 * c2
    _conv_cache[key] = val
    return val
