"""Tensor products of algebra legs with independent per-leg normalization.

A TensorElement stores a finite sum of pure tensors of basis monomials; each
leg carries its own algebra descriptor (a UqLeg or PolLeg) that knows how to
multiply two of its monomials back into normal form.
"""

from __future__ import annotations

from . import scalars

__all__ = ["TensorElement", "TagError"]


class TagError(Exception):
    """Raised on products or coproducts with incompatible sign tags."""


class TensorElement:
    __slots__ = ("legs", "terms")

    def __init__(self, legs, terms=None):
        object.__setattr__(self, "legs", tuple(legs))
        object.__setattr__(self, "terms", dict(terms) if terms else {})

    def __setattr__(self, *a):
        raise AttributeError("TensorElement is immutable")

    @classmethod
    def unit(cls, legs):
        key = tuple(leg.one_mono for leg in legs)
        return cls(legs, {key: scalars.ONE})

    def __add__(self, other):
        if self.legs != other.legs:
            raise TagError("tensor legs differ")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k)
            s = c if acc is None else acc + c
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return TensorElement(self.legs, terms)

    def __sub__(self, other):
        return self + other.scale(-scalars.ONE)

    def scale(self, c):
        if c.is_zero():
            return TensorElement(self.legs)
        return TensorElement(self.legs, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if self.legs != other.legs:
            raise TagError("tensor legs differ")
        out = {}
        legs = self.legs
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                coeff = c1 * c2
                if coeff.is_zero():
                    continue
                # per-leg normal-form products, then distribute
                partial = [((), coeff)]
                for leg, a, b in zip(legs, k1, k2):
                    prod = leg.mono_mul(a, b)
                    nxt = []
                    for prefix, pc in partial:
                        for mono, mc in prod.items():
                            c = pc * mc
                            if not c.is_zero():
                                nxt.append((prefix + (mono,), c))
                    partial = nxt
                    if not partial:
                        break
                for key, c in partial:
                    acc = out.get(key)
                    s = c if acc is None else acc + c
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        return TensorElement(legs, out)

    def apply_leg(self, index, fn, new_legs):
        """Replace leg `index` by the (possibly multi-leg) image under fn.

        fn maps a leg monomial to a TensorElement on some fixed legs; those
        legs are spliced in place of the original one.
        """
        legs = self.legs[:index] + tuple(new_legs) + self.legs[index + 1 :]
        out = {}
        for key, c in self.terms.items():
            image = fn(key[index])
            for ikey, ic in image.terms.items():
                nk = key[:index] + ikey + key[index + 1 :]
                coeff = c * ic
                if coeff.is_zero():
                    continue
                acc = out.get(nk)
                s = coeff if acc is None else acc + coeff
                if s.is_zero():
                    out.pop(nk, None)
                else:
                    out[nk] = s
        return TensorElement(legs, out)

    def flip(self):
        """Swap the two legs of a 2-leg tensor (the opposite coproduct)."""
        if len(self.legs) != 2:
            raise ValueError("flip needs exactly two legs")
        legs = (self.legs[1], self.legs[0])
        return TensorElement(legs, {(b, a): c for (a, b), c in self.terms.items()})

    def map_coefficients(self, fn):
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                out[k] = v
        return TensorElement(self.legs, out)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.legs == other.legs
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for key, c in sorted(self.terms.items()):
            mono = " (x) ".join(leg.mono_str(m) for leg, m in zip(self.legs, key))
            bits.append(f"({c!r})*[{mono}]")
        return " + ".join(bits)
