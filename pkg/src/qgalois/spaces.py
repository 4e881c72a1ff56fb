"""Truncated Hilbert spaces and weighted-shift operators between them.

Every operator in the model maps a basis vector to at most one basis vector
(weighted shifts, diagonals, and the interleaving permutation), so an
operator is stored column-wise: a target index array and a weight array.

Truncation boundaries are distinguished from genuine boundaries (the n = 0
edge of an N-graded axis, where e.g. a_+ really annihilates): columns whose
path ever crosses a truncation edge are flagged `clipped`, and defect masks
keep only columns where no participating operator clips.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

__all__ = [
    "Axis",
    "TruncSpace",
    "h_plus",
    "h_zeroplus",
    "podles_space",
    "ColOp",
    "shift_op",
    "diag_op",
    "perm_op",
    "zero_op",
    "OpSum",
    "TensorOp",
    "max_col_defect",
    "tensor2_defect",
    "probe_defect_nd",
]


@dataclass(frozen=True)
class Axis:
    lo: int
    hi: int  # inclusive
    genuine_lo: bool = False
    genuine_hi: bool = False

    @property
    def size(self):
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class TruncSpace:
    kind: str
    axes: tuple

    @property
    def dim(self):
        d = 1
        for ax in self.axes:
            d *= ax.size
        return d

    def coord_arrays(self):
        """Per-axis coordinate of each flat index (row-major)."""
        sizes = [ax.size for ax in self.axes]
        out = []
        for i, ax in enumerate(self.axes):
            rep_inner = int(np.prod(sizes[i + 1 :], dtype=int)) if i + 1 < len(sizes) else 1
            rep_outer = int(np.prod(sizes[:i], dtype=int)) if i > 0 else 1
            c = np.repeat(np.arange(ax.lo, ax.hi + 1), rep_inner)
            out.append(np.tile(c, rep_outer))
        return out

    def flat_index(self, coords):
        idx = 0
        for ax, c in zip(self.axes, coords):
            idx = idx * ax.size + (c - ax.lo)
        return idx

    def window_mask(self, windows):
        """Boolean mask of flat indices inside per-axis (lo, hi) windows.

        Entries of `windows` may be None to leave an axis unconstrained.
        """
        mask = np.ones(self.dim, dtype=bool)
        for carr, win in zip(self.coord_arrays(), windows):
            if win is None:
                continue
            lo, hi = win
            mask &= (carr >= lo) & (carr <= hi)
        return mask


def h_plus(N, W):
    """l^2(N) (x) l^2(Z) truncated to n in [0, N), k in [-W, W]."""
    return TruncSpace("h_plus", (Axis(0, N - 1, genuine_lo=True), Axis(-W, W)))


def h_zeroplus(M, W):
    """l^2(Z) (x) l^2(Z) truncated to n in [-M, M], k in [-W, W]."""
    return TruncSpace("h_zeroplus", (Axis(-M, M), Axis(-W, W)))


def podles_space(N):
    """l^2(N) truncated to 0..N-1."""
    return TruncSpace("podles", (Axis(0, N - 1, genuine_lo=True),))


class ColOp:
    """Operator with at most one nonzero entry per column."""

    __slots__ = ("domain", "codomain", "tgt", "w", "clipped", "shifts")

    def __init__(self, domain, codomain, tgt, w, clipped, shifts=None):
        self.domain = domain
        self.codomain = codomain
        self.tgt = tgt
        self.w = w
        self.clipped = clipped
        self.shifts = shifts  # per-axis uniform shift, or None

    def compose(self, other):
        """self after other (matrix product self @ other)."""
        if other.codomain is not self.domain and other.codomain != self.domain:
            raise ValueError("composition domain mismatch")
        ok = other.tgt >= 0
        safe = np.where(ok, other.tgt, 0)
        tgt = np.where(ok, self.tgt[safe], -1)
        w = np.where(ok, other.w * self.w[safe], 0.0 + 0.0j)
        clipped = other.clipped | (ok & self.clipped[safe])
        shifts = None
        if self.shifts is not None and other.shifts is not None:
            shifts = tuple(a + b for a, b in zip(self.shifts, other.shifts))
        return ColOp(other.domain, self.codomain, tgt, w, clipped, shifts)

    def __matmul__(self, other):
        return self.compose(other)

    def adjoint(self):
        """Adjoint; codomain columns not reached are conservatively clipped."""
        dim_dom = self.codomain.dim
        tgt = np.full(dim_dom, -1, dtype=np.int64)
        w = np.zeros(dim_dom, dtype=complex)
        clipped = np.ones(dim_dom, dtype=bool)
        ok = (self.tgt >= 0) & (self.w != 0)
        tgt[self.tgt[ok]] = np.nonzero(ok)[0]
        w[self.tgt[ok]] = np.conj(self.w[ok])
        clipped[self.tgt[ok]] = self.clipped[ok]
        shifts = tuple(-s for s in self.shifts) if self.shifts is not None else None
        return ColOp(self.codomain, self.domain, tgt, w, clipped, shifts)

    def scale(self, c):
        return ColOp(self.domain, self.codomain, self.tgt, self.w * c, self.clipped, self.shifts)

    def apply_basis(self, idx):
        """Image of basis column idx as (target, weight) or None."""
        t = self.tgt[idx]
        if t < 0 or self.w[idx] == 0:
            return None
        return int(t), self.w[idx]

    def to_sparse(self):
        ok = (self.tgt >= 0) & (self.w != 0)
        cols = np.nonzero(ok)[0]
        return sp.csc_matrix(
            (self.w[ok], (self.tgt[ok], cols)),
            shape=(self.codomain.dim, self.domain.dim),
        )

    def max_abs(self):
        return float(np.abs(self.w).max()) if self.w.size else 0.0


def shift_op(domain, codomain, shifts, weight_fn):
    """Weighted shift e_c -> weight(c) e_{c+shift}; clips at truncation edges.

    weight_fn takes the per-axis coordinate arrays of the domain and returns
    the complex weight array.  Crossing a genuine edge zeroes the weight
    without clipping; crossing a truncation edge clips.
    """
    coords = domain.coord_arrays()
    w = np.asarray(weight_fn(*coords), dtype=complex)
    tgt = np.zeros(domain.dim, dtype=np.int64)
    inside = np.ones(domain.dim, dtype=bool)
    genuine_out = np.zeros(domain.dim, dtype=bool)
    for ax_c, ax_d, carr, s in zip(domain.axes, codomain.axes, coords, shifts):
        c_new = carr + s
        below = c_new < ax_d.lo
        above = c_new > ax_d.hi
        genuine_out |= (below & ax_d.genuine_lo) | (above & ax_d.genuine_hi)
        inside &= ~(below | above)
        tgt = tgt * ax_d.size + np.clip(c_new - ax_d.lo, 0, ax_d.size - 1)
    clipped = ~inside & ~genuine_out & (w != 0)
    w = np.where(inside, w, 0.0 + 0.0j)
    tgt = np.where(inside, tgt, -1)
    return ColOp(domain, codomain, tgt, w, clipped, tuple(shifts))


def diag_op(space, weight_fn):
    return shift_op(space, space, (0,) * len(space.axes), weight_fn)


def identity_op(space):
    return diag_op(space, lambda *c: np.ones(space.dim))


def perm_op(domain, codomain, tgt, w=None):
    """Explicit column map (e.g. the interleaving unitary); no shift tag."""
    tgt = np.asarray(tgt, dtype=np.int64)
    if w is None:
        w = np.ones(domain.dim, dtype=complex)
    clipped = tgt < 0
    return ColOp(domain, codomain, tgt, np.where(tgt >= 0, w, 0), clipped, None)


def zero_op(domain, codomain):
    return ColOp(
        domain,
        codomain,
        np.full(domain.dim, -1, dtype=np.int64),
        np.zeros(domain.dim, dtype=complex),
        np.zeros(domain.dim, dtype=bool),
        None,
    )


class OpSum:
    """Finite sum of ColOps between one fixed space pair."""

    __slots__ = ("domain", "codomain", "ops")

    def __init__(self, domain, codomain, ops=()):
        self.domain = domain
        self.codomain = codomain
        self.ops = list(ops)

    @classmethod
    def of(cls, *ops):
        return cls(ops[0].domain, ops[0].codomain, ops)

    def __add__(self, other):
        return OpSum(self.domain, self.codomain, self.ops + other.ops)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return OpSum(self.domain, self.codomain, [op.scale(c) for op in self.ops])

    def compose(self, other):
        ops = [a @ b for a in self.ops for b in other.ops]
        return OpSum(other.domain, self.codomain, ops)

    def __matmul__(self, other):
        return self.compose(other)

    def adjoint(self):
        return OpSum(self.codomain, self.domain, [op.adjoint() for op in self.ops])

    def unclipped_mask(self):
        mask = np.ones(self.domain.dim, dtype=bool)
        for op in self.ops:
            mask &= ~op.clipped
        return mask

    def to_sparse(self):
        total = sp.csc_matrix((self.codomain.dim, self.domain.dim), dtype=complex)
        for op in self.ops:
            total = total + op.to_sparse()
        return total


def max_col_defect(opsum, column_mask, codomain_windows=None):
    """Maximum column 2-norm of an OpSum over the masked columns.

    If codomain_windows is given, entries landing outside the per-axis
    windows are discarded before taking norms (weak-topology checks).
    """
    cols_idx = np.nonzero(column_mask)[0]
    if cols_idx.size == 0:
        return float("nan")
    rows = []
    cols = []
    data = []
    keep = None
    if codomain_windows is not None:
        keep = opsum.codomain.window_mask(codomain_windows)
    for op in self_ops(opsum):
        t = op.tgt[cols_idx]
        w = op.w[cols_idx]
        ok = (t >= 0) & (w != 0)
        if keep is not None:
            ok &= keep[np.clip(t, 0, None)]
        rows.append(t[ok])
        cols.append(np.nonzero(ok)[0])
        data.append(w[ok])
    if not rows:
        return 0.0
    mat = sp.csc_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(opsum.codomain.dim, cols_idx.size),
    )
    if mat.nnz == 0:
        return 0.0
    sq = np.asarray(mat.multiply(mat.conj()).sum(axis=0)).real.ravel()
    return float(np.sqrt(sq.max()))


def self_ops(opsum):
    return opsum.ops if isinstance(opsum, OpSum) else [opsum]


class TensorOp:
    """Finite sum of elementary tensor products of ColOps (shared leg count)."""

    __slots__ = ("legs_domain", "legs_codomain", "terms")

    def __init__(self, legs_domain, legs_codomain, terms=()):
        self.legs_domain = tuple(legs_domain)
        self.legs_codomain = tuple(legs_codomain)
        self.terms = list(terms)  # (coeff, (op_leg1, op_leg2, ...))

    def __add__(self, other):
        return TensorOp(self.legs_domain, self.legs_codomain, self.terms + other.terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return TensorOp(
            self.legs_domain, self.legs_codomain, [(t[0] * c, t[1]) for t in self.terms]
        )

    def compose(self, other):
        terms = []
        for c1, legs1 in self.terms:
            for c2, legs2 in other.terms:
                terms.append((c1 * c2, tuple(a @ b for a, b in zip(legs1, legs2))))
        return TensorOp(other.legs_domain, self.legs_codomain, terms)

    def __matmul__(self, other):
        return self.compose(other)

    def adjoint(self):
        return TensorOp(
            self.legs_codomain,
            self.legs_domain,
            [(np.conj(c), tuple(op.adjoint() for op in legs)) for c, legs in self.terms],
        )

    def leg_masks(self):
        masks = [np.ones(s.dim, dtype=bool) for s in self.legs_domain]
        for _, legs in self.terms:
            for i, op in enumerate(legs):
                masks[i] &= ~op.clipped
        return masks

    def prune(self, eps):
        terms = []
        for c, legs in self.terms:
            bound = abs(c)
            for op in legs:
                bound *= op.max_abs()
            if bound > eps:
                terms.append((c, legs))
        return TensorOp(self.legs_domain, self.legs_codomain, terms)


def tensor2_defect(tensor, mask1, mask2, codomain_windows=None, batch_cols=None):
    """Max column norm of a 2-leg TensorOp over mask1 x mask2 columns.

    Terms are grouped by their per-leg uniform shifts; within a group the
    weights superpose, across groups the targets are disjoint, so the squared
    column norm is the sum of squared group weights.  All leg ops must carry
    shift tags and must not clip on the mask.
    """
    idx1 = np.nonzero(mask1)[0]
    idx2 = np.nonzero(mask2)[0]
    if idx1.size == 0 or idx2.size == 0:
        return float("nan")
    groups = {}
    for c, (op1, op2) in tensor.terms:
        if op1.shifts is None or op2.shifts is None:
            raise ValueError("tensor2_defect needs uniform-shift legs")
        for op, idx in ((op1, idx1), (op2, idx2)):
            bad = op.clipped[idx]
            if bad.any():
                raise ValueError("mask contains clipped columns")
        key = (op1.shifts, op2.shifts)
        groups.setdefault(key, []).append((c, op1, op2))
    coords1 = [c[idx1] for c in tensor.legs_domain[0].coord_arrays()]
    coords2 = [c[idx2] for c in tensor.legs_domain[1].coord_arrays()]
    wins = codomain_windows if codomain_windows is not None else (None, None)
    d2 = np.zeros((idx1.size, idx2.size))
    for (s1, s2), terms in groups.items():
        w = np.zeros((idx1.size, idx2.size), dtype=complex)
        for c, op1, op2 in terms:
            w += c * np.outer(op1.w[idx1], op2.w[idx2])
        absw2 = np.abs(w) ** 2
        for axis_sel, coords, shift, win in ((0, coords1, s1, wins[0]), (1, coords2, s2, wins[1])):
            if win is None:
                continue
            ok = np.ones(coords[0].size, dtype=bool)
            for carr, sh, axwin in zip(coords, shift, win):
                if axwin is None:
                    continue
                t = carr + sh
                ok &= (t >= axwin[0]) & (t <= axwin[1])
            absw2 *= ok[:, None] if axis_sel == 0 else ok[None, :]
        d2 += absw2
    return float(np.sqrt(d2.max()))


def probe_defect_nd(tensor, probes, codomain_windows=None):
    """Max image norm of an n-leg TensorOp over elementary-tensor probes.

    probes: list of per-leg flat index tuples.  Entries landing outside the
    codomain windows (per leg, per axis) are discarded.
    """
    if not tensor.terms:
        return 0.0
    nlegs = len(tensor.legs_domain)
    coeffs = np.array([c for c, _ in tensor.terms])
    keeps = [None] * nlegs
    if codomain_windows is not None:
        keeps = [
            s.window_mask(w) if w is not None else None
            for s, w in zip(tensor.legs_codomain, codomain_windows)
        ]
    dims = [s.dim for s in tensor.legs_codomain]
    worst = 0.0
    for probe in probes:
        key = np.zeros(len(tensor.terms), dtype=np.int64)
        val = coeffs.copy()
        ok = np.ones(len(tensor.terms), dtype=bool)
        for leg in range(nlegs):
            t = np.array([legs[leg].tgt[probe[leg]] for _, legs in tensor.terms])
            w = np.array([legs[leg].w[probe[leg]] for _, legs in tensor.terms])
            clip = np.array([legs[leg].clipped[probe[leg]] for _, legs in tensor.terms])
            if clip.any():
                raise ValueError("probe hits clipped column")
            ok &= (t >= 0) & (w != 0)
            if keeps[leg] is not None:
                ok &= keeps[leg][np.clip(t, 0, None)]
            key = key * dims[leg] + np.clip(t, 0, None)
            val = val * w
        key = key[ok]
        val = val[ok]
        if key.size == 0:
            continue
        order = np.argsort(key, kind="stable")
        key = key[order]
        val = val[order]
        cuts = np.nonzero(np.diff(key))[0] + 1
        sums = np.add.reduceat(val, np.concatenate(([0], cuts)))
        worst = max(worst, float(np.sqrt((np.abs(sums) ** 2).sum())))
    return worst
