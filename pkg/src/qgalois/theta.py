"""The representation of U_q(0,+) on the truncated sphere space.

On basis vectors e_0..e_{dim-1} the generators act as

    K   e_n = q^{-n} e_n            (positive diagonal),
    E       = -q^{-1/2} lam X K,    F = E^dagger,

where X e_k = q^k sqrt(1-q^{2k}) e_{k-1} and Z e_k = q^{2k} e_k are the
concrete sphere operators.  The E, F formulas invert the sphere embedding
X -> q^{1/2}(q^{-1}-q) E K^{-1}; the commutator check [E, F] = -lam K^{-2}
lives in the test suite.
"""

from __future__ import annotations

import numpy as np

from .scalars import QPoint
from .tensors import TagError

__all__ = ["sphere_x", "sphere_z", "theta_generators", "theta_matrix"]


def sphere_x(dim, q):
    """X e_k = q^k sqrt(1 - q^{2k}) e_{k-1}."""
    mat = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        mat[k - 1, k] = q**k * np.sqrt(1.0 - q ** (2 * k))
    return mat


def sphere_z(dim, q):
    """Z e_k = q^{2k} e_k."""
    return np.diag(np.array([q ** (2 * k) for k in range(dim)], dtype=complex))


def theta_generators(dim, q):
    """Matrices of K, K^{-1}, E, F under the representation."""
    lam_val = 1.0 / (q - 1.0 / q)
    k_mat = np.diag(np.array([q ** (-n) for n in range(dim)], dtype=complex))
    kinv_mat = np.diag(np.array([q**n for n in range(dim)], dtype=complex))
    e_mat = -(q ** (-0.5)) * lam_val * (sphere_x(dim, q) @ k_mat)
    f_mat = e_mat.conj().T
    return {"K": k_mat, "Kinv": kinv_mat, "E": e_mat, "F": f_mat}


def theta_matrix(u, dim, q):
    """Matrix of Theta(u) for u in U_q(0,+), on e_0..e_{dim-1}.

    Entry [r, s] is the coefficient of e_r in Theta(u) e_s.
    """
    if u.tag != (0, 1):
        raise TagError("theta_matrix is defined on U_q(0,+)")
    qv = q.q if isinstance(q, QPoint) else float(q)
    gens = theta_generators(dim, qv)
    out = np.zeros((dim, dim), dtype=complex)
    for (m, n, l), c in u.terms.items():
        term = np.diag(np.array([qv ** (-k * m) for k in range(dim)], dtype=complex))
        for _ in range(n):
            term = term @ gens["E"]
        for _ in range(l):
            term = term @ gens["F"]
        out += complex(c.eval(qv)) * term
    return out
