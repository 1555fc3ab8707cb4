"""Dense real-symmetric eigensolver with residual certification.

A cyclic Jacobi rotation scheme is used: the matrices here are tiny
(d <= 65) and Jacobi delivers high relative accuracy without outside
dependencies.  Convergence is declared when the off-diagonal Frobenius
norm drops below 1e-14 times the Frobenius norm of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import RestrictedHamiltonian

OFFDIAG_TOL = 1e-14
MAX_SWEEPS = 100
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues paired with unit-norm eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column i pairs with eigenvalues[i]

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def pair(self, i: int) -> tuple[float, np.ndarray]:
        return float(self.eigenvalues[i]), self.eigenvectors[:, i]


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi sweeps.  Returns (eigenvalues, eigenvector columns).

    Rotations use the compensated update with tau = s / (1 + c), which
    keeps the accumulated matrix consistent with the accumulated rotations
    to machine precision.
    """
    d = a.shape[0]
    a = a.copy()
    v = np.eye(d)
    norm = np.linalg.norm(a)
    if norm == 0.0 or d == 1:
        return np.diag(a).copy(), v
    threshold = OFFDIAG_TOL * norm
    for _ in range(MAX_SWEEPS):
        # sum the off-diagonal squares directly: the difference of the two
        # full sums cancels catastrophically once off << ||a||
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= threshold:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) <= threshold / (d * d):
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                tau = s / (1.0 + c)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p - s * (col_q + tau * col_p)
                a[:, q] = col_q + s * (col_p - tau * col_q)
                a[p, :] = a[:, p]
                a[q, :] = a[:, q]
                a[p, p] = col_p[p] - t * apq
                a[q, q] = col_q[q] + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = vec_p - s * (vec_q + tau * vec_p)
                v[:, q] = vec_q + s * (vec_p - tau * vec_q)
    return np.diag(a).copy(), v


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude component of each column positive.

    Ties on the magnitude are broken by the lowest index.
    """
    out = vectors.copy()
    for i in range(out.shape[1]):
        col = out[:, i]
        idx = int(np.argmax(np.abs(col)))  # argmax returns the first maximizer
        if col[idx] < 0:
            out[:, i] = -col
    return out


def eig_sym(h: RestrictedHamiltonian | np.ndarray) -> Spectrum:
    """Eigendecomposition of a symmetric matrix, ascending eigenvalues.

    Certifies ||H v - E v|| <= 1e-10 ||H||_F for every pair and raises if
    the input contains non-finite entries.
    """
    a = h.entries if isinstance(h, RestrictedHamiltonian) else np.asarray(h, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite input")
    vals, vecs = _jacobi(a)
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = _fix_signs(vecs[:, order])
    scale = max(np.linalg.norm(a), 1.0)
    residual = np.linalg.norm(a @ vecs - vecs * vals, axis=0)
    if np.any(residual > RESIDUAL_TOL * scale):
        raise AssertionError(
            f"Jacobi residual {residual.max():.3e} exceeds {RESIDUAL_TOL:.0e} * ||H||_F"
        )
    return Spectrum(eigenvalues=vals, eigenvectors=vecs)
