"""Cyclic Jacobi eigenvalue iteration for dense complex Hermitian matrices.

Rotations whose pivot is already below ``tol / (10 n)`` are skipped, which
keeps the cost of the (mostly rank-deficient, block-structured) decoherence
matrices close to one rotation per nonzero eigen-direction.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-10


def off_diagonal_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0)
    return float(np.linalg.norm(off))


def _rotate(a: np.ndarray, p: int, q: int) -> None:
    """Annihilate ``a[p, q]`` in place by a unitary similarity on rows/cols p, q."""
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    app = a[p, p].real
    aqq = a[q, q].real
    zeta = (aqq - app) / (2.0 * mag)
    t = 1.0 / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
    if zeta < 0:
        t = -t
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c

    row_p = a[p].copy()
    row_q = a[q].copy()
    a[p] = c * row_p - (s * phase) * row_q
    a[q] = s * row_p + (c * phase) * row_q
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - (s * phase.conjugate()) * col_q
    a[:, q] = s * col_p + (c * phase.conjugate()) * col_q

    a[p, p] = app - t * mag
    a[q, q] = aqq + t * mag
    a[p, q] = 0.0
    a[q, p] = 0.0


def jacobi_eigenvalues(matrix, tol: float = 1e-10, max_sweeps: int = 100) -> tuple[np.ndarray, int]:
    """Eigenvalues (descending) of a Hermitian matrix and the number of sweeps used.

    Iterates cyclic row-by-row sweeps until the off-diagonal Frobenius norm
    drops below ``tol``.
    """
    a = np.array(matrix, dtype=complex, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), 0
    defect = float(np.max(np.abs(a - a.conj().T)))
    if defect > HERMITIAN_TOL:
        raise NotHermitian(f"max |A - A^H| = {defect:.3g}")
    a = 0.5 * (a + a.conj().T)
    skip = tol / (10.0 * n)

    for sweep in range(1, max_sweeps + 1):
        if off_diagonal_norm(a) < tol:
            return np.sort(a.diagonal().real)[::-1], sweep - 1
        for p in range(n - 1):
            start = p + 1
            while start < n:
                hits = np.flatnonzero(np.abs(a[p, start:]) > skip)
                if hits.size == 0:
                    break
                q = start + int(hits[0])
                _rotate(a, p, q)
                start = q + 1
    if off_diagonal_norm(a) < tol:
        return np.sort(a.diagonal().real)[::-1], max_sweeps
    raise NoConvergence(f"off-diagonal norm {off_diagonal_norm(a):.3g} after {max_sweeps} sweeps")
