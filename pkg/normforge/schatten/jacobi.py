"""
One-sided (Hestenes) Jacobi SVD for small dense matrices.

Plane rotations orthogonalise the columns of A in place; the column norms
are then the singular values and the accumulated rotations the right
singular vectors. Relative accuracy is high, which is all that matters at
this scale.
"""

import logging

import numpy as np

from ..consts import JACOBI_MAX_SWEEPS, JACOBI_TOL


def _converged(u: np.ndarray, tol: float) -> bool:
    gram = u.T @ u
    d = np.sqrt(np.outer(np.diag(gram), np.diag(gram)))
    off = np.abs(gram - np.diag(np.diag(gram)))
    return bool(np.all(off <= tol * d))


def jacobi_svd(
    a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray]:
    """
    Singular values (non-increasing, length min(m, n)) and the matching
    right singular vectors of `a` as columns.

    For wide matrices the transpose is decomposed, so the vectors returned
    are then the left singular vectors of `a`.
    """
    u = np.array(a, dtype=np.float64)
    if u.shape[0] < u.shape[1]:
        u = u.T.copy()
    n = u.shape[1]
    v = np.eye(n)

    for sweep in range(max_sweeps):
        if _converged(u, tol):
            break
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = u[:, i] @ u[:, i]
                beta = u[:, j] @ u[:, j]
                gamma = u[:, i] @ u[:, j]
                if abs(gamma) <= tol * np.sqrt(alpha * beta):
                    continue
                zeta = (beta - alpha) / (2 * gamma)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1 + zeta * zeta))
                c = 1 / np.sqrt(1 + t * t)
                s = c * t
                ui, uj = u[:, i].copy(), u[:, j].copy()
                u[:, i], u[:, j] = c * ui - s * uj, s * ui + c * uj
                vi, vj = v[:, i].copy(), v[:, j].copy()
                v[:, i], v[:, j] = c * vi - s * vj, s * vi + c * vj
    else:
        logging.warning('jacobi_svd: no convergence after %d sweeps', max_sweeps)
    logging.debug('jacobi_svd: %dx%d in %d sweeps', *u.shape, sweep)

    sigma = np.linalg.norm(u, axis=0)
    order = np.argsort(-sigma, kind='stable')
    return sigma[order], v[:, order]
