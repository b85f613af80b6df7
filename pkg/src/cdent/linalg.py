"""Self-contained Hermitian eigensolver for the small dense matrices that
appear as reduced density matrices (n <= ~8).

Cyclic complex Jacobi rotations; deterministic sweep order, deterministic
eigenvector phases.  numpy's LAPACK wrapper is used only as an independent
cross-check in the test suite.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

_OFFDIAG_TOL = 1e-14
_MAX_SWEEPS = 60


def _offdiag_norm(a: np.ndarray) -> float:
    n = a.shape[0]
    mask = ~np.eye(n, dtype=bool)
    return float(np.sqrt(np.sum(np.abs(a[mask]) ** 2)))


def hermitian_eigensystem(
    matrix: np.ndarray, tol: float = _OFFDIAG_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors of a Hermitian matrix.

    Returns ``(values, vectors)`` with ``vectors[:, i]`` the eigenvector of
    ``values[i]``.  Each eigenvector is phase-fixed so its first entry of
    magnitude above 1e-12 is real positive, which makes degenerate subspaces
    come out deterministically for identical inputs.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if _offdiag_norm(a - a.conj().T) > 1e-10 or np.max(np.abs(a.imag.diagonal())) > 1e-10:
        raise DomainError("matrix is not Hermitian within 1e-10")
    a = 0.5 * (a + a.conj().T)  # symmetrize roundoff away

    v = np.eye(n, dtype=complex)
    for _ in range(_MAX_SWEEPS):
        if _offdiag_norm(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                if abs(g) < tol / (n * n):
                    continue
                phase = g / abs(g)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * abs(g))
                # smaller-magnitude root of t^2 + 2*tau*t - 1 = 0
                sign = 1.0 if tau >= 0.0 else -1.0
                t = sign / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                u = np.eye(n, dtype=complex)
                u[p, p] = c
                u[p, q] = s * phase
                u[q, p] = -s * np.conj(phase)
                u[q, q] = c
                a = u.conj().T @ a @ u
                v = v @ u

    values = a.diagonal().real.copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = v[:, order]
    for i in range(n):
        col = vectors[:, i]
        nz = np.nonzero(np.abs(col) > 1e-12)[0]
        if nz.size:
            w = col[nz[0]]
            vectors[:, i] = col * (np.conj(w) / abs(w))
    return values, vectors


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Descending eigenvalues of a Hermitian matrix."""
    values, _ = hermitian_eigensystem(matrix)
    return values
