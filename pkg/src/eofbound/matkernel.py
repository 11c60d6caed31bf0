"""Dense complex-matrix primitives.

Matrices are plain 2-D ``numpy`` arrays. Only spectra are exposed here,
never eigenvectors, so degenerate eigenspaces never leak a basis choice.
LAPACK (through ``numpy.linalg``) does the factorizations; results are
deterministic for identical input bytes on a given build.
"""

import numpy as np

from .errors import ConvergenceFailure, NonSquare, NotHermitian

#: Largest entrywise deviation |M - M^H| accepted before symmetrization.
HERMITICITY_TOL = 1e-9


def as_matrix(M):
    """Return ``M`` as a finite complex 2-D array."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.size == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix contains NaN or Inf entries")
    return M


def hermitian_part(M, tol=HERMITICITY_TOL):
    """Check Hermiticity within ``tol`` and return ``(M + M^H) / 2``."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {M.shape}")
    dev = float(np.max(np.abs(M - M.conj().T)))
    if dev > tol:
        raise NotHermitian(dev, tol)
    return (M + M.conj().T) / 2


def hermitian_eigenvalues(M, tol=HERMITICITY_TOL):
    """Real eigenvalues of a Hermitian matrix, sorted in descending order.

    Parameters
    ----------
    M : array_like, shape (d, d)
        Hermitian up to ``tol`` in the max-entry norm.
    tol : float, optional
        Hermiticity tolerance applied before symmetrizing.

    Returns
    -------
    numpy.ndarray
        Eigenvalues, largest first.
    """
    H = hermitian_part(M, tol)
    try:
        w = np.linalg.eigvalsh(H)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return w[::-1].copy()


def singular_values(M):
    """Singular values of ``M`` in descending order."""
    M = as_matrix(M)
    try:
        return np.linalg.svd(M, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def trace_norm(M):
    """Trace norm ``Tr sqrt(M M^H)``, i.e. the sum of singular values."""
    return float(np.sum(singular_values(M)))


def dagger(M):
    return np.asarray(M).conj().T


def matmul(*mats):
    """Product of the given matrices, left to right."""
    if len(mats) == 1:
        return np.asarray(mats[0])
    if len(mats) == 2:
        return np.asarray(mats[0]) @ np.asarray(mats[1])
    return np.linalg.multi_dot(mats)
