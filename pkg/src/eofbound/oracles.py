"""Independent reference values for the entanglement of formation.

``wootters_*`` give the exact two-qubit EOF. ``convex_roof_upper_estimate``
searches over genuine ensemble decompositions of a state, so whatever it
returns is a certified upper bound on the EOF.

Every size-``k`` ensemble of ``rho = V V^H`` (``V`` = eigenvectors scaled by
``sqrt(eigenvalue)``, ``mn x r``) is ``W = V U^T`` for some ``k x r``
isometry ``U``; column ``j`` of ``W`` is ``sqrt(p_j) |psi_j>``.
"""

from dataclasses import dataclass

import numpy as np

from . import bound
from .errors import ConvergenceFailure, DimensionMismatch, ParameterOutOfRange, RankDeficiency
from .states import DensityMatrix, complex_gaussian, entropy_bits

RANK_TOL = 1e-12
DEFAULT_ITERATIONS = 3000
DEFAULT_RESTARTS = 4
SANDWICH_TOL = 1e-6

_SIGMA_Y2 = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]]).real


def _require_two_qubits(rho):
    if not isinstance(rho, DensityMatrix) or (rho.m, rho.n) != (2, 2):
        raise DimensionMismatch("the Wootters formula needs a 2x2 DensityMatrix")


def wootters_concurrence(rho):
    """Two-qubit concurrence ``max(0, s1 - s2 - s3 - s4)``.

    The ``s_i`` are the square roots of the eigenvalues of
    ``rho (sy x sy) rho* (sy x sy)``. They are evaluated as the singular
    values of ``V^T (sy x sy) V`` with ``rho = V V^H``, which has the same
    nonzero spectrum and avoids a non-Hermitian eigenproblem.
    """
    _require_two_qubits(rho)
    V = scaled_eigenvectors(rho, tol=0.0)
    s = np.zeros(4)
    sv = np.linalg.svd(V.T @ _SIGMA_Y2 @ V, compute_uv=False)
    s[: sv.size] = sv
    return float(min(1.0, max(0.0, s[0] - s[1] - s[2] - s[3])))


def eof_from_concurrence(c):
    """``H2[(1 + sqrt(1 - C^2)) / 2]``."""
    c = float(c)
    if not 0 <= c <= 1:
        raise ParameterOutOfRange(f"concurrence must lie in [0, 1], got {c!r}")
    return bound.binary_entropy((1 + np.sqrt(1 - c * c)) / 2)


def wootters_eof(rho):
    """Exact EOF (bits) of a two-qubit state."""
    return eof_from_concurrence(wootters_concurrence(rho))


# -- convex-roof upper estimator --------------------------------------------


def scaled_eigenvectors(rho, tol=RANK_TOL):
    """``V`` with ``rho = V V^H``, one column per eigenvalue above ``tol``."""
    w, E = np.linalg.eigh(rho.matrix)
    w, E = w[::-1], E[:, ::-1]
    keep = w > tol
    if not keep.any():
        keep[0] = True
    return E[:, keep] * np.sqrt(np.clip(w[keep], 0.0, None))


def nearest_isometry(A):
    """Polar factor of ``A``: the closest matrix with orthonormal columns."""
    X, _, Yh = np.linalg.svd(A, full_matrices=False)
    return X @ Yh


def random_isometry(rng, k, r):
    return nearest_isometry(complex_gaussian(rng, (k, r)))


def ensemble_from_isometry(V, U, m, n):
    """Weights ``p_j`` and normalized states ``psi_j`` (rows) for ``W = V U^T``.

    Zero-weight members are returned with a zero state vector.
    """
    W = (V @ U.T).T
    p = np.sum(np.abs(W) ** 2, axis=1)
    psi = np.zeros_like(W)
    nz = p > 0
    psi[nz] = W[nz] / np.sqrt(p[nz])[:, None]
    return p, psi


def average_entanglement(V, U, m, n):
    """``sum_j p_j E(psi_j)`` for the ensemble defined by ``U``.

    Uses ``sum_j p_j H(s_j^2 / p_j) = -sum s^2 log2 s^2 + sum_j p_j log2 p_j``
    over the Schmidt coefficients ``s`` of the unnormalized members.
    """
    W = (V @ U.T).T.reshape(-1, m, n)
    s2 = np.linalg.svd(W, compute_uv=False) ** 2
    p = s2.sum(axis=1)
    total = -np.sum(s2[s2 > 0] * np.log2(s2[s2 > 0])) + np.sum(p[p > 0] * np.log2(p[p > 0]))
    return max(0.0, float(total))


def _restart_rng(seed, index):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(index)])))


def _search(V, m, n, k, iterations, rng):
    r = V.shape[1]
    U = random_isometry(rng, k, r)
    best = average_entanglement(V, U, m, n)
    sigma = 0.3
    for _ in range(iterations):
        trial = nearest_isometry(U + sigma * complex_gaussian(rng, (k, r)))
        val = average_entanglement(V, trial, m, n)
        if val < best:
            U, best = trial, val
            sigma = min(sigma * 1.5, 2.0)
        else:
            sigma = max(sigma * 0.9, 1e-7)
    return best, U


def _check_estimator_args(rho, ensemble_size, iterations, restarts):
    if not isinstance(rho, DensityMatrix):
        raise DimensionMismatch("expected a DensityMatrix")
    V = scaled_eigenvectors(rho)
    r = V.shape[1]
    k = r + 2 if ensemble_size is None else ensemble_size
    if int(k) != k or k < 1:
        raise ParameterOutOfRange(f"ensemble_size must be a positive integer, got {k!r}")
    if k < r:
        raise RankDeficiency(f"ensemble_size {k} is smaller than rank(rho) = {r}")
    if int(iterations) != iterations or iterations < 1:
        raise ParameterOutOfRange(f"iterations must be an integer >= 1, got {iterations!r}")
    if int(restarts) != restarts or restarts < 1:
        raise ParameterOutOfRange(f"restarts must be an integer >= 1, got {restarts!r}")
    return V, int(k)


def best_ensemble(rho, ensemble_size=None, iterations=DEFAULT_ITERATIONS,
                  seed=0, restarts=DEFAULT_RESTARTS):
    """Run the search and return ``(value, p, psi)`` for the best ensemble found."""
    V, k = _check_estimator_args(rho, ensemble_size, iterations, restarts)
    m, n = rho.m, rho.n
    best, best_U = np.inf, None
    for index in range(int(restarts)):
        val, U = _search(V, m, n, k, int(iterations), _restart_rng(seed, index))
        if val < best:
            best, best_U = val, U
    p, psi = ensemble_from_isometry(V, best_U, m, n)
    return best, p, psi


def convex_roof_upper_estimate(rho, ensemble_size=None, iterations=DEFAULT_ITERATIONS,
                               seed=0, restarts=DEFAULT_RESTARTS):
    """Upper estimate of the EOF (bits) by stochastic search over ensembles.

    Each restart starts from a random isometry seeded by ``(seed, index)``
    and performs ``iterations`` accept-if-better perturbation steps with an
    adaptive step size. The smallest average entanglement over all restarts
    is returned. For a fixed seed the value never increases with
    ``iterations``.

    Parameters
    ----------
    rho : DensityMatrix
    ensemble_size : int, optional
        Number of ensemble members; defaults to ``rank(rho) + 2``.
    iterations : int
        Perturbation steps per restart.
    seed : int
    restarts : int
    """
    return best_ensemble(rho, ensemble_size, iterations, seed, restarts)[0]


@dataclass(frozen=True)
class SandwichResult:
    lower_bits: float
    upper_bits: float
    ensemble_size: int
    iterations: int
    seed: int

    @property
    def gap_bits(self):
        return self.upper_bits - self.lower_bits


def sandwich(rho, ensemble_size=None, iterations=DEFAULT_ITERATIONS, seed=0,
             restarts=DEFAULT_RESTARTS, tol=bound.maps.DEFAULT_TOL):
    """Pair the analytic lower bound with the stochastic upper estimate."""
    V, k = _check_estimator_args(rho, ensemble_size, iterations, restarts)
    lower = bound.eof_lower_bound(rho, tol).bound_bits
    upper = convex_roof_upper_estimate(rho, k, iterations, seed, restarts)
    if upper < lower - SANDWICH_TOL:
        raise ConvergenceFailure(
            f"upper estimate {upper!r} fell below the lower bound {lower!r}"
        )
    return SandwichResult(lower, upper, k, int(iterations), int(seed))


def pure_state_entropy(psi_row, m, n):
    """Entanglement entropy of one ensemble member given as a flat vector."""
    s = np.linalg.svd(np.asarray(psi_row).reshape(m, n), compute_uv=False)
    return entropy_bits(s**2)
