"""Bipartite states, Schmidt spectra and state-family generators.

Index convention: the product basis vector ``|a_i b_k>`` sits at position
``i * n + k``, which is the ordering produced by ``numpy.kron(A, B)``.
Every rearrangement in :mod:`eofbound.maps` and the file format in
:mod:`eofbound.io` rely on it.

Random generators draw from ``numpy.random.Generator(PCG64(seed))``;
identical seeds give identical bytes within a numpy release.
"""

from dataclasses import dataclass, field

import numpy as np

from . import matkernel
from .errors import DimensionMismatch, InvariantViolation, ParameterOutOfRange

TRACE_TOL = 1e-9
PSD_TOL = 1e-9
NORM_TOL = 1e-12
SPECTRUM_SUM_TOL = 1e-10


@dataclass(frozen=True)
class BipartiteDims:
    dim_a: int
    dim_b: int

    def __post_init__(self):
        for name in ("dim_a", "dim_b"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ParameterOutOfRange(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))

    @property
    def total(self):
        return self.dim_a * self.dim_b

    @property
    def m_eff(self):
        """Largest possible Schmidt rank, ``min(dim_a, dim_b)``."""
        return min(self.dim_a, self.dim_b)


def _dims(dims):
    if isinstance(dims, BipartiteDims):
        return dims
    m, n = dims
    return BipartiteDims(m, n)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix on ``C^m (x) C^n``.

    The stored ``matrix`` is the Hermitian part of the input. Construction
    raises :class:`InvariantViolation` if the trace or the smallest
    eigenvalue is outside tolerance.
    """

    dims: BipartiteDims
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = _dims(self.dims)
        object.__setattr__(self, "dims", dims)
        M = matkernel.as_matrix(self.matrix)
        if M.shape != (dims.total, dims.total):
            raise DimensionMismatch(
                f"matrix shape {M.shape} does not match dims {dims.dim_a}x{dims.dim_b}"
            )
        H = matkernel.hermitian_part(M)
        tr = np.trace(H).real
        if abs(tr - 1) > TRACE_TOL:
            raise InvariantViolation("unit trace", abs(tr - 1))
        lo = matkernel.hermitian_eigenvalues(H)[-1]
        if lo < -PSD_TOL:
            raise InvariantViolation("positive semidefinite", -lo)
        H.setflags(write=False)
        object.__setattr__(self, "matrix", H)

    @property
    def m(self):
        return self.dims.dim_a

    @property
    def n(self):
        return self.dims.dim_b

    def tensor(self):
        """View as a rank-4 array ``rho[i, k, j, l] = <a_i b_k|rho|a_j b_l>``."""
        m, n = self.m, self.n
        return self.matrix.reshape(m, n, m, n)

    def fidelity(self, psi):
        """``<psi|rho|psi>`` for a state vector ``psi``."""
        v = np.asarray(psi.amplitudes if isinstance(psi, PureState) else psi)
        return float(np.vdot(v, self.matrix @ v).real)


@dataclass(frozen=True, eq=False)
class PureState:
    dims: BipartiteDims
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = _dims(self.dims)
        object.__setattr__(self, "dims", dims)
        v = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if v.shape[0] != dims.total:
            raise DimensionMismatch(
                f"{v.shape[0]} amplitudes do not match dims {dims.dim_a}x{dims.dim_b}"
            )
        if not np.all(np.isfinite(v)):
            raise InvariantViolation("finite amplitudes", float("inf"))
        dev = abs(np.linalg.norm(v) - 1)
        if dev > NORM_TOL:
            raise InvariantViolation("unit norm", dev)
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)

    @classmethod
    def normalized(cls, dims, amplitudes):
        v = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(dims, v / np.linalg.norm(v))

    def density_matrix(self):
        v = self.amplitudes
        return DensityMatrix(self.dims, np.outer(v, v.conj()))


@dataclass(frozen=True, eq=False)
class SchmidtSpectrum:
    """Squared Schmidt coefficients, nonincreasing and summing to one."""

    mu: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float).reshape(-1)
        if mu.size == 0 or np.any(mu < 0):
            raise InvariantViolation("nonnegative entries", float(-mu.min(initial=0.0)))
        dev = abs(mu.sum() - 1)
        if dev > SPECTRUM_SUM_TOL:
            raise InvariantViolation("entries sum to 1", dev)
        if np.any(np.diff(mu) > 0):
            raise InvariantViolation("nonincreasing order", float(np.diff(mu).max()))
        mu.setflags(write=False)
        object.__setattr__(self, "mu", mu)

    def __len__(self):
        return self.mu.size

    def lam(self):
        """``(sum_i sqrt(mu_i))^2``, the common value of both trace norms."""
        return float(np.sum(np.sqrt(self.mu)) ** 2)


def entropy_bits(p):
    """Shannon entropy in bits of a probability vector, with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


# -- Schmidt decomposition and partial traces -------------------------------


def schmidt_spectrum(psi):
    """Schmidt spectrum of a pure state.

    Computed from the singular values of the ``m x n`` amplitude matrix,
    squared, which is more accurate near zero than diagonalizing the
    reduced state.
    """
    if not isinstance(psi, PureState):
        raise DimensionMismatch("schmidt_spectrum expects a PureState")
    m, n = psi.dims.dim_a, psi.dims.dim_b
    s = matkernel.singular_values(psi.amplitudes.reshape(m, n))
    mu = np.clip(s**2, 0.0, None)
    mu = np.sort(mu)[::-1][: psi.dims.m_eff]
    return SchmidtSpectrum(mu / mu.sum())


def entropy_of_entanglement(psi):
    """Entanglement entropy (bits) of a pure bipartite state."""
    return entropy_bits(schmidt_spectrum(psi).mu)


def _as_tensor(rho):
    if isinstance(rho, DensityMatrix):
        return rho.tensor(), rho.m, rho.n
    raise DimensionMismatch("expected a DensityMatrix")


def reduced_density_a(rho):
    """Partial trace over subsystem B, an ``m x m`` matrix."""
    T, _, _ = _as_tensor(rho)
    return np.einsum("ikjk->ij", T)


def reduced_density_b(rho):
    """Partial trace over subsystem A, an ``n x n`` matrix."""
    T, _, _ = _as_tensor(rho)
    return np.einsum("ikil->kl", T)


# -- deterministic families -------------------------------------------------


def _unit_interval(name, x, open_=False):
    x = float(x)
    bad = not (0 < x < 1) if open_ else not (0 <= x <= 1)
    if bad or not np.isfinite(x):
        bounds = "(0, 1)" if open_ else "[0, 1]"
        raise ParameterOutOfRange(f"{name} must lie in {bounds}, got {x!r}")
    return x


def _int_param(name, v, lo):
    if int(v) != v or v < lo:
        raise ParameterOutOfRange(f"{name} must be an integer >= {lo}, got {v!r}")
    return int(v)


def make_maximally_entangled(m, n=None):
    """``sum_i |ii> / sqrt(m)`` embedded in ``C^m (x) C^n``."""
    n = m if n is None else n
    m = _int_param("m", m, 2)
    n = _int_param("n", n, 2)
    if m > n:
        raise ParameterOutOfRange(f"need m <= n, got m={m}, n={n}")
    v = np.zeros(m * n, dtype=complex)
    v[[i * n + i for i in range(m)]] = 1 / np.sqrt(m)
    return PureState(BipartiteDims(m, n), v)


def make_isotropic(d, F):
    """Isotropic state with fidelity ``F`` to the maximally entangled state.

    ``rho_F = (1 - F)/(d^2 - 1) (I - P) + F P`` with ``P = |Psi+><Psi+|``.
    Separable exactly when ``F <= 1/d``.
    """
    d = _int_param("d", d, 2)
    F = _unit_interval("F", F)
    psi = make_maximally_entangled(d).amplitudes
    P = np.outer(psi, psi.conj())
    eye = np.eye(d * d)
    rho = (1 - F) / (d * d - 1) * (eye - P) + F * P
    return DensityMatrix(BipartiteDims(d, d), rho)


def make_werner_2x2(p):
    """``p |Psi-><Psi-| + (1 - p) I/4`` on two qubits."""
    p = _unit_interval("p", p)
    singlet = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    rho = p * np.outer(singlet, singlet.conj()) + (1 - p) * np.eye(4) / 4
    return DensityMatrix(BipartiteDims(2, 2), rho)


def make_horodecki_3x3_bes(a):
    """P. Horodecki's one-parameter family of 3x3 PPT entangled states.

    Entangled and PPT for every ``a`` in ``(0, 1)``; the endpoints give
    separable states.
    """
    a = _unit_interval("a", a, open_=True)
    rho = np.zeros((9, 9))
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            rho[i, j] = a
    for i in (1, 2, 3, 5, 7):
        rho[i, i] = a
    rho[6, 6] = rho[8, 8] = (1 + a) / 2
    rho[6, 8] = rho[8, 6] = np.sqrt(1 - a * a) / 2
    return DensityMatrix(BipartiteDims(3, 3), rho / (8 * a + 1))


# -- random families --------------------------------------------------------


def rng_from_seed(seed):
    """``numpy.random.Generator`` backed by PCG64; accepts an int or Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def complex_gaussian(rng, shape):
    """Standard complex normal samples, ``E|z|^2 = 1``."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_unitary(d, seed):
    """Haar-random ``d x d`` unitary (QR of a Ginibre matrix, phases fixed)."""
    rng = rng_from_seed(seed)
    Q, R = np.linalg.qr(complex_gaussian(rng, (d, d)))
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph


def random_pure_state(dims, seed):
    dims = _dims(dims)
    rng = rng_from_seed(seed)
    return PureState.normalized(dims, complex_gaussian(rng, dims.total))


def random_density_matrix(dims, rank, seed):
    """``G G^H / Tr(G G^H)`` for an ``mn x rank`` complex Gaussian ``G``."""
    dims = _dims(dims)
    if int(rank) != rank or not 1 <= rank <= dims.total:
        raise ParameterOutOfRange(f"rank must be in [1, {dims.total}], got {rank!r}")
    rng = rng_from_seed(seed)
    G = complex_gaussian(rng, (dims.total, int(rank)))
    W = G @ G.conj().T
    return DensityMatrix(dims, W / np.trace(W).real)


def random_product_state(dims, seed):
    """``rho_A (x) rho_B`` with full-rank random local factors."""
    dims = _dims(dims)
    rng = rng_from_seed(seed)
    factors = []
    for d in (dims.dim_a, dims.dim_b):
        G = complex_gaussian(rng, (d, d))
        W = G @ G.conj().T
        factors.append(W / np.trace(W).real)
    return DensityMatrix(dims, np.kron(*factors))


def maximally_mixed(dims):
    dims = _dims(dims)
    return DensityMatrix(dims, np.eye(dims.total) / dims.total)


def local_unitary_conjugate(rho, U, V):
    """``(U (x) V) rho (U (x) V)^H``."""
    W = np.kron(U, V)
    return DensityMatrix(rho.dims, W @ rho.matrix @ W.conj().T)


def mix(p, rho1, rho2):
    """Convex combination ``p rho1 + (1 - p) rho2``."""
    if rho1.dims != rho2.dims:
        raise DimensionMismatch("cannot mix states with different dims")
    return DensityMatrix(rho1.dims, p * rho1.matrix + (1 - p) * rho2.matrix)
