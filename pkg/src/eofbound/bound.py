"""Lower bound on the entanglement of formation from the PPT and realignment norms.

For a pure state with Schmidt spectrum ``mu`` both trace norms equal
``lam = (sum_i sqrt(mu_i))^2``. The smallest entropy compatible with a
given ``lam`` is

    R(lam) = H2(gamma) + (1 - gamma) log2(m - 1),
    gamma(lam) = [sqrt(lam) + sqrt((m - 1)(m - lam))]^2 / m^2,

and its convex hull ``co R`` is R itself up to the knee ``4(m - 1)/m``
followed by a straight segment ending at ``(m, log2 m)``. Since ``co R``
is convex and nondecreasing, ``co R(Lambda)`` with
``Lambda = max(||rho^TA||, ||R(rho)||)`` bounds the EOF from below.

All entropies are in bits.
"""

import enum
import time
from dataclasses import dataclass

import numpy as np

from . import maps
from .errors import DimensionMismatch, LambdaExceedsSchmidtRank, ParameterOutOfRange
from .states import BipartiteDims, DensityMatrix, SchmidtSpectrum, entropy_bits

LAMBDA_SLACK = 1e-12
#: Lambda above ``m_eff`` by more than this is treated as a corrupt input.
LAMBDA_EXCESS_TOL = 1e-6


class Branch(str, enum.Enum):
    SEPARABLE_POINT = "SEPARABLE_POINT"
    CONVEX_BRANCH = "CONVEX_BRANCH"
    LINEAR_BRANCH = "LINEAR_BRANCH"


def binary_entropy(x):
    """``-x log2 x - (1 - x) log2(1 - x)``, zero at both endpoints."""
    x = float(x)
    if not 0 <= x <= 1:
        raise ParameterOutOfRange(f"binary entropy argument must be in [0, 1], got {x!r}")
    return entropy_bits([x, 1 - x])


def shannon_entropy(mu):
    """Entropy in bits of a Schmidt spectrum (or any probability vector)."""
    if not isinstance(mu, SchmidtSpectrum):
        mu = SchmidtSpectrum(np.sort(np.asarray(mu, dtype=float))[::-1])
    return entropy_bits(mu.mu)


def _check_lambda(lam, m):
    if int(m) != m or m < 2:
        raise ParameterOutOfRange(f"m must be an integer >= 2, got {m!r}")
    lam = float(lam)
    if not (1 - LAMBDA_SLACK <= lam <= m + LAMBDA_SLACK):
        raise ParameterOutOfRange(f"lambda must lie in [1, {m}], got {lam!r}")
    return min(max(lam, 1.0), float(m)), int(m)


def gamma(lam, m):
    """Largest Schmidt weight of the entropy minimizer at fixed ``lam``."""
    lam, m = _check_lambda(lam, m)
    return (np.sqrt(lam) + np.sqrt((m - 1) * (m - lam))) ** 2 / m**2


def r_of_lambda(lam, m):
    """Minimal entropy of an ``m``-level Schmidt spectrum with norm value ``lam``."""
    g = min(gamma(lam, m), 1.0)
    return binary_entropy(g) + (1 - g) * np.log2(m - 1)


def knee(m):
    """Point ``4(m - 1)/m`` where co R leaves R and becomes linear."""
    return 4 * (m - 1) / m


def _linear_segment(lam, m):
    # m >= 3 only; at m = 2 the slope is 0/0 and the segment is empty.
    return np.log2(m - 1) / (m - 2) * (lam - m) + np.log2(m)


def co_r_branch(lam, m):
    """Return ``(co R(lam), branch)``."""
    lam, m = _check_lambda(lam, m)
    if lam == 1.0:
        return 0.0, Branch.SEPARABLE_POINT
    if m == 2 or lam <= knee(m):
        return r_of_lambda(lam, m), Branch.CONVEX_BRANCH
    return float(_linear_segment(lam, m)), Branch.LINEAR_BRANCH


def co_r(lam, m):
    """Convex hull of :func:`r_of_lambda` on ``[1, m]``."""
    return co_r_branch(lam, m)[0]


@dataclass(frozen=True)
class BoundReport:
    dims: BipartiteDims
    ppt_norm: float
    realignment_norm: float
    lambda_cap: float
    bound_bits: float
    verdict: maps.SeparabilityVerdict
    branch: Branch
    elapsed_s: float = 0.0

    @property
    def m(self):
        return self.dims.dim_a

    @property
    def n(self):
        return self.dims.dim_b


def lambda_cap_from_norms(pt, re, m_eff):
    """Raw ``max(pt, re)`` and the value clamped into ``[1, m_eff]``."""
    raw = max(pt, re)
    if raw > m_eff + LAMBDA_EXCESS_TOL:
        raise LambdaExceedsSchmidtRank(raw, m_eff)
    return raw, min(max(raw, 1.0), float(m_eff))


def lambda_cap(rho):
    """``max(||rho^TA||, ||R(rho)||)`` clamped into ``[1, m_eff]``."""
    _, clamped = lambda_cap_from_norms(
        maps.ppt_norm(rho), maps.realignment_norm(rho), rho.dims.m_eff
    )
    return clamped


def eof_lower_bound(rho, tol=maps.DEFAULT_TOL):
    """Evaluate the full lower-bound pipeline on ``rho``.

    Parameters
    ----------
    rho : DensityMatrix
    tol : float, optional
        Separability tolerance. ``Lambda <= 1 + tol`` reports a zero bound
        on the ``SEPARABLE_POINT`` branch.

    Returns
    -------
    BoundReport
    """
    if not isinstance(rho, DensityMatrix):
        raise DimensionMismatch("eof_lower_bound expects a DensityMatrix")
    t0 = time.perf_counter()
    pt = maps.ppt_norm(rho)
    re = maps.realignment_norm(rho)
    verdict = maps.verdict_from_norms(pt, re, tol)
    m_eff = rho.dims.m_eff
    raw, lam = lambda_cap_from_norms(pt, re, m_eff)
    if m_eff < 2 or lam <= 1 + tol:
        bits, branch = 0.0, Branch.SEPARABLE_POINT
    else:
        bits, branch = co_r_branch(lam, m_eff)
    return BoundReport(
        dims=rho.dims,
        ppt_norm=pt,
        realignment_norm=re,
        lambda_cap=raw,
        bound_bits=float(bits),
        verdict=verdict,
        branch=branch,
        elapsed_s=time.perf_counter() - t0,
    )


def qubit_bound_from_lambda(lam, tol=maps.DEFAULT_TOL):
    """Closed form of co R for ``m = 2``: ``H2[(1 + sqrt(1 - (lam - 1)^2)) / 2]``."""
    lam, _ = _check_lambda(lam, 2)
    if lam <= 1 + tol:
        return 0.0
    c = lam - 1
    return binary_entropy((1 + np.sqrt(max(0.0, 1 - c * c))) / 2)


def eof_lower_bound_2xn(rho, tol=maps.DEFAULT_TOL):
    """Qubit-qudit bound in closed form; requires ``min(m, n) == 2``."""
    if rho.dims.m_eff != 2:
        raise DimensionMismatch(f"need min(m, n) == 2, got {rho.m}x{rho.n}")
    _, lam = lambda_cap_from_norms(maps.ppt_norm(rho), maps.realignment_norm(rho), 2)
    return qubit_bound_from_lambda(lam, tol)


# -- numerical convex envelope (test-side verifier) -------------------------


@dataclass(frozen=True)
class PiecewiseLinear:
    """Lower convex envelope sampled on a grid.

    ``knots_x``/``knots_y`` are the hull vertices, ``x``/``y`` the grid and
    the envelope evaluated on it.
    """

    knots_x: np.ndarray
    knots_y: np.ndarray
    x: np.ndarray
    y: np.ndarray

    def __call__(self, t):
        return np.interp(t, self.knots_x, self.knots_y)


def lower_hull(x, y):
    """Indices of the lower convex hull of points sorted by ``x`` (monotone chain)."""
    hull = []
    for i in range(len(x)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return np.array(hull)


def numerical_convex_hull(f, lo, hi, grid_points):
    """Largest convex minorant of ``f`` sampled on a uniform grid over ``[lo, hi]``."""
    if int(grid_points) != grid_points or grid_points < 3:
        raise ParameterOutOfRange(f"grid_points must be an integer >= 3, got {grid_points!r}")
    x = np.linspace(lo, hi, int(grid_points))
    y = np.array([f(t) for t in x], dtype=float)
    idx = lower_hull(x, y)
    kx, ky = x[idx], y[idx]
    return PiecewiseLinear(kx, ky, x, np.interp(x, kx, ky))
