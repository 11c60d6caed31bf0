"""Partial transpose, realignment and the two separability criteria built on them.

With ``rho[i, k, j, l] = <a_i b_k|rho|a_j b_l>``:

* partial transpose on A swaps ``i`` and ``j``;
* realignment maps the ``(i k, j l)`` entry to row ``i m + j``, column
  ``k n + l`` of an ``m^2 x n^2`` matrix.

Both are pure index permutations, so they are exact and invertible.
"""

from dataclasses import dataclass

import numpy as np

from . import matkernel
from .errors import DimensionMismatch
from .states import DensityMatrix

DEFAULT_TOL = 1e-8


def _tensor(rho):
    if not isinstance(rho, DensityMatrix):
        raise DimensionMismatch("expected a DensityMatrix")
    return rho.tensor(), rho.m, rho.n


def partial_transpose(rho):
    """Partial transpose on subsystem A, as an ``mn x mn`` array."""
    T, m, n = _tensor(rho)
    return T.transpose(2, 1, 0, 3).reshape(m * n, m * n)


def partial_transpose_array(M, m, n):
    """Same index rule on a bare ``mn x mn`` array (no state checks)."""
    M = np.asarray(M)
    if M.shape != (m * n, m * n):
        raise DimensionMismatch(f"shape {M.shape} does not match dims {m}x{n}")
    return M.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n)


def realign(rho):
    """Realigned matrix ``R(rho)`` of shape ``(m^2, n^2)``."""
    T, m, n = _tensor(rho)
    return T.transpose(0, 2, 1, 3).reshape(m * m, n * n)


def unrealign(R, m, n):
    """Inverse of :func:`realign`: rebuild the ``mn x mn`` matrix."""
    R = np.asarray(R)
    if R.shape != (m * m, n * n):
        raise DimensionMismatch(f"shape {R.shape} is not ({m * m}, {n * n})")
    return R.reshape(m, m, n, n).transpose(0, 2, 1, 3).reshape(m * n, m * n)


def ppt_norm(rho):
    """Trace norm of the partial transpose; 1 for PPT states, larger otherwise."""
    return matkernel.trace_norm(partial_transpose(rho))


def realignment_norm(rho):
    """Trace norm of the realigned matrix; at most 1 for separable states."""
    return matkernel.trace_norm(realign(rho))


@dataclass(frozen=True)
class SeparabilityVerdict:
    ppt_norm: float
    realignment_norm: float
    is_ppt: bool
    realignment_detects: bool

    @property
    def entangled_certified(self):
        return (not self.is_ppt) or self.realignment_detects

    def as_dict(self):
        return {
            "ppt_norm": self.ppt_norm,
            "realignment_norm": self.realignment_norm,
            "is_ppt": self.is_ppt,
            "realignment_detects": self.realignment_detects,
            "entangled_certified": self.entangled_certified,
        }


def verdict_from_norms(pt, re, tol=DEFAULT_TOL):
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    return SeparabilityVerdict(
        ppt_norm=pt,
        realignment_norm=re,
        is_ppt=bool(pt <= 1 + tol),
        realignment_detects=bool(re > 1 + tol),
    )


def separability_verdict(rho, tol=DEFAULT_TOL):
    """Evaluate both criteria on ``rho``.

    ``is_ppt`` holds when the partial-transpose norm is within ``tol`` of 1;
    realignment detects entanglement when its norm exceeds ``1 + tol``.
    """
    return verdict_from_norms(ppt_norm(rho), realignment_norm(rho), tol)
