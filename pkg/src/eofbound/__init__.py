"""Explicit lower bounds on the entanglement of formation of bipartite states.

The bound needs only two trace norms, of the partial transpose and of the
realigned matrix::

    >>> from eofbound import make_isotropic, eof_lower_bound
    >>> report = eof_lower_bound(make_isotropic(3, 0.8))
    >>> round(report.lambda_cap, 12), round(report.bound_bits, 6)
    (2.4, 0.988261)
"""

from .bound import (
    BoundReport,
    Branch,
    binary_entropy,
    co_r,
    eof_lower_bound,
    eof_lower_bound_2xn,
    gamma,
    lambda_cap,
    numerical_convex_hull,
    r_of_lambda,
    shannon_entropy,
)
from .errors import *  # noqa: F401,F403
from .maps import (
    SeparabilityVerdict,
    partial_transpose,
    ppt_norm,
    realign,
    realignment_norm,
    separability_verdict,
)
from .matkernel import hermitian_eigenvalues, singular_values, trace_norm
from .oracles import (
    SandwichResult,
    convex_roof_upper_estimate,
    sandwich,
    wootters_concurrence,
    wootters_eof,
)
from .states import (
    BipartiteDims,
    DensityMatrix,
    PureState,
    SchmidtSpectrum,
    entropy_of_entanglement,
    make_horodecki_3x3_bes,
    make_isotropic,
    make_maximally_entangled,
    make_werner_2x2,
    random_density_matrix,
    random_pure_state,
    reduced_density_a,
    schmidt_spectrum,
)

__version__ = "0.1.0"
