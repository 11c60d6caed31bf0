import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eofbound.bound import (
    Branch,
    binary_entropy,
    co_r,
    co_r_branch,
    eof_lower_bound,
    eof_lower_bound_2xn,
    gamma,
    knee,
    lambda_cap,
    numerical_convex_hull,
    qubit_bound_from_lambda,
    r_of_lambda,
    shannon_entropy,
)
from eofbound.errors import DimensionMismatch, LambdaExceedsSchmidtRank, ParameterOutOfRange
from eofbound.oracles import wootters_eof
from eofbound.states import (
    SchmidtSpectrum,
    make_isotropic,
    make_maximally_entangled,
    make_werner_2x2,
    maximally_mixed,
    mix,
    random_density_matrix,
    random_product_state,
    random_pure_state,
    schmidt_spectrum,
)

H2_TWO_THIRDS = 0.9182958340544896
R3_AT_KNEE = 1.2516291673878228  # H2(2/3) + 1/3
H2_AT_LAMBDA_1_5 = 0.35457890266527003  # H2((1 + sqrt(3)/2) / 2)


def brute_force_min_entropy(lam, m, resolution):
    """Minimize H(mu) subject to (sum sqrt(mu))^2 = lam by sweeping the feasible sphere.

    With x = sqrt(mu), the constraints |x| = 1 and sum(x) = sqrt(lam) leave
    x = sqrt(lam)/m * 1 + r u, r = sqrt(1 - lam/m), u a unit vector orthogonal
    to the all-ones vector.
    """
    ones = np.ones(m) / np.sqrt(m)
    Q, _ = np.linalg.qr(np.column_stack([ones, np.eye(m)[:, : m - 1]]))
    basis = Q[:, 1:m]
    r = np.sqrt(max(0.0, 1 - lam / m))
    if m == 2:
        U = np.array([[1.0], [-1.0]])
    elif m == 3:
        t = np.linspace(0, 2 * np.pi, resolution, endpoint=False)
        U = np.column_stack([np.cos(t), np.sin(t)])
    else:
        th = np.linspace(0, np.pi, resolution)
        ph = np.linspace(0, 2 * np.pi, 2 * resolution, endpoint=False)
        T, P = np.meshgrid(th, ph, indexing="ij")
        U = np.column_stack([(np.sin(T) * np.cos(P)).ravel(), (np.sin(T) * np.sin(P)).ravel(),
                             np.cos(T).ravel()])
    X = np.sqrt(lam) / m + r * U @ basis.T
    X = X[np.all(X >= -1e-15, axis=1)]
    mu = np.clip(X, 0, None) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(mu > 0, -mu * np.log2(mu), 0.0)
    return terms.sum(axis=1).min()


def test_binary_entropy_values():
    assert binary_entropy(0) == 0 and binary_entropy(1) == 0
    assert binary_entropy(0.5) == pytest.approx(1)
    assert binary_entropy(2 / 3) == pytest.approx(H2_TWO_THIRDS, abs=1e-15)
    with pytest.raises(ParameterOutOfRange):
        binary_entropy(1.5)


def test_shannon_entropy_values():
    assert shannon_entropy(SchmidtSpectrum([1, 0, 0])) == 0
    assert shannon_entropy(SchmidtSpectrum(np.full(5, 0.2))) == pytest.approx(np.log2(5))
    assert shannon_entropy(SchmidtSpectrum([0.9, 0.1])) == pytest.approx(0.4689955935892811, abs=1e-15)


@pytest.mark.parametrize("m", [2, 3, 4, 7])
def test_gamma_endpoints(m):
    assert gamma(1, m) == pytest.approx(1)
    assert gamma(m, m) == pytest.approx(1 / m)


def test_gamma_at_qutrit_knee():
    assert gamma(8 / 3, 3) == pytest.approx(2 / 3, abs=1e-14)


def test_gamma_range_checks():
    assert gamma(1 - 1e-13, 3) == pytest.approx(1)
    with pytest.raises(ParameterOutOfRange):
        gamma(0.9, 3)
    with pytest.raises(ParameterOutOfRange):
        gamma(3.1, 3)
    with pytest.raises(ParameterOutOfRange):
        gamma(1.5, 1)


@pytest.mark.parametrize("m", [2, 3, 5, 10])
def test_r_endpoints(m):
    assert r_of_lambda(1, m) == pytest.approx(0, abs=1e-12)
    assert r_of_lambda(m, m) == pytest.approx(np.log2(m), abs=1e-12)


def test_r_at_qutrit_knee():
    assert r_of_lambda(8 / 3, 3) == pytest.approx(R3_AT_KNEE, abs=1e-12)


@pytest.mark.parametrize("m", [2, 3, 6])
def test_co_r_endpoints(m):
    assert co_r(1, m) == 0
    assert co_r(m, m) == pytest.approx(np.log2(m), abs=1e-12)


def test_co_r_branches_agree_at_qutrit_knee():
    linear = math.log2(2) / 1 * (8 / 3 - 3) + math.log2(3)
    assert r_of_lambda(8 / 3, 3) == pytest.approx(linear, abs=1e-10)
    assert co_r(8 / 3, 3) == pytest.approx(R3_AT_KNEE, abs=1e-10)


def test_co_r_branch_labels():
    assert co_r_branch(1, 3)[1] is Branch.SEPARABLE_POINT
    assert co_r_branch(2, 3)[1] is Branch.CONVEX_BRANCH
    assert co_r_branch(2.9, 3)[1] is Branch.LINEAR_BRANCH
    assert co_r_branch(2, 2)[1] is Branch.CONVEX_BRANCH  # no linear piece for m = 2


@pytest.mark.parametrize("m", range(3, 11))
def test_branch_continuity(m):
    k = knee(m)
    linear = np.log2(m - 1) / (m - 2) * (k - m) + np.log2(m)
    assert r_of_lambda(k, m) == pytest.approx(linear, abs=1e-10)


@pytest.mark.parametrize("m", range(2, 9))
def test_co_r_monotone_convex_and_below_r(m):
    lam = np.linspace(1, m, 4001)
    y = np.array([co_r(t, m) for t in lam])
    r = np.array([r_of_lambda(t, m) for t in lam])
    assert np.all(np.diff(y) >= -1e-12)
    assert np.all(np.diff(y, 2) >= -1e-10)
    assert np.all(y <= r + 1e-12)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_r_is_minimal_entropy(m):
    for lam in np.linspace(1.05, m, 20):
        brute = brute_force_min_entropy(lam, m, resolution=200_000 if m == 3 else 700)
        r = r_of_lambda(lam, m)
        assert brute >= r - 1e-9
        assert brute - r <= 1e-4


def test_numerical_hull_of_convex_function():
    env = numerical_convex_hull(lambda t: (t - 2) ** 2, 0, 4, 101)
    np.testing.assert_allclose(env.y, (env.x - 2) ** 2, atol=1e-12)


def test_numerical_hull_qutrit():
    env = numerical_convex_hull(lambda t: r_of_lambda(t, 3), 1, 3, 10_000)
    exact = np.array([co_r(t, 3) for t in env.x])
    assert np.max(np.abs(env.y - exact)) <= 2e-4


def test_numerical_hull_qubit_is_r_itself():
    env = numerical_convex_hull(lambda t: r_of_lambda(t, 2), 1, 2, 2001)
    r = np.array([r_of_lambda(t, 2) for t in env.x])
    np.testing.assert_allclose(env.y, r, atol=1e-12)


def test_numerical_hull_nonconvex_example():
    env = numerical_convex_hull(lambda t: min(t, 1.0), 0, 2, 201)
    # minorant of min(t, 1) on [0, 2] is the chord t/2
    np.testing.assert_allclose(env.y, env.x / 2, atol=1e-12)
    assert env(1.0) == pytest.approx(0.5)
    with pytest.raises(ParameterOutOfRange):
        numerical_convex_hull(lambda t: t, 0, 1, 2)


def test_lambda_cap_values():
    assert lambda_cap(random_product_state((2, 3), seed=3)) == 1.0
    assert lambda_cap(make_isotropic(4, 0.6)) == pytest.approx(2.4, abs=1e-10)
    assert lambda_cap(make_maximally_entangled(3).density_matrix()) == pytest.approx(3, abs=1e-10)


def test_lambda_above_schmidt_rank_is_rejected():
    from eofbound.bound import lambda_cap_from_norms

    with pytest.raises(LambdaExceedsSchmidtRank):
        lambda_cap_from_norms(2.1, 1.0, 2)
    assert lambda_cap_from_norms(2 + 1e-9, 1.0, 2) == (2 + 1e-9, 2.0)


def test_bound_maximally_entangled_qutrit():
    report = eof_lower_bound(make_isotropic(3, 1.0))
    assert report.bound_bits == pytest.approx(np.log2(3), abs=1e-10)
    assert report.branch is Branch.LINEAR_BRANCH


def test_bound_product_state_is_zero():
    report = eof_lower_bound(random_product_state((3, 2), seed=1))
    assert report.bound_bits == 0 and report.branch is Branch.SEPARABLE_POINT
    assert report.verdict.is_ppt


def test_bound_single_level_subsystem():
    report = eof_lower_bound(maximally_mixed((1, 4)))
    assert report.bound_bits == 0


@pytest.mark.parametrize("p", [0.4, 0.6, 0.8, 1.0])
def test_bound_matches_wootters_on_werner(p):
    rho = make_werner_2x2(p)
    assert eof_lower_bound(rho).bound_bits == pytest.approx(wootters_eof(rho), abs=1e-10)


def test_report_invariants():
    rho = random_density_matrix((3, 3), 2, seed=17)
    rep = eof_lower_bound(rho)
    assert rep.lambda_cap == max(rep.ppt_norm, rep.realignment_norm)
    assert 0 <= rep.bound_bits <= np.log2(3)
    assert rep.elapsed_s >= 0


def test_qubit_closed_form_values():
    assert qubit_bound_from_lambda(2) == pytest.approx(1)
    assert qubit_bound_from_lambda(1) == 0
    assert qubit_bound_from_lambda(1.5) == pytest.approx(H2_AT_LAMBDA_1_5, abs=1e-14)


def test_2xn_requires_qubit_side():
    with pytest.raises(DimensionMismatch):
        eof_lower_bound_2xn(random_density_matrix((3, 3), 2, seed=0))


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 5), rank=st.integers(1, 10), swap=st.booleans())
def test_2xn_matches_general(seed, n, rank, swap):
    dims = (n, 2) if swap else (2, n)
    rho = random_density_matrix(dims, min(rank, 2 * n), seed)
    assert eof_lower_bound_2xn(rho) == pytest.approx(eof_lower_bound(rho).bound_bits, abs=1e-10)


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.integers(2, 4), n=st.integers(2, 6))
def test_pure_state_sandwich(seed, m, n):
    mu = schmidt_spectrum(random_pure_state((m, n), seed))
    assert co_r(mu.lam(), min(m, n)) <= shannon_entropy(mu) + 1e-9


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), p=st.floats(0, 1), d=st.integers(2, 3))
def test_bound_convex_in_state(seed, p, d):
    r1 = random_pure_state((d, d), seed).density_matrix()
    r2 = random_density_matrix((d, d), 1 + seed % 3, seed + 1)
    lhs = eof_lower_bound(mix(p, r1, r2)).bound_bits
    rhs = p * eof_lower_bound(r1).bound_bits + (1 - p) * eof_lower_bound(r2).bound_bits
    assert lhs <= rhs + 1e-8
