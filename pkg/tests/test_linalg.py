import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from swanson_metric import linalg as la
from swanson_metric.errors import (
    DimensionError,
    MatrixOverflowError,
    NoConvergenceError,
    NonPositiveFrequencyError,
    NotHermitianError,
)


def random_hermitian(rng, n, scale=1.0):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * 0.5 * (m + m.conj().T)


# ladder algebra ----------------------------------------------------------

def test_ladder_dim2():
    assert_array_equal(la.ladder_a(2), [[0, 1], [0, 0]])


def test_ladder_dim4_entries():
    a = la.ladder_a(4)
    expected = np.zeros((4, 4))
    expected[0, 1], expected[1, 2], expected[2, 3] = 1.0, math.sqrt(2), math.sqrt(3)
    assert_array_equal(a, expected)


@pytest.mark.parametrize("dim", [2, 5, 16])
def test_number_from_ladder(dim):
    # sqrt(n)**2 == n only up to one rounding of the square root
    a = la.ladder_a(dim)
    assert_allclose(la.adjoint(a) @ a, la.number_op(dim), rtol=4 * np.finfo(float).eps, atol=0)


@pytest.mark.parametrize("dim", [0, 1, 2.5])
def test_ladder_rejects_small_dim(dim):
    with pytest.raises(DimensionError):
        la.ladder_a(dim)


def test_canonical_commutators_below_edge():
    a = la.ladder_a(16)
    c = la.commutator(a, la.adjoint(a))
    assert_allclose(c[:15, :15], np.eye(15), atol=1e-14)
    assert c[15, 15] == pytest.approx(-15)  # the truncation edge

    x, p = la.position_op(16, 1.0), la.momentum_op(16, 1.0)
    assert_allclose(la.commutator(x, p)[:15, :15], 1j * np.eye(15), atol=1e-14)


def test_position_dim2():
    assert_allclose(la.position_op(2, 1.0), [[0, 1 / math.sqrt(2)], [1 / math.sqrt(2), 0]], atol=0)


@pytest.mark.parametrize("omega", [0.3, 1.0, 7.0])
def test_xp_hermitian_exactly(omega):
    assert la.hermiticity_residual(la.position_op(9, omega)) == 0.0
    assert la.hermiticity_residual(la.momentum_op(9, omega)) == 0.0


@pytest.mark.parametrize("omega", [0.0, -1.0, math.inf])
def test_xp_reject_bad_frequency(omega):
    with pytest.raises(NonPositiveFrequencyError):
        la.position_op(4, omega)
    with pytest.raises(NonPositiveFrequencyError):
        la.momentum_op(4, omega)


# helpers -----------------------------------------------------------------

def test_hermiticity_residual_of_a():
    assert la.hermiticity_residual(la.ladder_a(4)) == pytest.approx(math.sqrt(12), rel=1e-15)


def test_project_sector():
    assert_array_equal(la.project_sector(la.identity(8), 3), np.eye(3))
    with pytest.raises(DimensionError):
        la.project_sector(la.identity(8), 0)
    with pytest.raises(DimensionError):
        la.project_sector(la.identity(8), 9)


def test_binary_ops_check_dimension():
    with pytest.raises(DimensionError):
        la.add(la.identity(3), la.identity(4))
    with pytest.raises(DimensionError):
        la.mul(la.identity(3), la.identity(4))
    with pytest.raises(DimensionError):
        la.commutator(la.identity(3), la.identity(4))


def test_algebra_helpers():
    a = la.ladder_a(5)
    assert_array_equal(la.sub(la.add(a, a), a), a)
    assert_array_equal(la.scale(2.0, a), 2.0 * a)
    assert_array_equal(la.mul(a, a, a), a @ a @ a)


def test_as_fock_rejects_non_square():
    with pytest.raises(DimensionError):
        la.as_fock(np.zeros((2, 3)))


# matrix exponential ------------------------------------------------------

def test_exp_zero_is_identity_exactly():
    assert_array_equal(la.matrix_exp(np.zeros((6, 6))), np.eye(6))


def test_exp_diagonal():
    d = np.array([-3.0, -0.5, 0.0, 1.0, 4.0])
    assert_allclose(la.matrix_exp(np.diag(d)), np.diag(np.exp(d)), rtol=1e-14, atol=0)


def test_exp_nilpotent_finite_series():
    m = la.ladder_a(4) @ la.ladder_a(4)
    assert_allclose(la.matrix_exp(m), np.eye(4) + m + m @ m / 2, atol=1e-15)


@pytest.mark.parametrize("seed", range(5))
def test_exp_matches_scipy(seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    ref = scipy.linalg.expm(m)
    assert la.frobenius_norm(la.matrix_exp(m) - ref) <= 1e-12 * la.frobenius_norm(ref)


def test_exp_overflow_signalled():
    with pytest.raises(MatrixOverflowError):
        la.matrix_exp(np.diag([800.0, 0.0]))


def test_exp_rejects_nonfinite():
    with pytest.raises(ValueError):
        la.matrix_exp(np.array([[np.nan, 0], [0, 0]]))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 10), norm=st.floats(0.01, 5.0))
def test_exp_inverse_property(seed, n, norm):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m *= norm / np.linalg.norm(m)
    e = la.matrix_exp(m)
    res = la.frobenius_norm(e @ la.matrix_exp(-m) - np.eye(n))
    assert res <= 1e-10 * (1 + la.frobenius_norm(e))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 10), s=st.floats(-3.0, 3.0))
def test_exp_hermitian_is_positive_definite(seed, n, s):
    rng = np.random.default_rng(seed)
    m = random_hermitian(rng, n)
    e = la.matrix_exp(s * m)
    assert la.hermiticity_residual(e) <= 1e-12 * la.frobenius_norm(e)
    assert np.all(np.linalg.eigvalsh(0.5 * (e + e.conj().T)) > 0)


# eigensolver -------------------------------------------------------------

def test_eigen_trivial_cases():
    assert_allclose(la.hermitian_eigen(np.diag([3.0, 1.0, 2.0])).eigenvalues, [1, 2, 3])
    assert_allclose(la.hermitian_eigen(np.array([[0, 1], [1, 0]])).eigenvalues, [-1, 1], atol=1e-15)
    assert_allclose(la.hermitian_eigen(la.number_op(8)).eigenvalues, np.arange(8), atol=1e-12)


def test_eigen_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        la.hermitian_eigen(la.ladder_a(4))


def test_eigen_iteration_cap():
    rng = np.random.default_rng(0)
    with pytest.raises(NoConvergenceError):
        la.hermitian_eigen(random_hermitian(rng, 12), max_sweeps=1)


@pytest.mark.parametrize("n", [7, 32, 64])
def test_eigen_matches_numpy(n):
    rng = np.random.default_rng(n)
    m = random_hermitian(rng, n)
    dec = la.hermitian_eigen(m)
    assert_allclose(dec.eigenvalues, np.linalg.eigvalsh(m), atol=1e-11 * np.linalg.norm(m))
    resid = la.frobenius_norm(m @ dec.eigenvectors - dec.eigenvectors * dec.eigenvalues)
    assert resid <= 1e-10 * la.frobenius_norm(m)


def test_eigen_real_symmetric_path():
    rng = np.random.default_rng(1)
    m = rng.normal(size=(20, 20))
    m = m + m.T
    dec = la.hermitian_eigen(m)
    assert dec.eigenvectors.dtype == np.complex128
    assert_allclose(dec.eigenvalues, np.linalg.eigvalsh(m), atol=1e-11 * np.linalg.norm(m))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 16))
def test_eigen_reconstruction(seed, n):
    rng = np.random.default_rng(seed)
    m = random_hermitian(rng, n)
    dec = la.hermitian_eigen(m)
    v = dec.eigenvectors
    assert np.all(np.diff(dec.eigenvalues) >= 0)
    assert la.frobenius_norm(v.conj().T @ v - np.eye(n)) <= 1e-10
    recon = v @ np.diag(dec.eigenvalues) @ v.conj().T
    assert la.frobenius_norm(m - recon) <= 1e-9 * la.frobenius_norm(m)


@pytest.mark.parametrize("omega", [0.5, 2.0])
def test_projected_squares(omega):
    dim = 12
    x, p = la.position_op(dim, omega), la.momentum_op(dim, omega)
    # agree with the truncated products except in the last diagonal entry
    assert_allclose(la.position_sq(dim, omega)[:-1, :-1], (x @ x)[:-1, :-1], atol=1e-14)
    assert_allclose(la.momentum_sq(dim, omega)[:-1, :-1], (p @ p)[:-1, :-1], atol=1e-14)
    big = 40
    xb = la.position_op(big, omega)
    assert_allclose(la.position_sq(dim, omega), (xb @ xb)[:dim, :dim], atol=1e-13)
