import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qqpovm.linalg import (
    DimensionError,
    NotPSDError,
    Tolerance,
    adjoint,
    eig_hermitian,
    is_hermitian,
    multiply,
    principal_sqrt,
    real_trace_product,
    trace,
)
from qqpovm.ensembles import random_psd

S12 = 1 / np.sqrt(12)
Q1 = np.array([[5 / 6, S12], [S12, 1 / 2]])
Q2 = np.eye(2) - Q1
P1 = np.array([[1 / 6, S12], [S12, 1 / 2]])
P2 = np.eye(2) - P1

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(2, 6)


def _quadratic_roots(tr, det):
    disc = np.sqrt(tr**2 - 4 * det)
    return sorted([(tr - disc) / 2, (tr + disc) / 2])


def test_is_hermitian_examples():
    assert is_hermitian(Q1)
    assert is_hermitian(np.eye(2))
    assert not is_hermitian([[0, 1], [0, 0]])


def test_is_hermitian_rejects_non_square():
    with pytest.raises(DimensionError):
        is_hermitian(np.ones((2, 3)))


def test_tolerance_rejects_negative():
    with pytest.raises(ValueError):
        Tolerance(-1e-3)


def test_eig_q1_matches_characteristic_polynomial():
    # trace 4/3, determinant 1/3
    tr, det = np.trace(Q1), np.linalg.det(Q1)
    assert tr == pytest.approx(4 / 3)
    assert det == pytest.approx(1 / 3)
    w, v = eig_hermitian(Q1)
    np.testing.assert_allclose(w, _quadratic_roots(4 / 3, 1 / 3), atol=1e-12)
    np.testing.assert_allclose(w, [1 / 3, 1], atol=1e-12)
    np.testing.assert_allclose(Q1 @ v, v * w, atol=1e-9)
    np.testing.assert_allclose(adjoint(v) @ v, np.eye(2), atol=1e-9)


@pytest.mark.parametrize(
    "m, expected",
    [(np.eye(3), [1, 1, 1]), (np.diag([2.0, -1.0]), [-1, 2])],
)
def test_eig_trivial(m, expected):
    w, _ = eig_hermitian(m)
    np.testing.assert_allclose(w, expected)


def test_eig_non_square():
    with pytest.raises(DimensionError):
        eig_hermitian(np.ones((3, 2)))


def test_principal_sqrt_trivial():
    np.testing.assert_allclose(principal_sqrt(np.eye(2)), np.eye(2))
    np.testing.assert_allclose(principal_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14)


def test_principal_sqrt_q1():
    r = principal_sqrt(Q1)
    np.testing.assert_allclose(r @ r, Q1, atol=1e-9)
    w, _ = eig_hermitian(r)
    np.testing.assert_allclose(w, [1 / np.sqrt(3), 1], atol=1e-12)


def test_principal_sqrt_clamps_tiny_negative():
    r = principal_sqrt(np.diag([-1e-12, 1.0]))
    np.testing.assert_allclose(r, np.diag([0.0, 1.0]))


def test_principal_sqrt_not_psd():
    with pytest.raises(NotPSDError):
        principal_sqrt(np.diag([-0.1, 1.0]))


def test_mat_ops_examples():
    assert trace(np.eye(3)) == 3
    np.testing.assert_array_equal(adjoint([[0, 1j], [0, 0]]), [[0, 0], [-1j, 0]])
    s = 1 / (6 * np.sqrt(3))
    np.testing.assert_allclose(multiply(P2, Q1), [[11 / 18, s], [-s, 1 / 6]], atol=1e-15)


def test_mat_ops_dimension_errors():
    with pytest.raises(DimensionError):
        multiply(np.eye(2), np.eye(3))
    with pytest.raises(DimensionError):
        real_trace_product(np.eye(2), np.eye(3))


def test_real_trace_product_rejects_non_hermitian_product():
    with pytest.raises(ValueError):
        real_trace_product(np.array([[1j, 0], [0, 0]]), np.eye(2))


@settings(max_examples=50, deadline=None)
@given(seeds, dims)
def test_spectral_reconstruction(seed, d):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g + adjoint(g)
    w, v = eig_hermitian(m)
    assert np.all(np.diff(w) >= 0)
    np.testing.assert_allclose((v * w) @ adjoint(v), m, atol=1e-9)


@settings(max_examples=50, deadline=None)
@given(seeds, dims)
def test_sqrt_squares_back(seed, d):
    m = random_psd(d, np.random.default_rng(seed))
    r = principal_sqrt(m)
    assert is_hermitian(r, 1e-12)
    np.testing.assert_allclose(r @ r, m, atol=1e-9 * max(1.0, np.abs(m).max()))


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 5), st.integers(1, 5))
def test_trace_cyclic(seed, n, k):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    b = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
    assert abs(trace(a @ b) - trace(b @ a)) <= 1e-12 * max(1.0, np.abs(a).max() * np.abs(b).max() * k)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_double_adjoint_exact(seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    np.testing.assert_array_equal(adjoint(adjoint(a)), a)
