import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from scsent.errors import DimensionMismatch, NotAntiHermitian, NotHermitian, NotPSD
from scsent.linalg import (
    antihermitian_exp,
    hermitian_eigen,
    matmul,
    psd_sqrt,
    singular_values,
    tensor,
)

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def hermitian(draw, max_dim=12):
    n = draw(st.integers(1, max_dim))
    re = draw(arrays(np.float64, (n, n), elements=finite))
    im = draw(arrays(np.float64, (n, n), elements=finite))
    A = re + 1j * im
    return (A + A.conj().T) / 2


@st.composite
def gaussian_int_matrix(draw):
    r, c = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    ints = st.integers(-20, 20)
    return draw(arrays(np.int64, (r, c), elements=ints)) + 1j * draw(arrays(np.int64, (r, c), elements=ints))


@settings(max_examples=150, deadline=None)
@given(hermitian())
def test_eigen_reconstruction_and_orthonormality(A):
    w, V = hermitian_eigen(A)
    scale = max(np.abs(A).max(), 1e-300)
    assert np.abs(V @ np.diag(w) @ V.conj().T - A).max() <= 1e-11 * max(scale, 1.0)
    assert np.abs(V.conj().T @ V - np.eye(len(w))).max() <= 1e-11
    assert np.all(np.diff(w) <= 0)


@settings(max_examples=100, deadline=None)
@given(hermitian())
def test_eigenvalues_match_reference_solver(A):
    # numpy's LAPACK solver serves as the independent oracle here
    ref = np.linalg.eigvalsh(A)[::-1]
    w = hermitian_eigen(A).eigenvalues
    assert np.allclose(w, ref, atol=1e-11 * max(1.0, np.abs(A).max()))


def test_eigen_of_diagonal_keeps_index_order_on_ties():
    A = np.diag([1.0, 3.0, 1.0, 3.0])
    w, V = hermitian_eigen(A)
    assert list(w) == [3.0, 3.0, 1.0, 1.0]
    assert np.argmax(np.abs(V[:, 0])) == 1
    assert np.argmax(np.abs(V[:, 1])) == 3


def test_eigen_zero_matrix():
    w, V = hermitian_eigen(np.zeros((3, 3)))
    assert np.all(w == 0)
    assert np.allclose(V, np.eye(3))


def test_eigen_is_deterministic():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    A = A + A.conj().T
    a, b = hermitian_eigen(A), hermitian_eigen(A.copy())
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_eigen_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigen(np.array([[0, 1], [0, 0]], dtype=complex))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_psd_sqrt_squares_back(n, seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, n + 1))
    B = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    A = B @ B.conj().T
    S = psd_sqrt(A)
    assert np.abs(S @ S - A).max() <= 1e-9
    assert np.allclose(S, S.conj().T)


def test_psd_sqrt_clamps_tiny_negative_and_rejects_real_negative():
    S = psd_sqrt(np.diag([4.0, -5e-11]))
    assert np.allclose(S, np.diag([2.0, 0.0]))
    with pytest.raises(NotPSD):
        psd_sqrt(np.diag([1.0, -1e-6]))


@settings(max_examples=100, deadline=None)
@given(hermitian(max_dim=8))
def test_antihermitian_exp_inverse(H):
    A = 1j * H
    U = antihermitian_exp(A)
    n = H.shape[0]
    assert np.abs(U @ antihermitian_exp(-A) - np.eye(n)).max() <= 1e-10
    assert np.abs(U.conj().T @ U - np.eye(n)).max() <= 1e-10


def test_antihermitian_exp_known_rotation():
    t = 0.7
    A = np.array([[0, -t], [t, 0]], dtype=complex)
    expected = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
    assert np.allclose(antihermitian_exp(A), expected, atol=1e-14)


def test_antihermitian_exp_rejects_hermitian():
    with pytest.raises(NotAntiHermitian):
        antihermitian_exp(np.eye(2))


@settings(max_examples=100, deadline=None)
@given(gaussian_int_matrix(), gaussian_int_matrix(), gaussian_int_matrix())
def test_tensor_associative_exactly(A, B, C):
    # Gaussian integers keep every product exact, so equality is bitwise.
    assert np.array_equal(tensor(tensor(A, B), C), tensor(A, tensor(B, C)))


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        matmul(np.ones((2, 3)), np.ones((2, 3)))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_singular_values_match_reference(r, c, seed):
    rng = np.random.default_rng(seed)
    M = rng.normal(size=(r, c)) + 1j * rng.normal(size=(r, c))
    assert np.allclose(singular_values(M), np.linalg.svd(M, compute_uv=False), atol=1e-12)


def test_singular_values_of_rank_one_stay_tiny():
    u = np.array([1.0, 2.0, 3.0j])
    sv = singular_values(np.outer(u, u))
    assert sv[0] == pytest.approx(np.vdot(u, u).real)
    assert np.all(sv[1:] < 1e-14)


@pytest.mark.parametrize("tiny", [5e-324, 1e-310, 1e-200])
def test_eigen_survives_subnormal_entries(tiny):
    A = np.array([[tiny, 0.5j + tiny, tiny], [-0.5j + tiny, tiny, tiny], [tiny, tiny, tiny]])
    A = (A + A.conj().T) / 2
    w, V = hermitian_eigen(A)
    assert np.allclose(w, [0.5, 0.0, -0.5], atol=1e-15)
    assert np.abs(V.conj().T @ V - np.eye(3)).max() < 1e-14


@pytest.mark.parametrize("scale", [1e-300, 1e300])
def test_eigen_extreme_scales(scale):
    A = scale * np.array([[2.0, 1j], [-1j, 2.0]])
    w = hermitian_eigen(A).eigenvalues
    assert np.allclose(w / scale, [3.0, 1.0], rtol=1e-14)
