import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maslov_flow.errors import ContractViolation
from maslov_flow.numeric import (
    DEFAULT_TOL,
    MorseCounts,
    Tolerances,
    hermitian_eigen,
    kernel_basis,
    morse_counts,
    orth_complement,
    random_complex,
    random_hermitian,
    random_unitary,
    same_span,
    subspace_intersection,
)


def test_eigen_diagonal():
    w, V = hermitian_eigen(np.diag([1.0, 2.0]))
    assert np.allclose(w, [1, 2])
    assert np.allclose(np.abs(V), np.eye(2))


def test_eigen_swap():
    w, _ = hermitian_eigen([[0, 1], [1, 0]])
    assert np.allclose(w, [-1, 1])


def test_eigen_residual_random(rng):
    A = random_hermitian(rng, 5)
    w, V = hermitian_eigen(A)
    assert np.linalg.norm(A @ V - V @ np.diag(w)) < 1e-10
    assert np.linalg.norm(V.conj().T @ V - np.eye(5)) < 1e-12


def test_eigen_rejects_non_hermitian():
    with pytest.raises(ContractViolation):
        hermitian_eigen([[0, 1], [0, 0]])


def test_eigen_rejects_nan():
    with pytest.raises(ContractViolation):
        hermitian_eigen([[np.nan, 0], [0, 1]])


@pytest.mark.parametrize(
    "A, expected",
    [
        (np.diag([-1.0, 0.0, 2.0]), (1, 1, 1)),
        (np.zeros((3, 3)), (0, 3, 0)),
        ([[1, 1], [1, 1]], (0, 1, 1)),
    ],
)
def test_morse_counts_examples(A, expected):
    assert tuple(morse_counts(A)) == expected


def test_morse_counts_fields():
    c = morse_counts(np.diag([-3.0, -1.0, 2.0]))
    assert c == MorseCounts(2, 0, 1)
    assert c.signature == -1 and c.dim == 3


def test_kernel_examples():
    assert kernel_basis(np.zeros((2, 2))).shape[1] == 2
    assert kernel_basis(np.eye(3)).shape[1] == 0
    K = kernel_basis(np.array([[1.0, 1.0], [1.0, 1.0]]))
    assert K.shape[1] == 1
    v = K[:, 0] / K[0, 0]
    assert np.allclose(v, [1, -1])


def test_intersection_examples(rng):
    e1 = np.array([[1.0], [0.0]])
    assert same_span(subspace_intersection(e1, e1), e1)
    a = np.array([[1.0], [1.0]]) / np.sqrt(2)
    b = np.array([[1.0], [-1.0]]) / np.sqrt(2)
    assert subspace_intersection(a, b).shape[1] == 0
    E1 = np.eye(4)[:, :1]
    F1 = np.linalg.qr(np.hstack([E1, random_complex(rng, (4, 1))]))[0]
    F2 = np.linalg.qr(np.hstack([E1, random_complex(rng, (4, 1))]))[0]
    X = subspace_intersection(F1, F2)
    assert X.shape[1] == 1
    assert same_span(X, E1)


def test_orth_complement_examples(rng):
    e1 = np.array([[1.0], [0.0]])
    C = orth_complement(e1)
    assert same_span(C, np.array([[0.0], [1.0]]))
    assert orth_complement(np.eye(3)).shape[1] == 0
    F = np.linalg.qr(random_complex(rng, (5, 3)))[0]
    C = orth_complement(F)
    assert C.shape[1] == 2
    assert np.linalg.norm(F.conj().T @ C) < DEFAULT_TOL.residual_tol


def test_tolerances_validation():
    with pytest.raises(ContractViolation):
        Tolerances(rank_tol=-1.0)
    t = DEFAULT_TOL.with_(rank_tol=1e-6)
    assert t.rank_tol == 1e-6 and t.eig_zero_tol == DEFAULT_TOL.eig_zero_tol


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6))
def test_eigen_reconstruction(seed, d):
    rng = np.random.default_rng(seed)
    A = random_hermitian(rng, d, 3.0)
    w, V = hermitian_eigen(A)
    assert np.linalg.norm(V @ np.diag(w) @ V.conj().T - A, 2) <= DEFAULT_TOL.residual_tol * (1 + np.linalg.norm(A, 2))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(0, 6))
def test_morse_counts_unitary_congruence(seed, d, k):
    rng = np.random.default_rng(seed)
    w = rng.normal(size=d)
    w[: min(k, d)] = 0.0
    A = np.diag(w).astype(complex)
    U = random_unitary(rng, d)
    assert morse_counts(A) == morse_counts(U.conj().T @ A @ U)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 5), st.integers(1, 5), st.integers(0, 5))
def test_rank_nullity(seed, r, c, k):
    rng = np.random.default_rng(seed)
    k = min(k, r, c)
    A = random_complex(rng, (r, k)) @ random_complex(rng, (k, c)) if k else np.zeros((r, c))
    assert kernel_basis(A).shape[1] - kernel_basis(A.conj().T).shape[1] == c - r


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 6))
def test_intersection_symmetric(seed, d):
    rng = np.random.default_rng(seed)
    shared = random_complex(rng, (d, int(rng.integers(0, d))))
    F1 = np.linalg.qr(np.hstack([shared, random_complex(rng, (d, 1))]))[0]
    F2 = np.linalg.qr(np.hstack([shared, random_complex(rng, (d, 1))]))[0]
    X, Y = subspace_intersection(F1, F2), subspace_intersection(F2, F1)
    assert X.shape[1] == Y.shape[1]
    assert same_span(X, Y)
