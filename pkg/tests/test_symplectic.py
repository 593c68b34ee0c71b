import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maslov_flow.errors import ContractViolation
from maslov_flow.numeric import DEFAULT_TOL, random_complex, random_hermitian, same_span
from maslov_flow.symplectic import (
    SymplecticSpace,
    b_companion,
    boundary_derive,
    diagonal_frame,
    dirichlet,
    flip,
    free,
    graph_lagrangian,
    lagrangian_check,
    lagrangian_from_unitary,
    periodic,
    random_symplectic,
    s_space_by_intersection,
    standard_J,
    unitary_rep,
)


def test_dirichlet():
    bc = dirichlet(1)
    assert bc.dim == 0 and bc.Rb.shape[1] == 2 and bc.dim_S == 1


def test_free():
    bc = free(2)
    assert bc.dim == 4 and bc.Rb.shape[1] == 0 and bc.dim_S == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_periodic(n):
    bc = periodic(n)
    assert same_span(bc.Rb, diagonal_frame(n))
    assert bc.dim_S == n


def test_lagrangian_check_examples():
    std1, std2 = SymplecticSpace.standard(1), SymplecticSpace.standard(2)
    assert lagrangian_check(np.array([[1.0], [0.0]]), std1)[0]
    assert lagrangian_check(np.eye(4)[:, :2], std2)[0]
    dbl = SymplecticSpace.doubled(1)
    e1 = np.eye(4)[:, :1]
    ok, res = lagrangian_check(np.hstack([e1, dbl.form @ e1]), dbl)
    assert not ok and abs(res - 1.0) < 1e-12


def test_unitary_rep_fixtures():
    # frozen: the horizontal line maps to +1, the vertical one to -1
    std = SymplecticSpace.standard(1)
    assert np.allclose(unitary_rep(np.array([[1.0], [0.0]]), std), [[1.0]])
    assert np.allclose(unitary_rep(np.array([[0.0], [1.0]]), std), [[-1.0]])
    std2 = SymplecticSpace.standard(2)
    assert np.allclose(unitary_rep(np.eye(4)[:, :2], std2), np.eye(2))
    assert np.allclose(unitary_rep(np.eye(4)[:, 2:], std2), -np.eye(2))


def test_graph_lagrangian_examples(rng):
    n = 2
    dbl = SymplecticSpace.doubled(n)
    L = graph_lagrangian(np.eye(2 * n))
    assert same_span(L.frame, diagonal_frame(2 * n))
    for M in (standard_J(n), random_symplectic(rng, n)):
        assert lagrangian_check(graph_lagrangian(M).frame, dbl)[0]
    with pytest.raises(ContractViolation):
        graph_lagrangian(np.diag([2.0, 1.0, 1.0, 1.0]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_unitary_round_trip(seed, n):
    rng = np.random.default_rng(seed)
    L = graph_lagrangian(random_symplectic(rng, n))
    back = lagrangian_from_unitary(L.unitary, L.space)
    assert same_span(back, L.frame)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4), st.data())
def test_boundary_invariants(seed, n, data):
    rng = np.random.default_rng(seed)
    k = data.draw(st.integers(0, 2 * n))
    bc = boundary_derive(random_complex(rng, (k, 2 * n)), n)
    W = bc.W.frame
    assert W.shape[1] == 2 * n
    assert np.linalg.norm(W.conj().T @ bc.W.space.form @ W, 2) <= DEFAULT_TOL.residual_tol
    # (R^b)^b = R
    assert same_span(b_companion(bc.Rb, n), bc.R)
    # S two ways
    assert same_span(bc.S, s_space_by_intersection(bc.Rb, n))


def test_special_subspaces_with_structure(rng):
    # R^b built with a prescribed diagonal part gives that S
    n = 3
    w = random_complex(rng, (n, 2))
    Rb = np.hstack([np.vstack([w, w]), random_complex(rng, (2 * n, 1))])
    from maslov_flow.numeric import kernel_basis

    R = kernel_basis((flip(n) @ Rb).conj().T)
    bc = boundary_derive(R.T, n)
    assert bc.dim_S == 2
    assert same_span(bc.S, np.linalg.qr(w)[0])


def test_bad_vector_length():
    with pytest.raises(ContractViolation):
        boundary_derive([[1, 0, 0]], 1)
