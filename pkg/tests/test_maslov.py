import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from maslov_flow.errors import NonRegularCrossingError
from maslov_flow.hamiltonian import (
    CoefficientPath,
    MatrixPath,
    closed_form_path,
    fundamental_solution,
    rotation_path,
    shear_path,
)
from maslov_flow.harness import generate_instance
from maslov_flow.maslov import (
    crossing_form,
    detect_crossings,
    generic_pair_path,
    graph_pair_path,
    iW,
    maslov_index_crossing_form,
    maslov_index_eigenphase,
    maslov_monotone,
    nullity,
)
from maslov_flow.numeric import random_complex, random_hermitian
from maslov_flow.symplectic import (
    LagrangianFrame,
    SymplecticSpace,
    boundary_derive,
    dirichlet,
    free,
    graph_basis,
    periodic,
    random_symplectic,
    standard_J,
)


def const_path(M, T=1.0):
    M = np.asarray(M, dtype=complex)
    n = M.shape[0] // 2
    return closed_form_path(n, T, lambda t: M, lambda t: np.zeros((2 * n, 2 * n), dtype=complex))


def exp_path(H, T=1.0, label="exp"):
    n = H.shape[0] // 2
    JH = standard_J(n) @ H
    return closed_form_path(n, T, lambda t: expm(t * JH), lambda t: H, label=label)


def test_rotation_crossings():
    pp = graph_pair_path(rotation_path(1, 4.0), dirichlet(1).W)
    ts = [t for t, _ in detect_crossings(pp)]
    assert len(ts) == 2
    assert abs(ts[0]) < 1e-12 and abs(ts[1] - np.pi) < 1e-8


def test_identity_path_no_crossing():
    anti = boundary_derive([[1, -1]], 1)
    pp = graph_pair_path(const_path(np.eye(2)), anti.W)
    assert detect_crossings(pp) == []
    assert iW(const_path(np.eye(2)), anti).index == 0


def test_shear_crossing_location():
    g = shear_path(MatrixPath.poly([[[-1.0]], [[1.0]]]), 2.0)
    pp = graph_pair_path(g, dirichlet(1).W)
    ts = [t for t, _ in detect_crossings(pp)]
    assert len(ts) == 1 and abs(ts[0] - 1.0) < 1e-8
    G, _ = crossing_form(pp, ts[0], detect_crossings(pp)[0][1])
    assert G.shape == (1, 1) and G[0, 0].real > 0


def test_rotation_forms_positive():
    pp = graph_pair_path(rotation_path(1, 4.0), dirichlet(1).W)
    for t, V in detect_crossings(pp):
        G, dev = crossing_form(pp, t, V)
        assert np.all(np.linalg.eigvalsh(G) > 0)
        assert dev < 1e-5


def test_constant_path_non_regular():
    with pytest.raises(NonRegularCrossingError):
        iW(const_path(np.eye(2)), dirichlet(1), method="crossing_form", perturb=False)


def test_rotation_index_both_methods():
    pp = graph_pair_path(rotation_path(1, 4.0), dirichlet(1).W)
    assert maslov_index_crossing_form(pp).index == 2
    assert maslov_index_eigenphase(pp).index == 2
    assert iW(rotation_path(1, 4.0), dirichlet(1)).index == 2


def test_constant_paths_zero():
    M = random_symplectic(np.random.default_rng(1), 2)
    bc = boundary_derive(random_complex(np.random.default_rng(2), (3, 4)), 2)
    assert iW(const_path(M), bc, method="eigenphase").index == 0


def test_loop_methods_agree():
    g = closed_form_path(1, 1.0, lambda t: expm(2 * np.pi * t * standard_J(1)), lambda t: 2 * np.pi * np.eye(2))
    r = iW(g, dirichlet(1))
    assert r.method.startswith("crossing_form") and r.index == 2


def test_reversed_rotation_methods_agree():
    T = 4.0
    J = standard_J(1)
    g = closed_form_path(1, T, lambda t: expm((T - t) * J), lambda t: -np.eye(2))
    pp = graph_pair_path(g, dirichlet(1).W)
    assert maslov_index_crossing_form(pp).index == maslov_index_eigenphase(pp).index


def test_shear_index_one():
    g = shear_path(MatrixPath.poly([[[-1.0]], [[1.0]]]), 2.0)
    assert iW(g, dirichlet(1)).index == 1


def test_constant_shear_zero():
    g = shear_path(MatrixPath.constant([[0.7]]), 2.0)
    assert iW(g, dirichlet(1)).index == 0


def test_jacobi_index_two():
    c = CoefficientPath(1, 4.0, MatrixPath.constant([[1.0]]), MatrixPath.constant([[0.0]]),
                        MatrixPath.constant([[-1.0]]))
    r = iW(fundamental_solution(c, 1.0), dirichlet(1))
    assert r.index == 2 and r.nullity == 0


@pytest.mark.parametrize("bc_factory, dim_s", [(dirichlet, 2), (periodic, 2), (free, 0)])
def test_monotone_shear_gives_dim_s(bc_factory, dim_s):
    # P(t) = integral of p with p > 0; P(0) = 0
    p0 = np.array([[2.0, 0.5], [0.5, 1.0]])
    g = shear_path(MatrixPath.poly([np.zeros((2, 2)), p0, 0.3 * np.eye(2)]), 1.5)
    bc = bc_factory(2)
    assert bc.dim_S == dim_s
    assert maslov_monotone(g, bc.W).index == dim_s
    assert iW(g, bc).index == dim_s


def test_monotone_rotation_and_constant():
    assert maslov_monotone(rotation_path(1, 4.0), dirichlet(1).W).index == 2
    assert maslov_monotone(const_path(np.eye(2)), boundary_derive([[1, -1]], 1).W).index == 0


def test_full_boundary_shear_zero(rng):
    for _ in range(3):
        P = MatrixPath.poly([random_hermitian(rng, 2), random_hermitian(rng, 2)])
        assert iW(shear_path(P, 1.0), free(2)).index == 0


def test_nullity_identity():
    assert nullity(np.eye(2), periodic(1)) == 2
    assert nullity(np.eye(2), dirichlet(1)) == 1


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_symplectic_invariance(seed, n):
    rng = np.random.default_rng(seed)
    g = exp_path(random_hermitian(rng, 2 * n, 1.5))
    bc = boundary_derive(random_complex(rng, (int(rng.integers(0, 2 * n + 1)), 2 * n)), n)
    M1, M2 = random_symplectic(rng, n, 0.5), random_symplectic(rng, n, 0.5)
    Z = np.zeros((2 * n, 2 * n))
    M = np.block([[M1, Z], [Z, M2]])
    space = SymplecticSpace.doubled(n)
    moved = generic_pair_path(space, lambda t: M @ graph_basis(g.at(t)), M @ bc.W.frame, 0.0, 1.0, 401)
    base = iW(g, bc).index
    assert maslov_index_eigenphase(moved).index == base


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 2))
def test_composition(seed, n):
    rng = np.random.default_rng(seed)
    g1, g2, g3 = (exp_path(random_hermitian(rng, 2 * n, 1.2)) for _ in range(3))
    bc = boundary_derive(random_complex(rng, (int(rng.integers(0, 2 * n + 1)), 2 * n)), n)
    space = SymplecticSpace.doubled(n)
    Z = np.zeros((2 * n, 2 * n))
    M = np.block([[g1.end(), Z], [Z, np.linalg.inv(g3.end())]])
    Wp = LagrangianFrame.from_span(M @ bc.W.frame, space)
    full = closed_form_path(n, 1.0, lambda t: g3.at(t) @ g2.at(t) @ g1.at(t))
    outer = closed_form_path(n, 1.0, lambda t: g3.at(t) @ g1.at(t))
    lhs = iW(full, bc, method="eigenphase").index
    rhs = iW(g2, Wp, method="eigenphase").index + iW(outer, bc, method="eigenphase").index
    assert lhs == rhs


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_reparametrization_invariance(seed, n):
    rng = np.random.default_rng(seed)
    H = random_hermitian(rng, 2 * n, 2.0)
    JH = standard_J(n) @ H
    phi = lambda t: t + 0.6 * np.sin(np.pi * t) / np.pi
    dphi = lambda t: 1 + 0.6 * np.cos(np.pi * t)
    g = exp_path(H)
    gr = closed_form_path(n, 1.0, lambda t: expm(phi(t) * JH), lambda t: dphi(t) * H)
    bc = boundary_derive(random_complex(rng, (int(rng.integers(0, 2 * n + 1)), 2 * n)), n)
    assert iW(g, bc).index == iW(gr, bc).index


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_dual_agreement_random_systems(seed, n):
    ps = generate_instance(seed, n)
    bc = ps.bc()
    for s in (0.0, 1.0):
        r = iW(fundamental_solution(ps.coeffs(), s), bc)   # raises on disagreement
        assert r.agreement is not False
