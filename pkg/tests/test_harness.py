import numpy as np
import pytest

from maslov_flow.hamiltonian import CoefficientPath, MatrixPath, shear_path
from maslov_flow.harness import (
    ProblemSpec,
    concavity_correction,
    concavity_instance,
    generate_instance,
    lemma45_instance,
    suite,
    thm2_instance,
    thm3_instance,
    verify_concavity,
    verify_cor1,
    verify_lemma45,
    verify_thm1,
    verify_thm2,
    verify_thm3,
)
from maslov_flow.numeric import morse_counts, random_complex, random_hermitian, random_unitary, restrict
from maslov_flow.symplectic import boundary_derive, dirichlet, free, periodic


def jacobi(T, R=(), homotopy="linear", r=-1.0):
    C = lambda x: MatrixPath.constant([[x]])
    return ProblemSpec(1, T, C(1.0), C(0.0), C(r), np.asarray(R, dtype=complex).reshape(-1, 2), homotopy)


def test_thm1_jacobi():
    rep = verify_thm1(jacobi(4.0))
    assert (rep.lhs, rep.rhs, rep.passed) == (1, 1, True)
    ev = rep.evidence
    assert ev["i_gamma1"]["index"] == 2 and ev["i_gamma0"]["index"] == 1
    assert ev["symplectic_residual"] <= 1e-8 and ev["lagrangian_residual"] <= 1e-9


def test_thm1_constant_homotopy():
    rep = verify_thm1(jacobi(4.0, homotopy="fixed"))
    assert (rep.lhs, rep.rhs, rep.passed) == (0, 0, True)


def test_thm1_random_small_batch():
    for rep in suite("thm1", range(3), (2,)):
        assert rep.passed, rep.to_dict()


def test_thm2_closed_form():
    rep = verify_thm2(MatrixPath.poly([[[-1.0]], [[1.0]]]), dirichlet(1), 2.0)
    assert (rep.lhs, rep.rhs, rep.passed) == (1, 1, True)


def test_thm2_constant():
    rep = verify_thm2(MatrixPath.constant(np.diag([1.0, -2.0])), periodic(2), 1.0)
    assert (rep.lhs, rep.rhs) == (0, 0)


def test_thm2_random_batch():
    seen = set()
    for seed in range(12):
        n = 1 + seed % 3
        P, bc, T = thm2_instance(seed, n)
        rep = verify_thm2(P, bc, T)
        assert rep.passed, rep.to_dict()
        seen.add(bc.dim_S)
    assert seen == {0, 1, 2} or len(seen) >= 2


@pytest.mark.parametrize("T, bc, m, i", [(4.0, dirichlet(1), 1, 2), (2.0, free(1), 1, 1), (3.0, dirichlet(1), 0, 1)])
def test_cor1_examples(T, bc, m, i):
    ps = jacobi(T, R=bc.R.T)
    rep = verify_cor1(ps)
    assert rep.passed and rep.lhs == m and rep.evidence["maslov"]["index"] == i


def test_thm3_identity_frame():
    ps = generate_instance(3, 2)
    rep = verify_thm3(ps, MatrixPath.constant(np.eye(2)))
    assert rep.passed and rep.lhs == 0


def test_thm3_unitary_periodic(rng):
    ps = generate_instance(5, 2)
    ps.R_span = periodic(2).R.T
    rep = verify_thm3(ps, MatrixPath.constant(random_unitary(rng, 2)))
    assert rep.passed and rep.evidence["dim_GrI_R"] == 2 and rep.evidence["dim_GrI_R_new"] == 2


def test_thm3_exponential_dirichlet():
    ps = generate_instance(6, 2, dim_R=0)
    a = MatrixPath.function(lambda t: np.diag(np.exp([t, 2 * t])), 2,
                            df=lambda t: np.diag([np.exp(t), 2 * np.exp(2 * t)]))
    rep = verify_thm3(ps, a)
    assert (rep.lhs, rep.rhs, rep.passed) == (0, 0, True)
    assert rep.evidence["route_difference"] <= 1e-6


def test_thm3_random_batch():
    for seed in range(6):
        rep = verify_thm3(thm3_instance(seed, 1 + seed % 3))
        assert rep.passed, rep.to_dict()


def test_lemma45_identity():
    rep = verify_lemma45(MatrixPath.constant(np.eye(2)), periodic(2), 1.0)
    assert (rep.lhs, rep.rhs) == (0, 0)


def test_lemma45_linear_scalar():
    rep = verify_lemma45(MatrixPath.poly([[[1.0]], [[1.0]]]), periodic(1), 1.0)
    assert (rep.lhs, rep.rhs, rep.passed) == (1, 1, True)


def test_lemma45_random_diagonal(rng):
    for _ in range(4):
        d0, d1 = rng.uniform(0.5, 2.0, 2), rng.uniform(-0.4, 0.4, 2)
        a = MatrixPath.poly([np.diag(d0), np.diag(d1)])
        R = np.vstack([np.r_[1.0, 0.0, 1 / d0[0], 0.0], random_complex(rng, (1, 4))])
        rep = verify_lemma45(a, boundary_derive(R, 2), 1.0)
        assert rep.passed, rep.to_dict()


def test_lemma45_random_batch():
    for seed in range(6):
        rep = verify_lemma45(*lemma45_instance(seed, 1 + seed % 3))
        assert rep.passed, rep.to_dict()


def test_concavity_equal_spaces(rng):
    gamma, _, bc2 = concavity_instance(3, 2)
    rep = verify_concavity(gamma, bc2, bc2)
    assert rep.passed and rep.lhs == 0 and rep.rhs == 0


@pytest.mark.parametrize("seed", range(4))
def test_concavity_shear_correction(seed):
    # with P(0) = 0, R1 = R and R2 = C^{2n}: C = dim S - m+(P(T)|_S)
    rng = np.random.default_rng(seed)
    n = 2
    P = MatrixPath.poly([np.zeros((n, n)), 2 * random_hermitian(rng, n)])
    gamma = shear_path(P, 1.0)
    k = int(rng.integers(0, 2 * n + 1))
    bc1, bc2 = boundary_derive(random_complex(rng, (k, 2 * n)), n), free(n)
    C, _ = concavity_correction(gamma.end(), bc1, bc2)
    S = bc1.S
    m_plus = morse_counts(restrict(P(1.0), S)).m_plus if S.shape[1] else 0
    assert C == bc1.dim_S - m_plus
    assert verify_concavity(gamma, bc1, bc2).passed


def test_concavity_dirichlet_positive_shear():
    P = MatrixPath.poly([np.zeros((2, 2)), np.diag([1.0, 3.0])])
    C, _ = concavity_correction(shear_path(P, 1.0).end(), dirichlet(2), free(2))
    assert C == 0


def test_concavity_rejects_non_nested():
    gamma, bc1, bc2 = concavity_instance(1, 1)
    rep = verify_concavity(gamma, free(1), dirichlet(1))
    assert not rep.passed and rep.error_kind == "input"


def test_concavity_random_batch():
    for seed in range(8):
        rep = verify_concavity(*concavity_instance(seed, 1 + seed % 3))
        assert rep.passed, rep.to_dict()


def test_generate_instance_deterministic():
    a, b = generate_instance(42, 3), generate_instance(42, 3)
    assert a.describe() == b.describe()
    assert np.array_equal(a.R_span, b.R_span)


def test_generate_instance_positive_p():
    ps = generate_instance(9, 3)
    w = np.linalg.svd(ps.p.many(np.linspace(0, ps.T, 101)), compute_uv=False)
    assert w.min() > 0.5


def test_generate_instance_full_boundary():
    ps = generate_instance(1, 2, dim_R=4)
    assert ps.bc().dim == 4 and ps.bc().Rb.shape[1] == 0


def test_generate_instance_indefinite():
    ps = generate_instance(2, 2, p_indefinite=True)
    assert ps.coeffs().p_definiteness() == 0


def test_failed_pipeline_becomes_report():
    C = lambda x: MatrixPath.constant([[x]])
    ps = ProblemSpec(1, 2.0, MatrixPath.poly([[[-1.0]], [[1.0]]]), C(0.0), C(0.0), np.zeros((0, 2)))
    rep = verify_thm1(ps)
    assert not rep.passed and rep.error_kind == "numerical" and "Singular" in rep.error


def test_report_json_round_trip():
    import json

    rep = verify_thm2(MatrixPath.poly([[[-1.0]], [[1.0]]]), dirichlet(1), 2.0)
    d = json.loads(json.dumps(rep.to_dict()))
    assert d["pass"] and d["lhs"] == 1
    assert d["evidence"]["maslov"]["crossings"][0]["dim"] == 1
