"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed even when output capture is on.
"""

import time
from functools import lru_cache

import numpy as np
import pytest

from maslov_flow.hamiltonian import CoefficientPath, MatrixPath, fundamental_solution, rotation_path, shear_path
from maslov_flow.harness import (
    ProblemSpec,
    _lag_res,
    block_flow_instance,
    concavity_correction,
    concavity_instance,
    lemma45_instance,
    morse_formula_instance,
    suite,
    thm2_instance,
    verify_block_flow,
    verify_concavity,
    verify_cor1,
    verify_morse_formula,
    verify_thm1,
    verify_thm2,
)
from maslov_flow.index_form import GalerkinSpace, assemble, morse_index
from maslov_flow.maslov import iW
from maslov_flow.numeric import morse_counts, random_complex, random_hermitian, restrict
from maslov_flow.symplectic import boundary_derive, dirichlet, free

SEEDS = range(20)
PER_N = range(7)  # seeds per n for suites that span n in {1, 2, 3} with 20 instances total


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {number:>2}] {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def failures(reports):
    return [r.to_dict(timing=False) for r in reports if not r.passed]


def jacobi_spec(T=4.0):
    C = lambda x: MatrixPath.constant([[x]])
    return ProblemSpec(1, T, C(1.0), C(0.0), C(-1.0), np.zeros((0, 2)))


@lru_cache(maxsize=None)
def jacobi_reports():
    ps = jacobi_spec()
    return verify_thm1(ps), verify_cor1(ps)


@lru_cache(maxsize=None)
def thm1_reports():
    t0 = time.perf_counter()
    reps = suite("thm1", SEEDS)
    return reps, time.perf_counter() - t0


@lru_cache(maxsize=None)
def thm2_reports():
    reps = [verify_thm2(*thm2_instance(s, 1 + s % 3)) for s in SEEDS]
    closed = verify_thm2(MatrixPath.poly([[[-1.0]], [[1.0]]]), dirichlet(1), 2.0)
    return reps, closed


@lru_cache(maxsize=None)
def thm3_reports():
    return suite("thm3", PER_N)[:20]


@lru_cache(maxsize=None)
def concavity_reports():
    return [verify_concavity(*concavity_instance(s, 1 + s % 3)) for s in SEEDS]


@lru_cache(maxsize=None)
def shear_concavity_cases():
    """``(C, dim S - m+(P(T)|_S))`` for shear paths with ``P(0) = 0``, ``R1 = R``, ``R2 = C^{2n}``."""
    out = []
    for seed in range(10):
        rng = np.random.default_rng(500 + seed)
        n = 1 + seed % 3
        P = MatrixPath.poly([np.zeros((n, n)), 2 * random_hermitian(rng, n)])
        gamma = shear_path(P, 1.0)
        bc = boundary_derive(random_complex(rng, (int(rng.integers(0, 2 * n + 1)), 2 * n)), n)
        C, _ = concavity_correction(gamma.end(), bc, free(n))
        mp = morse_counts(restrict(P(1.0), bc.S)).m_plus if bc.dim_S else 0
        out.append((C, bc.dim_S - mp, verify_concavity(gamma, bc, free(n))))
    return out


@lru_cache(maxsize=None)
def lemma45_reports():
    return suite("lemma45", PER_N)[:20]


def test_criterion_01_jacobi_fixture(capsys):
    thm1, cor1 = jacobi_reports()
    t0 = time.perf_counter()
    mi = morse_index(jacobi_spec().coeffs(), dirichlet(1), N0=512, stable=1)
    elapsed = time.perf_counter() - t0
    # continuum eigenvalues (k pi / 4)^2 - 1: only k = 1 is negative
    oracle = sum(1 for k in range(1, 50) if (k * np.pi / 4) ** 2 - 1 < 0)
    i_w = cor1.evidence["maslov"]["index"]
    ok = (mi.m_minus == oracle == 1 and i_w == 2 and cor1.passed and (cor1.lhs, cor1.rhs) == (1, 1)
          and thm1.passed and elapsed < 5.0)
    report(capsys, 1, ok, f"m-={mi.m_minus} (oracle {oracle}), iW={i_w}, 1 = {i_w} - {cor1.evidence['dim_S']}, "
                          f"N=512 in {elapsed:.2f}s (< 5 s)")


@pytest.mark.slow
def test_criterion_02_spectral_flow_suite(capsys):
    reps, elapsed = thm1_reports()
    bad = failures(reps)
    stable = all(
        len({t["minus_sf"] for t in r.evidence["spectral_flow"]["mesh_trace"][-3:]}) == 1
        and len(r.evidence["spectral_flow"]["mesh_trace"]) >= 3
        for r in reps if r.error is None
    )
    values = sorted({r.lhs for r in reps})
    ok = not bad and len(reps) == 60 and stable and elapsed < 120
    report(capsys, 2, ok, f"{len(reps) - len(bad)}/{len(reps)} exact, values {values}, "
                          f"two mesh doublings, {elapsed:.1f}s (< 120 s)")


def test_criterion_03_shear_suite(capsys):
    reps, closed = thm2_reports()
    bad = failures(reps)
    ok = not bad and len(reps) == 20 and closed.passed and closed.lhs == 1
    report(capsys, 3, ok, f"{len(reps) - len(bad)}/20 exact, values {sorted({r.lhs for r in reps})}; "
                          f"P(t)=t-1, R={{0}} gives {closed.lhs} (expected 1)")


def test_criterion_04_frame_change_suite(capsys):
    reps = thm3_reports()
    bad = failures(reps)
    worst = max(r.evidence.get("route_difference", np.inf) for r in reps)
    ok = not bad and len(reps) == 20 and worst <= 1e-6
    report(capsys, 4, ok, f"{len(reps) - len(bad)}/20 exact, route difference {worst:.2e} (<= 1e-6)")


def test_criterion_05_morse_formula(capsys):
    reps, deficient, dims = [], 0, set()
    for seed in range(100):
        A, P = morse_formula_instance(seed)
        dims.add(A.shape[0])
        deficient += int(np.linalg.matrix_rank(A, tol=1e-10) < A.shape[0])
        reps.append(verify_morse_formula(A, P))
    bad = failures(reps)
    ok = not bad and deficient > 0 and max(dims) <= 8
    report(capsys, 5, ok, f"{100 - len(bad)}/100 exact, d in [{min(dims)}, {max(dims)}], {deficient} rank-deficient")


def test_criterion_06_block_flow(capsys):
    reps = [verify_block_flow(*block_flow_instance(seed)) for seed in range(50)]
    bad = failures(reps)
    nonzero = sum(1 for r in reps if r.lhs != 0)
    report(capsys, 6, not bad, f"{50 - len(bad)}/50 exact, {nonzero} with nonzero flow")


def test_criterion_07_concavity(capsys):
    reps = concavity_reports()
    bad = failures(reps)
    same = [verify_concavity(g, b2, b2) for g, _, b2 in (concavity_instance(s, 1 + s % 3) for s in range(5))]
    same_ok = all(r.passed and r.evidence["C"] == 0 for r in same)
    shear = shear_concavity_cases()
    shear_ok = all(c == expected and r.passed for c, expected, r in shear)
    ok = not bad and len(reps) == 20 and same_ok and shear_ok
    report(capsys, 7, ok, f"{20 - len(bad)}/20 exact; R1=R2 gives C=0: {same_ok}; "
                          f"shear C = dim S - m+(P(T)|_S) on {len(shear)} cases: {shear_ok}")


def test_criterion_08_diagonal_frame(capsys):
    reps = lemma45_reports()
    bad = failures(reps)
    report(capsys, 8, not bad and len(reps) == 20,
           f"{20 - len(bad)}/20 exact, values {sorted({r.lhs for r in reps})}")


def _maslov_records(obj):
    if isinstance(obj, dict):
        if "index" in obj and "method" in obj:
            yield obj
        for v in obj.values():
            yield from _maslov_records(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            yield from _maslov_records(v)


def test_criterion_09_dual_algorithms(capsys):
    reps = list(jacobi_reports()) + thm1_reports()[0] + thm2_reports()[0] + [thm2_reports()[1]]
    reps += thm3_reports() + concavity_reports() + [r for *_, r in shear_concavity_cases()] + lemma45_reports()
    records = [m for r in reps for m in _maslov_records(r.to_dict(timing=False)["evidence"])]
    agreeing = [m for m in records if m.get("agreement")
                and m["agreement"]["eigenphase"] == m["agreement"]["crossing_form"] == m["index"]]
    rot = iW(rotation_path(1, 4.0), dirichlet(1))
    rot_mono = iW(rotation_path(1, 4.0), dirichlet(1), method="monotone").index
    monotone = []
    for bc in (dirichlet(2), free(2), boundary_derive(random_complex(np.random.default_rng(7), (2, 4)), 2)):
        g = shear_path(MatrixPath.poly([np.zeros((2, 2)), np.array([[2.0, 0.5], [0.5, 1.0]]), 0.3 * np.eye(2)]), 1.5)
        monotone.append((iW(g, bc).index, iW(g, bc, method="monotone").index, bc.dim_S))
    g = fundamental_solution(jacobi_spec().coeffs(), 1.0)
    monotone.append((iW(g, dirichlet(1)).index, iW(g, dirichlet(1), method="monotone").index, 2))
    mono_ok = all(a == b == c for a, b, c in monotone)
    ok = (len(records) > 0 and len(agreeing) == len(records) and rot.index == 2
          and rot.agreement["eigenphase"] == 2 and rot_mono == 2 and mono_ok)
    report(capsys, 9, ok, f"{len(agreeing)}/{len(records)} index computations agree; rotation gives "
                          f"{rot.index} by both methods and {rot_mono} by counting; monotone fixtures "
                          f"{[m[:2] for m in monotone]}")


def test_criterion_10_hygiene(capsys):
    sym = []
    for r in list(jacobi_reports()) + thm1_reports()[0] + thm3_reports():
        sym.append(r.evidence["symplectic_residual"])
    for s in SEEDS:
        P, bc, T = thm2_instance(s, 1 + s % 3)
        sym.append(shear_path(P, T).max_symplectic_residual)
        g, b1, b2 = concavity_instance(s, 1 + s % 3)
        sym.append(g.max_symplectic_residual)
    lag = [r.evidence["lagrangian_residual"] for r in list(jacobi_reports()) + thm1_reports()[0]]
    for s in SEEDS:
        lag.append(_lag_res(thm2_instance(s, 1 + s % 3)[1]))
        _, b1, b2 = concavity_instance(s, 1 + s % 3)
        lag += [_lag_res(b1), _lag_res(b2)]
        lag.append(_lag_res(lemma45_instance(s, 1 + s % 3)[1]))
    # hand integrals of hat functions for constant coefficients
    p, q, r, T, N = 2.0, 0.3 + 0.7j, -1.5, 3.0, 6
    h = T / N
    C = lambda x: MatrixPath.constant([[x]])
    A = assemble(CoefficientPath(1, T, C(p), C(q), C(r)), 1.0, GalerkinSpace(1, T, N, dirichlet(1))).A
    d, off = 2 * p / h + 2 * r * h / 3, -p / h + r * h / 6 + (np.conj(q) - q) / 2
    expected = np.diag([d] * (N - 1)) + np.diag([off] * (N - 2), 1) + np.diag([np.conj(off)] * (N - 2), -1)
    stiff = float(np.max(np.abs(A - expected)))
    ok = max(sym) <= 1e-8 and max(lag) <= 1e-9 and stiff <= 1e-12
    report(capsys, 10, ok, f"symplectic residual {max(sym):.1e} (<= 1e-8) over {len(sym)} paths; "
                           f"Lagrangian residual {max(lag):.1e} (<= 1e-9) over {len(lag)} frames; "
                           f"stiffness error {stiff:.1e} (<= 1e-12)")
