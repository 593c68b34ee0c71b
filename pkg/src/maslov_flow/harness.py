"""Verification tasks, seeded instance generators and randomized suites.

Each ``verify_*`` function computes two integers by independent pipelines
and returns a :class:`VerificationReport`; a report passes exactly when the
integers are equal. Errors raised inside a pipeline become a failed report
that records the cause.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import expm

from .errors import ContractViolation, InconsistencyError, MaslovFlowError, NumericalFailure, PreconditionError
from .hamiltonian import (
    CoefficientPath,
    MatrixPath,
    closed_form_path,
    diag_frame_path,
    frame_change_coeffs,
    frame_change_path,
    fundamental_solution,
    shear_path,
)
from .index_form import morse_index, spectral_flow_s
from .maslov import MaslovResult, iW
from .numeric import (
    DEFAULT_TOL,
    MorseCounts,
    Tolerances,
    kernel_basis,
    morse_counts,
    norm2,
    random_complex,
    random_hermitian,
    restrict,
    subspace_intersection,
)
from .spectral_flow import block_flow_check, morse_formula_check
from .symplectic import (
    BoundaryCondition,
    boundary_derive,
    flip,
    gr_identity_dim,
    graph_frame,
    pullback,
    standard_J,
)


@dataclass
class ProblemSpec:
    """One problem instance: coefficients, boundary condition and options."""

    n: int
    T: float
    p: MatrixPath
    q: MatrixPath
    r: MatrixPath
    R_span: np.ndarray
    homotopy: str = "linear"
    start: tuple | None = None
    frame: MatrixPath | None = None
    tol: Tolerances = DEFAULT_TOL
    mesh: int = 64
    seed: int | None = None
    label: str = ""

    def coeffs(self) -> CoefficientPath:
        return CoefficientPath(self.n, self.T, self.p, self.q, self.r, self.homotopy, self.start)

    def bc(self) -> BoundaryCondition:
        return boundary_derive(self.R_span, self.n, self.tol, self.label)

    def describe(self) -> dict:
        return {
            "n": self.n,
            "T": self.T,
            "p": self.p.describe(),
            "q": self.q.describe(),
            "r": self.r.describe(),
            "R": _jsonable(np.asarray(self.R_span)),
            "homotopy": self.homotopy,
            "seed": self.seed,
        }


@dataclass
class VerificationReport:
    task: str
    lhs: int | None
    rhs: int | None
    passed: bool
    evidence: dict = field(default_factory=dict)
    wall_time: float = 0.0
    error: str | None = None
    error_kind: str | None = None   # "input" or "numerical"
    crossings: list = field(default_factory=list, repr=False)
    eigenflow: list = field(default_factory=list, repr=False)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "task": self.task,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "evidence": _jsonable(self.evidence),
        }
        if self.error is not None:
            d["error"] = self.error
            d["error_kind"] = self.error_kind
        if timing:
            d["wall_time"] = round(self.wall_time, 4)
        return d


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        return z.real if z.imag == 0 else [z.real, z.imag]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _run(task: str, fn) -> VerificationReport:
    t0 = time.perf_counter()
    try:
        rep = fn()
    except (ContractViolation, PreconditionError) as exc:
        rep = VerificationReport(task, None, None, False, error=f"{type(exc).__name__}: {exc}", error_kind="input")
    except (NumericalFailure, MaslovFlowError, np.linalg.LinAlgError) as exc:
        ev = {}
        if getattr(exc, "trace", None) is not None:
            ev["trace"] = exc.trace
        if getattr(exc, "results", None) is not None:
            ev["results"] = exc.results
        rep = VerificationReport(task, None, None, False, ev, error=f"{type(exc).__name__}: {exc}",
                                 error_kind="numerical")
    rep.task = task
    rep.wall_time = time.perf_counter() - t0
    return rep


def _maslov_evidence(res: MaslovResult) -> dict:
    d = res.to_dict()
    d.pop("evidence", None)
    return d


# ---------------------------------------------------------------------------
# verification tasks


def verify_thm1(ps: ProblemSpec, eigen_samples: int = 0) -> VerificationReport:
    """``-sf{I_s} = i_W(gamma_1) - i_W(gamma_0)``."""

    def go():
        coeffs, bc = ps.coeffs(), ps.bc()
        flow = spectral_flow_s(coeffs, bc, ps.tol, N0=ps.mesh, s_samples=eigen_samples)
        g1 = fundamental_solution(coeffs, 1.0, tol=ps.tol)
        g0 = fundamental_solution(coeffs, 0.0, tol=ps.tol)
        i1, i0 = iW(g1, bc, ps.tol), iW(g0, bc, ps.tol)
        ev = {
            "spectral_flow": flow.to_dict(),
            "i_gamma1": _maslov_evidence(i1),
            "i_gamma0": _maslov_evidence(i0),
            "symplectic_residual": max(g1.max_symplectic_residual, g0.max_symplectic_residual),
            "lagrangian_residual": _lag_res(bc),
        }
        lhs, rhs = flow.value, i1.index - i0.index
        return VerificationReport("thm1", lhs, rhs, lhs == rhs, ev, crossings=i1.crossings, eigenflow=flow.eigenflow)

    return _run("thm1", go)


def verify_thm2(P: MatrixPath, bc: BoundaryCondition, T: float, tol: Tolerances = DEFAULT_TOL) -> VerificationReport:
    """``i_W(gamma) = m+(P(T)|_S) - m+(P(0)|_S)`` for ``gamma = [[I, 0], [P, I]]``."""

    def go():
        gamma = shear_path(P, T)
        res = iW(gamma, bc, tol)
        S = bc.S
        if S.shape[1]:
            cT = morse_counts(restrict(P(T), S), tol)
            c0 = morse_counts(restrict(P(0.0), S), tol)
        else:
            cT = c0 = MorseCounts(0, 0, 0)
        ev = {"maslov": _maslov_evidence(res), "dim_S": bc.dim_S, "counts_T": list(cT), "counts_0": list(c0)}
        rhs = cT.m_plus - c0.m_plus
        return VerificationReport("thm2", res.index, rhs, res.index == rhs, ev, crossings=res.crossings)

    return _run("thm2", go)


def verify_cor1(ps: ProblemSpec) -> VerificationReport:
    """``m-(I_1) = i_W(gamma_1) - dim S`` for positive definite ``p``."""

    def go():
        coeffs, bc = ps.coeffs(), ps.bc()
        mi = morse_index(coeffs, bc, 1.0, ps.tol, N0=ps.mesh)
        g1 = fundamental_solution(coeffs, 1.0, tol=ps.tol)
        res = iW(g1, bc, ps.tol)
        ev = {
            "morse": mi.to_dict(),
            "maslov": _maslov_evidence(res),
            "dim_S": bc.dim_S,
            "kernel_vs_nullity": [mi.m_zero, res.nullity],
            "symplectic_residual": g1.max_symplectic_residual,
            "lagrangian_residual": _lag_res(bc),
        }
        rhs = res.index - bc.dim_S
        return VerificationReport("cor1", mi.m_minus, rhs, mi.m_minus == rhs, ev, crossings=res.crossings)

    return _run("cor1", go)


def transformed_paths(ps: ProblemSpec, a: MatrixPath):
    """``gamma_1`` and the frame-changed path computed two ways: by conjugation and by re-integration.

    The re-integration starts on the grid of ``gamma_1`` (refined by doubling
    if needed), so the two routes are compared at shared nodes.
    """
    coeffs = ps.coeffs()
    g1 = fundamental_solution(coeffs, 1.0, tol=ps.tol)
    conj = frame_change_path(g1, a)
    reint = fundamental_solution(frame_change_coeffs(coeffs, a), 1.0, steps=len(g1.grid) - 1, tol=ps.tol)
    stride = (len(reint.grid) - 1) // (len(g1.grid) - 1)
    diff = float(np.max(np.linalg.norm(conj.values - reint.values[::stride], ord=2, axis=(1, 2))))
    return g1, conj, reint, diff


def verify_thm3(ps: ProblemSpec, a: MatrixPath | None = None, route_tol: float = 1e-6) -> VerificationReport:
    """``i_W(R')(gamma_1') - i_W(R)(gamma_1) = dim(Gr(I) ∩ R') - dim(Gr(I) ∩ R)``.

    ``gamma_1'`` is produced by conjugating ``gamma_1`` and, independently,
    by integrating the frame-changed coefficients; the two must agree within
    ``route_tol`` and give the same index.
    """
    a = a if a is not None else ps.frame

    def go():
        if a is None:
            raise ContractViolation("thm3 needs a frame path a(t)")
        bc = ps.bc()
        bcp = pullback(bc, a(0.0), a(ps.T), ps.tol)
        g1, conj, reint, diff = transformed_paths(ps, a)
        if diff > route_tol:
            raise InconsistencyError(f"frame-changed paths differ by {diff:.3e} (> {route_tol:.0e})")
        i_orig = iW(g1, bc, ps.tol)
        i_new = iW(conj, bcp, ps.tol)
        i_reint = iW(reint, bcp, ps.tol)
        if i_new.index != i_reint.index:
            raise InconsistencyError(f"frame-changed indices disagree: {i_new.index} vs {i_reint.index}")
        d_new, d_old = gr_identity_dim(bcp.R, ps.n, ps.tol), gr_identity_dim(bc.R, ps.n, ps.tol)
        ev = {
            "route_difference": diff,
            "i_original": _maslov_evidence(i_orig),
            "i_transformed": _maslov_evidence(i_new),
            "i_reintegrated": i_reint.index,
            "dim_GrI_R_new": d_new,
            "dim_GrI_R": d_old,
            "symplectic_residual": max(g1.max_symplectic_residual, reint.max_symplectic_residual),
        }
        lhs, rhs = i_new.index - i_orig.index, d_new - d_old
        return VerificationReport("thm3", lhs, rhs, lhs == rhs, ev, crossings=i_new.crossings)

    return _run("thm3", go)


def verify_lemma45(a: MatrixPath, bc: BoundaryCondition, T: float, tol: Tolerances = DEFAULT_TOL) -> VerificationReport:
    """``i_W(diag(a*, a^-1)) = dim(Gr(a(0)^-1) ∩ R) - dim(Gr(a(T)^-1) ∩ R)``."""

    def go():
        gamma = diag_frame_path(a, T)
        res = iW(gamma, bc, tol)
        d0 = subspace_intersection(graph_frame(np.linalg.inv(a(0.0)), tol), bc.R, tol).shape[1]
        dT = subspace_intersection(graph_frame(np.linalg.inv(a(T)), tol), bc.R, tol).shape[1]
        ev = {"maslov": _maslov_evidence(res), "dim_start": d0, "dim_end": dT}
        return VerificationReport("lemma45", res.index, d0 - dT, res.index == d0 - dT, ev, crossings=res.crossings)

    return _run("lemma45", go)


def concavity_correction(M, bc1: BoundaryCondition, bc2: BoundaryCondition, tol: Tolerances = DEFAULT_TOL):
    """``C(M; R1, R2) = m-(Q) + dim ker Q - dim(Gr(M) ∩ W(R2))``.

    ``Q(xi) = (z, u) - (x, y)`` on ``N = {(x, y, z, u) in Gr(M) : (x, z) in
    R1^b, (y, u) in R2}``.

    Returns
    -------
    (int, dict)
        The correction and the intermediate quantities.
    """
    n = bc1.n
    M = np.asarray(M, dtype=complex)
    I, Z0 = np.eye(n), np.zeros((n, n))
    xz = np.vstack([np.hstack([I, Z0]), M[:n]])
    yu = np.vstack([np.hstack([Z0, I]), M[n:]])
    # (R1^b)^perp = D R1
    C = np.vstack([(flip(n) @ bc1.R).conj().T @ xz, bc2.Rperp.conj().T @ yu])
    V = kernel_basis(C, tol) if C.shape[0] else np.eye(2 * n, dtype=complex)
    if V.shape[1]:
        X, Y = V[:n], V[n:]
        MV = M @ V
        Q = MV[n:].conj().T @ MV[:n] - Y.conj().T @ X
        herm = norm2(Q - Q.conj().T)
        if herm > tol.residual_tol * (1 + norm2(Q)) * 10:
            raise InconsistencyError(f"correction form is not Hermitian (residual {herm:.3e})")
        counts = morse_counts(0.5 * (Q + Q.conj().T), tol)
    else:
        herm = 0.0
        counts = MorseCounts(0, 0, 0)
    nul = subspace_intersection(graph_frame(M, tol), bc2.W.frame, tol).shape[1]
    value = counts.m_minus + counts.m_zero - nul
    return value, {"dim_N": V.shape[1], "Q_counts": list(counts), "Q_hermitian_residual": herm, "nullity_R2": nul}


def _contains(big: np.ndarray, small: np.ndarray, tol: Tolerances) -> bool:
    if small.shape[1] == 0:
        return True
    return norm2(small - big @ (big.conj().T @ small)) <= 10 * tol.rank_tol


def verify_concavity(gamma, bc1: BoundaryCondition, bc2: BoundaryCondition,
                     tol: Tolerances = DEFAULT_TOL) -> VerificationReport:
    """``i_W(R2) - i_W(R1) = C + dim(Gr(I) ∩ R2^b) - dim(Gr(I) ∩ R1^b)`` for ``R1 ⊆ R2``."""

    def go():
        if not _contains(bc2.R, bc1.R, tol):
            raise ContractViolation("R1 must be contained in R2")
        C, ev = concavity_correction(gamma.end(), bc1, bc2, tol)
        i1, i2 = iW(gamma, bc1, tol), iW(gamma, bc2, tol)
        g1, g2 = gr_identity_dim(bc1.Rb, bc1.n, tol), gr_identity_dim(bc2.Rb, bc2.n, tol)
        ev.update(C=C, i_R1=_maslov_evidence(i1), i_R2=_maslov_evidence(i2), dim_GrI_R1b=g1, dim_GrI_R2b=g2)
        lhs, rhs = i2.index - i1.index, C + g2 - g1
        return VerificationReport("concavity", lhs, rhs, lhs == rhs, ev, crossings=i2.crossings)

    return _run("concavity", go)


def verify_index(gamma, bc: BoundaryCondition, tol: Tolerances = DEFAULT_TOL) -> VerificationReport:
    """Crossing-form index against the eigenphase index of one path."""

    def go():
        cf = iW(gamma, bc, tol, method="crossing_form")
        ep = iW(gamma, bc, tol, method="eigenphase")
        ev = {"crossing_form": _maslov_evidence(cf), "eigenphase": ep.index,
              "symplectic_residual": gamma.max_symplectic_residual}
        return VerificationReport("index", cf.index, ep.index, cf.index == ep.index, ev, crossings=cf.crossings)

    return _run("index", go)


def verify_morse_formula(A, P, tol: Tolerances = DEFAULT_TOL) -> VerificationReport:
    def go():
        lhs, rhs = morse_formula_check(A, P, tol)
        return VerificationReport("morse_formula", lhs, rhs, lhs == rhs)

    return _run("morse_formula", go)


def verify_block_flow(A0, A1, tol: Tolerances = DEFAULT_TOL) -> VerificationReport:
    A0 = np.asarray(A0, dtype=complex)
    A1 = np.asarray(A1, dtype=complex)

    def go():
        lhs, rhs = block_flow_check(lambda s: (1 - s) * A0 + s * A1, tol)
        return VerificationReport("block_flow", lhs, rhs, lhs == rhs)

    return _run("block_flow", go)


def _lag_res(bc: BoundaryCondition) -> float:
    W = bc.W.frame
    return norm2(W.conj().T @ bc.W.space.form @ W)


# ---------------------------------------------------------------------------
# seeded generators


def _rows(M: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(M.T)


def generate_instance(seed: int, n: int, dim_R: int | None = None, p_positive: bool = True,
                      p_indefinite: bool = False, degree: int = 1, T: float = 1.0,
                      p_identity: bool = False, potential: float = 15.0) -> ProblemSpec:
    """Deterministic random instance.

    ``p`` is ``I + 0.2 H0 + 0.2 (t/T) H1`` with ``||H_k|| <= 1`` (so
    ``sigma_min(p) >= 0.6``), the identity, or a constant congruate of a
    signature matrix. ``q`` and ``r`` are polynomials of the given degree;
    ``r`` carries ``-potential * I`` so that conjugate points occur on
    ``[0, T]``. ``R`` is spanned by a seeded random frame of dimension
    ``dim_R`` (drawn from ``0..2n`` when omitted).
    """
    rng = np.random.default_rng(seed)
    if dim_R is None:
        dim_R = int(rng.integers(0, 2 * n + 1))
    if not 0 <= dim_R <= 2 * n:
        raise ContractViolation("dim R must lie in 0..2n")
    I = np.eye(n, dtype=complex)
    if p_indefinite:
        sig = np.where(np.arange(n) < max(1, n // 2), -1.0, 1.0)
        C = I + 0.3 * random_complex(rng, (n, n)) / np.sqrt(n)
        p = MatrixPath.constant(C.conj().T @ np.diag(sig) @ C)
    elif p_identity:
        p = MatrixPath.constant(I)
    else:
        H0, H1 = (_unit(random_hermitian(rng, n)) for _ in range(2))
        p = MatrixPath.poly([I + 0.2 * H0, 0.2 / T * H1])
        if not p_positive:
            raise ContractViolation("choose p_positive, p_identity or p_indefinite")
    qc = [2.0 * random_complex(rng, (n, n)) / np.sqrt(n)]
    qc += [random_complex(rng, (n, n)) / np.sqrt(n) / T**k for k in range(1, degree + 1)]
    rc = [-potential * I + 8.0 * _unit(random_hermitian(rng, n))]
    rc += [4.0 * _unit(random_hermitian(rng, n)) / T**k for k in range(1, degree + 1)]
    R = random_complex(rng, (2 * n, dim_R))
    return ProblemSpec(n, T, p, MatrixPath.poly(qc), MatrixPath.poly(rc), _rows(R), seed=seed,
                       label=f"random(seed={seed}, n={n})")


def _unit(H):
    nrm = norm2(H)
    return H / nrm if nrm > 0 else H


def random_frame_path(rng: np.random.Generator, n: int, T: float = 1.0) -> MatrixPath:
    """Polynomial ``a(t) = A0 + t A1 + t^2 A2`` with ``sigma_min(a) >= 0.25`` on ``[0, T]``."""
    for _ in range(100):
        A0 = np.eye(n) + 0.4 * _unit(random_complex(rng, (n, n)))
        A1 = random_complex(rng, (n, n)) / np.sqrt(n) / T
        A2 = 0.5 * random_complex(rng, (n, n)) / np.sqrt(n) / T**2
        a = MatrixPath.poly([A0, A1, A2])
        sv = np.linalg.svd(a.many(np.linspace(0, T, 201)), compute_uv=False)
        if sv.min() >= 0.25:
            return a
    raise RuntimeError("could not draw an invertible frame path")


def thm1_instance(seed: int, n: int) -> ProblemSpec:
    """``p = I``, ``T = 1``, linear homotopy; the potential forces several conjugate points."""
    return generate_instance(seed, n, p_identity=True)


def thm2_instance(seed: int, n: int):
    """Hermitian quadratic ``P(t)`` on ``[0, 1]`` and ``R`` with a random ``dim S``.

    ``R^b`` is spanned by ``d_S`` diagonal vectors ``(w, w)`` plus random
    vectors, and ``R = (D R^b)^perp``.
    """
    rng = np.random.default_rng(seed)
    A, B, C = (2 * random_hermitian(rng, n) for _ in range(3))
    # P(0) = A, P(1) = B, bowed by C in between
    P = MatrixPath.poly([A, B - A + C, -C])
    d_S = int(rng.integers(0, n + 1))
    extra = int(rng.integers(0, 2 * n - d_S + 1))
    w = random_complex(rng, (n, d_S))
    Rb = np.hstack([np.vstack([w, w]), random_complex(rng, (2 * n, extra))])
    R = kernel_basis((flip(n) @ Rb).conj().T) if Rb.shape[1] else np.eye(2 * n, dtype=complex)
    return P, boundary_derive(_rows(R), n, label=f"thm2(seed={seed})"), 1.0


def thm3_instance(seed: int, n: int):
    """Instance plus frame path with ``R`` containing vectors ``(a(0) v, a(T) v)``.

    Those vectors put ``(v, v)`` into ``R'`` so that ``Gr(I) ∩ R'`` is
    nontrivial.
    """
    ps = generate_instance(seed, n, potential=6.0)
    rng = np.random.default_rng(10_000 + seed)
    a = random_frame_path(rng, n, ps.T)
    k = int(rng.integers(0, n + 1))
    v = random_complex(rng, (n, k))
    extra = int(rng.integers(0, 2 * n - k + 1))
    R = np.hstack([np.vstack([a(0.0) @ v, a(ps.T) @ v]), random_complex(rng, (2 * n, extra))])
    return replace(ps, R_span=_rows(R), frame=a)


def lemma45_instance(seed: int, n: int):
    """Frame path ``a`` and ``R`` containing parts of ``Gr(a(0)^-1)`` and ``Gr(a(T)^-1)``."""
    rng = np.random.default_rng(seed)
    T = 1.0
    a = random_frame_path(rng, n, T)
    k0 = int(rng.integers(0, n + 1))
    kT = int(rng.integers(0, n - k0 + 1))
    v, w = random_complex(rng, (n, k0)), random_complex(rng, (n, kT))
    R = np.hstack([
        np.vstack([v, np.linalg.inv(a(0.0)) @ v]),
        np.vstack([w, np.linalg.inv(a(T)) @ w]),
        random_complex(rng, (2 * n, int(rng.integers(0, 2 * n - k0 - kT + 1)))),
    ])
    return a, boundary_derive(_rows(R), n, label=f"lemma45(seed={seed})"), T


def exp_path(H, T: float = 1.0):
    """``gamma(t) = exp(t J H)`` for constant Hermitian ``H``."""
    H = np.asarray(H, dtype=complex)
    n = H.shape[0] // 2
    JH = standard_J(n) @ H
    return closed_form_path(n, T, lambda t: expm(t * JH), lambda t: H, label="exp")


def concavity_instance(seed: int, n: int):
    """Random ``gamma = exp(t J H)`` and nested ``R1 ⊆ R2``."""
    rng = np.random.default_rng(seed)
    gamma = exp_path(random_hermitian(rng, 2 * n, 1.5))
    d2 = int(rng.integers(0, 2 * n + 1))
    R2 = random_complex(rng, (2 * n, d2))
    d1 = int(rng.integers(0, d2 + 1))
    R1 = R2 @ random_complex(rng, (d2, d1))
    return gamma, boundary_derive(_rows(R1), n), boundary_derive(_rows(R2), n)


def morse_formula_instance(seed: int, d_max: int = 8):
    """Hermitian ``A`` (rank deficient for odd seeds) and an orthogonal projection ``P``."""
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, d_max + 1))
    w = rng.normal(size=d)
    if seed % 2 and d > 1:
        w[rng.choice(d, size=int(rng.integers(1, d)), replace=False)] = 0.0
    U = np.linalg.qr(random_complex(rng, (d, d)))[0]
    A = U @ np.diag(w) @ U.conj().T
    k = int(rng.integers(0, d + 1))
    F = np.linalg.qr(random_complex(rng, (d, d)))[0][:, :k]
    return 0.5 * (A + A.conj().T), F @ F.conj().T


def block_flow_instance(seed: int):
    """Endpoints of a segment of square or rectangular matrices with prescribed kernels."""
    rng = np.random.default_rng(seed)
    r, c = int(rng.integers(1, 5)), int(rng.integers(1, 5))
    out = []
    for _ in range(2):
        k = int(rng.integers(1, min(r, c) + 1))
        k = k - int(rng.integers(0, 2)) if k > 0 else 0
        out.append(random_complex(rng, (r, k)) @ random_complex(rng, (k, c)) if k else np.zeros((r, c)))
    return out


# ---------------------------------------------------------------------------
# randomized suites


def suite(name: str, seeds, n_values=(1, 2, 3), tol: Tolerances = DEFAULT_TOL) -> list:
    """Reports for one randomized suite over ``seeds`` and every ``n`` in ``n_values``.

    Instance seeds are ``1000 n + seed``.
    """
    out = []
    for n in n_values:
        for seed in seeds:
            sd = 1000 * n + int(seed)
            if name == "thm1":
                rep = verify_thm1(replace(thm1_instance(sd, n), tol=tol))
            elif name == "thm2":
                rep = verify_thm2(*thm2_instance(sd, n), tol=tol)
            elif name == "thm3":
                rep = verify_thm3(replace(thm3_instance(sd, n), tol=tol))
            elif name == "lemma45":
                rep = verify_lemma45(*lemma45_instance(sd, n), tol=tol)
            elif name == "concavity":
                rep = verify_concavity(*concavity_instance(sd, n), tol=tol)
            else:
                raise ContractViolation(f"unknown suite {name!r}")
            rep.evidence.setdefault("instance", {"seed": sd, "n": n})
            out.append(rep)
    return out


SUITES = ("thm1", "thm2", "thm3", "lemma45", "concavity")
