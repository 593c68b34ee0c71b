"""Galerkin discretization of the index form on boundary-constrained spaces.

The index form is::

    I_s(x, y) = integral of  y'* p_s x' + y'* q_s x + y* q_s* x' + y* r_s x

over ``[0, T]`` for ``x, y`` with ``(x(0), x(T)) in R``. Trial functions
are continuous piecewise-linear on a uniform mesh: interior hats in every
component plus, for each basis vector ``(v, w)`` of ``R``, the function
``v h_0 + w h_N``. Every basis function satisfies the boundary condition
exactly. The Gram matrix ``G`` is that of the ``H^1`` inner product.

Inertia of ``A_s`` equals the inertia of the pencil ``(A_s, G)``. Whether a
discrete eigenvalue is "zero" is decided against the next coarser mesh:
``lambda_N`` is treated as zero when ``|lambda_N| <= |lambda_{N/2} -
lambda_N| + eig_zero_tol``, i.e. when it is indistinguishable from zero at
the observed discretization error.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .errors import ContractViolation, ConvergenceError, PreconditionError, ToleranceError
from .hamiltonian import CoefficientPath, SymplecticPath
from .numeric import DEFAULT_TOL, Tolerances, norm2
from .spectral_flow import HermitianFamily, SpectralFlowResult, spectral_flow
from .symplectic import BoundaryCondition

_GAUSS_X = np.array([0.5 - np.sqrt(15) / 10, 0.5, 0.5 + np.sqrt(15) / 10])
_GAUSS_W = np.array([5.0, 8.0, 5.0]) / 18.0

# eigenvalues further than this from zero are never put in the zero class
ZERO_WINDOW = 1e-2


@dataclass(eq=False)
class GalerkinSpace:
    """Piecewise-linear trial space ``H_R`` on ``N`` uniform elements."""

    n: int
    T: float
    N: int
    bc: BoundaryCondition
    E: sp.csr_matrix = field(init=False, repr=False)

    def __post_init__(self):
        if self.N < 1:
            raise ContractViolation("mesh needs at least one element")
        if self.bc.n != self.n:
            raise ContractViolation("boundary condition has the wrong size")
        n, N = self.n, self.N
        rows, cols, vals = [], [], []
        for i in range(1, N):
            for j in range(n):
                rows.append(i * n + j)
                cols.append((i - 1) * n + j)
                vals.append(1.0)
        off = n * (N - 1)
        R = self.bc.R
        for k in range(R.shape[1]):
            for j in range(n):
                rows += [j, N * n + j]
                cols += [off + k, off + k]
                vals += [R[j, k], R[n + j, k]]
        self.E = sp.csr_matrix(
            (np.asarray(vals, dtype=complex), (rows, cols)), shape=(n * (N + 1), self.dim)
        )

    @property
    def h(self) -> float:
        return self.T / self.N

    @property
    def dim(self) -> int:
        return self.n * (self.N - 1) + self.bc.dim

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.N + 1)

    def nodal_values(self, x) -> np.ndarray:
        """Nodal values ``(N + 1, n)`` of the trial function with coefficients ``x``."""
        return (self.E @ np.asarray(x, dtype=complex)).reshape(self.N + 1, self.n)


@dataclass(eq=False)
class DiscreteForm:
    A: np.ndarray
    G: np.ndarray
    s: float
    gal: GalerkinSpace
    quadrature: int = 3

    @property
    def N(self) -> int:
        return self.gal.N


def _element_blocks(P, Q, R, h):
    """Local ``2n x 2n`` matrices for every element from values at Gauss points."""
    phi = np.stack([1 - _GAUSS_X, _GAUSS_X])          # (2, 3)
    dphi = np.array([-1.0, 1.0]) / h                  # (2,)
    w = _GAUSS_W * h
    Qh = np.conj(np.swapaxes(Q, -1, -2))
    N, _, n, _ = P.shape
    K = np.zeros((N, 2, 2, n, n), dtype=complex)
    for a in range(2):
        for b in range(2):
            c_pp = dphi[a] * dphi[b] * w                  # (3,)
            c_q = dphi[a] * phi[b] * w
            c_qh = phi[a] * dphi[b] * w
            c_r = phi[a] * phi[b] * w
            K[:, a, b] = (
                np.einsum("g,egij->eij", c_pp, P)
                + np.einsum("g,egij->eij", c_q, Q)
                + np.einsum("g,egij->eij", c_qh, Qh)
                + np.einsum("g,egij->eij", c_r, R)
            )
    return K


def _nodal_matrix(K, N, n):
    rows, cols, vals = [], [], []
    base = np.arange(n)
    for a in range(2):
        for b in range(2):
            e = np.arange(N)
            r = ((e + a)[:, None, None] * n + base[None, :, None]).repeat(n, axis=2)
            c = ((e + b)[:, None, None] * n + base[None, None, :]).repeat(n, axis=1)
            rows.append(r.ravel())
            cols.append(c.ravel())
            vals.append(K[:, a, b].ravel())
    size = n * (N + 1)
    return sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(size, size)
    )


def _project(gal: GalerkinSpace, Kn) -> np.ndarray:
    M = (gal.E.conj().T @ Kn @ gal.E).toarray()
    return 0.5 * (M + M.conj().T)


def gram_matrix(gal: GalerkinSpace) -> np.ndarray:
    n, N = gal.n, gal.N
    I = np.broadcast_to(np.eye(n, dtype=complex), (N, 3, n, n))
    Z = np.zeros((N, 3, n, n), dtype=complex)
    return _project(gal, _nodal_matrix(_element_blocks(I, Z, I, gal.h), N, n))


def assemble(coeffs: CoefficientPath, s: float, gal: GalerkinSpace, tol: Tolerances = DEFAULT_TOL,
             G: np.ndarray | None = None) -> DiscreteForm:
    """Stiffness matrix ``A_ij = I_s(phi_j, phi_i)`` and ``H^1`` Gram matrix.

    Integrals use 3-point Gauss quadrature on every element, which is exact
    for constant coefficients.
    """
    if coeffs.n != gal.n or abs(coeffs.T - gal.T) > 1e-12 * coeffs.T:
        raise ContractViolation("coefficients and Galerkin space disagree on n or T")
    n, N, h = gal.n, gal.N, gal.h
    tg = (np.arange(N)[:, None] * h + _GAUSS_X[None, :] * h).ravel()
    P, Q, R = coeffs.many(s, tg)
    shp = (N, 3, n, n)
    K = _element_blocks(P.reshape(shp), Q.reshape(shp), R.reshape(shp), h)
    A = _project(gal, _nodal_matrix(K, N, n))
    if G is None:
        G = gram_matrix(gal)
    return DiscreteForm(A, G, s, gal)


def pencil_eigenvalues(df: DiscreteForm, vectors: bool = False):
    """Generalized eigenvalues of ``(A, G)`` in ascending order."""
    if df.A.shape[0] == 0:
        return (np.zeros(0), np.zeros((0, 0))) if vectors else np.zeros(0)
    if vectors:
        return sla.eigh(df.A, df.G)
    return sla.eigh(df.A, df.G, eigvals_only=True)


def zero_class(w_fine, w_coarse, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Boolean mask of fine-mesh eigenvalues indistinguishable from zero.

    Each fine eigenvalue within ``ZERO_WINDOW`` of zero is compared with the
    nearest coarse eigenvalue; the difference estimates the discretization
    error (three times the fine error for second-order convergence).
    """
    w_fine = np.asarray(w_fine)
    mask = np.abs(w_fine) <= tol.eig_zero_tol
    if w_coarse is None or len(w_coarse) == 0:
        return mask
    w_coarse = np.asarray(w_coarse)
    for i in np.nonzero(np.abs(w_fine) <= ZERO_WINDOW)[0]:
        lam = w_fine[i]
        err = np.min(np.abs(w_coarse - lam))
        if abs(lam) <= err + tol.eig_zero_tol:
            mask[i] = True
    return mask


@dataclass
class MorseIndexResult:
    m_minus: int
    m_zero: int
    N: int
    trace: list
    eigenvalues_near_zero: list

    def to_dict(self) -> dict:
        return {
            "m_minus": self.m_minus,
            "m_zero": self.m_zero,
            "N": self.N,
            "mesh_trace": self.trace,
            "eigenvalues_near_zero": self.eigenvalues_near_zero,
        }


def discrete_inertia(df: DiscreteForm, tol: Tolerances = DEFAULT_TOL, w_coarse=None):
    """``(m_minus, m_zero)`` of one pencil; zeros judged against ``w_coarse`` when given."""
    w = pencil_eigenvalues(df)
    z = zero_class(w, w_coarse, tol)
    return int(np.sum((w < 0) & ~z)), int(np.sum(z)), w


def morse_index(coeffs: CoefficientPath, bc: BoundaryCondition, s: float = 1.0,
                tol: Tolerances = DEFAULT_TOL, N0: int = 64, max_N: int = 4096,
                stable: int = 2) -> MorseIndexResult:
    """Morse index and nullity of ``I_s`` on ``H_R``, converged under mesh doubling.

    Meshes ``N0, 2 N0, ...`` are tried until ``stable`` consecutive meshes
    report the same ``(m_minus, m_zero)``.

    Raises
    ------
    PreconditionError
        If ``p`` is not positive definite (the Morse index is then infinite).
    ConvergenceError
        If the counts do not settle by ``max_N``.
    """
    if coeffs.p_definiteness() != 1:
        raise PreconditionError("Morse index requires p positive definite")
    coeffs.check(tol, s_values=(s,))
    n, T = coeffs.n, coeffs.T
    N = max(N0 // 2, 1)
    w_prev = pencil_eigenvalues(assemble(coeffs, s, GalerkinSpace(n, T, N, bc)))
    trace = []
    N = N0
    while N <= max_N:
        df = assemble(coeffs, s, GalerkinSpace(n, T, N, bc))
        m_minus, m_zero, w = discrete_inertia(df, tol, w_prev)
        trace.append({"N": N, "m_minus": m_minus, "m_zero": m_zero})
        if len(trace) >= stable and all(
            (t["m_minus"], t["m_zero"]) == (m_minus, m_zero) for t in trace[-stable:]
        ):
            near = [float(x) for x in w[np.abs(w) <= ZERO_WINDOW]]
            return MorseIndexResult(m_minus, m_zero, N, trace, near)
        w_prev = w
        N *= 2
    raise ConvergenceError("Morse index did not stabilize under mesh refinement", trace)


def reduced_matrix(df: DiscreteForm, L=None) -> np.ndarray:
    """``L^-1 A L^-*`` for the Cholesky factor ``G = L L*``; same spectrum as the pencil."""
    if L is None:
        L = np.linalg.cholesky(df.G)
    X = sla.solve_triangular(L, df.A, lower=True)
    M = sla.solve_triangular(L, X.conj().T, lower=True)
    return 0.5 * (M + M.conj().T)


@dataclass
class FlowResult:
    value: int          # -sf
    flow: SpectralFlowResult
    N: int
    trace: list
    eigenflow: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {"minus_sf": self.value, "N": self.N, "mesh_trace": self.trace, "flow": self.flow.to_dict()}


def _delta_between(zero_abs, nonzero_abs):
    zmax = float(np.max(zero_abs)) if len(zero_abs) else 0.0
    nzmin = float(np.min(nonzero_abs)) if len(nonzero_abs) else np.inf
    if not nzmin > 4 * zmax:
        raise ToleranceError(f"zero class ({zmax:.3e}) not separated from the rest ({nzmin:.3e})")
    if zmax == 0.0:
        return min(0.5 * nzmin, 1e-3)
    return float(np.sqrt(zmax * nzmin)) if np.isfinite(nzmin) else 2 * zmax + 1e-3


def spectral_flow_s(coeffs: CoefficientPath, bc: BoundaryCondition, tol: Tolerances = DEFAULT_TOL,
                    N0: int = 64, max_N: int = 4096, stable: int = 3, s_samples: int = 0) -> FlowResult:
    """``-sf`` of the pencil family ``s -> (A_s, G)`` on ``[0, 1]``.

    The shift ``delta`` sits between the zero class (judged against the
    coarser mesh) and the smallest nonzero eigenvalue at the two ends. The
    integer must agree on ``stable`` consecutive meshes.

    ``s_samples > 2`` additionally records the sorted eigenvalues at that
    many equally spaced ``s`` on the final mesh.
    """
    if not coeffs.p_is_s_independent() and coeffs.p_definiteness() != 1:
        raise PreconditionError("indefinite p must not depend on s")
    coeffs.check(tol)
    n, T = coeffs.n, coeffs.T

    def endpoint_eigs(N):
        gal = GalerkinSpace(n, T, N, bc)
        G = gram_matrix(gal)
        return [pencil_eigenvalues(assemble(coeffs, s, gal, tol, G)) for s in (0.0, 1.0)]

    prev = endpoint_eigs(max(N0 // 2, 1))
    trace = []
    N = N0
    while N <= max_N:
        gal = GalerkinSpace(n, T, N, bc)
        G = gram_matrix(gal)
        L = np.linalg.cholesky(G)
        dfs = [assemble(coeffs, s, gal, tol, G) for s in (0.0, 1.0)]
        Ms = [reduced_matrix(df, L) for df in dfs]
        ws = [np.linalg.eigvalsh(M) for M in Ms]
        masks = [zero_class(w, wp, tol) for w, wp in zip(ws, prev)]
        zero_abs = np.abs(np.concatenate([w[m] for w, m in zip(ws, masks)]))
        nonzero_abs = np.abs(np.concatenate([w[~m] for w, m in zip(ws, masks)]))
        entry = {"N": N}
        try:
            delta = _delta_between(zero_abs, nonzero_abs)
            fl = spectral_flow(HermitianFamily.from_samples([0.0, 1.0], Ms), tol, delta=delta, refine=False,
                               endpoint_eigs=ws)
            entry.update(minus_sf=-fl.sf, delta=delta, zero_class=[int(m.sum()) for m in masks])
        except ToleranceError as exc:
            entry.update(minus_sf=None, error=str(exc))
            fl = None
        trace.append(entry)
        vals = [t["minus_sf"] for t in trace[-stable:]]
        if fl is not None and len(vals) == stable and len(set(vals)) == 1:
            eigenflow = []
            if s_samples > 2:
                for s in np.linspace(0, 1, s_samples):
                    M = reduced_matrix(assemble(coeffs, float(s), gal, tol, G), L)
                    eigenflow.append((float(s), np.linalg.eigvalsh(M)))
            return FlowResult(-fl.sf, fl, N, trace, eigenflow)
        prev = ws
        N *= 2
    raise ConvergenceError("spectral flow did not stabilize under mesh refinement", trace)


def discrete_kernel(coeffs: CoefficientPath, bc: BoundaryCondition, s: float = 1.0, N: int = 256,
                    tol: Tolerances = DEFAULT_TOL):
    """Kernel vectors of the pencil at mesh ``N`` (zero class judged against ``N/2``)."""
    n, T = coeffs.n, coeffs.T
    gal = GalerkinSpace(n, T, N, bc)
    df = assemble(coeffs, s, gal, tol)
    w, V = pencil_eigenvalues(df, vectors=True)
    wc = pencil_eigenvalues(assemble(coeffs, s, GalerkinSpace(n, T, max(N // 2, 1), bc), tol))
    mask = zero_class(w, wc, tol)
    return gal, V[:, mask], w[mask]


@dataclass
class LiftResult:
    t: np.ndarray
    u: np.ndarray
    u0: np.ndarray
    residual: float
    boundary_gap: float


def kernel_lift(x, gal: GalerkinSpace, coeffs: CoefficientPath, s: float, gamma: SymplecticPath) -> LiftResult:
    """Lift a kernel function to ``u = (p x' + q x, x)`` and fit ``u(t) = gamma(t) u0``.

    ``u`` is evaluated at element midpoints, where the piecewise-linear
    derivative is second-order accurate. ``residual`` is the relative
    least-squares misfit; ``boundary_gap`` is the sine of the angle between
    ``(u0, gamma(T) u0)`` and ``W(R)``.
    """
    X = gal.nodal_values(x)
    h = gal.h
    tm = gal.nodes[:-1] + h / 2
    xm = 0.5 * (X[:-1] + X[1:])
    dx = (X[1:] - X[:-1]) / h
    P, Q, _ = coeffs.many(s, tm)
    mom = np.einsum("kij,kj->ki", P, dx) + np.einsum("kij,kj->ki", Q, xm)
    u = np.hstack([mom, xm])
    Gs = np.stack([gamma.at(t) for t in tm])
    M = Gs.reshape(-1, Gs.shape[2])
    u0, *_ = np.linalg.lstsq(M, u.ravel(), rcond=None)
    res = norm2((M @ u0 - u.ravel())[:, None]) / max(norm2(u.ravel()[:, None]), 1e-300)
    full = np.r_[u0, gamma.at(gal.T) @ u0]
    full = full / np.linalg.norm(full)
    W = gal.bc.W.frame
    gap = float(np.linalg.norm(full - W @ (W.conj().T @ full)))
    return LiftResult(tm, u, u0, float(res), gap)
