"""Maslov index of Lagrangian pair paths and the Maslov-type index ``i_W``.

Three independent routes are implemented:

* crossing forms: locate every time where ``L(t)`` meets the fixed
  Lagrangian ``W``, evaluate the crossing form there and add
  ``m+`` at the left end, ``-m-`` at the right end and the signature in
  between;
* eigenphases: follow the eigenvalues of ``V(t) = U_W^{-1} U(t)`` around the
  unit circle and count passages through ``1`` (the index is minus that
  spectral flow, with an eigenvalue sitting at ``1`` counted on the
  non-negative side);
* monotone counting: for paths with ``-J gamma' gamma^{-1} >= 0`` the index
  is the total drop in ``dim(Gr(gamma) ∩ W)`` over ``[a, b)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import schur
from scipy.optimize import brentq, linear_sum_assignment, minimize_scalar

from .errors import (
    DegeneratePathError,
    InconsistencyError,
    MethodDisagreement,
    NonRegularCrossingError,
    PreconditionError,
)
from .hamiltonian import SymplecticPath
from .numeric import (
    DEFAULT_TOL,
    MorseCounts,
    Tolerances,
    morse_counts,
    norm2,
    principal_sines,
    qr_frame,
    subspace_intersection,
)
from .symplectic import (
    BoundaryCondition,
    LagrangianFrame,
    SymplecticSpace,
    graph_basis,
    standard_J,
    unitary_rep,
)

PHASE_STEP_LIMIT = np.pi / 8


@dataclass(eq=False)
class LagrangianPairPath:
    """A path ``t -> (L(t), W)`` of Lagrangian pairs with ``W`` fixed.

    Parameters
    ----------
    space : SymplecticSpace
    basis : callable
        ``basis(t)`` returns a (not necessarily orthonormal) basis of ``L(t)``.
    fixed : LagrangianFrame
        The fixed Lagrangian ``W``.
    grid : ndarray
        Scan grid over ``[a, b]``.
    gamma : SymplecticPath, optional
        Set when ``L(t) = Gr(gamma(t))``; enables the closed-form crossing form.
    """

    space: SymplecticSpace
    basis: Callable
    fixed: LagrangianFrame
    grid: np.ndarray
    gamma: SymplecticPath | None = None
    label: str = ""

    @property
    def a(self) -> float:
        return float(self.grid[0])

    @property
    def b(self) -> float:
        return float(self.grid[-1])

    def frame(self, t) -> np.ndarray:
        return qr_frame(self.basis(t))

    def gaps(self, t) -> np.ndarray:
        """Sines of the principal angles between ``L(t)`` and ``W``, ascending."""
        return principal_sines(self.frame(t), self.fixed.frame)

    def unitary(self, t) -> np.ndarray:
        return unitary_rep(self.basis(t), self.space)

    def intersection(self, t, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
        return subspace_intersection(self.frame(t), self.fixed.frame, tol)


def _scan_grid(grid, max_points: int) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if len(grid) <= max_points:
        return grid
    idx = np.unique(np.linspace(0, len(grid) - 1, max_points).round().astype(int))
    return grid[idx]


def graph_pair_path(gamma: SymplecticPath, W, max_points: int | None = None) -> LagrangianPairPath:
    """Pair path ``(Gr(gamma(t)), W)`` in the doubled space.

    The scan grid keeps every fourth node of the integration grid (at least
    257 nodes), so each scan step covers ``h ||b|| <= 1/16``.
    """
    if isinstance(W, BoundaryCondition):
        W = W.W
    if max_points is None:
        max_points = max(257, (len(gamma.grid) - 1) // 4 + 1)
    space = SymplecticSpace.doubled(gamma.n)
    return LagrangianPairPath(
        space,
        lambda t: graph_basis(gamma.at(t)),
        W,
        _scan_grid(gamma.grid, max_points),
        gamma=gamma,
        label=gamma.label,
    )


def perturbed_path(gamma: SymplecticPath, delta: float) -> SymplecticPath:
    """``gamma(t) exp(delta f(t) J)`` with ``f(t) = sin(pi (t - a) / (b - a))``.

    The endpoints are unchanged, so the Maslov-type index is too. The
    generator picks up ``delta f'(t) (J gamma)(J gamma)*``, which is
    positive semidefinite where ``f`` increases.
    """
    n = gamma.n
    J = standard_J(n)
    I = np.eye(2 * n)
    a, b = gamma.t0, gamma.T
    L = b - a
    f = lambda t: math.sin(math.pi * (t - a) / L)
    df = lambda t: math.pi / L * math.cos(math.pi * (t - a) / L)

    def rot(t):
        th = delta * f(t)
        return math.cos(th) * I + math.sin(th) * J

    def func(t):
        return gamma.at(t) @ rot(t)

    def gen(t):
        g = gamma.at(t)
        Jg = J @ g
        return gamma.b_at(t) + delta * df(t) * (Jg @ Jg.conj().T)

    vals = np.stack([v @ rot(t) for t, v in zip(gamma.grid, gamma.values)])
    return SymplecticPath(n, gamma.grid, vals, generator=gen, closed_form=func,
                          label=f"perturbed({gamma.label}, {delta:g})")


# ---------------------------------------------------------------------------
# crossings


@dataclass
class CrossingRecord:
    t_star: float
    frame: np.ndarray = field(repr=False)
    gamma_form: np.ndarray = field(repr=False)
    counts: MorseCounts
    location: str  # "start", "interior" or "end"
    fd_deviation: float | None = None

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    @property
    def regular(self) -> bool:
        return self.counts.m_zero == 0

    @property
    def signature(self) -> int:
        return self.counts.signature

    @property
    def contribution(self) -> int:
        if self.location == "start":
            return self.counts.m_plus
        if self.location == "end":
            return -self.counts.m_minus
        return self.counts.signature

    def to_dict(self) -> dict:
        return {
            "t": float(self.t_star),
            "dim": self.dim,
            "signature": self.signature,
            "regular": self.regular,
            "location": self.location,
            "counts": list(self.counts),
            "contribution": self.contribution,
            "eigenvalues": [float(x) for x in np.linalg.eigvalsh(self.gamma_form)] if self.dim else [],
            "fd_deviation": self.fd_deviation,
        }


@dataclass
class MaslovResult:
    index: int
    method: str
    crossings: list = field(default_factory=list)
    agreement: dict | None = None
    nullity: int | None = None
    perturbation: float | None = None
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "index": self.index,
            "method": self.method,
            "crossings": [c.to_dict() for c in self.crossings],
            "nullity": self.nullity,
            "perturbation": self.perturbation,
            "evidence": self.evidence,
        }
        if self.agreement is not None:
            d["agreement"] = self.agreement
        return d


def _candidate_times(pp: LagrangianPairPath, tol: Tolerances, evidence: dict | None = None):
    """Times where some principal-angle gap has a near-zero local minimum."""
    grid = pp.grid
    a, b = pp.a, pp.b
    thr = tol.rank_tol
    G = np.array([pp.gaps(t) for t in grid])
    m = G.shape[1]
    span = b - a
    out = []
    near = []
    for k in range(m):
        s = G[:, k]
        if np.all(s <= thr):
            continue  # persistent direction, seen through the intersection dims
        low = s <= thr
        # runs of consecutive small grid values signal a non-isolated cluster
        run = np.convolve(low.astype(int), np.ones(3, dtype=int), mode="valid")
        if run.size and run.max() >= 3:
            i = int(np.argmax(run >= 3))
            raise DegeneratePathError(
                f"intersection persists on a subinterval near t={grid[i + 1]:.6g} (gap {k})"
            )
        for i in range(len(s)):
            left = s[i - 1] if i > 0 else np.inf
            right = s[i + 1] if i < len(s) - 1 else np.inf
            if not (s[i] <= left and s[i] <= right):
                continue
            slope = max(abs(s[i] - s[i - 1]) if i > 0 else 0.0, abs(s[i + 1] - s[i]) if i < len(s) - 1 else 0.0)
            if not (s[i] <= 10 * thr or s[i] <= 2 * slope):
                continue
            lo = grid[max(i - 1, 0)]
            hi = grid[min(i + 1, len(grid) - 1)]

            def fk(t, k=k):
                return pp.gaps(t)[k]

            res = minimize_scalar(fk, bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-13 * span, "maxiter": 500})
            tp = _polish(pp, float(res.x), lo, hi)
            cands = [(float(res.x), float(res.fun)), (float(grid[i]), float(s[i]))]
            if tp is not None:
                cands.append((tp, float(pp.gaps(tp)[k])))
            t_best, v_best = min(cands, key=lambda c: c[1])
            if v_best <= thr:
                out.append(t_best)
            elif v_best <= 10 * thr:
                near.append({"t": t_best, "gap": v_best, "index": k})
    if evidence is not None:
        evidence.setdefault("near_threshold_gaps", []).extend(near)
    return out


def _signed_phase(pp: LagrangianPairPath, t: float) -> float:
    """Eigenphase of ``U_W^{-1} U(t)`` closest to zero, with its sign."""
    lam = np.linalg.eigvals(pp.fixed.unitary.conj().T @ pp.unitary(t))
    ph = np.angle(lam)
    return float(ph[np.argmin(np.abs(ph))])


def _polish(pp: LagrangianPairPath, t: float, lo: float, hi: float):
    """Locate a transversal crossing near ``t`` as a sign change of the signed phase.

    Bounded minimization of a V-shaped gap stalls at a relative accuracy of
    about ``sqrt(eps)``; the phase is smooth and changes sign, so a bracketing
    root finder reaches full precision. Returns ``None`` for tangential
    minima (no sign change).
    """
    span = pp.b - pp.a
    f0 = _signed_phase(pp, t)
    if f0 == 0.0:
        return t
    for d in (1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4):
        for u in (t - d * span, t + d * span):
            if not (lo <= u <= hi):
                continue
            fu = _signed_phase(pp, u)
            if fu == 0.0:
                return u
            if np.sign(fu) != np.sign(f0):
                # a jump across +-pi is not a zero crossing
                if abs(fu - f0) > np.pi / 2:
                    continue
                x0, x1 = (u, t) if u < t else (t, u)
                return float(brentq(lambda x: _signed_phase(pp, x), x0, x1, xtol=1e-15 * span, rtol=1e-15))
    return None


def detect_crossings(pp: LagrangianPairPath, tol: Tolerances = DEFAULT_TOL, evidence: dict | None = None):
    """All times in ``[a, b]`` where ``L(t) ∩ W != 0`` with their intersection frames.

    Endpoints are tested directly. Interior crossings are local minima of
    the principal-angle gaps, refined by bounded scalar minimization.
    Crossings closer than ``1e-9 (b - a)`` are merged.

    Returns
    -------
    list of (t, frame)
    """
    a, b = pp.a, pp.b
    span = b - a
    eps = 1e-9 * span
    times = _candidate_times(pp, tol, evidence)
    out = []
    for t in (a, b):
        X = pp.intersection(t, tol)
        if X.shape[1]:
            out.append((t, X))
    for t in sorted(times):
        if any(abs(t - o[0]) <= eps for o in out):
            continue
        X = pp.intersection(t, tol)
        if X.shape[1]:
            out.append((t, X))
    out.sort(key=lambda o: o[0])
    for (t1, _), (t2, _) in zip(out, out[1:]):
        if t2 - t1 <= 1e-7 * span:
            raise DegeneratePathError(f"crossings at {t1:.12g} and {t2:.12g} are not isolated")
    return out


def _fd_form(pp: LagrangianPairPath, t: float, V: np.ndarray, h: float) -> np.ndarray:
    """Crossing form from the definition, by finite differences of ``omega(u, w(s))``.

    ``w(s)`` lives in the complement ``form * L(t)``, which is the orthogonal
    complement of the Lagrangian ``L(t)``.
    """
    Jf = pp.space.form
    F = pp.frame(t)
    C = Jf @ F

    def Wmat(s):
        Z = pp.frame(s)
        sol = np.linalg.solve(np.hstack([Z, -C]), V)
        return C @ sol[Z.shape[1]:]

    def deriv(hh):
        a, b = pp.a, pp.b
        if t - hh >= a and t + hh <= b:
            return (Wmat(t + hh) - Wmat(t - hh)) / (2 * hh)
        sgn = 1.0 if t + 2 * hh <= b else -1.0
        w1, w2 = Wmat(t + sgn * hh), Wmat(t + 2 * sgn * hh)
        return sgn * (4 * w1 - w2) / (2 * hh)

    D = (4 * deriv(h / 2) - deriv(h)) / 3
    Q = D.conj().T @ Jf @ V
    return 0.5 * (Q + Q.conj().T)


def crossing_form(pp: LagrangianPairPath, t: float, V: np.ndarray, check: bool = True):
    """Crossing form on the intersection spanned by the columns of ``V``.

    For graph paths the closed form ``X* gamma* b gamma X`` (``X`` the first
    half of the intersection vectors) is used and cross-checked against the
    finite-difference definition. Returns ``(form, deviation)``.
    """
    h = 1e-4 * (pp.b - pp.a)
    if pp.gamma is None:
        return _fd_form(pp, t, V, h), None
    g = pp.gamma.at(t)
    bb = pp.gamma.b_at(t)
    X = V[: g.shape[0]]
    G = X.conj().T @ g.conj().T @ bb @ g @ X
    G = 0.5 * (G + G.conj().T)
    dev = None
    if check:
        Gfd = _fd_form(pp, t, V, h)
        dev = norm2(G - Gfd)
        if dev > 1e-5 * (1 + norm2(G)):
            raise InconsistencyError(
                f"closed-form and finite-difference crossing forms differ by {dev:.3e} at t={t:.12g}"
            )
    return G, dev


def _location(t, pp, eps):
    if abs(t - pp.a) <= eps:
        return "start"
    if abs(t - pp.b) <= eps:
        return "end"
    return "interior"


def crossing_records(pp: LagrangianPairPath, tol: Tolerances = DEFAULT_TOL, check: bool = True,
                     evidence: dict | None = None):
    eps = 1e-12 * (pp.b - pp.a)
    recs = []
    for t, X in detect_crossings(pp, tol, evidence):
        G, dev = crossing_form(pp, t, X, check)
        recs.append(CrossingRecord(t, X, G, morse_counts(G, tol), _location(t, pp, eps), dev))
    return recs


def maslov_index_crossing_form(pp: LagrangianPairPath, tol: Tolerances = DEFAULT_TOL,
                               check: bool = True) -> MaslovResult:
    """``m+(Gamma(a)) - m-(Gamma(b)) + sum of interior signatures``.

    Raises
    ------
    NonRegularCrossingError
        If some crossing form is degenerate.
    """
    evidence: dict = {}
    recs = crossing_records(pp, tol, check, evidence)
    for r in recs:
        if not r.regular:
            raise NonRegularCrossingError(r)
    return MaslovResult(sum(r.contribution for r in recs), "crossing_form", recs, evidence=evidence)


# ---------------------------------------------------------------------------
# eigenphases


def _eig_unitary(V):
    T, Z = schur(V, output="complex")
    return np.diag(T).copy(), Z


def track_eigenphases(pp: LagrangianPairPath, max_depth: int = 30, max_samples: int = 200000):
    """Continuously tracked eigenphases of ``U_W^{-1} U(t)`` over the scan grid.

    Consecutive samples are matched by maximal eigenvector overlap. An
    interval is bisected until every matched phase moves by at most
    ``pi/8``.

    Returns
    -------
    phases0 : ndarray
        Principal eigenphases at ``t = a``.
    phases1 : ndarray
        Continued eigenphases at ``t = b``.
    info : dict
        Sample count and largest accepted step.
    """
    Uw_h = pp.fixed.unitary.conj().T

    def sample(t):
        return _eig_unitary(Uw_h @ pp.unitary(t))

    grid = list(pp.grid)
    lam, vecs = sample(grid[0])
    phase = np.angle(lam)
    start = phase.copy()
    worst = 0.0
    count = 1
    stack = [(grid[i], 0) for i in range(len(grid) - 1, 0, -1)]
    t_cur = grid[0]
    while stack:
        t_next, depth = stack.pop()
        lam2, vecs2 = sample(t_next)
        count += 1
        overlap = np.abs(vecs.conj().T @ vecs2) ** 2
        rows, cols = linear_sum_assignment(-overlap)
        perm = cols[np.argsort(rows)]
        d = np.angle(lam2[perm] / lam)
        step = float(np.max(np.abs(d))) if d.size else 0.0
        if step > PHASE_STEP_LIMIT and depth < max_depth and count < max_samples:
            stack.append((t_next, depth + 1))
            stack.append((0.5 * (t_cur + t_next), depth + 1))
            continue
        if step > PHASE_STEP_LIMIT:
            raise DegeneratePathError(
                f"eigenphase tracking could not resolve the path near t={t_next:.12g} (step {step:.3f})"
            )
        worst = max(worst, step)
        phase = phase + d
        lam = lam2[perm]
        vecs = vecs2[:, perm]
        t_cur = t_next
    return start, phase, {"samples": count, "max_step": worst}


def _winding_floor(phi, tol):
    return np.floor((np.asarray(phi) + tol) / (2 * np.pi)).astype(int)


def maslov_index_eigenphase(pp: LagrangianPairPath, tol: Tolerances = DEFAULT_TOL) -> MaslovResult:
    """Minus the spectral flow of ``U_W^{-1} U(t)`` through ``1``.

    A phase ``phi`` is assigned the winding number ``floor((phi + eps) / 2 pi)``
    with ``eps = 2 rank_tol`` (a principal-angle sine of ``rank_tol``
    corresponds to a phase of about ``2 rank_tol``). The flow is the sum of
    winding changes between the two ends.
    """
    eps = 2 * tol.rank_tol
    start, end, info = track_eigenphases(pp)
    sf = int(np.sum(_winding_floor(end, eps) - _winding_floor(start, eps)))
    near = [float(x) for x in np.r_[start, np.mod(end + np.pi, 2 * np.pi) - np.pi]
            if eps < abs(x) <= 10 * eps]
    info = dict(info, start_phases=[float(x) for x in start], end_phases=[float(x) for x in end])
    if near:
        info["near_threshold_phases"] = near
    return MaslovResult(-sf, "eigenphase", evidence=info)


# ---------------------------------------------------------------------------
# monotone counting


def maslov_monotone(gamma: SymplecticPath, W, tol: Tolerances = DEFAULT_TOL, check_samples: int = 65) -> MaslovResult:
    """Index of a path with ``-J gamma' gamma^{-1} >= 0`` by counting dimension drops.

    The result is ``sum over s in [a, b)`` of ``dim(s) - dim(s+)`` where
    ``dim(s) = dim(Gr(gamma(s)) ∩ W)``.

    Raises
    ------
    PreconditionError
        If the generator has a negative eigenvalue on the check grid.
    """
    pp = graph_pair_path(gamma, W)
    for t in np.linspace(gamma.t0, gamma.T, check_samples):
        b = gamma.b_at(t)
        w = np.linalg.eigvalsh(b)
        if w[0] < -tol.eig_zero_tol * (1 + abs(w).max()):
            raise PreconditionError(f"path is not monotone at t={t:.6g} (eigenvalue {w[0]:.3e})")
    a, bnd = pp.a, pp.b
    span = bnd - a
    times = sorted(set([a] + [t for t in _candidate_times(pp, tol) if t < bnd - 1e-9 * span]))
    drops = []
    total = 0
    for i, t in enumerate(times):
        nxt = times[i + 1] if i + 1 < len(times) else bnd
        eta = min(1e-4 * span, 0.25 * (nxt - t))
        d0 = pp.intersection(t, tol).shape[1]
        d1 = pp.intersection(t + eta, tol).shape[1]
        if d0 != d1:
            drops.append({"t": float(t), "dim": d0, "dim_after": d1})
        total += d0 - d1
    return MaslovResult(total, "monotone", evidence={"drops": drops})


# ---------------------------------------------------------------------------
# Maslov-type index


def iW(gamma: SymplecticPath, W, tol: Tolerances = DEFAULT_TOL, method: str = "both",
       perturb: bool = True, deltas=(0.05, 0.02, 0.11, 0.23), check: bool = True) -> MaslovResult:
    """Maslov-type index of ``(Gr(gamma(t)), W)`` in the doubled space.

    Parameters
    ----------
    gamma : SymplecticPath
    W : BoundaryCondition or LagrangianFrame
    method : {"both", "crossing_form", "eigenphase", "monotone"}
        With ``"both"`` the crossing-form and eigenphase indices are computed
        independently and must agree.
    perturb : bool
        When a crossing is not regular, retry the crossing-form count on
        ``gamma(t) exp(delta f(t) J)`` (same endpoints, same index).

    Returns
    -------
    MaslovResult
        ``nullity`` holds ``dim(Gr(gamma(T)) ∩ W)``.
    """
    if isinstance(W, BoundaryCondition):
        W = W.W
    pp = graph_pair_path(gamma, W)
    nullity = pp.intersection(pp.b, tol).shape[1]
    if method == "monotone":
        res = maslov_monotone(gamma, W, tol)
        res.nullity = nullity
        return res
    results = {}
    eig = None
    if method in ("both", "eigenphase"):
        eig = maslov_index_eigenphase(pp, tol)
        results["eigenphase"] = eig.index
        if method == "eigenphase":
            eig.nullity = nullity
            return eig
    cf = None
    try:
        cf = maslov_index_crossing_form(pp, tol, check)
    except NonRegularCrossingError as exc:
        if not perturb:
            raise
        last = exc
        for delta in deltas:
            try:
                cf = maslov_index_crossing_form(graph_pair_path(perturbed_path(gamma, delta), W), tol, check)
            except NonRegularCrossingError as exc2:
                last = exc2
                continue
            cf.perturbation = delta
            cf.evidence["unperturbed_nonregular_t"] = float(exc.record.t_star)
            break
        if cf is None:
            raise last
    results["crossing_form"] = cf.index
    cf.nullity = nullity
    if eig is not None:
        cf.agreement = {"eigenphase": eig.index, "crossing_form": cf.index,
                        "eigenphase_samples": eig.evidence.get("samples")}
        cf.evidence["eigenphase"] = eig.evidence
        if eig.index != cf.index:
            raise MethodDisagreement(
                f"crossing-form index {cf.index} != eigenphase index {eig.index}", results
            )
        cf.method = "crossing_form+eigenphase"
    return cf


def nullity(gamma_T, W, tol: Tolerances = DEFAULT_TOL) -> int:
    """``dim(Gr(M) ∩ W)`` for a single symplectic matrix ``M``."""
    if isinstance(W, BoundaryCondition):
        W = W.W
    return subspace_intersection(qr_frame(graph_basis(gamma_T)), W.frame, tol).shape[1]


def generic_pair_path(space: SymplecticSpace, basis: Callable, fixed, a: float, b: float,
                      samples: int = 257, label: str = "") -> LagrangianPairPath:
    if not isinstance(fixed, LagrangianFrame):
        fixed = LagrangianFrame.from_span(fixed, space)
    return LagrangianPairPath(space, basis, fixed, np.linspace(a, b, samples), label=label)
