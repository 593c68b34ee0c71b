"""Coefficient paths, the Hamiltonian matrix ``b`` and fundamental solutions.

The index form with coefficients ``(p, q, r)`` has the Hamiltonian
coefficient::

    b = [[p^-1,        -p^-1 q        ],
         [-q* p^-1,     q* p^-1 q - r ]]

and its fundamental solution solves ``u' = J b u`` with ``u(0) = I``. The
state vector is ``(p x' + q x, x)``: momentum first, position second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ContractViolation, IntegrationFailure, SingularCoefficientError
from .numeric import DEFAULT_TOL, Tolerances, norm2
from .symplectic import standard_J


class MatrixPath:
    """A square-matrix valued function of time.

    Use the constructors :meth:`constant`, :meth:`poly`, :meth:`samples`
    or :meth:`function`. Instances evaluate at a scalar time with
    ``path(t)`` and at many times with :meth:`many`, which returns an array
    of shape ``(len(ts), d, d)``.
    """

    def __init__(self, kind, dim, data, deriv=None, many=None, deriv_many=None):
        self.kind = kind
        self.dim = dim
        self._data = data
        self._deriv = deriv
        self._many = many
        self._deriv_many = deriv_many

    @classmethod
    def constant(cls, M):
        M = np.atleast_2d(np.asarray(M, dtype=complex))
        if M.shape[0] != M.shape[1]:
            raise ContractViolation(f"constant matrix must be square, got {M.shape}")
        return cls("constant", M.shape[0], M)

    @classmethod
    def poly(cls, coeffs):
        """``sum_k coeffs[k] t^k``."""
        C = [np.atleast_2d(np.asarray(c, dtype=complex)) for c in coeffs]
        if not C:
            raise ContractViolation("polynomial needs at least one coefficient")
        shape = C[0].shape
        if shape[0] != shape[1] or any(c.shape != shape for c in C):
            raise ContractViolation("polynomial coefficients must be square and of equal size")
        return cls("poly", shape[0], np.stack(C))

    @classmethod
    def samples(cls, times, values):
        """Piecewise linear interpolation through ``values[k]`` at ``times[k]``."""
        ts = np.asarray(times, dtype=float)
        V = np.asarray(values, dtype=complex)
        if V.ndim == 2:
            V = V[:, None, None] if V.shape[1] == 1 else V.reshape(len(V), 1, -1)
        if ts.ndim != 1 or len(ts) < 2 or V.shape[0] != len(ts) or V.shape[1] != V.shape[2]:
            raise ContractViolation("samples need >= 2 strictly increasing times and square values")
        if np.any(np.diff(ts) <= 0):
            raise ContractViolation("sample times must be strictly increasing")
        dV = np.gradient(V, ts, axis=0, edge_order=1)
        return cls("samples", V.shape[1], (ts, V, dV))

    @classmethod
    def function(cls, f: Callable, dim: int, df: Callable | None = None,
                 many: Callable | None = None, deriv_many: Callable | None = None):
        """Wrap a callable; ``many``/``deriv_many`` are optional batched versions."""
        return cls("function", dim, f, df, many, deriv_many)

    # -- evaluation ----------------------------------------------------
    def __call__(self, t) -> np.ndarray:
        return self.many(np.array([float(t)]))[0]

    def many(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float).ravel()
        if self.kind == "constant":
            return np.broadcast_to(self._data, (len(ts),) + self._data.shape).copy()
        if self.kind == "poly":
            C = self._data
            out = np.broadcast_to(C[-1], (len(ts),) + C.shape[1:]).copy()
            for c in C[-2::-1]:
                out = out * ts[:, None, None] + c
            return out
        if self.kind == "samples":
            return _interp(self._data[0], self._data[1], ts)
        if self._many is not None:
            return np.asarray(self._many(ts), dtype=complex)
        return np.stack([np.asarray(self._data(t), dtype=complex).reshape(self.dim, self.dim) for t in ts])

    def derivative(self, t) -> np.ndarray:
        return self.derivative_many(np.array([float(t)]))[0]

    def derivative_many(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float).ravel()
        d = self.dim
        if self.kind == "constant":
            return np.zeros((len(ts), d, d), dtype=complex)
        if self.kind == "poly":
            C = self._data
            if len(C) == 1:
                return np.zeros((len(ts), d, d), dtype=complex)
            dC = np.stack([k * C[k] for k in range(1, len(C))])
            return MatrixPath("poly", d, dC).many(ts)
        if self.kind == "samples":
            return _interp(self._data[0], self._data[2], ts)
        if self._deriv_many is not None:
            return np.asarray(self._deriv_many(ts), dtype=complex)
        if self._deriv is not None:
            return np.stack([np.asarray(self._deriv(t), dtype=complex).reshape(d, d) for t in ts])
        h = 1e-5
        return np.stack(
            [(np.asarray(self._data(t + h)) - np.asarray(self._data(t - h))) / (2 * h) for t in ts]
        ).astype(complex)

    def describe(self) -> dict:
        return {"kind": self.kind, "dim": self.dim}


def _interp(ts, V, tq):
    k = np.clip(np.searchsorted(ts, tq, side="right") - 1, 0, len(ts) - 2)
    w = ((tq - ts[k]) / (ts[k + 1] - ts[k]))[:, None, None]
    return (1 - w) * V[k] + w * V[k + 1]


def as_matrix_path(x, dim=None) -> MatrixPath:
    if isinstance(x, MatrixPath):
        return x
    M = np.atleast_2d(np.asarray(x, dtype=complex))
    return MatrixPath.constant(M)


@dataclass
class CoefficientPath:
    """The triple ``(p, q, r)`` on ``[0, T]`` together with an s-homotopy.

    Homotopy rules
    --------------
    ``"linear"``
        ``p_s = p``, ``q_s = s q``, ``r_s = s r`` (the default).
    ``"fixed"``
        The same coefficients for every ``s``.
    ``"endpoints"``
        Straight line from ``start = (p0, q0, r0)`` at ``s = 0`` to
        ``(p, q, r)`` at ``s = 1``.
    """

    n: int
    T: float
    p: MatrixPath
    q: MatrixPath
    r: MatrixPath
    homotopy: str = "linear"
    start: tuple | None = None
    joint: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        self.p, self.q, self.r = (as_matrix_path(m) for m in (self.p, self.q, self.r))
        if not (self.T > 0 and math.isfinite(self.T)):
            raise ContractViolation(f"T must be positive, got {self.T}")
        for name in ("p", "q", "r"):
            if getattr(self, name).dim != self.n:
                raise ContractViolation(f"{name} must be {self.n}x{self.n}")
        if self.homotopy not in ("linear", "fixed", "endpoints"):
            raise ContractViolation(f"unknown homotopy rule {self.homotopy!r}")
        if self.homotopy == "endpoints":
            if self.start is None or len(self.start) != 3:
                raise ContractViolation("endpoints homotopy needs start=(p0, q0, r0)")
            self.start = tuple(as_matrix_path(m) for m in self.start)

    def many(self, s: float, ts):
        """Arrays ``(p_s, q_s, r_s)`` at the times ``ts``."""
        if self.joint is not None:
            P, Q, R = self.joint(np.asarray(ts, dtype=float).ravel())
        else:
            P, Q, R = self.p.many(ts), self.q.many(ts), self.r.many(ts)
        if self.homotopy == "linear":
            return P, s * Q, s * R
        if self.homotopy == "endpoints":
            P0, Q0, R0 = (m.many(ts) for m in self.start)
            return (1 - s) * P0 + s * P, (1 - s) * Q0 + s * Q, (1 - s) * R0 + s * R
        return P, Q, R

    def at(self, s: float, t: float):
        P, Q, R = self.many(s, [t])
        return P[0], Q[0], R[0]

    def p_is_s_independent(self) -> bool:
        return self.homotopy in ("linear", "fixed") or self.start[0] is self.p

    def check(self, tol: Tolerances = DEFAULT_TOL, samples: int = 65, s_values=(0.0, 1.0)) -> dict:
        """Hermiticity and invertibility certificates on a sample grid."""
        ts = np.linspace(0, self.T, samples)
        herm = 0.0
        smin = np.inf
        for s in s_values:
            P, _, R = self.many(s, ts)
            for k, t in enumerate(ts):
                herm = max(herm, norm2(P[k] - P[k].conj().T), norm2(R[k] - R[k].conj().T))
                sv = np.linalg.svd(P[k], compute_uv=False)
                if sv[-1] <= tol.rank_tol * max(1.0, sv[0]):
                    raise SingularCoefficientError(t, sv[-1])
                smin = min(smin, sv[-1])
        if herm > tol.residual_tol * (1 + max(norm2(self.p(0)), norm2(self.r(0)))):
            raise ContractViolation(f"p or r is not Hermitian (residual {herm:.3e})")
        return {"hermitian_residual": herm, "p_sigma_min": float(smin)}

    def p_definiteness(self, samples: int = 65) -> int:
        """+1 if p is positive definite on the sample grid, -1 if negative definite, else 0."""
        ts = np.linspace(0, self.T, samples)
        w = np.linalg.eigvalsh(0.5 * (self.p.many(ts) + np.conj(np.swapaxes(self.p.many(ts), 1, 2))))
        if np.all(w > 0):
            return 1
        if np.all(w < 0):
            return -1
        return 0


def b_many(coeffs: CoefficientPath, s: float, ts, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Hamiltonian coefficient ``b_s(t)`` for every ``t`` in ``ts``."""
    ts = np.asarray(ts, dtype=float).ravel()
    P, Q, R = coeffs.many(s, ts)
    sv = np.linalg.svd(P, compute_uv=False)
    bad = sv[:, -1] <= tol.rank_tol * np.maximum(1.0, sv[:, 0])
    if bad.any():
        k = int(np.argmax(bad))
        raise SingularCoefficientError(ts[k], sv[k, -1])
    Pinv = np.linalg.inv(P)
    Qh = np.conj(np.swapaxes(Q, 1, 2))
    PiQ = Pinv @ Q
    top = np.concatenate([Pinv, -PiQ], axis=2)
    bot = np.concatenate([-Qh @ Pinv, Qh @ PiQ - R], axis=2)
    b = np.concatenate([top, bot], axis=1)
    return 0.5 * (b + np.conj(np.swapaxes(b, 1, 2)))


def assemble_b(coeffs: CoefficientPath, s: float, t: float, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``b_s(t) = [[p^-1, -p^-1 q], [-q* p^-1, q* p^-1 q - r]]``."""
    if not (-1e-12 <= t <= coeffs.T * (1 + 1e-12)):
        raise ContractViolation(f"t={t} outside [0, {coeffs.T}]")
    return b_many(coeffs, s, [t], tol)[0]


# ---------------------------------------------------------------------------
# integration


def symplectic_project(M, J, iterations: int = 3) -> np.ndarray:
    """Pull ``M`` back onto ``Sp(2n)`` by Newton steps ``M <- M (I - E/2)``.

    ``E = J^{-1} M* J M - I`` measures the defect; one step removes it to
    first order.
    """
    I = np.eye(M.shape[0])
    for _ in range(iterations):
        E = -J @ (M.conj().T @ J @ M) - I
        if np.abs(E).max() < 1e-15:
            break
        M = M @ (I - 0.5 * E)
    return M


def rk4_linear(A_at: Callable, grid, y0, project: Callable | None = None) -> np.ndarray:
    """Classical fourth-order integration of ``Y' = A(t) Y`` on ``grid``.

    ``A_at`` maps an array of times to an array of matrices.
    """
    grid = np.asarray(grid, dtype=float)
    h = np.diff(grid)
    mids = grid[:-1] + h / 2
    A_nodes = A_at(grid)
    A_mid = A_at(mids)
    Y = np.array(y0, dtype=complex)
    out = np.empty((len(grid),) + Y.shape, dtype=complex)
    out[0] = Y
    for k in range(len(h)):
        hk = h[k]
        k1 = A_nodes[k] @ Y
        k2 = A_mid[k] @ (Y + 0.5 * hk * k1)
        k3 = A_mid[k] @ (Y + 0.5 * hk * k2)
        k4 = A_nodes[k + 1] @ (Y + hk * k3)
        Y = Y + (hk / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if project is not None:
            Y = project(Y)
        out[k + 1] = Y
    return out


@dataclass(eq=False)
class SymplecticPath:
    """A path ``gamma(t)`` in ``Sp(2n)`` sampled on a grid over ``[t0, T]``.

    ``generator`` (optional) returns ``b(t)`` with ``gamma' = J b gamma``.
    ``closed_form`` (optional) evaluates ``gamma`` exactly at any time.
    Without a closed form, :meth:`at` integrates from the nearest grid node
    using the generator.
    """

    n: int
    grid: np.ndarray
    values: np.ndarray
    generator: Callable | None = None
    closed_form: Callable | None = None
    renormalize: bool = False
    label: str = ""
    generator_vec: Callable | None = field(default=None, repr=False)
    max_symplectic_residual: float = field(init=False, default=0.0)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        self.max_symplectic_residual = symplecticity_residual(self)

    @property
    def t0(self) -> float:
        return float(self.grid[0])

    @property
    def T(self) -> float:
        return float(self.grid[-1])

    def at(self, t: float) -> np.ndarray:
        t = float(t)
        if self.closed_form is not None:
            return np.asarray(self.closed_form(t), dtype=complex)
        k = int(np.clip(np.searchsorted(self.grid, t, side="right") - 1, 0, len(self.grid) - 1))
        if abs(t - self.grid[k]) <= 1e-15 * max(1.0, abs(t)):
            return self.values[k]
        if self.generator is None:
            # piecewise linear fallback; only used for sampled imports
            k = min(k, len(self.grid) - 2)
            w = (t - self.grid[k]) / (self.grid[k + 1] - self.grid[k])
            return (1 - w) * self.values[k] + w * self.values[k + 1]
        J = standard_J(self.n)
        hmax = np.diff(self.grid).max()
        m = max(1, int(math.ceil(abs(t - self.grid[k]) / hmax)))
        sub = np.linspace(self.grid[k], t, m + 1)
        proj = (lambda Y: symplectic_project(Y, J)) if self.renormalize else None
        return rk4_linear(lambda ts: J @ self.generator_many(ts), sub, self.values[k], proj)[-1]

    def generator_many(self, ts) -> np.ndarray:
        if self.generator_vec is not None:
            return self.generator_vec(np.atleast_1d(ts))
        return np.stack([self.generator(t) for t in np.atleast_1d(ts)])

    def b_at(self, t: float) -> np.ndarray:
        """``b(t) = -J gamma'(t) gamma(t)^{-1}`` (exact generator when available)."""
        if self.generator is not None:
            return np.asarray(self.generator(t), dtype=complex)
        h = 1e-5 * max(1.0, self.T - self.t0)
        lo, hi = max(self.t0, t - h), min(self.T, t + h)
        dg = (self.at(hi) - self.at(lo)) / (hi - lo)
        J = standard_J(self.n)
        b = -J @ dg @ np.linalg.inv(self.at(t))
        return 0.5 * (b + b.conj().T)

    def end(self) -> np.ndarray:
        return self.values[-1]


def symplecticity_residual(path: SymplecticPath) -> float:
    """``max_k ||gamma(t_k)* J gamma(t_k) - J||`` over the grid."""
    J = standard_J(path.n)
    V = path.values
    D = np.conj(np.swapaxes(V, 1, 2)) @ J @ V - J
    return float(np.max(np.linalg.norm(D, ord=2, axis=(1, 2)))) if len(V) else 0.0


def default_steps(T: float, bnorm: float) -> int:
    return int(max(256, math.ceil(64 * T * (1 + bnorm))))


def fundamental_solution(
    coeffs: CoefficientPath,
    s: float = 1.0,
    steps: int | None = None,
    renormalize: bool = False,
    tol: Tolerances = DEFAULT_TOL,
    max_residual: float = 1e-8,
    max_refinements: int = 4,
) -> SymplecticPath:
    """Fundamental solution of ``u' = J b_s(t) u``, ``u(0) = I``, by RK4.

    The default step count is ``max(256, 64 T (1 + max ||b||))``. If the
    symplectic residual exceeds ``max_residual`` the step count is doubled,
    up to ``max_refinements`` times.
    """
    n, T = coeffs.n, coeffs.T
    J = standard_J(n)
    if steps is None:
        probe = np.linspace(0, T, 129)
        bnorm = float(np.max(np.linalg.norm(b_many(coeffs, s, probe, tol), ord=2, axis=(1, 2))))
        steps = default_steps(T, bnorm)
    gen = lambda t: b_many(coeffs, s, [t], tol)[0]
    proj = (lambda Y: symplectic_project(Y, J)) if renormalize else None
    for _ in range(max_refinements + 1):
        grid = np.linspace(0, T, steps + 1)
        vals = rk4_linear(lambda ts: J @ b_many(coeffs, s, ts, tol), grid, np.eye(2 * n), proj)
        path = SymplecticPath(n, grid, vals, generator=gen, renormalize=renormalize, label=f"gamma_{s:g}",
                              generator_vec=lambda ts: b_many(coeffs, s, ts, tol))
        if path.max_symplectic_residual <= max_residual:
            return path
        steps *= 2
    raise IntegrationFailure(
        f"symplectic residual {path.max_symplectic_residual:.3e} exceeds {max_residual:.1e} "
        f"after {max_refinements} refinements"
    )


def integrate_generator(
    n: int, T: float, b: Callable, steps: int | None = None, renormalize: bool = False, t0: float = 0.0,
    y0=None, label: str = "",
) -> SymplecticPath:
    """Fundamental solution for an arbitrary Hermitian generator ``b(t)``."""
    J = standard_J(n)
    bm = lambda ts: np.stack([np.asarray(b(t), dtype=complex) for t in np.atleast_1d(ts)])
    if steps is None:
        probe = np.linspace(t0, T, 65)
        steps = default_steps(T - t0, float(np.max(np.linalg.norm(bm(probe), ord=2, axis=(1, 2)))))
    grid = np.linspace(t0, T, steps + 1)
    proj = (lambda Y: symplectic_project(Y, J)) if renormalize else None
    y0 = np.eye(2 * n) if y0 is None else y0
    vals = rk4_linear(lambda ts: J @ bm(ts), grid, y0, proj)
    return SymplecticPath(n, grid, vals, generator=lambda t: np.asarray(b(t), dtype=complex),
                          renormalize=renormalize, label=label)


def closed_form_path(n: int, T: float, func: Callable, generator: Callable | None = None,
                     samples: int = 257, t0: float = 0.0, label: str = "") -> SymplecticPath:
    grid = np.linspace(t0, T, samples)
    vals = np.stack([np.asarray(func(t), dtype=complex) for t in grid])
    return SymplecticPath(n, grid, vals, generator=generator, closed_form=func, label=label)


def shear_path(P: MatrixPath, T: float, samples: int = 257) -> SymplecticPath:
    """``gamma(t) = [[I, 0], [P(t), I]]`` with generator ``diag(P'(t), 0)``."""
    n = P.dim
    I = np.eye(n)
    Z = np.zeros((n, n))

    def func(t):
        return np.block([[I, Z], [P(t), I]])

    def gen(t):
        return np.block([[P.derivative(t), Z], [Z, Z]]).astype(complex)

    return closed_form_path(n, T, func, gen, samples, label="shear")


def rotation_path(n: int, T: float, omega: float = 1.0, samples: int = 257) -> SymplecticPath:
    """``gamma(t) = exp(omega t J)`` with generator ``omega I``."""
    J = standard_J(n)
    I = np.eye(2 * n)

    def func(t):
        return np.cos(omega * t) * I + np.sin(omega * t) * J

    return closed_form_path(n, T, func, lambda t: omega * I.astype(complex), samples, label="rotation")


def frame_generator_correction(a: MatrixPath, t: float) -> np.ndarray:
    """``[[0, -a^-1 a'], [-a'* a^-*, 0]]`` at time ``t``."""
    A = a(t)
    dA = a.derivative(t)
    Ai = np.linalg.inv(A)
    n = a.dim
    Z = np.zeros((n, n))
    return np.block([[Z, -Ai @ dA], [-(dA.conj().T) @ Ai.conj().T, Z]])


def diag_frame_path(a: MatrixPath, T: float, samples: int = 257, t0: float = 0.0) -> SymplecticPath:
    """``gamma(t) = diag(a(t)*, a(t)^{-1})`` with its exact generator."""
    n = a.dim
    Z = np.zeros((n, n))

    def func(t):
        A = a(t)
        return np.block([[A.conj().T, Z], [Z, np.linalg.inv(A)]])

    return closed_form_path(n, T, func, lambda t: frame_generator_correction(a, t), samples, t0, "diag_frame")


def frame_change_coeffs(coeffs: CoefficientPath, a: MatrixPath) -> CoefficientPath:
    """Coefficients of ``I_1(a x, a y)``.

    ``[[p', q'], [q'*, r']] = [[a*, 0], [a'*, a*]] [[p, q], [q*, r]] [[a, a'], [0, a]]``
    pointwise in ``t``, with ``(p, q, r)`` taken at ``s = 1``.
    """
    if a.dim != coeffs.n:
        raise ContractViolation("frame path has the wrong size")

    def parts(ts):
        p, q, r = coeffs.many(1.0, ts)
        A, dA = a.many(ts), a.derivative_many(ts)
        Ah, dAh = _ct(A), _ct(dA)
        pp = Ah @ p @ A
        qq = Ah @ p @ dA + Ah @ q @ A
        rr = dAh @ p @ dA + Ah @ _ct(q) @ dA + dAh @ q @ A + Ah @ r @ A
        return 0.5 * (pp + _ct(pp)), qq, 0.5 * (rr + _ct(rr))

    n = coeffs.n

    def entry(k):
        return MatrixPath.function(lambda t: parts([t])[k][0], n, many=lambda ts: parts(ts)[k])

    return CoefficientPath(n, coeffs.T, entry(0), entry(1), entry(2), homotopy="fixed", joint=parts)


def _ct(X):
    return np.conj(np.swapaxes(X, -1, -2))


def frame_change_path(gamma: SymplecticPath, a: MatrixPath) -> SymplecticPath:
    """``gamma'(t) = diag(a*, a^-1) gamma(t) diag(a(0)^{-*}, a(0))``."""
    n = gamma.n
    Z = np.zeros((n, n))
    A0 = a(gamma.t0)
    right = np.block([[np.linalg.inv(A0).conj().T, Z], [Z, A0]])

    def left(t):
        A = a(t)
        return np.block([[A.conj().T, Z], [Z, np.linalg.inv(A)]])

    vals = np.stack([left(t) @ g @ right for t, g in zip(gamma.grid, gamma.values)])
    gen = None
    if gamma.generator is not None:
        def gen(t):
            A = a(t)
            Ai = np.linalg.inv(A)
            C = np.block([[Ai, Z], [Z, A.conj().T]])
            b = C @ gamma.generator(t) @ C.conj().T + frame_generator_correction(a, t)
            return 0.5 * (b + b.conj().T)

    return SymplecticPath(
        n, gamma.grid, vals, generator=gen,
        closed_form=lambda t: left(t) @ gamma.at(t) @ right,
        label=f"framed({gamma.label})",
    )


@dataclass
class TransportResult:
    grid: np.ndarray
    gamma: np.ndarray
    transported: np.ndarray
    conjugated: np.ndarray

    @property
    def max_difference(self) -> float:
        return float(np.max(np.linalg.norm(self.transported - self.conjugated, ord=2, axis=(1, 2))))


def transported_fundamental(B: MatrixPath, P: MatrixPath, T: float, steps: int = 1024) -> TransportResult:
    """Integrate ``y' = (P B P^-1 + P' P^-1) y`` and compare with ``P gamma P(0)^-1``.

    ``gamma`` is the fundamental solution of ``x' = B x``. Both sides are
    returned on a common grid.
    """
    grid = np.linspace(0, T, steps + 1)
    d = B.dim
    gam = rk4_linear(B.many, grid, np.eye(d))

    def A2(ts):
        Pm = P.many(ts)
        Pi = np.linalg.inv(Pm)
        return Pm @ B.many(ts) @ Pi + P.derivative_many(ts) @ Pi

    trans = rk4_linear(A2, grid, np.eye(d))
    conj = P.many(grid) @ gam @ np.linalg.inv(P(0.0))
    return TransportResult(grid, gam, trans, conj)
