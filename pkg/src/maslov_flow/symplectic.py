"""Symplectic spaces, Lagrangian frames and boundary-condition subspaces.

Conventions
-----------
The Hermitian inner product ``(x, y) = y* x`` is linear in the first slot.
On ``C^{2n}`` the form matrix is ``J = [[0, -I], [I, 0]]`` and the
symplectic form is ``omega(x, y) = (J x, y)``. The doubled space
``C^{4n} = C^{2n} + C^{2n}`` carries ``diag(-J, J)``, with coordinates
grouped as ``((x, y), (z, u))``: the first pair is the left endpoint, the
second pair the right endpoint.

A Lagrangian subspace ``L`` is the graph of a unitary map between the
``+i`` and ``-i`` eigenspaces of the form matrix. :func:`unitary_rep`
returns that unitary in fixed orthonormal bases of the two eigenspaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation, InconsistencyError
from .numeric import (
    DEFAULT_TOL,
    Tolerances,
    as_cmatrix,
    norm2,
    orth_complement,
    orthonormal_frame,
    qr_frame,
    subspace_intersection,
)


def standard_J(n: int) -> np.ndarray:
    I = np.eye(n)
    Z = np.zeros((n, n))
    return np.block([[Z, -I], [I, Z]]).astype(complex)


def doubled_form(n: int) -> np.ndarray:
    J = standard_J(n)
    Z = np.zeros_like(J)
    return np.block([[-J, Z], [Z, J]])


@dataclass(frozen=True, eq=False)
class SymplecticSpace:
    """``C^{2m}`` with a skew-Hermitian form matrix squaring to ``-I``."""

    form: np.ndarray
    kind: str = "generic"
    E1: np.ndarray = field(repr=False, default=None)
    E2: np.ndarray = field(repr=False, default=None)

    @property
    def half_dim(self) -> int:
        return self.form.shape[0] // 2

    @classmethod
    def standard(cls, n: int) -> "SymplecticSpace":
        I = np.eye(n)
        E1 = np.vstack([I, -1j * I]) / np.sqrt(2)
        E2 = np.vstack([I, 1j * I]) / np.sqrt(2)
        return cls(standard_J(n), "standard", E1, E2)

    @classmethod
    def doubled(cls, n: int) -> "SymplecticSpace":
        I = np.eye(n)
        Z = np.zeros((2 * n, n))
        up = np.vstack([I, 1j * I]) / np.sqrt(2)
        down = np.vstack([I, -1j * I]) / np.sqrt(2)
        E1 = np.block([[up, Z], [Z, down]])
        E2 = np.block([[down, Z], [Z, up]])
        return cls(doubled_form(n), "doubled", E1, E2)

    @classmethod
    def from_form(cls, form, tol: Tolerances = DEFAULT_TOL) -> "SymplecticSpace":
        F = as_cmatrix(form, "form")
        d = F.shape[0]
        if F.shape[1] != d or d % 2:
            raise ContractViolation("form matrix must be square of even size")
        if norm2(F + F.conj().T) > tol.residual_tol or norm2(F @ F + np.eye(d)) > tol.residual_tol:
            raise ContractViolation("form matrix must be skew-Hermitian with square -I")
        w, V = np.linalg.eigh(-1j * F)
        E1 = V[:, w > 0]
        E2 = V[:, w < 0]
        if E1.shape[1] != d // 2:
            raise ContractViolation("form matrix does not have a balanced +-i splitting")
        return cls(F, "generic", E1, E2)

    def omega(self, x, y):
        """``omega(x, y) = (form x, y) = y* form x``."""
        return np.conj(y) @ (self.form @ x)


@dataclass(frozen=True, eq=False)
class LagrangianFrame:
    """Orthonormal frame of a Lagrangian subspace with its unitary representative."""

    space: SymplecticSpace
    frame: np.ndarray
    unitary: np.ndarray

    @classmethod
    def from_span(cls, vectors, space: SymplecticSpace, tol: Tolerances = DEFAULT_TOL):
        Z = orthonormal_frame(as_cmatrix(vectors), tol)
        ok, res = lagrangian_check(Z, space, tol)
        if not ok:
            raise ContractViolation(
                f"span is not Lagrangian (dim {Z.shape[1]} of {space.half_dim}, residual {res:.3e})"
            )
        return cls(space, Z, unitary_rep(Z, space))

    @property
    def dim(self) -> int:
        return self.frame.shape[1]


def lagrangian_check(Z, space: SymplecticSpace, tol: Tolerances = DEFAULT_TOL):
    """Return ``(is_lagrangian, residual)`` where residual is ``||Z* form Z||``."""
    Z = np.asarray(Z, dtype=complex)
    res = norm2(Z.conj().T @ space.form @ Z) if Z.shape[1] else 0.0
    return (Z.shape[1] == space.half_dim and res <= tol.residual_tol), res


def unitary_rep(Z, space: SymplecticSpace, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Unitary ``U`` with ``span(Z) = {xi + U xi : xi in X1}``.

    ``Z`` may be any basis of the Lagrangian, orthonormal or not. In the
    eigenspace bases ``E1`` (``+i``) and ``E2`` (``-i``) the representative
    is ``(E2* Z)(E1* Z)^{-1}``.
    """
    Z = np.asarray(Z, dtype=complex)
    A = space.E1.conj().T @ Z
    B = space.E2.conj().T @ Z
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[-1] <= tol.rank_tol * max(s[0], 1e-300):
        raise InconsistencyError("projection of the subspace onto the +i eigenspace is singular")
    return np.linalg.solve(A.T, B.T).T


def lagrangian_from_unitary(U, space: SymplecticSpace) -> np.ndarray:
    """Orthonormal frame of the graph of a unitary ``U: X1 -> X2``."""
    Z = space.E1 + space.E2 @ np.asarray(U, dtype=complex)
    return qr_frame(Z)


def symplectic_residual(M, J=None) -> float:
    M = np.asarray(M, dtype=complex)
    if J is None:
        J = standard_J(M.shape[0] // 2)
    return norm2(M.conj().T @ J @ M - J)


def graph_basis(M) -> np.ndarray:
    """Basis ``[I; M]`` of the graph ``{(v, M v)}`` (not orthonormal)."""
    M = np.asarray(M, dtype=complex)
    return np.vstack([np.eye(M.shape[1], dtype=complex), M])


def graph_lagrangian(M, tol: Tolerances = DEFAULT_TOL) -> LagrangianFrame:
    """Lagrangian frame of ``Gr(M)`` in the doubled space for symplectic ``M``."""
    M = as_cmatrix(M, "M")
    if M.shape[0] != M.shape[1] or M.shape[0] % 2:
        raise ContractViolation("M must be square of even size")
    res = symplectic_residual(M)
    if res > tol.residual_tol * (1 + norm2(M) ** 2):
        raise ContractViolation(f"M is not symplectic (residual {res:.3e})")
    space = SymplecticSpace.doubled(M.shape[0] // 2)
    G = graph_basis(M)
    return LagrangianFrame(space, qr_frame(G), unitary_rep(G, space))


def random_symplectic(rng: np.random.Generator, n: int, scale=1.0) -> np.ndarray:
    """``exp(J H)`` for a random Hermitian ``H``; symplectic by construction."""
    from scipy.linalg import expm

    from .numeric import random_hermitian

    H = random_hermitian(rng, 2 * n, scale)
    return expm(standard_J(n) @ H)


# ---------------------------------------------------------------------------
# boundary conditions


def _span_columns(R_span, n: int) -> np.ndarray:
    if R_span is None:
        return np.zeros((2 * n, 0), dtype=complex)
    arr = np.asarray(R_span, dtype=complex)
    if arr.size == 0:
        return np.zeros((2 * n, 0), dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != 2 * n:
        raise ContractViolation(
            f"boundary vectors must have length 2n = {2 * n}, got array of shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ContractViolation("boundary vectors have non-finite entries")
    return arr.T


def flip(n: int) -> np.ndarray:
    """``D = diag(I, -I)`` on ``C^{2n}``."""
    return np.diag(np.r_[np.ones(n), -np.ones(n)]).astype(complex)


def diagonal_frame(n: int) -> np.ndarray:
    """Orthonormal frame of ``Gr(I) = {(x, x)}`` in ``C^{2n}``."""
    I = np.eye(n)
    return np.vstack([I, I]).astype(complex) / np.sqrt(2)


def graph_frame(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal frame of ``Gr(M) = {(x, M x)}`` for a square ``M``."""
    return orthonormal_frame(graph_basis(M), tol)


@dataclass(frozen=True, eq=False)
class BoundaryCondition:
    """A subspace ``R`` of ``C^{2n}`` and its derived companions.

    Attributes
    ----------
    R, Rperp, Rb : ndarray
        Orthonormal frames of ``R``, its orthogonal complement, and
        ``R^b = {(x, y) : (x, -y) in Rperp}``.
    W : LagrangianFrame
        ``W(R) = {(x, y, z, u) : (x, -z) in Rperp, (y, u) in R}`` in the
        doubled space.
    S : ndarray
        Frame of ``S = {x : (x, x) in R^b}``.
    """

    n: int
    R: np.ndarray
    Rperp: np.ndarray
    Rb: np.ndarray
    W: LagrangianFrame
    S: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.R.shape[1]

    @property
    def dim_S(self) -> int:
        return self.S.shape[1]


def w_frame(R: np.ndarray, Rperp: np.ndarray, n: int) -> np.ndarray:
    """Orthonormal frame of ``W(R)`` from orthonormal frames of ``R`` and ``R^perp``."""
    cols = []
    for c in Rperp.T:
        v = np.zeros(4 * n, dtype=complex)
        v[:n] = c[:n]
        v[2 * n : 3 * n] = -c[n:]
        cols.append(v)
    for c in R.T:
        v = np.zeros(4 * n, dtype=complex)
        v[n : 2 * n] = c[:n]
        v[3 * n :] = c[n:]
        cols.append(v)
    return np.column_stack(cols) if cols else np.zeros((4 * n, 0), dtype=complex)


def b_companion(R: np.ndarray, n: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Frame of ``R^b = D R^perp`` with ``D = diag(I, -I)``."""
    return flip(n) @ orth_complement(R, tol)


def s_space(Rb: np.ndarray, n: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``S = {x : (x, x) in R^b}`` as the kernel of ``x -> (I - P_Rb)(x, x)``."""
    Dg = diagonal_frame(n)
    resid = Dg - Rb @ (Rb.conj().T @ Dg)
    _, s, Vh = np.linalg.svd(resid)
    sv = np.zeros(n)
    sv[: len(s)] = s
    # Dg is orthonormal, so the cutoff applies directly to angle sines
    return Vh.conj().T[:, sv <= tol.rank_tol]


def s_space_by_intersection(Rb: np.ndarray, n: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``S`` computed as the x-part of ``Gr(I) ∩ R^b``."""
    X = subspace_intersection(diagonal_frame(n), Rb, tol)
    return qr_frame(X[:n] * np.sqrt(2)) if X.shape[1] else np.zeros((n, 0), dtype=complex)


def boundary_derive(R_span, n: int, tol: Tolerances = DEFAULT_TOL, label: str = "") -> BoundaryCondition:
    """Build a :class:`BoundaryCondition` from spanning vectors of ``R``.

    Parameters
    ----------
    R_span : array_like, shape (k, 2n)
        Spanning vectors of ``R``, one per row. An empty list gives ``R = {0}``.
    n : int
        Half dimension.
    """
    if n < 1:
        raise ContractViolation("n must be a positive integer")
    R = orthonormal_frame(_span_columns(R_span, n), tol)
    Rperp = orth_complement(R, tol)
    Rb = flip(n) @ Rperp
    W = w_frame(R, Rperp, n)
    space = SymplecticSpace.doubled(n)
    ok, res = lagrangian_check(W, space, tol)
    if not ok:
        raise InconsistencyError(f"W(R) failed the Lagrangian check (residual {res:.3e})")
    Wf = LagrangianFrame(space, W, unitary_rep(W, space, tol))
    return BoundaryCondition(n, R, Rperp, Rb, Wf, s_space(Rb, n, tol), label)


def dirichlet(n: int) -> BoundaryCondition:
    return boundary_derive([], n, label="dirichlet")


def free(n: int) -> BoundaryCondition:
    return boundary_derive(np.eye(2 * n), n, label="free")


def periodic(n: int) -> BoundaryCondition:
    return boundary_derive(np.hstack([np.eye(n), np.eye(n)]), n, label="periodic")


def pullback(bc: BoundaryCondition, a0, aT, tol: Tolerances = DEFAULT_TOL) -> BoundaryCondition:
    """``R' = {(x, y) : (a0 x, aT y) in R} = diag(a0, aT)^{-1} R``."""
    n = bc.n
    Dinv = np.zeros((2 * n, 2 * n), dtype=complex)
    Dinv[:n, :n] = np.linalg.inv(a0)
    Dinv[n:, n:] = np.linalg.inv(aT)
    return boundary_derive((Dinv @ bc.R).T, n, tol, label=f"pullback({bc.label})" if bc.label else "")


def gr_identity_dim(frame: np.ndarray, n: int, tol: Tolerances = DEFAULT_TOL) -> int:
    """``dim(Gr(I) ∩ span(frame))`` in ``C^{2n}``."""
    return subspace_intersection(diagonal_frame(n), frame, tol).shape[1]
