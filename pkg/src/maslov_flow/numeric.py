"""Dense complex linear algebra with one tolerance policy.

Every rank, kernel and inertia decision in the package goes through the
helpers here, so a single :class:`Tolerances` object controls how close to
zero a singular value or eigenvalue has to be before it counts as zero.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
import scipy.linalg as sla

from .errors import ContractViolation


@dataclass(frozen=True)
class Tolerances:
    """Cutoffs used for numerical rank, zero eigenvalues and certificates.

    Parameters
    ----------
    rank_tol : float
        Singular values at or below ``rank_tol * sigma_max`` count as zero.
        For orthonormal frames this is an absolute bound on the sine of a
        principal angle.
    eig_zero_tol : float
        Eigenvalues with magnitude at or below this are classified as zero.
    residual_tol : float
        Threshold for Hermiticity, isotropy and similar residual checks.
    """

    rank_tol: float = 1e-8
    eig_zero_tol: float = 1e-7
    residual_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rank_tol", "eig_zero_tol", "residual_tol"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ContractViolation(f"{name} must be a positive finite number, got {v!r}")
        if self.rank_tol >= 1:
            raise ContractViolation("rank_tol must be < 1")

    def with_(self, **kw) -> "Tolerances":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT_TOL = Tolerances()


class MorseCounts(NamedTuple):
    m_minus: int
    m_zero: int
    m_plus: int

    @property
    def signature(self) -> int:
        return self.m_plus - self.m_minus

    @property
    def dim(self) -> int:
        return self.m_minus + self.m_zero + self.m_plus


def as_cmatrix(A, name="matrix") -> np.ndarray:
    """Return ``A`` as a finite 2-D complex array or raise."""
    M = np.asarray(A, dtype=complex)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    if M.ndim != 2:
        raise ContractViolation(f"{name} must be two-dimensional, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ContractViolation(f"{name} has non-finite entries")
    return M


def norm2(A) -> float:
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def hermitian_residual(A) -> float:
    return norm2(A - A.conj().T)


def _check_hermitian(A, tol: Tolerances, name="A") -> np.ndarray:
    A = as_cmatrix(A, name)
    if A.shape[0] != A.shape[1]:
        raise ContractViolation(f"{name} must be square, got shape {A.shape}")
    # Frobenius bounds are cheap: ||X||_2 <= ||X||_F and ||A||_2 >= ||A||_F / sqrt(d)
    res_f = float(np.linalg.norm(A - A.conj().T))
    if res_f <= tol.residual_tol * (1.0 + float(np.linalg.norm(A)) / np.sqrt(max(A.shape[0], 1))):
        return 0.5 * (A + A.conj().T)
    res = hermitian_residual(A)
    if res > tol.residual_tol * (1.0 + norm2(A)):
        raise ContractViolation(f"{name} is not Hermitian (residual {res:.3e})")
    return 0.5 * (A + A.conj().T)


def hermitian_eigen(A, tol: Tolerances = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns
    -------
    w : ndarray
        Real eigenvalues in ascending order.
    V : ndarray
        Unitary matrix whose columns are the eigenvectors.
    """
    A = _check_hermitian(A, tol)
    if A.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)
    w, V = sla.eigh(A)
    return w, V


def hermitian_eigvals(A, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    A = _check_hermitian(A, tol)
    if A.shape[0] == 0:
        return np.zeros(0)
    return sla.eigvalsh(A)


def counts_from_eigenvalues(w, zero_tol: float) -> MorseCounts:
    w = np.asarray(w, dtype=float)
    neg = int(np.sum(w < -zero_tol))
    pos = int(np.sum(w > zero_tol))
    return MorseCounts(neg, len(w) - neg - pos, pos)


def morse_counts(A, tol: Tolerances = DEFAULT_TOL, zero_tol: float | None = None) -> MorseCounts:
    """Negative, zero and positive inertia of a Hermitian matrix.

    Eigenvalues within ``eig_zero_tol`` of zero (or ``zero_tol`` when given)
    are counted as zero.
    """
    w = hermitian_eigvals(A, tol)
    return counts_from_eigenvalues(w, tol.eig_zero_tol if zero_tol is None else zero_tol)


def kernel_basis(A, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the numerical kernel of ``A``.

    A right singular vector belongs to the kernel when its singular value is
    at most ``rank_tol * sigma_max``. A zero matrix has the whole space as
    kernel.
    """
    A = as_cmatrix(A)
    rows, cols = A.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=complex)
    if rows == 0:
        return np.eye(cols, dtype=complex)
    _, s, Vh = sla.svd(A, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol.rank_tol * smax)) if smax > 0 else 0
    return Vh[rank:].conj().T


def numerical_rank(A, tol: Tolerances = DEFAULT_TOL) -> int:
    A = as_cmatrix(A)
    return A.shape[1] - kernel_basis(A, tol).shape[1]


def orthonormal_frame(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal frame of the column span of ``M`` (rank revealing)."""
    M = as_cmatrix(M)
    if M.shape[1] == 0 or M.shape[0] == 0:
        return np.zeros((M.shape[0], 0), dtype=complex)
    U, s, _ = sla.svd(M, full_matrices=False)
    smax = s[0] if s.size else 0.0
    if smax == 0:
        return np.zeros((M.shape[0], 0), dtype=complex)
    return U[:, : int(np.sum(s > tol.rank_tol * smax))]


def qr_frame(M) -> np.ndarray:
    """Orthonormal frame of a matrix with full column rank (thin QR)."""
    Q, _ = np.linalg.qr(np.asarray(M, dtype=complex))
    return Q


def orth_complement(F, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal frame of the orthogonal complement of ``span(F)``."""
    F = as_cmatrix(F)
    dim = F.shape[0]
    if F.shape[1] == 0:
        return np.eye(dim, dtype=complex)
    U, s, _ = sla.svd(F, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol.rank_tol * smax)) if smax > 0 else 0
    return U[:, rank:]


def principal_sines(F1, F2) -> np.ndarray:
    """Sines of the principal angles from ``span(F1)`` to ``span(F2)``.

    Both frames must be orthonormal. The values are the singular values of
    the component of ``F1`` orthogonal to ``F2``, in ascending order, one per
    column of ``F1``.
    """
    F1 = np.asarray(F1, dtype=complex)
    F2 = np.asarray(F2, dtype=complex)
    if F1.shape[1] == 0:
        return np.zeros(0)
    resid = F1 - F2 @ (F2.conj().T @ F1)
    s = sla.svd(resid, compute_uv=False)
    out = np.zeros(F1.shape[1])
    out[: len(s)] = s
    return np.sort(out)


def subspace_intersection(F1, F2, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal frame of the numerical intersection of two spans.

    Directions of ``span(F1)`` whose principal angle to ``span(F2)`` has
    sine at most ``rank_tol`` are kept.
    """
    F1 = as_cmatrix(F1, "F1")
    F2 = as_cmatrix(F2, "F2")
    if F1.shape[0] != F2.shape[0]:
        raise ContractViolation("frames must have the same number of rows")
    if F1.shape[1] == 0 or F2.shape[1] == 0:
        return np.zeros((F1.shape[0], 0), dtype=complex)
    resid = F1 - F2 @ (F2.conj().T @ F1)
    _, s, Vh = sla.svd(resid, full_matrices=True)
    sv = np.zeros(F1.shape[1])
    sv[: len(s)] = s
    keep = sv <= tol.rank_tol
    return qr_frame(F1 @ Vh.conj().T[:, keep]) if keep.any() else np.zeros((F1.shape[0], 0), dtype=complex)


def same_span(F1, F2, tol: Tolerances = DEFAULT_TOL) -> bool:
    F1 = np.asarray(F1, dtype=complex)
    F2 = np.asarray(F2, dtype=complex)
    if F1.shape[1] != F2.shape[1]:
        return False
    if F1.shape[1] == 0:
        return True
    return bool(principal_sines(F1, F2).max() <= tol.rank_tol)


def restrict(A, F) -> np.ndarray:
    """Compression ``F* A F`` of a Hermitian matrix to ``span(F)``, symmetrized."""
    B = F.conj().T @ A @ F
    return 0.5 * (B + B.conj().T)


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    Q, R = np.linalg.qr(Z)
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph


def random_hermitian(rng: np.random.Generator, d: int, scale=1.0) -> np.ndarray:
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return scale * (Z + Z.conj().T) / 2


def random_complex(rng: np.random.Generator, shape, scale=1.0) -> np.ndarray:
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
