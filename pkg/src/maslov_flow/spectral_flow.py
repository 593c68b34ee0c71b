"""Spectral flow of finite-dimensional Hermitian families.

The spectral flow of ``s -> A(s)``, ``0 <= s <= 1``, counts eigenvalues
crossing zero upward minus those crossing downward, with an eigenvalue that
sits at zero counted on the non-negative side. With a shift ``delta`` below
every nonzero endpoint eigenvalue this is::

    sf = m-(A(0) + delta) - m-(A(1) + delta)

The relative Morse index is ``I(A, A + B) = -sf{A + s B}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import ContractViolation, ToleranceError
from .numeric import (
    DEFAULT_TOL,
    MorseCounts,
    Tolerances,
    counts_from_eigenvalues,
    hermitian_eigvals,
    kernel_basis,
    morse_counts,
    norm2,
    restrict,
)


@dataclass(eq=False)
class HermitianFamily:
    """A path ``s -> A(s)`` on ``[0, 1]`` of Hermitian matrices.

    Either a list of samples (``s_grid`` with ``matrices``) or a callable
    ``generator(s)``; with a generator, extra samples can be requested during
    refinement.
    """

    s_grid: np.ndarray
    matrices: list
    generator: Callable | None = None

    @classmethod
    def from_callable(cls, f: Callable, samples: int = 2):
        s = np.linspace(0.0, 1.0, max(samples, 2))
        return cls(s, [np.asarray(f(x), dtype=complex) for x in s], f)

    @classmethod
    def from_samples(cls, s_values, matrices):
        s = np.asarray(s_values, dtype=float)
        if len(s) < 2 or len(matrices) != len(s) or np.any(np.diff(s) <= 0):
            raise ContractViolation("need >= 2 samples with strictly increasing parameters")
        return cls(s, [np.asarray(m, dtype=complex) for m in matrices])

    @classmethod
    def segment(cls, A, B):
        """Linear segment ``s -> (1 - s) A + s B``."""
        A = np.asarray(A, dtype=complex)
        B = np.asarray(B, dtype=complex)
        return cls.from_callable(lambda s: (1 - s) * A + s * B)

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def start(self):
        return self.matrices[0]

    def end(self):
        return self.matrices[-1]


@dataclass
class SpectralFlowResult:
    sf: int
    delta: float
    counts_start: MorseCounts
    counts_end: MorseCounts
    trace: list = field(default_factory=list)
    certified: bool = True
    eigen_trace: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "sf": self.sf,
            "delta": self.delta,
            "counts_start": list(self.counts_start),
            "counts_end": list(self.counts_end),
            "trace": self.trace,
            "certified": self.certified,
        }


def choose_delta(w0, w1, scale: float, zero_tol: float) -> float:
    """Half the smallest nonzero endpoint eigenvalue magnitude, capped at ``1e-3 (1 + scale)``.

    Raises
    ------
    ToleranceError
        If no shift separates the zero class from the nonzero eigenvalues.
    """
    w = np.abs(np.r_[w0, w1])
    nz = w[w > zero_tol]
    cap = 1e-3 * (1 + scale)
    delta = min(cap, 0.5 * nz.min()) if nz.size else cap
    if delta / 2 <= zero_tol:
        raise ToleranceError(
            f"no admissible shift: smallest nonzero endpoint eigenvalue {nz.min():.3e} "
            f"is too close to the zero tolerance {zero_tol:.1e}"
        )
    return float(delta)


def _shifted_negatives(w, delta) -> int:
    return int(np.sum(np.asarray(w) + delta < 0))


def spectral_flow(
    fam: HermitianFamily,
    tol: Tolerances = DEFAULT_TOL,
    delta: float | None = None,
    zero_tol: float | None = None,
    refine: bool = True,
    max_samples: int = 4097,
    keep_eigenvalues: bool = False,
    endpoint_eigs=None,
    min_samples: int = 17,
) -> SpectralFlowResult:
    """Spectral flow of a Hermitian family with a per-sample negative-count trace.

    The integer comes from the endpoints alone. The trace records
    ``m-(A(s_k) + delta)`` at every sample; with a generator, intervals with
    ``||A(s_{k+1}) - A(s_k)|| >= delta / 2`` are bisected, starting from at
    least ``min_samples`` equally spaced samples, so that by Weyl's
    inequality no eigenvalue moves past the shifted origin between samples
    (up to the sampling of the generator).
    ``certified`` reports whether that bound holds on the final grid.
    ``endpoint_eigs`` may supply already computed spectra of the two ends.
    """
    zt = tol.eig_zero_tol if zero_tol is None else zero_tol
    A0, A1 = fam.start(), fam.end()
    if endpoint_eigs is None:
        w0, w1 = hermitian_eigvals(A0, tol), hermitian_eigvals(A1, tol)
    else:
        w0, w1 = (np.sort(np.asarray(w, dtype=float)) for w in endpoint_eigs)
    if delta is None:
        scale = max(np.abs(w0).max(initial=0.0), np.abs(w1).max(initial=0.0))
        delta = choose_delta(w0, w1, scale, zt)
    sf = _shifted_negatives(w0, delta) - _shifted_negatives(w1, delta)
    sf_half = _shifted_negatives(w0, delta / 2) - _shifted_negatives(w1, delta / 2)
    if sf != sf_half:
        raise ToleranceError(f"spectral flow changes when delta is halved ({sf} vs {sf_half})")

    s_list = list(fam.s_grid)
    mats = list(fam.matrices)
    if refine and fam.generator is not None:
        if len(s_list) < min_samples:
            s_list = list(np.linspace(fam.s_grid[0], fam.s_grid[-1], min_samples))
            mats = [A0] + [np.asarray(fam.generator(x), dtype=complex) for x in s_list[1:-1]] + [A1]
        k = 0
        while k < len(s_list) - 1 and len(s_list) < max_samples:
            if norm2(mats[k + 1] - mats[k]) >= delta / 2:
                sm = 0.5 * (s_list[k] + s_list[k + 1])
                s_list.insert(k + 1, sm)
                mats.insert(k + 1, np.asarray(fam.generator(sm), dtype=complex))
            else:
                k += 1
    certified = all(norm2(b - a) < delta / 2 for a, b in zip(mats, mats[1:]))
    trace = []
    eig_trace = []
    for k, (s, M) in enumerate(zip(s_list, mats)):
        if k == 0:
            w = w0
        elif k == len(mats) - 1:
            w = w1
        else:
            w = hermitian_eigvals(M, tol)
        trace.append({"s": float(s), "m_minus": _shifted_negatives(w, delta)})
        if keep_eigenvalues:
            eig_trace.append((float(s), w))
    return SpectralFlowResult(
        sf, float(delta), counts_from_eigenvalues(w0, zt), counts_from_eigenvalues(w1, zt),
        trace, certified, eig_trace,
    )


def relative_morse_index(A, B, tol: Tolerances = DEFAULT_TOL) -> int:
    """``I(A, A + B) = -sf{A + s B}``."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    return -spectral_flow(HermitianFamily.segment(A, A + B), tol, refine=False).sf


def morse_formula_check(A, P, tol: Tolerances = DEFAULT_TOL):
    """Both sides of Morse's formula for a compression ``P A P``.

    ``lhs = I(P A P, A)``. With ``N = {x : P A x = 0}`` (the form-orthogonal
    complement of ``im P``), ``rhs = m-(A|_N) + dim ker A|_N - dim ker A``.

    Returns
    -------
    (int, int)
    """
    A = np.asarray(A, dtype=complex)
    P = np.asarray(P, dtype=complex)
    d = A.shape[0]
    if P.shape != (d, d) or norm2(P @ P - P) > tol.residual_tol or norm2(P - P.conj().T) > tol.residual_tol:
        raise ContractViolation("P must be an orthogonal projection of matching size")
    PAP = P @ A @ P
    lhs = relative_morse_index(PAP, A - PAP, tol)
    N = kernel_basis(P @ A, tol)
    c = morse_counts(restrict(A, N), tol) if N.shape[1] else MorseCounts(0, 0, 0)
    rhs = c.m_minus + c.m_zero - morse_counts(A, tol).m_zero
    return lhs, rhs


def block_family(A_of_s: Callable) -> Callable:
    """``s -> [[0, A(s)*], [A(s), 0]]``."""

    def B(s):
        A = np.asarray(A_of_s(s), dtype=complex)
        r, c = A.shape
        return np.block([[np.zeros((c, c)), A.conj().T], [A, np.zeros((r, r))]])

    return B


def _kernel_dim_checked(A, tol: Tolerances) -> int:
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return A.shape[1]
    cut = tol.rank_tol * s[0]
    if np.any((s > cut) & (s <= 100 * cut)):
        raise ToleranceError("singular values too close to the kernel threshold")
    return kernel_basis(A, tol).shape[1]


def block_flow_check(A_of_s: Callable, tol: Tolerances = DEFAULT_TOL):
    """``(sf of the anti-diagonal block family, dim ker A(1) - dim ker A(0))``."""
    sf = spectral_flow(HermitianFamily.from_callable(block_family(A_of_s)), tol, refine=False).sf
    A0 = np.asarray(A_of_s(0.0), dtype=complex)
    A1 = np.asarray(A_of_s(1.0), dtype=complex)
    return sf, _kernel_dim_checked(A1, tol) - _kernel_dim_checked(A0, tol)


def monotone_flow(f: Callable, tol: Tolerances = DEFAULT_TOL, samples: int = 257) -> int:
    """Spectral flow of a nondecreasing family as a sum of kernel arrivals.

    For ``A(s) <= A(t)`` whenever ``s <= t`` every ordered eigenvalue is
    nondecreasing. The flow is ``sum over s in (0, 1]`` of
    ``dim ker A(s) - lim_{t -> s-} dim ker A(t)``; arrival times are roots
    of the ordered eigenvalues.
    """
    zt = tol.eig_zero_tol
    s_grid = np.linspace(0.0, 1.0, samples)
    W = np.array([hermitian_eigvals(f(s), tol) for s in s_grid])
    arrivals = set()
    for j in range(W.shape[1]):
        lam = W[:, j]
        for k in range(len(s_grid) - 1):
            if lam[k] < -zt and lam[k + 1] >= -zt:
                if abs(lam[k + 1]) <= zt and (k + 1 == len(s_grid) - 1):
                    arrivals.add(1.0)
                    continue
                g = lambda s, j=j: hermitian_eigvals(f(s), tol)[j]
                if g(s_grid[k + 1]) <= 0:
                    arrivals.add(float(s_grid[k + 1]))
                else:
                    arrivals.add(float(brentq(g, s_grid[k], s_grid[k + 1], xtol=1e-14)))
    merged = []
    for s in sorted(arrivals):
        if not merged or s - merged[-1] > 1e-9:
            merged.append(s)
    total = 0
    for s in merged:
        eta = 1e-6
        here = morse_counts(f(s), tol, zero_tol=max(zt, 1e-9)).m_zero
        before = morse_counts(f(max(s - eta, 0.0)), tol, zero_tol=max(zt, 1e-9)).m_zero
        total += here - before
    return total
