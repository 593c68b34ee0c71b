"""Maslov-type indices, spectral flow and Morse indices for linear Hamiltonian systems."""

from .errors import (
    ContractViolation,
    ConvergenceError,
    DegeneratePathError,
    InconsistencyError,
    IntegrationFailure,
    MaslovFlowError,
    MethodDisagreement,
    NonRegularCrossingError,
    NumericalFailure,
    PreconditionError,
    SingularCoefficientError,
    ToleranceError,
)
from .hamiltonian import (
    CoefficientPath,
    MatrixPath,
    SymplecticPath,
    diag_frame_path,
    frame_change_coeffs,
    frame_change_path,
    fundamental_solution,
    rotation_path,
    shear_path,
)
from .index_form import GalerkinSpace, assemble, kernel_lift, morse_index, spectral_flow_s
from .maslov import iW, nullity
from .numeric import DEFAULT_TOL, MorseCounts, Tolerances, morse_counts
from .spectral_flow import HermitianFamily, relative_morse_index, spectral_flow
from .symplectic import BoundaryCondition, boundary_derive, dirichlet, free, periodic, pullback

__version__ = "0.1.0"
