"""Exception hierarchy.

Input problems derive from :class:`ContractViolation`; everything that goes
wrong inside a numerical pipeline derives from :class:`NumericalFailure`.
The CLI maps the two families to different exit codes.
"""

from __future__ import annotations


class MaslovFlowError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolation(MaslovFlowError, ValueError):
    """Malformed or out-of-contract input."""


class PreconditionError(ContractViolation):
    """A checkable mathematical precondition does not hold."""


class NumericalFailure(MaslovFlowError, ArithmeticError):
    """A numerical pipeline could not certify its result."""


class SingularCoefficientError(NumericalFailure):
    def __init__(self, t, sigma_min):
        super().__init__(f"p(t) numerically singular at t={t:.6g} (sigma_min={sigma_min:.3e})")
        self.t = t
        self.sigma_min = sigma_min


class IntegrationFailure(NumericalFailure):
    pass


class DegeneratePathError(NumericalFailure):
    pass


class NonRegularCrossingError(NumericalFailure):
    def __init__(self, record):
        super().__init__(
            f"non-regular crossing at t={record.t_star:.12g} "
            f"(dim {record.dim}, counts {tuple(record.counts)})"
        )
        self.record = record


class InconsistencyError(NumericalFailure):
    pass


class ConvergenceError(NumericalFailure):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class ToleranceError(NumericalFailure):
    pass


class MethodDisagreement(NumericalFailure):
    def __init__(self, message, results=None):
        super().__init__(message)
        self.results = results or {}
