"""Exceptions for the deformqm package."""
from __future__ import annotations

from .const import EXIT_NUMERICAL, EXIT_VALIDATION


class DeformQMError(Exception):
    """Base error for deformqm."""

    exit_code: int = EXIT_NUMERICAL

    def __init__(self, message: str = "", field: str | None = None) -> None:
        super().__init__(message or self.__class__.__doc__ or "")
        self.field = field

    def as_dict(self) -> dict[str, str | None]:
        """Return the machine-readable form printed by the CLI."""
        return {
            "error": self.__class__.__name__,
            "field": self.field,
            "message": str(self),
        }


class ValidationError(DeformQMError):
    """Error to indicate the input violates a precondition."""

    exit_code = EXIT_VALIDATION


class NumericalError(DeformQMError):
    """Error to indicate a numerical procedure did not deliver."""

    exit_code = EXIT_NUMERICAL


class InvalidParameters(ValidationError):
    """Error to indicate deformation parameters are out of range."""


class DegenerateRescale(ValidationError):
    """Error to indicate the complex-kappa rescale divides by a non-positive number."""


class NotAdmissible(ValidationError):
    """Error to indicate the parameters admit no minimal length."""


class NoRealRoot(ValidationError):
    """Error to indicate the momentum spread lies below the minimal momentum."""


class FactorizationDomain(ValidationError):
    """Error to indicate the oscillator cannot be factorized."""


class OverflowRisk(ValidationError):
    """Error to indicate q-Fock matrix entries would overflow."""


class UnsupportedDegree(ValidationError):
    """Error to indicate a polynomial degree without a closed form."""


class DomainViolation(ValidationError):
    """Error to indicate a point or parameter outside the allowed domain."""


class InsufficientBoundaryData(ValidationError):
    """Error to indicate too few samples for the boundary test."""


class LevelOutOfRange(ValidationError):
    """Error to indicate the requested level is not a bound state."""


class RangeUnsupported(ValidationError):
    """Error to indicate special-function arguments outside the supported range."""


class IndefiniteKinetic(ValidationError):
    """Error to indicate the kinetic operator is not bounded below on the grid."""


class ConvergenceFailure(NumericalError):
    """Error to indicate the eigensolver failed or left large residuals."""


class NoBoundStates(NumericalError):
    """Error to indicate the well supports no bound state."""


class NotNormalizable(NumericalError):
    """Error to indicate a wavefunction cannot be normalized."""


class VerificationFailed(NumericalError):
    """Error to indicate a closed form and its oracle disagree."""


class ValidityWarning(UserWarning):
    """Warning to indicate a first-order result is outside its validity range."""
