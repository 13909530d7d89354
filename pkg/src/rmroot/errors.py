"""Exception hierarchy for the root-number calculator."""

from __future__ import annotations


class RootNumberError(Exception):
    """Base class for all domain errors raised by this package."""


class ZeroArgument(RootNumberError):
    """A multiplicative character was evaluated at zero."""


class EvenCharacteristic(RootNumberError):
    """A sign-valued operation was requested in residue characteristic 2."""


class DivisibilityViolation(RootNumberError):
    """A divisibility precondition on the tame data fails."""


class OddConductor(RootNumberError):
    """A per-embedding conductor exponent is not a positive even integer."""


class UnsupportedCase(RootNumberError):
    """The requested case lies outside the supported hypotheses."""


class TrivialCharacter(RootNumberError):
    """A nontrivial multiplicative character is required."""


class NotTrivialOnSubfield(RootNumberError):
    """The character must restrict trivially to the base subfield."""


class NonSignValue(RootNumberError):
    """A value expected to equal +1 or -1 is something else."""


class DeskScaleExceeded(RootNumberError):
    """The requested size is beyond the enforced desk-scale bounds."""


class ValidationFailed(RootNumberError):
    """A formula entry point was called on data that fails validation.

    Carries the offending report so callers can surface the diagnostics.
    """

    def __init__(self, report, message: str = "local data failed validation"):
        super().__init__(message)
        self.report = report
