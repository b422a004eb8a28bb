"""Exception and warning types shared across the package."""


class PhasekitError(ValueError):
    """Base class for all phasekit errors."""


class DimensionError(PhasekitError):
    """Matrix or grid dimensions are inconsistent with the operation."""


class DomainError(PhasekitError):
    """Input is outside the mathematical domain (not SPD, not symplectic, ...)."""


class PreconditionError(PhasekitError):
    """A documented precondition (normalization, positivity, alignment) fails."""


class AccuracyWarning(UserWarning):
    """Grid resolution or extent may be insufficient for the stated tolerance."""
