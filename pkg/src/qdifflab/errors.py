"""Exception and warning types shared across the package."""


class QdiffError(Exception):
    """Base class for package-specific failures."""


class DomainError(QdiffError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BracketingError(QdiffError):
    """A root finder was handed (or could not grow) a sign-changing bracket."""


class ConvergenceError(QdiffError):
    """An iteration budget ran out before reaching the requested tolerance."""


class IntegrationError(QdiffError):
    """An ODE integration failed (step underflow, stiffness, singularity)."""


class HorizonError(QdiffError):
    """An extremum sat on the edge of the integrated window; extend the horizon."""


class ExtractionError(QdiffError):
    """A trajectory did not contain the feature an extractor was asked for."""


class StabilityError(QdiffError):
    """An explicit PDE step size violates the scheme's stability bound."""


class ResolutionError(QdiffError):
    """A sampled field is too coarse for the requested derivative estimate."""


class SemiclassicalDomainError(QdiffError, ValueError):
    """The semiclassical expansion does not apply for these parameters."""


class LogDomainError(QdiffError, ValueError):
    """Logarithmic long-time law evaluated below its domain threshold.

    Carries the threshold time so callers can report or clip against it.
    """

    def __init__(self, message: str, threshold: float):
        super().__init__(message)
        self.threshold = threshold


class ValidityWarning(UserWarning):
    """A result is returned but its small-parameter premise is strained."""
