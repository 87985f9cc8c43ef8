"""Exception types shared across the package."""


class NumericalError(Exception):
    """Base class for numerical failures (as opposed to usage errors)."""


class SingularMatrixError(NumericalError):
    """A matrix required to be (numerically) nonsingular is not."""


class ConvergenceError(NumericalError):
    """An iterative procedure exhausted its budget or diverged.

    May carry a ``report`` attribute with the optimizer state at failure.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotNearlyOrthogonalError(NumericalError):
    """Certification for the series projection failed (spectral bound >= 1)."""
