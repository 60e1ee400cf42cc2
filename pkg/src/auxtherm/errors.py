"""Exception hierarchy shared by every module of the package."""


class AuxthermError(Exception):
    """Base class for all errors raised by auxtherm."""


class DomainError(AuxthermError, ValueError):
    """An argument lies outside the domain of the requested function."""


class SubcriticalError(DomainError):
    """The temperature is at or below a critical threshold.

    Below the threshold the renormalized dispersion law has a negative
    radicand and the model is not defined.  ``points`` collects every
    offending input when a whole grid is rejected at once.
    """

    def __init__(self, message, *, channel=None, k=None, points=()):
        super().__init__(message)
        self.channel = channel
        self.k = k
        self.points = tuple(points)


class BoundaryError(DomainError):
    """A finite-difference stencil would cross a domain boundary."""


class BracketError(AuxthermError, ValueError):
    """The root-finding interval does not bracket a sign change."""


class ConvergenceError(AuxthermError, ArithmeticError):
    """A numerical procedure did not reach its tolerance.

    Attributes
    ----------
    estimate : float
        Best value obtained before giving up.
    error : float
        Error bound attached to ``estimate``.
    """

    def __init__(self, message, estimate=float("nan"), error=float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ConfigError(AuxthermError, ValueError):
    """A run configuration is malformed or inconsistent."""
