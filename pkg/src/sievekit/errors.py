"""Exception hierarchy shared by every sievekit module."""


class SievekitError(Exception):
    """Base class for all errors raised by sievekit."""


class DomainError(SievekitError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class NonConvergenceError(SievekitError, ArithmeticError):
    """Adaptive quadrature exhausted its depth before meeting the tolerance."""


class BracketError(SievekitError, ValueError):
    """The function does not change sign over the requested bracket."""


class ResourceError(SievekitError, MemoryError):
    """The requested computation exceeds the configured memory or size budget."""
