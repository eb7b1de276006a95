"""Exception hierarchy for the logzeta package."""

from __future__ import annotations


class LogZetaError(Exception):
    """Base class for all errors raised by logzeta."""
    pass


class DomainError(LogZetaError, ValueError):
    """Raised when an input lies outside an operation's domain."""
    pass


class CapacityError(DomainError):
    """Raised when a von Mangoldt table size is zero or above the memory ceiling."""
    pass


class OutOfRangeError(DomainError):
    """Raised when a cutoff exceeds the table it is summed over."""
    pass


class PoleError(DomainError):
    """Raised when a function is evaluated at one of its poles."""
    pass


class UnsupportedOrderError(DomainError):
    """Raised when a derivative order above the supported maximum is requested."""
    pass


class NumericalError(LogZetaError, ArithmeticError):
    """Raised when a value cannot be produced to the requested accuracy."""
    pass


class NearZeroError(NumericalError):
    """Raised when a logarithmic derivative is requested where |zeta| is too small."""
    pass


class NonConvergenceError(NumericalError):
    """Raised when a Cauchy or quadrature refinement fails to settle."""
    pass
