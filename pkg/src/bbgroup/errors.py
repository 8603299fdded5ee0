"""Exception types shared across the package."""


class BBGroupError(Exception):
    """Base class for all errors raised by bbgroup."""


class FieldError(BBGroupError, ValueError):
    """Malformed or invalid finite field data."""


class ReducibleModulusError(FieldError):
    """The defining polynomial is reducible over the prime field."""


class StringLengthError(BBGroupError, ValueError):
    """A string was handed to a box whose string length differs."""


class NoExponentError(BBGroupError):
    """An operation needed a global exponent but the box has none."""


class OrderError(BBGroupError, ValueError):
    """Exact order computation failed (wrong or incompletely factored exponent)."""


class IncompleteFactorizationError(OrderError):
    """Trial division plus supplied primes did not fully factor an integer."""


class NotInvolutionError(BBGroupError, ValueError):
    """An element expected to be an involution is not one."""


class BudgetExhaustedError(BBGroupError, RuntimeError):
    """A randomized search ran out of its draw budget."""
