"""Exception types shared by every toolkit module."""


class BohrError(Exception):
    """Base class for toolkit errors."""


class DomainError(BohrError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class UnsupportedOperationError(BohrError, NotImplementedError):
    """Raised when an operation is deliberately not offered for an input."""


class EvaluationError(BohrError, ArithmeticError):
    """Raised when a function vanishes where a grid sample must divide by it."""


class BracketError(BohrError, ValueError):
    """Raised when bisection endpoints do not bracket a sign change."""


class UsageError(BohrError):
    """Raised for command-line misuse."""
