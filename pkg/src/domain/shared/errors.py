"""
Domain exceptions for eisenlab.

Every numerical failure that a caller can act on is raised as one of these,
carrying structured context next to the human-readable message.
"""

from typing import Any, Optional


class DomainError(ValueError):
    """
    Raised when a mathematical precondition is violated.

    Examples are an odd character where an even one is required, a cusp
    that is not singular for the character, or M not dividing N.
    """

    def __init__(self, message: str, operation: Optional[str] = None, **details: Any) -> None:
        """
        Initialize the domain error.

        Args:
            message: Human-readable error message
            operation: Name of the operation that rejected its input
            details: Offending parameters, rendered in __str__
        """
        super().__init__(message)
        self.message = message
        self.operation = operation
        self.details = details

    def to_dict(self) -> dict:
        """Machine-readable form used by the CLI error object."""
        return {
            'type': type(self).__name__,
            'error': self.message,
            'operation': self.operation,
            'details': {k: repr(v) for k, v in sorted(self.details.items())},
        }

    def __str__(self) -> str:
        parts = [self.message]
        if self.operation:
            parts.append(f"operation: {self.operation}")
        for key in sorted(self.details):
            parts.append(f"{key}: {self.details[key]!r}")
        return " | ".join(parts)


class PoleError(DomainError):
    """Raised at a pole of a Gamma, zeta, L or completed L factor."""

    def __init__(self, message: str, factor: str, s: Any = None, **details: Any) -> None:
        super().__init__(message, factor=factor, s=s, **details)
        self.factor = factor
        self.s = s


class DegeneratePointError(DomainError):
    """Raised when a ratio probe meets a denominator too small to trust."""

    def __init__(self, message: str, point: Any = None, **details: Any) -> None:
        super().__init__(message, point=point, **details)
        self.point = point


class AccuracyError(ArithmeticError):
    """
    Raised when a numerical procedure cannot certify its tolerance.

    Grid refinement of a quadrature that keeps moving by more than the
    requested tolerance is the typical source.
    """

    def __init__(self, message: str, estimate: float, tolerance: float, operation: Optional[str] = None) -> None:
        super().__init__(message)
        self.message = message
        self.estimate = estimate
        self.tolerance = tolerance
        self.operation = operation

    def to_dict(self) -> dict:
        """Machine-readable form used by the CLI error object."""
        return {
            'type': type(self).__name__,
            'error': self.message,
            'operation': self.operation,
            'details': {'estimate': repr(self.estimate), 'tolerance': repr(self.tolerance)},
        }

    def __str__(self) -> str:
        return f"{self.message} | estimate: {self.estimate:.3e} | tolerance: {self.tolerance:.3e}"
