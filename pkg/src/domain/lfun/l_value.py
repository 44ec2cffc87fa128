"""LValue: an L-type function value with its s-derivative and error estimate."""

import cmath
from typing import Any, Dict


class LValue:
    """Value object holding f(s), f'(s) and an absolute error estimate."""

    def __init__(self, s: complex, value: complex, derivative: complex, est_abs_error: float) -> None:
        self._s = complex(s)
        self._value = complex(value)
        self._derivative = complex(derivative)
        self._est_abs_error = float(est_abs_error)
        self.validate()

    @property
    def s(self) -> complex:
        """Evaluation point."""
        return self._s

    @property
    def value(self) -> complex:
        """f(s)."""
        return self._value

    @property
    def derivative(self) -> complex:
        """f'(s)."""
        return self._derivative

    @property
    def est_abs_error(self) -> float:
        """Estimated absolute error of value."""
        return self._est_abs_error

    @property
    def log_derivative(self) -> complex:
        """f'(s) / f(s)."""
        return self._derivative / self._value

    def validate(self) -> None:
        """Validates finiteness of all fields."""
        if self._est_abs_error < 0 or not cmath.isfinite(complex(self._est_abs_error)):
            raise ValueError(f"Error estimate must be finite and non-negative, got {self._est_abs_error}")
        if not (cmath.isfinite(self._value) and cmath.isfinite(self._derivative)):
            raise ValueError(f"Non-finite L-value at s={self._s}")

    def scaled(self, factor: complex, factor_derivative: complex) -> "LValue":
        """Product with a smooth factor g(s), by the product rule."""
        return LValue(
            self._s,
            self._value * factor,
            self._derivative * factor + self._value * factor_derivative,
            self._est_abs_error * abs(factor),
        )

    def to_dict(self) -> Dict[str, Any]:
        """Serialization for reports."""
        return {
            's': [self._s.real, self._s.imag],
            'value': [self._value.real, self._value.imag],
            'derivative': [self._derivative.real, self._derivative.imag],
            'est_abs_error': self._est_abs_error,
        }

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LValue):
            return False
        return (self._s, self._value, self._derivative) == (other._s, other._value, other._derivative)

    def __hash__(self) -> int:
        return hash((self._s, self._value, self._derivative))

    def __repr__(self) -> str:
        return f"LValue(s={self._s!r}, value={self._value!r}, derivative={self._derivative!r})"
