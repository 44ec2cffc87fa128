"""
UpperHalfPoint value object.
"""

from typing import Any, Dict


class UpperHalfPoint:
    """A point z = x + iy with y > 0."""

    def __init__(self, x: float, y: float) -> None:
        self._x = float(x)
        self._y = float(y)
        self.validate()

    @classmethod
    def from_complex(cls, z: complex) -> "UpperHalfPoint":
        """Build from a Python complex."""
        z = complex(z)
        return cls(z.real, z.imag)

    @classmethod
    def parse(cls, text: str) -> "UpperHalfPoint":
        """
        Parse "x+yi", "x,y" or a Python complex literal such as "0.3+1.2j".

        Raises:
            ValueError: If the text is not a point of the upper half plane
        """
        cleaned = text.strip().replace(" ", "")
        if "," in cleaned:
            x, y = cleaned.split(",", 1)
            return cls(float(x), float(y))
        return cls.from_complex(complex(cleaned.replace("i", "j")))

    @property
    def x(self) -> float:
        """Real part."""
        return self._x

    @property
    def y(self) -> float:
        """Imaginary part."""
        return self._y

    @property
    def z(self) -> complex:
        """The point as a complex number."""
        return complex(self._x, self._y)

    def validate(self) -> None:
        """
        Validates the point.

        Raises:
            ValueError: If y is not positive or a coordinate is not finite
        """
        if not (self._y > 0):
            raise ValueError(f"Point must lie in the upper half plane, got y={self._y}")
        if self._x != self._x or self._x in (float("inf"), float("-inf")) or self._y == float("inf"):
            raise ValueError(f"Point coordinates must be finite, got ({self._x}, {self._y})")

    def to_dict(self) -> Dict[str, Any]:
        """Serialization for reports."""
        return {'x': self._x, 'y': self._y}

    def __complex__(self) -> complex:
        return self.z

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, UpperHalfPoint):
            return False
        return (self._x, self._y) == (other._x, other._y)

    def __hash__(self) -> int:
        return hash((self._x, self._y))

    def __repr__(self) -> str:
        return f"UpperHalfPoint(x={self._x!r}, y={self._y!r})"
