"""
Integer matrices of determinant one and their action on the upper half
plane and on P^1(Q).
"""

from fractions import Fraction
from typing import Any, Tuple, Union

import numpy as np

from ..arith.multiplicative import extended_gcd

# P^1(Q) points are (a, c) pairs meaning a/c; (1, 0) is infinity
ProjectivePair = Tuple[int, int]
CuspPoint = Union[Fraction, int, str]

INFINITY = "oo"


def to_projective(point: CuspPoint) -> ProjectivePair:
    """
    Normalize a point of P^1(Q) to a coprime pair (a, c) with c >= 0.

    Args:
        point: A Fraction, an int, or "oo"/"inf" for infinity

    Returns:
        The normalized pair; infinity is (1, 0)
    """
    if isinstance(point, str):
        if point.lower() in ("oo", "inf", "infinity", "∞"):
            return (1, 0)
        point = Fraction(point)
    frac = Fraction(point)
    return (frac.numerator, frac.denominator)


def normalize_pair(a: int, c: int) -> ProjectivePair:
    """Reduce (a, c) to lowest terms with c >= 0 (and a = 1 when c = 0)."""
    if c == 0:
        return (1, 0)
    g, _, _ = extended_gcd(a, c)
    a, c = a // g, c // g
    if c < 0:
        a, c = -a, -c
    return (a, c)


class GL2Z:
    """Value object for an integer 2x2 matrix (a b; c d) with ad - bc = 1."""

    def __init__(self, a: int, b: int, c: int, d: int) -> None:
        self._a = int(a)
        self._b = int(b)
        self._c = int(c)
        self._d = int(d)
        self.validate()

    @classmethod
    def identity(cls) -> "GL2Z":
        """The identity matrix."""
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, k: int) -> "GL2Z":
        """T^k = (1 k; 0 1)."""
        return cls(1, k, 0, 1)

    @classmethod
    def inversion(cls) -> "GL2Z":
        """S = (0 -1; 1 0)."""
        return cls(0, -1, 1, 0)

    @classmethod
    def from_bottom_row(cls, c: int, d: int) -> "GL2Z":
        """
        Complete a coprime bottom row (c, d) to a matrix of determinant one.

        The top row is the extended-gcd solution with the smallest |b|.
        """
        g, x, y = extended_gcd(d, c)
        if g != 1:
            raise ValueError(f"Bottom row ({c}, {d}) is not coprime")
        # a*d - b*c = 1 with a = x, b = -y
        a, b = x, -y
        if d != 0:
            k = round(-b / d)
            a, b = a + k * c, b + k * d
        return cls(a, b, c, d)

    @classmethod
    def from_left_column(cls, a: int, c: int) -> "GL2Z":
        """
        Complete a coprime first column (a, c) so that gamma(oo) = a/c.

        The top-right entry is the extended-gcd choice with the smallest |b|.
        """
        g, x, y = extended_gcd(a, c)
        if g != 1:
            raise ValueError(f"Column ({a}, {c}) is not coprime")
        # a*d - b*c = 1 with d = x, b = -y
        b, d = -y, x
        if a != 0:
            k = round(-b / a)
            b, d = b + k * a, d + k * c
        return cls(a, b, c, d)

    @property
    def a(self) -> int:
        """Top-left entry."""
        return self._a

    @property
    def b(self) -> int:
        """Top-right entry."""
        return self._b

    @property
    def c(self) -> int:
        """Bottom-left entry."""
        return self._c

    @property
    def d(self) -> int:
        """Bottom-right entry."""
        return self._d

    @property
    def entries(self) -> Tuple[int, int, int, int]:
        """(a, b, c, d)."""
        return (self._a, self._b, self._c, self._d)

    def validate(self) -> None:
        """Validates that the determinant is one."""
        det = self._a * self._d - self._b * self._c
        if det != 1:
            raise ValueError(f"Matrix ({self._a} {self._b}; {self._c} {self._d}) has determinant {det}, expected 1")

    def inverse(self) -> "GL2Z":
        """The inverse matrix."""
        return GL2Z(self._d, -self._b, -self._c, self._a)

    def __matmul__(self, other: "GL2Z") -> "GL2Z":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return GL2Z(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def in_gamma0(self, level: int) -> bool:
        """True when level divides the bottom-left entry."""
        return self._c % level == 0

    def act(self, z: Any) -> Any:
        """Moebius action on a complex number or numpy array."""
        return (self._a * z + self._b) / (self._c * z + self._d)

    def automorphy_denominator(self, z: Any) -> Any:
        """|cz + d|^2, vectorized."""
        return np.abs(self._c * z + self._d) ** 2

    def act_on_pair(self, pair: ProjectivePair) -> ProjectivePair:
        """Action on P^1(Q) in (a, c) coordinates."""
        x, y = pair
        return normalize_pair(self._a * x + self._b * y, self._c * x + self._d * y)

    def act_on_cusp(self, point: CuspPoint) -> ProjectivePair:
        """Action on a Fraction, int or infinity."""
        return self.act_on_pair(to_projective(point))

    def to_list(self) -> list:
        """Nested-list form for JSON reports."""
        return [[self._a, self._b], [self._c, self._d]]

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, GL2Z):
            return False
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"GL2Z({self._a}, {self._b}, {self._c}, {self._d})"
