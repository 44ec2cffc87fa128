"""
Cusp and ScalingMatrix value objects for Gamma0(N).

A cusp class is stored through its canonical representative u/f with
f | N, gcd(u, f) = 1 and u the least positive integer in its residue
class mod (f, N/f) that is coprime to f.
"""

from math import gcd, sqrt
from typing import Any, Dict

import numpy as np

from .gl2z import GL2Z


class Cusp:
    """Value object for a canonical cusp representative u/f at level N."""

    def __init__(self, u: int, f: int, level: int) -> None:
        self._u = int(u)
        self._f = int(f)
        self._level = int(level)
        self.validate()

    @property
    def u(self) -> int:
        """Numerator of the representative."""
        return self._u

    @property
    def f(self) -> int:
        """Denominator, a divisor of the level."""
        return self._f

    @property
    def level(self) -> int:
        """The level N."""
        return self._level

    @property
    def g(self) -> int:
        """gcd(f, N/f), the modulus of the u-class."""
        return gcd(self._f, self._level // self._f)

    @property
    def complement(self) -> int:
        """N/f."""
        return self._level // self._f

    @property
    def width(self) -> int:
        """Absolute width N / (N, f^2)."""
        return self._level // gcd(self._level, self._f * self._f)

    @property
    def is_infinity(self) -> bool:
        """True for the class of oo (f = N)."""
        return self._f == self._level

    @property
    def is_atkin_lehner(self) -> bool:
        """True when gcd(f, N/f) = 1 and u = 1."""
        return self.g == 1 and self._u == 1

    def validate(self) -> None:
        """
        Validates the representative invariants.

        Raises:
            ValueError: If f does not divide N, u and f are not coprime,
                or u is not the canonical member of its class
        """
        if self._level < 1 or self._f < 1 or self._u < 1:
            raise ValueError(f"Cusp {self._u}/{self._f} at level {self._level} needs positive entries")
        if self._level % self._f != 0:
            raise ValueError(f"Cusp denominator {self._f} must divide the level {self._level}")
        if gcd(self._u, self._f) != 1:
            raise ValueError(f"Cusp {self._u}/{self._f} is not in lowest terms")
        if canonical_numerator(self._u % self.g, self._f, self.g) != self._u:
            raise ValueError(f"Cusp {self._u}/{self._f} is not the canonical member of its class")

    def to_dict(self) -> Dict[str, Any]:
        """Serialization used by the cusp table."""
        return {'u': self._u, 'f': self._f, 'N': self._level, 'width': self.width}

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Cusp):
            return False
        return (self._u, self._f, self._level) == (other._u, other._f, other._level)

    def __hash__(self) -> int:
        return hash((self._u, self._f, self._level))

    def __lt__(self, other: "Cusp") -> bool:
        return (self._f, self._u) < (other._f, other._u)

    def __str__(self) -> str:
        return f"{self._u}/{self._f}"

    def __repr__(self) -> str:
        return f"Cusp(u={self._u}, f={self._f}, level={self._level})"


def canonical_numerator(residue: int, f: int, g: int) -> int:
    """Least u >= 1 with u = residue mod g and gcd(u, f) = 1."""
    u = residue % g
    if u == 0:
        u = g
    while gcd(u, f) != 1:
        u += g
    return u


class ScalingMatrix:
    """
    sigma = gamma * diag(sqrt(W), 1/sqrt(W)) for a cusp of width W.

    sigma(oo) is the cusp and sigma^{-1} conjugates its stabilizer to the
    translations by integers.
    """

    def __init__(self, gamma: GL2Z, width: int) -> None:
        if width < 1:
            raise ValueError(f"Scaling width must be positive, got {width}")
        self._gamma = gamma
        self._width = width

    @property
    def gamma(self) -> GL2Z:
        """The SL2(Z) part gamma_a."""
        return self._gamma

    @property
    def width(self) -> int:
        """The width W."""
        return self._width

    def apply(self, z: Any) -> Any:
        """sigma z = gamma(W z), vectorized."""
        return self._gamma.act(self._width * np.asarray(z))

    def inverse_height(self, w: Any) -> Any:
        """Im(sigma^{-1} w)."""
        return np.imag(self._gamma.inverse().act(np.asarray(w))) / self._width

    def real_matrix(self) -> np.ndarray:
        """sigma as a real 2x2 array."""
        a, b, c, d = self._gamma.entries
        root = sqrt(self._width)
        return np.array([[a * root, b / root], [c * root, d / root]])

    def __repr__(self) -> str:
        return f"ScalingMatrix(gamma={self._gamma!r}, width={self._width})"
