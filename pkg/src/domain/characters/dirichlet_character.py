"""
DirichletCharacter value object.

A character mod N is stored as exponents k_i on the cyclic generators of
(Z/N)^x: chi(g_i) = e(k_i / n_i). Values are exact angles in Q/Z and only
become floating complex numbers at evaluation boundaries.
"""

import cmath
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ..arith.multiplicative import divisors, lcm
from ..shared.errors import DomainError
from .unit_group import unit_group

_EXACT_UNITS = {
    Fraction(0): 1 + 0j,
    Fraction(1, 4): 1j,
    Fraction(1, 2): -1 + 0j,
    Fraction(3, 4): -1j,
}


class Parity(str, Enum):
    """Parity of a character, the sign of chi(-1)."""

    EVEN = "even"
    ODD = "odd"

    def __str__(self) -> str:
        return self.value


def unit_value(angle: Fraction) -> complex:
    """e(angle), exact on the fourth roots of unity."""
    exact = _EXACT_UNITS.get(angle)
    if exact is not None:
        return exact
    return cmath.exp(2j * cmath.pi * float(angle))


class DirichletCharacter:
    """Value object for a Dirichlet character mod N."""

    def __init__(self, modulus: int, exponents: Sequence[int]) -> None:
        self._modulus = int(modulus)
        group = unit_group(self._modulus)
        if len(exponents) != len(group.orders):
            raise ValueError(
                f"Character mod {modulus} needs {len(group.orders)} exponents, got {len(exponents)}"
            )
        self._exponents = tuple(int(k) % n for k, n in zip(exponents, group.orders))
        self._orders = group.orders
        self._conductor: Optional[int] = None
        self._table: Optional[np.ndarray] = None

    @classmethod
    def trivial(cls, modulus: int = 1) -> "DirichletCharacter":
        """The principal character chi_{0,N}."""
        return cls(modulus, [0] * len(unit_group(modulus).orders))

    @classmethod
    def from_angles(cls, modulus: int, angle_of: Callable[[int], Fraction]) -> "DirichletCharacter":
        """
        Build a character mod `modulus` from its angles on units.

        Args:
            modulus: Target modulus
            angle_of: Function returning chi(a) as an element of Q/Z for units a

        Returns:
            The character whose generator exponents reproduce angle_of

        Raises:
            DomainError: If angle_of is not a character of (Z/modulus)^x
        """
        group = unit_group(modulus)
        exponents = []
        for generator, order in zip(group.global_generators, group.orders):
            scaled = angle_of(generator) * order
            if scaled.denominator != 1:
                raise DomainError(
                    f"Angle {angle_of(generator)} is not of order dividing {order}",
                    operation="from_angles", modulus=modulus,
                )
            exponents.append(int(scaled))
        return cls(modulus, exponents)

    @property
    def modulus(self) -> int:
        """The modulus N."""
        return self._modulus

    @property
    def exponents(self) -> Tuple[int, ...]:
        """Exponents on the generators of (Z/N)^x."""
        return self._exponents

    @property
    def conductor(self) -> int:
        """Minimal inducing modulus q."""
        if self._conductor is None:
            self._conductor = self._compute_conductor()
        return self._conductor

    @property
    def parity(self) -> Parity:
        """EVEN when chi(-1) = 1."""
        angle = self.angle(-1)
        return Parity.EVEN if angle == 0 else Parity.ODD

    @property
    def is_even(self) -> bool:
        """True for even characters."""
        return self.parity is Parity.EVEN

    @property
    def is_trivial(self) -> bool:
        """True for the principal character."""
        return all(k == 0 for k in self._exponents)

    @property
    def is_primitive(self) -> bool:
        """True when the conductor equals the modulus."""
        return self.conductor == self._modulus

    @property
    def order(self) -> int:
        """Order of chi in the character group."""
        result = 1
        for k, n in zip(self._exponents, self._orders):
            result = lcm(result, n // gcd(k, n))
        return result

    def angle(self, a: int) -> Optional[Fraction]:
        """chi(a) as an element of Q/Z, or None when gcd(a, N) > 1."""
        exps = unit_group(self._modulus).dlog(a)
        if exps is None:
            return None
        total = Fraction(0)
        for k, j, n in zip(self._exponents, exps, self._orders):
            total += Fraction(k * j, n)
        return total - (total.numerator // total.denominator)

    def __call__(self, a: int) -> complex:
        """chi(a) as a complex number (0 off the units)."""
        angle = self.angle(a)
        if angle is None:
            return 0j
        return unit_value(angle)

    def eval(self, a: int) -> complex:
        """Alias of calling the character."""
        return self(a)

    def table(self) -> np.ndarray:
        """Read-only array of chi(a) for a = 0..N-1."""
        if self._table is None:
            values = np.array([self(a) for a in range(self._modulus)], dtype=complex)
            values.setflags(write=False)
            self._table = values
        return self._table

    def values_at(self, n: np.ndarray) -> np.ndarray:
        """Vectorized chi over an integer array."""
        return self.table()[np.mod(n, self._modulus)]

    def conj(self) -> "DirichletCharacter":
        """The complex-conjugate character."""
        return DirichletCharacter(self._modulus, [-k for k in self._exponents])

    def product(self, other: "DirichletCharacter") -> "DirichletCharacter":
        """Pointwise product, formed mod lcm of the moduli."""
        modulus = lcm(self._modulus, other._modulus)

        def angle_of(a: int) -> Fraction:
            return (self.angle(a) or Fraction(0)) + (other.angle(a) or Fraction(0))

        return DirichletCharacter.from_angles(modulus, angle_of)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        return self.product(other)

    def induce(self, modulus: int) -> "DirichletCharacter":
        """The character mod a multiple of N induced by chi."""
        if modulus % self.conductor != 0:
            raise DomainError(
                f"Cannot induce a character of conductor {self.conductor} to modulus {modulus}",
                operation="induce",
            )
        source = self.primitive_inducer()
        return DirichletCharacter.from_angles(modulus, lambda a: source.angle(a) or Fraction(0))

    def primitive_inducer(self) -> "DirichletCharacter":
        """The primitive character psi mod q inducing chi."""
        q = self.conductor
        if q == self._modulus:
            return self
        return DirichletCharacter.from_angles(q, self._angle_on_lift(q))

    def agrees_with(self, other: "DirichletCharacter") -> bool:
        """True when both characters have the same primitive inducer."""
        return self.primitive_inducer() == other.primitive_inducer()

    def _angle_on_lift(self, q: int) -> Callable[[int], Fraction]:
        # a unit mod q lifts to a unit mod N in the same class mod q
        def angle_of(a: int) -> Fraction:
            b = a % q
            while gcd(b, self._modulus) != 1:
                b += q
            angle = self.angle(b)
            return angle if angle is not None else Fraction(0)

        return angle_of

    def _is_trivial_on_kernel(self, d: int) -> bool:
        # chi(a) = 1 for every unit a = 1 mod d
        for a in range(1 % self._modulus, self._modulus + 1, d):
            angle = self.angle(a)
            if angle is not None and angle != 0:
                return False
        return True

    def _compute_conductor(self) -> int:
        if self.is_trivial:
            return 1
        for d in divisors(self._modulus):
            if self._is_trivial_on_kernel(d):
                return d
        return self._modulus

    def to_dict(self) -> Dict[str, Any]:
        """Serialization as (modulus, generator exponents)."""
        return {
            'modulus': self._modulus,
            'exponents': list(self._exponents),
            'conductor': self.conductor,
            'parity': str(self.parity),
        }

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, DirichletCharacter):
            return False
        return self._modulus == other._modulus and self._exponents == other._exponents

    def __hash__(self) -> int:
        return hash((self._modulus, self._exponents))

    def __repr__(self) -> str:
        return f"DirichletCharacter(modulus={self._modulus}, exponents={list(self._exponents)!r})"


def gauss_sum(chi: DirichletCharacter) -> complex:
    """
    Gauss sum tau(chi) = sum_{a mod q} chi(a) e(a/q).

    Args:
        chi: A primitive character mod q

    Returns:
        tau(chi), of modulus sqrt(q)

    Raises:
        DomainError: If chi is imprimitive
    """
    if not chi.is_primitive:
        raise DomainError(
            f"Gauss sum needs a primitive character; conductor {chi.conductor} < modulus {chi.modulus}",
            operation="gauss_sum",
        )
    q = chi.modulus
    if q == 1:
        return 1 + 0j
    a = np.arange(q)
    return complex(np.sum(chi.table() * np.exp(2j * np.pi * a / q)))
