"""
Structure of (Z/N)^x as a product of cyclic groups.

Each prime-power component p^e contributes one generator for odd p, and
the generators -1 and 5 for p = 2 (only -1 when e = 2, none when e = 1).
Discrete logarithms are read from tables built once per modulus.
"""

from functools import lru_cache
from math import gcd
from typing import List, Optional, Tuple

from ..arith.factorization import factorize
from ..arith.multiplicative import extended_gcd, prime_divisors


class CyclicFactor:
    """One cyclic factor of a prime-power unit group."""

    def __init__(self, prime_power: int, generator: int, order: int) -> None:
        self._prime_power = prime_power
        self._generator = generator
        self._order = order

    @property
    def prime_power(self) -> int:
        """Modulus p^e of the component this factor belongs to."""
        return self._prime_power

    @property
    def generator(self) -> int:
        """Generator residue mod p^e."""
        return self._generator

    @property
    def order(self) -> int:
        """Order of the generator."""
        return self._order

    def __repr__(self) -> str:
        return f"CyclicFactor(prime_power={self._prime_power}, generator={self._generator}, order={self._order})"


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    cofactors = [(p - 1) // r for r in prime_divisors(p - 1)]
    g = 2
    while any(pow(g, c, p) == 1 for c in cofactors):
        g += 1
    return g


class PrimePowerUnits:
    """
    The unit group mod p^e with a discrete-log table.

    The table maps every residue to its exponent tuple on this component's
    generators, or None for residues divisible by p.
    """

    def __init__(self, p: int, e: int) -> None:
        self._p = p
        self._e = e
        self._q = p ** e
        self._factors = self._build_factors()
        self._table = self._build_table()

    def _build_factors(self) -> Tuple[CyclicFactor, ...]:
        p, e, q = self._p, self._e, self._q
        if p == 2:
            if e == 1:
                return ()
            if e == 2:
                return (CyclicFactor(q, q - 1, 2),)
            return (CyclicFactor(q, q - 1, 2), CyclicFactor(q, 5, 2 ** (e - 2)))
        g = _primitive_root(p)
        if e > 1 and pow(g, p - 1, p * p) == 1:
            g += p
        return (CyclicFactor(q, g % q, (p - 1) * p ** (e - 1)),)

    def _build_table(self) -> List[Optional[Tuple[int, ...]]]:
        q = self._q
        table: List[Optional[Tuple[int, ...]]] = [None] * q
        if not self._factors:
            table[1 % q] = ()
            return table
        if self._p == 2 and len(self._factors) == 2:
            five_power = 1
            for j in range(self._factors[1].order):
                table[five_power] = (0, j)
                table[(q - five_power) % q] = (1, j)
                five_power = five_power * 5 % q
            return table
        factor = self._factors[0]
        current = 1
        for k in range(factor.order):
            table[current] = (k,)
            current = current * factor.generator % q
        return table

    @property
    def prime(self) -> int:
        """The prime p."""
        return self._p

    @property
    def exponent(self) -> int:
        """The exponent e."""
        return self._e

    @property
    def modulus(self) -> int:
        """The prime power p^e."""
        return self._q

    @property
    def factors(self) -> Tuple[CyclicFactor, ...]:
        """Cyclic factors of this component."""
        return self._factors

    def dlog(self, a: int) -> Optional[Tuple[int, ...]]:
        """Exponent tuple of a on this component's generators, None if p | a."""
        return self._table[a % self._q]


class UnitGroup:
    """
    (Z/N)^x decomposed over the prime powers of N.

    Generators are exposed both per component and as global residues mod N
    obtained by the Chinese remainder theorem (the other components set to 1).
    """

    def __init__(self, modulus: int) -> None:
        if modulus < 1:
            raise ValueError(f"UnitGroup requires a positive modulus, got {modulus}")
        self._modulus = modulus
        self._components = tuple(PrimePowerUnits(p, e) for p, e in factorize(modulus))
        self._factors = tuple(f for c in self._components for f in c.factors)
        self._global_generators = tuple(self._lift(f) for f in self._factors)

    def _lift(self, factor: CyclicFactor) -> int:
        q = factor.prime_power
        rest = self._modulus // q
        if rest == 1:
            return factor.generator % self._modulus
        # x = g mod q, x = 1 mod rest
        _, u, v = extended_gcd(q, rest)
        x = factor.generator * rest * v + q * u
        return x % self._modulus

    @property
    def modulus(self) -> int:
        """The modulus N."""
        return self._modulus

    @property
    def components(self) -> Tuple[PrimePowerUnits, ...]:
        """Prime-power components in increasing prime order."""
        return self._components

    @property
    def orders(self) -> Tuple[int, ...]:
        """Orders of all cyclic factors, component by component."""
        return tuple(f.order for f in self._factors)

    @property
    def global_generators(self) -> Tuple[int, ...]:
        """CRT lifts of the cyclic generators to residues mod N."""
        return self._global_generators

    @property
    def size(self) -> int:
        """Order of the group, phi(N)."""
        size = 1
        for order in self.orders:
            size *= order
        return size

    def dlog(self, a: int) -> Optional[Tuple[int, ...]]:
        """Concatenated exponent tuple of a, or None when gcd(a, N) > 1."""
        if gcd(a, self._modulus) != 1:
            return None
        exps: Tuple[int, ...] = ()
        for component in self._components:
            part = component.dlog(a)
            if part is None:
                return None
            exps += part
        return exps

    def __repr__(self) -> str:
        return f"UnitGroup(modulus={self._modulus}, orders={self.orders})"


@lru_cache(maxsize=512)
def unit_group(modulus: int) -> UnitGroup:
    """Cached UnitGroup for a modulus."""
    return UnitGroup(modulus)
