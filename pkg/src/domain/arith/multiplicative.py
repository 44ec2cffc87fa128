"""
Multiplicative functions and small integer utilities.

All divisor lists are ascending and every divisor sum in eisenlab
iterates them in that order.
"""

from functools import lru_cache
from math import gcd
from typing import Any, List, Tuple

from ..shared.errors import DomainError
from .factorization import factorize


class FullnessSplit:
    """
    Value object for the split a = a_full * a_perp relative to b.

    a_full is the limit of gcd(a, b^k); every prime of a_full divides b
    and a_perp is coprime to b.
    """

    def __init__(self, a: int, b: int, a_full: int, a_perp: int) -> None:
        self._a = a
        self._b = b
        self._a_full = a_full
        self._a_perp = a_perp
        self.validate()

    @property
    def a(self) -> int:
        """The integer being split."""
        return self._a

    @property
    def b(self) -> int:
        """The integer whose primes define the split."""
        return self._b

    @property
    def a_full(self) -> int:
        """Part of a supported on primes of b."""
        return self._a_full

    @property
    def a_perp(self) -> int:
        """Part of a coprime to b."""
        return self._a_perp

    def validate(self) -> None:
        """Validates the split invariants."""
        if self._a_full * self._a_perp != self._a:
            raise ValueError(f"a_full * a_perp must equal a={self._a}")
        if gcd(self._a_perp, self._b) != 1:
            raise ValueError(f"a_perp={self._a_perp} must be coprime to b={self._b}")
        for p in factorize(self._a_full).primes:
            if self._b % p != 0:
                raise ValueError(f"prime {p} of a_full does not divide b={self._b}")

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, FullnessSplit):
            return False
        return (self._a, self._b, self._a_full, self._a_perp) == (other._a, other._b, other._a_full, other._a_perp)

    def __hash__(self) -> int:
        return hash((self._a, self._b, self._a_full, self._a_perp))

    def __repr__(self) -> str:
        return f"FullnessSplit(a={self._a}, b={self._b}, a_full={self._a_full}, a_perp={self._a_perp})"


def _require_positive(n: int, operation: str) -> int:
    if n < 1:
        raise DomainError(f"{operation} requires n >= 1, got {n}", operation=operation, n=n)
    return int(n)


def mobius(n: int) -> int:
    """Moebius function mu(n)."""
    n = _require_positive(n, "mobius")
    result = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        result = -result
    return result


def euler_phi(n: int) -> int:
    """Euler totient phi(n)."""
    n = _require_positive(n, "euler_phi")
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


@lru_cache(maxsize=4096)
def _divisor_tuple(n: int) -> Tuple[int, ...]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def divisors(n: int) -> List[int]:
    """Ascending list of the positive divisors of n."""
    return list(_divisor_tuple(_require_positive(n, "divisors")))


def divisor_count(n: int) -> int:
    """Number of divisors d(n)."""
    count = 1
    for _, e in factorize(_require_positive(n, "divisor_count")):
        count *= e + 1
    return count


def omega(n: int) -> int:
    """Number of distinct prime divisors of n."""
    return len(factorize(_require_positive(n, "omega")))


def prime_divisors(n: int) -> List[int]:
    """Distinct primes dividing n, ascending."""
    return list(factorize(_require_positive(n, "prime_divisors")).primes)


def is_prime(n: int) -> bool:
    """Primality by trial division."""
    if n < 2:
        return False
    f = factorize(n)
    return len(f) == 1 and f.factors[0][1] == 1


def ppart_order(p: int, n: int) -> int:
    """
    The p-adic order nu_p(n).

    Args:
        p: A prime
        n: A positive integer

    Returns:
        The exponent k with p^k exactly dividing n

    Raises:
        DomainError: If p is not prime or n < 1
    """
    if not is_prime(p):
        raise DomainError(f"ppart_order requires a prime, got {p}", operation="ppart_order", p=p)
    n = _require_positive(n, "ppart_order")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def fullness(a: int, b: int) -> FullnessSplit:
    """
    Split a into the part supported on primes of b and the rest.

    Business rules:
    - a_full = gcd(a, b^k) for k large enough to stabilize
    - a_perp = a / a_full is coprime to b

    Args:
        a: Positive integer to split
        b: Positive integer supplying the primes

    Returns:
        The FullnessSplit of a relative to b
    """
    a = _require_positive(a, "fullness")
    b = _require_positive(b, "fullness")
    a_full = 1
    g = gcd(a, b)
    while g > 1:
        a_full *= g
        g = gcd(a // a_full, g)
    return FullnessSplit(a, b, a_full, a // a_full)


def lcm(a: int, b: int) -> int:
    """Least common multiple of two positive integers."""
    return a // gcd(a, b) * b


def nu_index(m: int) -> int:
    """Index of Gamma0(m) in SL2(Z): m * prod_{p|m} (1 + 1/p)."""
    m = _require_positive(m, "nu_index")
    result = m
    for p, _ in factorize(m):
        result = result // p * (p + 1)
    return result


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended Euclid.

    Returns:
        (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def squarefree_divisors(n: int) -> List[int]:
    """Ascending squarefree divisors of n (the support of mu on divisors)."""
    return [d for d in divisors(n) if mobius(d) != 0]
