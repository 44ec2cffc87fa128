"""
Factorization value object and trial-division factorizer.

Levels handled by eisenlab stay far below 10^7, so a 2-3-5 wheel is
all the factoring machinery needed; results are memoized.
"""

import operator
from functools import lru_cache
from typing import Any, Iterator, List, Tuple

from ..shared.errors import DomainError

MAX_INT = 2 ** 63 - 1

# offsets of the residues coprime to 30, starting from 7
_WHEEL_STEPS = (4, 2, 4, 2, 4, 6, 2, 6)


class Factorization:
    """Value object holding n together with its prime factorization."""

    def __init__(self, n: int, factors: List[Tuple[int, int]]) -> None:
        self._n = n
        self._factors = tuple((int(p), int(e)) for p, e in factors)
        self.validate()

    @property
    def n(self) -> int:
        """The factored integer."""
        return self._n

    @property
    def factors(self) -> Tuple[Tuple[int, int], ...]:
        """Pairs (p, e) with p strictly increasing."""
        return self._factors

    @property
    def primes(self) -> Tuple[int, ...]:
        """The distinct primes dividing n, ascending."""
        return tuple(p for p, _ in self._factors)

    def validate(self) -> None:
        """
        Validates the factorization invariants.

        Raises:
            ValueError: If the product does not match or ordering is broken
        """
        if self._n < 1:
            raise ValueError(f"Factorization requires n >= 1, got {self._n}")
        product = 1
        previous = 1
        for p, e in self._factors:
            if p <= previous:
                raise ValueError(f"Primes must be strictly increasing, got {p} after {previous}")
            if e < 1:
                raise ValueError(f"Exponent of {p} must be positive, got {e}")
            product *= p ** e
            previous = p
        if product != self._n:
            raise ValueError(f"Factors multiply to {product}, expected {self._n}")

    def exponent(self, p: int) -> int:
        """Exponent of p in n (0 if p does not divide n)."""
        for prime, e in self._factors:
            if prime == p:
                return e
        return 0

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self._factors)

    def __len__(self) -> int:
        return len(self._factors)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Factorization):
            return False
        return self._n == other._n and self._factors == other._factors

    def __hash__(self) -> int:
        return hash((self._n, self._factors))

    def __repr__(self) -> str:
        return f"Factorization(n={self._n}, factors={list(self._factors)!r})"


def _trial_candidates() -> Iterator[int]:
    yield 2
    yield 3
    yield 5
    candidate = 7
    while True:
        for step in _WHEEL_STEPS:
            yield candidate
            candidate += step


@lru_cache(maxsize=4096)
def _factor_pairs(n: int) -> Tuple[Tuple[int, int], ...]:
    pairs: List[Tuple[int, int]] = []
    remaining = n
    for p in _trial_candidates():
        if p * p > remaining:
            break
        if remaining % p == 0:
            e = 0
            while remaining % p == 0:
                remaining //= p
                e += 1
            pairs.append((p, e))
    if remaining > 1:
        pairs.append((remaining, 1))
    return tuple(pairs)


def factorize(n: int) -> Factorization:
    """
    Factor a positive integer by wheel trial division.

    Args:
        n: Integer with 1 <= n <= 2^63 - 1

    Returns:
        The Factorization of n

    Raises:
        DomainError: If n is outside the supported range
    """
    try:
        n = operator.index(n)
    except TypeError:
        raise DomainError(f"factorize expects an integer, got {type(n).__name__}", operation="factorize", n=n)
    if n < 1 or n > MAX_INT:
        raise DomainError(f"factorize requires 1 <= n <= 2^63-1, got {n}", operation="factorize", n=n)
    return Factorization(n, list(_factor_pairs(n)))
