"""
Tests for the Factorization value object and factorize.
"""
import pytest

from src.domain.arith.factorization import Factorization, factorize
from src.domain.shared.errors import DomainError


class TestFactorize:
    """Test trial-division factorization."""

    def test_one_is_empty_product(self):
        """Test that 1 factors as the empty product."""
        assert factorize(1).factors == ()

    def test_twelve(self):
        """Test the factorization of 12."""
        assert list(factorize(12)) == [(2, 2), (3, 1)]

    def test_large_composite_remultiplies(self):
        """Test that the factors of 2^40 + 1 multiply back and are prime."""
        n = 2 ** 40 + 1
        f = factorize(n)
        product = 1
        for p, e in f:
            product *= p ** e
            assert len(factorize(p)) == 1 and factorize(p).factors[0] == (p, 1)
        assert product == n
        assert 257 in f.primes

    def test_zero_rejected(self):
        """Test that n = 0 raises a domain error."""
        with pytest.raises(DomainError):
            factorize(0)

    def test_omega_is_length(self):
        """Test that omega equals the number of factor pairs."""
        assert len(factorize(2 * 3 * 5 * 7 * 49)) == 4

    def test_prime_power_of_large_prime(self):
        """Test a square of a prime beyond the wheel start."""
        assert list(factorize(1009 ** 2)) == [(1009, 2)]


class TestFactorizationValueObject:
    """Test Factorization invariants and equality."""

    def test_invalid_product_rejected(self):
        """Test that a wrong product fails validation."""
        with pytest.raises(ValueError):
            Factorization(12, [(2, 1), (3, 1)])

    def test_unsorted_primes_rejected(self):
        """Test that decreasing primes fail validation."""
        with pytest.raises(ValueError):
            Factorization(6, [(3, 1), (2, 1)])

    def test_equality_and_hash(self):
        """Test value equality."""
        assert factorize(360) == Factorization(360, [(2, 3), (3, 2), (5, 1)])
        assert hash(factorize(360)) == hash(Factorization(360, [(2, 3), (3, 2), (5, 1)]))

    def test_exponent_lookup(self):
        """Test exponent of present and absent primes."""
        f = factorize(3 ** 7 * 2)
        assert f.exponent(3) == 7
        assert f.exponent(5) == 0
