"""
Tests for the weighted scattering sums and the divisor sums bounding them.
"""
import math

import pytest

from src.domain.arith.multiplicative import divisors
from src.domain.characters.character_group import primitive_characters
from src.domain.scatter.hard_sums import (
    divisor_log_sum,
    divisor_log_sum_factored,
    factorized_masses,
    hard_sums,
    mass_constant,
    mass_local_factor,
    mertens_sums,
)


def primitive_even(modulus):
    """Some even primitive character mod the modulus."""
    return next(chi for chi in primitive_characters(modulus) if chi.is_even)


class TestHardSums:
    """Test hard_sums."""

    def test_identity_level_thirty(self):
        """Test S1 + S3 = log 30 for N = 30, q = 1, T = 1."""
        sums = hard_sums(30, t=1.0)
        assert sums.s1 + sums.s3 == pytest.approx(math.log(30), abs=1e-9)
        assert abs(sums.identity_residual) < 1e-9

    @pytest.mark.parametrize("level, conductor", [(20, 5), (36, 9), (60, 5)])
    def test_identity_with_character(self, level, conductor):
        """Test the identity for characters of conductor q > 1."""
        sums = hard_sums(level, primitive_even(conductor).induce(level), t=2.0)
        assert sums.conductor == conductor
        assert abs(sums.identity_residual) < 1e-9
        assert sums.unitarity == pytest.approx(1.0, abs=1e-9)

    def test_primitive_level(self):
        """Test S3 = 0 and S1 = 0 when N = q."""
        sums = hard_sums(12, primitive_even(12), t=1.0)
        assert sums.s3 == pytest.approx(0.0, abs=1e-12)
        assert sums.s1 == pytest.approx(0.0, abs=1e-12)
        assert list(sums.masses) == [1]

    def test_mass_bounds(self):
        """Test S_f <= (q f / N) 4^omega(N/(q f)) at N = 60."""
        sums = hard_sums(60, t=1.0)
        assert sums.bounds_hold()
        assert sum(sums.masses.values()) == pytest.approx(1.0, abs=1e-9)
        assert sorted(sums.masses) == divisors(60)

    def test_rows(self):
        """Test one record per cusp with positive mass."""
        sums = hard_sums(6, t=1.0)
        rows = sums.rows()
        assert {row['f'] for row in rows} == {1, 2, 3, 6}
        assert math.fsum(row['S1_part'] for row in rows) == pytest.approx(sums.s1)
        assert sums.to_dict()['bounds_hold']

    @pytest.mark.slow
    def test_identity_sweep(self):
        """Test the identity for every level up to 100 and the trivial character."""
        for level in range(1, 101):
            assert abs(hard_sums(level, t=1.0).identity_residual) < 1e-9


class TestDivisorSums:
    """Test the divisor sums."""

    def test_factored_form_at_210(self):
        """Test the prime decomposition against enumeration for L = 210, k = 4."""
        assert len(divisors(210)) == 16
        assert divisor_log_sum_factored(210, 4) == pytest.approx(divisor_log_sum(210, 4), rel=1e-12)

    def test_factored_form_with_prime_powers(self):
        """Test L = 360, k = 2."""
        assert divisor_log_sum_factored(360, 2) == pytest.approx(divisor_log_sum(360, 2), rel=1e-12)

    def test_prime(self):
        """Test L = p: k log p / p."""
        assert divisor_log_sum(7, 3) == pytest.approx(3 * math.log(7) / 7)

    def test_mertens(self):
        """Test the prime sums at 30."""
        sums = mertens_sums(30)
        assert sums['reciprocal'] == pytest.approx(1 / 2 + 1 / 3 + 1 / 5)
        assert sums['log_weighted'] == pytest.approx(math.log(2) / 2 + math.log(3) / 3 + math.log(5) / 5)
        assert sums['log_weighted_scale'] == pytest.approx(math.log(math.log(32)))


class TestFactorizedMasses:
    """Test the Euler-product form of the per-denominator masses."""

    @pytest.mark.parametrize("level, t", [(7, 1.0), (12, 0.5), (60, 1.0), (72, 2.5)])
    def test_matches_direct_masses(self, level, t):
        """Test C_f prod S_f^p against summed |phi|^2 for the trivial character."""
        direct = hard_sums(level, t=t).masses
        factored = factorized_masses(level, t=t)
        assert sorted(factored) == sorted(direct)
        for f, mass in direct.items():
            assert factored[f] == pytest.approx(mass, rel=1e-9, abs=1e-14)

    @pytest.mark.parametrize("level, conductor", [(20, 5), (36, 9), (60, 5)])
    def test_matches_with_character(self, level, conductor):
        """Test the factorization for characters of conductor q > 1."""
        chi = primitive_even(conductor).induce(level)
        direct = hard_sums(level, chi, t=1.5).masses
        factored = factorized_masses(level, chi, t=1.5)
        assert set(factored) == set(divisors(level // conductor))
        for f, mass in direct.items():
            assert factored[f] == pytest.approx(mass, rel=1e-9, abs=1e-14)

    def test_prime_level_sums_to_one(self):
        """Test S_1 + S_p = 1 at prime level."""
        assert sum(factorized_masses(11, t=0.7).values()) == pytest.approx(1.0, abs=1e-12)

    def test_local_factor_bounds(self):
        """Test S_f^p <= 4, and S_f^p = 1 when psi(p) = 0."""
        trivial = primitive_even(1)
        for p in (2, 3, 5, 7):
            assert 0 <= mass_local_factor(trivial, 1.3, p) <= 4
        psi = primitive_even(5)
        assert mass_local_factor(psi, 1.3, 5) == pytest.approx(1.0)

    def test_constant_bound(self):
        """Test C_f <= q f / N."""
        trivial = primitive_even(1)
        for f in divisors(72):
            assert mass_constant(72, trivial, 0.9, f) <= f / 72 * (1 + 1e-12)
