"""
Tests for cusp enumeration, reduction, widths, relative widths and coset
counts of Gamma0(N).
"""
import random
from fractions import Fraction
from math import gcd

import numpy as np
import pytest

from src.domain.arith.multiplicative import divisors, euler_phi, nu_index
from src.domain.characters.character_group import primitive_characters
from src.domain.characters.dirichlet_character import DirichletCharacter
from src.domain.cusps.cusp import Cusp
from src.domain.cusps.cusp_service import (
    atkin_lehner_complement,
    coset_count,
    coset_count_by_enumeration,
    cusp_set,
    equivalence_witness,
    equivalent,
    is_singular,
    reduce,
    reduce_cusp,
    relative_width,
    scaling_matrix,
    width,
    width_at,
)
from src.domain.cusps.gl2z import GL2Z, INFINITY
from src.domain.shared.errors import DomainError


def random_gamma0(level, rng):
    """A random element of Gamma0(level) with moderate entries."""
    while True:
        c = level * rng.randint(-6, 6)
        d = rng.randint(-40, 40)
        if gcd(c, d) == 1:
            return GL2Z.from_bottom_row(c, d) @ GL2Z.translation(rng.randint(-3, 3))


class TestCuspSet:
    """Test the set of inequivalent cusps."""

    def test_level_one(self):
        """Test a single cusp at level 1."""
        assert cusp_set(1) == [Cusp(1, 1, 1)]

    def test_level_seven(self):
        """Test {1/1, 1/7} at level 7."""
        assert [str(c) for c in cusp_set(7)] == ["1/1", "1/7"]

    def test_level_twelve(self):
        """Test six cusps at level 12."""
        assert len(cusp_set(12)) == 6

    def test_sizes_and_widths(self):
        """Test the class count and sum of widths for N <= 200."""
        for n in range(1, 201):
            cusps = cusp_set(n)
            assert len(cusps) == sum(euler_phi(gcd(f, n // f)) for f in divisors(n))
            assert sum(c.width for c in cusps) == nu_index(n)
            assert len({reduce(Fraction(c.u, c.f), n) for c in cusps}) == len(cusps)

    def test_contains_infinity(self):
        """Test that 1/N represents the class of oo."""
        for n in (1, 6, 25):
            assert reduce(INFINITY, n) == Cusp(1, n, n)
            assert Cusp(1, n, n) in cusp_set(n)

    def test_forced_numerator(self):
        """Test that u is moved past values sharing a factor with f."""
        cusps = cusp_set(54)
        assert Cusp(5, 18, 54) in cusps
        with pytest.raises(ValueError):
            Cusp(2, 18, 54)


class TestEquivalence:
    """Test reduction and equivalence of cusps."""

    def test_infinity_and_one_over_n(self):
        """Test oo = 1/N at every level."""
        for n in (1, 5, 12):
            assert equivalent(INFINITY, Fraction(1, n), n)

    def test_zero_and_one(self):
        """Test 0 = 1/1 at every level."""
        for n in range(1, 30):
            assert equivalent(0, Fraction(1, 1), n)

    def test_half_and_third(self):
        """Test 1/2 and 1/3 differ at level 12."""
        assert not equivalent(Fraction(1, 2), Fraction(1, 3), 12)

    def test_witnesses_exist_exactly_for_equivalent_pairs(self):
        """Test that a Gamma0(N) witness exists iff the reductions agree."""
        points = [Fraction(a, c) for c in range(1, 13) for a in range(-6, 7) if gcd(a, c) == 1]
        for n in (4, 6, 9, 12):
            for x in points[::3]:
                target = reduce(x, n)
                gamma = equivalence_witness(Fraction(target.u, target.f), x, n)
                assert gamma is not None and gamma.in_gamma0(n)
                assert gamma.act_on_cusp(x) == (target.u, target.f)
            assert equivalence_witness(Fraction(1, 2), Fraction(1, 3), 12) is None

    def test_reduction_invariant_under_gamma0(self):
        """Test that reduce is constant on Gamma0(N)-orbits."""
        rng = random.Random(7)
        for n in (6, 12, 20):
            for cusp in cusp_set(n):
                for _ in range(5):
                    gamma = random_gamma0(n, rng)
                    a, c = gamma.act_on_pair((cusp.u, cusp.f))
                    assert reduce(Fraction(a, c) if c else INFINITY, n) == cusp


class TestWidths:
    """Test absolute and relative widths."""

    def test_examples(self):
        """Test widths at f = N, f = 1 and N = 12, f = 2."""
        assert width(Cusp(1, 12, 12)) == 1
        assert width(Cusp(1, 1, 12)) == 12
        assert width(Cusp(1, 2, 12)) == 3

    def test_width_is_stabilizer_index(self):
        """Test that W is the least k with gamma_a T^k gamma_a^{-1} in Gamma0(N)."""
        for n in (4, 12, 18, 25):
            for cusp in cusp_set(n):
                gamma = scaling_matrix(cusp).gamma
                k = 1
                while not (gamma @ GL2Z.translation(k) @ gamma.inverse()).in_gamma0(n):
                    k += 1
                assert k == cusp.width

    def test_relative_width_examples(self):
        """Test W^N_N = 1, W^1_N = W and the N=12, M=4, f=2 case."""
        cusp = Cusp(1, 2, 12)
        assert relative_width(cusp, 12) == 1
        assert relative_width(cusp, 1) == cusp.width
        assert relative_width(cusp, 4) == 3

    def test_relative_width_multiplicative(self):
        """Test W^M_N * W_M = W_N."""
        for n in range(1, 61):
            for cusp in cusp_set(n):
                for m in divisors(n):
                    assert relative_width(cusp, m) * width_at(cusp, m) == cusp.width
                    assert width_at(cusp, m) == reduce_cusp(cusp, m).width

    def test_relative_width_requires_divisor(self):
        """Test that M not dividing N is rejected."""
        with pytest.raises(DomainError):
            relative_width(Cusp(1, 2, 12), 5)


class TestCosetCount:
    """Test the coset count against enumeration."""

    def test_infinity_self(self):
        """Test that oo is counted W^M_N(oo) times."""
        inf = Cusp(1, 12, 12)
        for m in divisors(12):
            assert coset_count(inf, inf, m) == relative_width(inf, m)

    def test_level_twelve_three(self):
        """Test N = 12, M = 3 against explicit cosets."""
        inf = Cusp(1, 12, 12)
        for cusp in cusp_set(12):
            assert coset_count(cusp, inf, 3) == coset_count_by_enumeration(cusp, inf, 3)

    def test_enumeration_matches_formula(self):
        """Test every (N, M, a, b) with N <= 36."""
        for n in range(1, 37):
            cusps = cusp_set(n)
            for m in divisors(n):
                for first in cusps:
                    for second in cusps:
                        assert coset_count(first, second, m) == coset_count_by_enumeration(first, second, m)


class TestSingularity:
    """Test singular cusps and Atkin-Lehner complements."""

    def test_trivial_always_singular(self):
        """Test that every cusp is singular for the trivial character."""
        for cusp in cusp_set(36):
            assert is_singular(cusp, DirichletCharacter.trivial(36))

    def test_prime_level(self):
        """Test 1/1 and oo are singular for primitive chi mod a prime."""
        chi = [c for c in primitive_characters(7) if c.is_even][0]
        assert is_singular(Cusp(1, 1, 7), chi)
        assert is_singular(Cusp(1, 7, 7), chi)

    def test_prime_square_middle_cusp(self):
        """Test f = p is not singular for primitive chi mod p^2."""
        chi = [c for c in primitive_characters(25) if c.is_even][0]
        for cusp in cusp_set(25):
            if cusp.f == 5:
                assert not is_singular(cusp, chi)

    def test_primitive_singular_are_atkin_lehner(self):
        """Test that primitive characters are singular exactly at Atkin-Lehner cusps."""
        for q in (9, 12, 20, 25):
            for chi in primitive_characters(q):
                if not chi.is_even:
                    continue
                for cusp in cusp_set(q):
                    assert is_singular(cusp, chi) == cusp.is_atkin_lehner

    def test_odd_rejected(self):
        """Test that an odd character raises."""
        chi = [c for c in primitive_characters(5) if not c.is_even][0]
        with pytest.raises(DomainError):
            is_singular(Cusp(1, 1, 5), chi)

    def test_complement(self):
        """Test (1/1)* = 1/N, (1/N)* = 1/1 and N=15, (1/3)* = 1/5."""
        assert atkin_lehner_complement(Cusp(1, 1, 15)) == Cusp(1, 15, 15)
        assert atkin_lehner_complement(Cusp(1, 15, 15)) == Cusp(1, 1, 15)
        assert atkin_lehner_complement(Cusp(1, 3, 15)) == Cusp(1, 5, 15)
        with pytest.raises(DomainError):
            atkin_lehner_complement(Cusp(1, 2, 4))


class TestScalingMatrix:
    """Test scaling matrices."""

    def test_infinity(self):
        """Test sigma for oo at level N."""
        sigma = scaling_matrix(Cusp(1, 10, 10))
        assert sigma.gamma == GL2Z(1, 0, 10, 1)
        assert sigma.width == 1

    def test_zero(self):
        """Test sigma for 1/1 at level N."""
        sigma = scaling_matrix(Cusp(1, 1, 6))
        assert sigma.gamma == GL2Z(1, 0, 1, 1)
        assert sigma.width == 6

    def test_conjugates_stabilizer_to_translation(self):
        """Test sigma^{-1} gamma_a T^W gamma_a^{-1} sigma = T."""
        for n in (6, 12, 20):
            for cusp in cusp_set(n):
                sigma = scaling_matrix(cusp)
                gamma = sigma.gamma
                stab = gamma @ GL2Z.translation(cusp.width) @ gamma.inverse()
                assert stab.in_gamma0(n)
                s = sigma.real_matrix()
                conj = np.linalg.inv(s) @ np.array([[stab.a, stab.b], [stab.c, stab.d]]) @ s
                assert np.allclose(conj, [[1, 1], [0, 1]], atol=1e-9)

    def test_horoball(self):
        """Test that sigma maps high points close to the cusp and inverts heights."""
        sigma = scaling_matrix(Cusp(1, 2, 12))
        w = sigma.apply(0.3 + 50j)
        assert abs(w - 0.5) < 0.01
        assert abs(sigma.inverse_height(w) - 50) < 1e-8
