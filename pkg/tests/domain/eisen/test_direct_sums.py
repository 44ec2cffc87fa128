"""
Tests for the truncated defining sums of the Eisenstein series.
"""
import pytest

from src.domain.characters.character_group import primitive_characters
from src.domain.characters.dirichlet_character import DirichletCharacter
from src.domain.cusps.cusp import Cusp
from src.domain.eisen.char_eisenstein import eval_char_eisenstein
from src.domain.eisen.cusp_eisenstein import eval_cusp_eisenstein
from src.domain.eisen.direct_sums import coset_sum, lattice_sum
from src.domain.eisen.eisenstein_series import CharAttached, CuspAttached
from src.domain.shared.errors import DomainError

ONE = DirichletCharacter.trivial(1)


def quadratic_mod5():
    """The even quadratic character mod 5."""
    return next(chi for chi in primitive_characters(5) if chi.is_even)


class TestLatticeSum:
    """Test lattice_sum against the Fourier evaluation."""

    @pytest.mark.parametrize("pair", ["trivial", "mixed"])
    def test_matches_series(self, pair):
        """Test agreement at Re s = 3."""
        chi1, chi2 = (ONE, ONE) if pair == "trivial" else (ONE, quadratic_mod5())
        z = 0.3 + 0.9j
        for s in (3.0, 3.0 + 0.5j):
            value = eval_char_eisenstein(CharAttached(chi1, chi2), z, s)
            reference = lattice_sum(chi1, chi2, z, s)
            assert abs(value - reference) <= 1e-8 * (1 + abs(reference))

    def test_divergent_region_rejected(self):
        """Test that Re s below the convergence margin is refused."""
        with pytest.raises(DomainError):
            lattice_sum(ONE, ONE, 1j, 0.9)


class TestCosetSum:
    """Test coset_sum against the cusp-attached evaluation."""

    @pytest.mark.parametrize("level,u,f", [(1, 1, 1), (4, 1, 2), (6, 1, 3)])
    def test_trivial_character(self, level, u, f):
        """Test trivial-character cusps, including an irregular one."""
        cusp = Cusp(u, f, level)
        chi = DirichletCharacter.trivial(level)
        z = 0.23 + 0.71j
        value = eval_cusp_eisenstein(CuspAttached(cusp, chi), z, 3.0)
        assert abs(value - coset_sum(cusp, chi, z, 3.0)) < 1e-6

    @pytest.mark.parametrize("f", [1, 5])
    def test_quadratic_character(self, f):
        """Test both cusps of Gamma0(5) with the quadratic character."""
        chi = quadratic_mod5()
        cusp = Cusp(1, f, 5)
        z = -0.18 + 0.66j
        value = eval_cusp_eisenstein(CuspAttached(cusp, chi), z, 3.0)
        assert abs(value - coset_sum(cusp, chi, z, 3.0)) < 1e-6

    def test_character_of_other_modulus_rejected(self):
        """Test that chi must be a character mod N."""
        with pytest.raises(DomainError):
            coset_sum(Cusp(1, 5, 5), DirichletCharacter.trivial(1), 1j, 3.0)

    def test_divergent_region_rejected(self):
        """Test that Re s below the convergence margin is refused."""
        with pytest.raises(DomainError):
            coset_sum(Cusp(1, 1, 1), ONE, 1j, 1.0)
