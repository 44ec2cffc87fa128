"""
Tests for scattering entries, the row at oo and their closed forms.
"""
import math

import mpmath
import numpy as np
import pytest

from src.domain.characters.character_group import even_characters, primitive_characters
from src.domain.characters.dirichlet_character import DirichletCharacter
from src.domain.cusps.cusp import Cusp
from src.domain.cusps.cusp_service import cusp_set, singular_cusps
from src.domain.scatter.scattering import (
    ScatteringRow,
    atkin_lehner_characters,
    delta_general,
    finite_difference_log_derivative,
    nonsingular_decay_probe,
    phi_atkin_lehner,
    phi_general,
    phi_infinity_row,
    phi_log_derivative,
    scattering_matrix,
)
from src.domain.shared.errors import DomainError

S = 0.7 + 0.4j


def quadratic_mod5():
    """The even quadratic character mod 5."""
    return next(chi for chi in primitive_characters(5) if chi.is_even)


def primitive_even(modulus):
    """Some even primitive character mod the modulus."""
    return next(chi for chi in primitive_characters(modulus) if chi.is_even)


def mixed_mod15():
    """chi1 conj(chi2) mod 15, chi1 odd mod 3 and chi2 odd mod 5."""
    chi1 = primitive_characters(3)[0]
    chi2 = next(chi for chi in primitive_characters(5) if not chi.is_even)
    return chi1.product(chi2.conj()).induce(15)


class TestGeneralEntries:
    """Test phi_general."""

    def test_level_one_classical(self):
        """Test phi(2) = Lambda(3)/Lambda(4) = 45 zeta(3)/pi^3."""
        cusp = Cusp(1, 1, 1)
        expected = 45 * float(mpmath.zeta(3)) / math.pi ** 3
        assert phi_general(cusp, cusp, 2.0) == pytest.approx(expected, rel=1e-10)

    @pytest.mark.parametrize("level", [4, 6, 9, 12])
    def test_delta_coefficient(self, level):
        """Test that the y^s coefficient of E_a at b is 1 exactly when a = b."""
        cusps = cusp_set(level)
        for a in cusps:
            for b in cusps:
                assert delta_general(a, b, S) == pytest.approx(1.0 if a == b else 0.0, abs=1e-12)

    def test_delta_with_character(self):
        """Test the y^s coefficients for a primitive character mod 15."""
        chi = mixed_mod15()
        cusps = singular_cusps(15, chi)
        for a in cusps:
            for b in cusps:
                assert delta_general(a, b, S, chi) == pytest.approx(1.0 if a == b else 0.0, abs=1e-12)

    @pytest.mark.parametrize("level", [2, 4, 6, 12])
    def test_row_agrees_with_closed_form(self, level):
        """Test phi_{oo b} from the change of basis against the closed form."""
        row = phi_infinity_row(level, s=S)
        infinity = Cusp(1, level, level)
        for cusp, value in row.entries.items():
            assert phi_general(infinity, cusp, S) == pytest.approx(value, rel=1e-10, abs=1e-12)

    @pytest.mark.slow
    def test_row_agrees_up_to_thirty(self):
        """Test the two formulas for every cusp at every level up to 30."""
        for level in range(1, 31):
            row = phi_infinity_row(level, s=S)
            infinity = Cusp(1, level, level)
            for cusp, value in row.entries.items():
                assert phi_general(infinity, cusp, S) == pytest.approx(value, rel=1e-10, abs=1e-12)

    @pytest.mark.parametrize("level, conductor", [(20, 5), (12, 12), (18, 9)])
    def test_row_modulus_with_character(self, level, conductor):
        """Test |phi_{oo b}| from both formulas for a nontrivial character."""
        chi = primitive_even(conductor).induce(level)
        row = phi_infinity_row(level, chi, S)
        infinity = Cusp(1, level, level)
        for cusp, value in row.entries.items():
            assert abs(phi_general(infinity, cusp, S, chi)) == pytest.approx(abs(value), rel=1e-9, abs=1e-12)

    def test_rejects_non_singular_cusp(self):
        """Test that a cusp outside C_chi(N) is refused."""
        chi = primitive_even(9)
        with pytest.raises(DomainError):
            phi_general(Cusp(1, 9, 9), Cusp(1, 3, 9), S, chi)


class TestScatteringMatrix:
    """Test unitarity and the functional equation of Phi."""

    def test_unitary_on_critical_line(self):
        """Test Phi(1/2 + i) Phi(1/2 + i)^* = I at level 12."""
        _, matrix = scattering_matrix(12, DirichletCharacter.trivial(12), 0.5 + 1j)
        assert np.allclose(matrix @ matrix.conj().T, np.eye(len(matrix)), atol=1e-9)

    def test_unitary_with_character(self):
        """Test unitarity at level 15 with a primitive character."""
        _, matrix = scattering_matrix(15, mixed_mod15(), 0.5 + 0.8j)
        assert np.allclose(matrix @ matrix.conj().T, np.eye(len(matrix)), atol=1e-9)

    def test_functional_equation(self):
        """Test Phi(s) Phi(1 - s) = I at level 6."""
        chi = DirichletCharacter.trivial(6)
        _, left = scattering_matrix(6, chi, S)
        _, right = scattering_matrix(6, chi, 1 - S)
        assert np.allclose(left @ right, np.eye(len(left)), atol=1e-9)

    def test_symmetric_for_trivial_character(self):
        """Test phi_ab = phi_ba for the trivial character."""
        _, matrix = scattering_matrix(8, DirichletCharacter.trivial(8), S)
        assert np.allclose(matrix, matrix.T, atol=1e-12)


class TestInfinityRow:
    """Test phi_infinity_row."""

    def test_prime_level(self):
        """Test the classical entries at level p."""
        p = 7
        row = phi_infinity_row(p, s=S)
        ratio = row.general(Cusp(1, p, p), Cusp(1, p, p))
        base = phi_infinity_row(1, s=S).entry(Cusp(1, 1, 1))
        assert row.entry(Cusp(1, p, p)) == pytest.approx(base * (p - 1) / (p ** (2 * S) - 1), rel=1e-10)
        expected = base * (p ** S - p ** (1 - S)) / (p ** (2 * S) - 1)
        assert row.entry(Cusp(1, 1, p)) == pytest.approx(expected, rel=1e-10)
        assert ratio == pytest.approx(row.entry(Cusp(1, p, p)), rel=1e-10)

    def test_vanishes_at_infinity_for_nontrivial_character(self):
        """Test phi_{oo oo} = 0 when chi is nontrivial."""
        chi = quadratic_mod5().induce(20)
        assert phi_infinity_row(20, chi, S).entry(Cusp(1, 20, 20)) == 0

    @pytest.mark.parametrize("level", [1, 6, 12, 30])
    def test_center_value(self, level):
        """Test phi_{oo a}(1/2) = -[a = oo] for the trivial character."""
        row = phi_infinity_row(level, s=0.5)
        for cusp, value in row.entries.items():
            assert value == pytest.approx(-1.0 if cusp.is_infinity else 0.0, abs=1e-12)

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_unitarity_level_twelve(self, t):
        """Test sum |phi_{oo a}(1/2 + iT)|^2 = 1 at N = 12."""
        for chi in (DirichletCharacter.trivial(12), primitive_even(12)):
            assert phi_infinity_row(12, chi, 0.5 + 1j * t).unitarity_sum() == pytest.approx(1.0, abs=1e-9)

    def test_unitarity_imprimitive(self):
        """Test unitarity for characters induced from conductors 5 and 9."""
        for level, chi in ((20, quadratic_mod5().induce(20)), (45, primitive_even(9).induce(45))):
            assert phi_infinity_row(level, chi, 0.5 + 1j).unitarity_sum() == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.slow
    def test_unitarity_sweep(self):
        """Test unitarity for every even character at every level up to 60."""
        for level in range(1, 61):
            for chi in even_characters(level):
                for t in (0.5, 1.0, 2.0):
                    total = phi_infinity_row(level, chi, 0.5 + 1j * t).unitarity_sum()
                    assert total == pytest.approx(1.0, abs=1e-9)

    def test_row_indexed_by_singular_cusps(self):
        """Test that a row with the wrong keys is rejected."""
        with pytest.raises(ValueError):
            ScatteringRow(6, DirichletCharacter.trivial(6), S, {Cusp(1, 6, 6): 0j})

    def test_report(self):
        """Test the row serialization."""
        data = phi_infinity_row(6, s=0.5 + 1j).to_dict()
        assert data['N'] == 6
        assert len(data['entries']) == 4
        assert data['unitarity_sum'] == pytest.approx(1.0, abs=1e-9)


class TestAtkinLehner:
    """Test the entries for primitive characters."""

    def test_factorization(self):
        """Test chi = chi1 conj(chi2) with chi1 mod N/f and chi2 mod f."""
        chi = mixed_mod15()
        chi1, chi2 = atkin_lehner_characters(Cusp(1, 5, 15), chi)
        assert chi1.modulus == 3
        assert chi2.modulus == 5
        assert chi1.product(chi2.conj()).agrees_with(chi)

    def test_zero_off_complement(self):
        """Test phi_ab = 0 unless b = a*."""
        chi = mixed_mod15()
        a = Cusp(1, 3, 15)
        for b in singular_cusps(15, chi):
            if b != Cusp(1, 5, 15):
                assert phi_atkin_lehner(a, b, S, chi) == 0
                assert abs(phi_general(a, b, S, chi)) < 1e-12

    @pytest.mark.parametrize("level, chi_factory", [(5, quadratic_mod5), (15, mixed_mod15)])
    def test_agrees_with_general_entries(self, level, chi_factory):
        """Test |phi_{a a*}| from both formulas."""
        chi = chi_factory()
        for a in singular_cusps(level, chi):
            b = Cusp(1, level // a.f, level)
            assert abs(phi_general(a, b, S, chi)) == pytest.approx(abs(phi_atkin_lehner(a, b, S, chi)), rel=1e-9)

    def test_prime_level_matches_row(self):
        """Test phi_{oo 0} at a prime level against the row closed form."""
        chi = quadratic_mod5()
        value = phi_atkin_lehner(Cusp(1, 5, 5), Cusp(1, 1, 5), S, chi)
        assert value == pytest.approx(phi_infinity_row(5, chi, S).entry(Cusp(1, 1, 5)), rel=1e-10)

    def test_level_one(self):
        """Test N = 1, where a = a* = oo."""
        cusp = Cusp(1, 1, 1)
        value = phi_atkin_lehner(cusp, cusp, S, DirichletCharacter.trivial(1))
        assert value == pytest.approx(phi_general(cusp, cusp, S), rel=1e-10)

    def test_requires_primitive_character(self):
        """Test that imprimitive characters are refused."""
        with pytest.raises(DomainError):
            phi_atkin_lehner(Cusp(1, 4, 4), Cusp(1, 1, 4), S, DirichletCharacter.trivial(4))


class TestLogDerivative:
    """Test phi_log_derivative."""

    def test_finite_difference_level_six(self):
        """Test the exact formula against a central difference at N = 6, T = 1, a = oo."""
        cusp = Cusp(1, 6, 6)
        exact = phi_log_derivative(cusp, 1.0)
        numeric = finite_difference_log_derivative(cusp, 1.0)
        assert exact == pytest.approx(numeric, abs=1e-6)

    @pytest.mark.parametrize("cusp", [Cusp(1, 1, 12), Cusp(1, 3, 12), Cusp(1, 4, 12), Cusp(1, 2, 12)])
    def test_finite_difference_other_cusps(self, cusp):
        """Test the central difference at the other cusps of level 12."""
        exact = phi_log_derivative(cusp, 1.5)
        numeric = finite_difference_log_derivative(cusp, 1.5)
        assert exact == pytest.approx(numeric, abs=1e-6)

    def test_primitive_character(self):
        """Test the single surviving entry for a primitive character mod 12."""
        chi = primitive_even(12)
        cusp = Cusp(1, 1, 12)
        exact = phi_log_derivative(cusp, 1.0, chi)
        numeric = finite_difference_log_derivative(cusp, 1.0, chi)
        assert exact == pytest.approx(numeric, abs=1e-6)

    def test_induced_character(self):
        """Test a character of conductor 5 at level 20."""
        chi = quadratic_mod5().induce(20)
        for cusp in (Cusp(1, 1, 20), Cusp(1, 2, 20), Cusp(1, 4, 20)):
            assert phi_log_derivative(cusp, 0.7, chi) == pytest.approx(
                finite_difference_log_derivative(cusp, 0.7, chi), abs=1e-6)

    def test_reflection(self):
        """Test T -> -T together with chi -> conj chi conjugates the value."""
        chi = primitive_even(9).induce(18)
        cusp = Cusp(1, 1, 18)
        assert phi_log_derivative(cusp, -1.0, chi.conj()) == pytest.approx(
            phi_log_derivative(cusp, 1.0, chi).conjugate(), abs=1e-10)

    def test_vanishing_entry(self):
        """Test that an identically zero entry is refused."""
        chi = quadratic_mod5().induce(20)
        with pytest.raises(DomainError):
            phi_log_derivative(Cusp(1, 20, 20), 1.0, chi)


class TestNonsingularDecay:
    """Test nonsingular_decay_probe."""

    HEIGHTS = [2.0, 3.0, 4.0, 5.0, 6.0, 8.0]

    def test_decay_at_level_nine(self):
        """Test that E_oo decays at 1/3 for a primitive character mod 9."""
        chi = primitive_even(9)
        profile = nonsingular_decay_probe(Cusp(1, 9, 9), Cusp(1, 3, 9), chi, 0.5 + 0.5j, self.HEIGHTS)
        assert all(later < earlier for earlier, later in zip(profile, profile[1:]))
        assert profile[-1] / profile[2] < 0.7
        tail = nonsingular_decay_probe(Cusp(1, 9, 9), Cusp(1, 3, 9), chi, 0.5 + 0.5j, [10.0, 50.0])
        assert max(tail) < 0.05

    @pytest.mark.parametrize("level, conductor, target", [(12, 12, Cusp(1, 2, 12)), (25, 25, Cusp(1, 5, 25))])
    def test_decay_elsewhere(self, level, conductor, target):
        """Test decay at other cusps outside C_chi(N)."""
        chi = primitive_even(conductor)
        source = singular_cusps(level, chi)[0]
        profile = nonsingular_decay_probe(source, target, chi, 0.5 + 0.5j, [2.0, 4.0, 50.0])
        assert profile[1] < profile[0]
        assert profile[2] < 0.05

    def test_singular_control_grows(self):
        """Test that at the singular cusp oo the series grows like sqrt(y)."""
        chi = primitive_even(9)
        profile = nonsingular_decay_probe(Cusp(1, 9, 9), Cusp(1, 9, 9), chi, 0.5 + 0.5j, self.HEIGHTS)
        assert all(later > earlier for earlier, later in zip(profile, profile[1:]))
        assert profile[-1] == pytest.approx(math.sqrt(8.0), rel=1e-3)
