"""
Tests for constant terms of E_{chi1,chi2}(K gamma z, s) and their numerical extraction.
"""
import numpy as np
import pytest

from src.domain.characters.character_group import primitive_characters
from src.domain.characters.dirichlet_character import DirichletCharacter
from src.domain.cusps.cusp import Cusp
from src.domain.cusps.cusp_service import cusp_set, scaling_matrix
from src.domain.cusps.gl2z import GL2Z
from src.domain.eisen.char_eisenstein import eval_char_eisenstein, theta_ratio
from src.domain.eisen.cusp_eisenstein import eval_cusp_eisenstein
from src.domain.eisen.eisenstein_series import CharAttached, CuspAttached
from src.domain.scatter.constant_terms import (
    ConstantTermPair,
    constant_term_coeffs,
    extract_constant_term,
    fit_powers,
    period_average,
)
from src.domain.scatter.scattering import delta_general, phi_general
from src.domain.shared.errors import DomainError

ONE = DirichletCharacter.trivial(1)
S = 0.8 + 0.5j


def quadratic_mod5():
    """The even quadratic character mod 5."""
    return next(chi for chi in primitive_characters(5) if chi.is_even)


def odd_pair():
    """An odd character mod 3 with an odd character mod 4."""
    return primitive_characters(3)[0], primitive_characters(4)[0]


def averaged_series(chi1, chi2, dilation, gamma, y, s):
    """x-average of E_{chi1,chi2}(K gamma z) over the period q1 q2 K."""
    series = CharAttached(chi1, chi2, dilation)
    period = chi1.modulus * chi2.modulus * dilation
    return period_average(lambda z: eval_char_eisenstein(series, gamma.act(z), s), y, period, 8 * period)


class TestClosedForm:
    """Test the closed-form coefficients."""

    def test_level_one_at_infinity(self):
        """Test C = 1 for E(z, s) at oo."""
        pair = constant_term_coeffs(ONE, ONE, 1, GL2Z.identity(), 2.0)
        assert pair.C == pytest.approx(1)
        assert pair.D == pytest.approx(theta_ratio(ONE, ONE, 2.0))

    def test_leading_vanishes_off_divisibility(self):
        """Test C = 0 when q2 does not divide f."""
        pair = constant_term_coeffs(ONE, quadratic_mod5(), 1, GL2Z.from_left_column(1, 2), S)
        assert pair.C == 0

    def test_dilation_at_infinity(self):
        """Test C = (q2 K)^s at oo when q1 = 1."""
        chi = quadratic_mod5()
        pair = constant_term_coeffs(ONE, chi, 3, GL2Z.identity(), S)
        assert pair.C == pytest.approx(15 ** S)
        assert pair.D == 0

    def test_rejects_zero_dilation(self):
        """Test K >= 1."""
        with pytest.raises(DomainError):
            constant_term_coeffs(ONE, ONE, 0, GL2Z.identity(), S)

    def test_pair_value_object(self):
        """Test evaluation and equality of ConstantTermPair."""
        pair = ConstantTermPair(2, 3j)
        assert pair.at(4.0, 0.5) == pytest.approx(4 + 6j)
        assert pair == ConstantTermPair(2, 3j)
        assert pair.to_dict()['D'] == {'re': 0.0, 'im': 3.0}


class TestAsymptotics:
    """Test C y^s + D y^{1-s} against the x-average of the series."""

    def test_inversion_for_conductors_one_and_five(self):
        """Test E_{1,chi5}(-1/z) at y = 40."""
        chi = quadratic_mod5()
        gamma = GL2Z(0, -1, 1, 0)
        pair = constant_term_coeffs(ONE, chi, 1, gamma, S)
        assert pair.C == 0
        value = averaged_series(ONE, chi, 1, gamma, 40.0, S)
        assert abs(value - pair.at(40.0, S)) <= 1e-8 * max(1.0, abs(pair.at(40.0, S)))

    @pytest.mark.parametrize("dilation", [1, 2])
    @pytest.mark.parametrize("column", [(1, 0), (0, 1), (1, 5), (2, 5), (1, 10)])
    def test_conductors_one_and_five(self, dilation, column):
        """Test the trivial/quadratic pair in both orders for several gamma and K."""
        chi = quadratic_mod5()
        gamma = GL2Z.from_left_column(*column)
        for chi1, chi2 in ((ONE, chi), (chi, ONE)):
            pair = constant_term_coeffs(chi1, chi2, dilation, gamma, S)
            value = averaged_series(chi1, chi2, dilation, gamma, 40.0, S)
            expected = pair.at(40.0, S)
            assert abs(value - expected) <= 1e-7 * max(1.0, abs(expected))

    @pytest.mark.parametrize("column", [(1, 0), (1, 1), (1, 3), (1, 4), (1, 12)])
    def test_odd_characters(self, column):
        """Test an odd pair mod 3 and mod 4."""
        chi1, chi2 = odd_pair()
        gamma = GL2Z.from_left_column(*column)
        pair = constant_term_coeffs(chi1, chi2, 1, gamma, S)
        value = averaged_series(chi1, chi2, 1, gamma, 40.0, S)
        expected = pair.at(40.0, S)
        assert abs(value - expected) <= 1e-7 * max(1.0, abs(expected))


class TestExtraction:
    """Test the least-squares extraction at cusps."""

    def test_fit_recovers_powers(self):
        """Test that exact data is fitted exactly."""
        heights = [10.0, 20.0, 30.0]
        data = [2 * y ** S - 1j * y ** (1 - S) for y in heights]
        pair = fit_powers(heights, data, S)
        assert pair.C == pytest.approx(2)
        assert pair.D == pytest.approx(-1j)

    def test_fit_needs_two_heights(self):
        """Test that a single height is rejected."""
        with pytest.raises(DomainError):
            fit_powers([10.0, 10.0], [1, 1], S)

    @pytest.mark.parametrize("level", [4, 6])
    def test_level_matches_closed_form(self, level):
        """Test extracted (delta, phi) against the closed forms for every pair of cusps."""
        cusps = cusp_set(level)
        for a in cusps:
            series = CuspAttached(a)
            for b in cusps:
                pair = extract_constant_term(series, b, S)
                assert pair.C == pytest.approx(1.0 if a == b else 0.0, abs=1e-6)
                assert pair.D == pytest.approx(phi_general(a, b, S), abs=1e-6)

    def test_pointwise_residual_at_height_thirty(self):
        """Test |E_a(sigma_b z) - delta y^s - phi y^{1-s}| at y = 30."""
        level = 6
        a, b = Cusp(1, 6, level), Cusp(1, 2, level)
        z = np.array([0.1, 0.37, 0.8]) + 30j
        values = eval_cusp_eisenstein(CuspAttached(a), scaling_matrix(b).apply(z), S)
        expected = delta_general(a, b, S) * 30 ** S + phi_general(a, b, S) * 30 ** (1 - S)
        assert np.all(np.abs(values - expected) <= 1e-6)

    def test_non_singular_target_has_no_constant_term(self):
        """Test (0, 0) at a cusp that is not singular."""
        chi = next(c for c in primitive_characters(9) if c.is_even)
        pair = extract_constant_term(CuspAttached(Cusp(1, 9, 9), chi), Cusp(1, 3, 9), S)
        assert abs(pair.C) < 1e-8
        assert abs(pair.D) < 1e-8

    def test_level_mismatch(self):
        """Test that the target must have the series' level."""
        with pytest.raises(DomainError):
            extract_constant_term(CuspAttached(Cusp(1, 4, 4)), Cusp(1, 2, 6), S)
