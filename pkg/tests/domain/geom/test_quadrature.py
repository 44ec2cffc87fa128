"""
Tests for quadrature over Y0(L).
"""
import math

import mpmath
import numpy as np
import pytest

from src.domain.geom.bump import TestFunction, bump_profile
from src.domain.geom.quadrature import (
    QuadratureSpec,
    bump_integral,
    constant_one,
    inner_product,
    integrate,
    pair_with_test_function,
)
from src.domain.shared.errors import AccuracyError


def tanh_sinh_bump_integral(phi):
    """int b(x) dx * int b(y) dy / y^2 by mpmath's tanh-sinh rule."""
    x_lo, x_hi, y_lo, y_hi = phi.support

    def b(t):
        return mpmath.exp(1 - 1 / (1 - t * t)) if abs(t) < 1 else mpmath.mpf(0)

    x_part = mpmath.quad(lambda x: b((2 * x - x_lo - x_hi) / (x_hi - x_lo)), [x_lo, x_hi])
    y_part = mpmath.quad(lambda y: b((2 * y - y_lo - y_hi) / (y_hi - y_lo)) / y ** 2, [y_lo, y_hi])
    return float(x_part * y_part)


class TestQuadratureSpec:
    """Test QuadratureSpec validation."""

    def test_defaults(self):
        """Test the default values."""
        spec = QuadratureSpec()
        assert spec.resolution == 48
        assert spec.y_max == 20.0

    def test_rejects_coarse_grid(self):
        """Test resolution >= 16."""
        with pytest.raises(ValueError):
            QuadratureSpec(resolution=8)

    def test_rejects_low_cutoff(self):
        """Test y_max >= 5."""
        with pytest.raises(ValueError):
            QuadratureSpec(y_max=3.0)


class TestVolumes:
    """Test <1, 1>_L."""

    def test_level_one(self):
        """Test <1, 1>_1 = pi/3."""
        assert inner_product(constant_one, constant_one, 1) == pytest.approx(math.pi / 3, abs=1e-6)

    def test_level_six(self):
        """Test <1, 1>_6 = 12 pi/3 = 4 pi."""
        assert inner_product(constant_one, constant_one, 6) == pytest.approx(4 * math.pi, abs=1e-5)

    def test_truncated_domain(self):
        """Test that cutting D at y_max removes exactly 1/y_max."""
        spec = QuadratureSpec(y_max=10.0)
        result = integrate(constant_one, 1, spec, truncate=True)
        assert result.value.real == pytest.approx(math.pi / 3 - 0.1, abs=1e-8)


class TestBumpIntegrals:
    """Test integrals against the test functions."""

    def test_bump_integral_against_tanh_sinh(self):
        """Test the product Gauss rule against tanh-sinh."""
        for phi in (TestFunction.standard(), TestFunction.high()):
            assert bump_integral(phi) == pytest.approx(tanh_sinh_bump_integral(phi), rel=1e-9)

    @pytest.mark.parametrize("coset", [0, 3, 7])
    def test_each_coset_has_full_mass(self, coset):
        """Test <1, phi_j>_M = <1, phi_0>_1 for M = 6."""
        phi = TestFunction.standard(level=6, coset=coset)
        value = pair_with_test_function(constant_one, phi, 6).value
        assert value.real == pytest.approx(bump_integral(phi), rel=1e-6)

    def test_phi0_at_higher_level(self):
        """Test <1, phi_0>_N = nu(N) <1, phi_0>_1."""
        phi = TestFunction.standard()
        value = pair_with_test_function(constant_one, phi, 4).value
        assert value.real == pytest.approx(6 * bump_integral(phi), rel=1e-6)

    def test_whole_domain_rule_agrees_with_support_rule(self):
        """Test that integrating phi_0 over all of D equals the support integral."""
        phi = TestFunction.standard()
        whole = inner_product(constant_one, phi, 1, QuadratureSpec(resolution=64))
        assert whole.real == pytest.approx(bump_integral(phi), rel=1e-5)

    def test_refinement_converges(self):
        """Test that doubling the grid changes <y, phi_0> by less than the tolerance."""
        phi = TestFunction.standard()
        coarse = pair_with_test_function(lambda z: np.imag(z), phi, 1, QuadratureSpec(resolution=32)).value
        fine = pair_with_test_function(lambda z: np.imag(z), phi, 1, QuadratureSpec(resolution=64)).value
        assert abs(coarse - fine) < 2e-6 * abs(fine)

    def test_deterministic(self):
        """Test that repeated runs agree bit for bit."""
        phi = TestFunction.standard(level=3)
        first = pair_with_test_function(lambda z: np.imag(z) ** 0.5, phi, 6).value
        second = pair_with_test_function(lambda z: np.imag(z) ** 0.5, phi, 6).value
        assert first == second

    def test_custom_mapper(self):
        """Test that an injected mapper gives the same value as the builtin map."""
        phi = TestFunction.standard()
        calls = []

        def recording_map(func, items):
            items = list(items)
            calls.append(len(items))
            return [func(item) for item in items]

        plain = pair_with_test_function(constant_one, phi, 2).value
        mapped = pair_with_test_function(constant_one, phi, 2, mapper=recording_map).value
        assert mapped == plain
        assert calls and calls[0] == 3


class TestAccuracy:
    """Test the refinement failure path."""

    def test_non_convergent_refinement(self):
        """Test that a singular integrand raises AccuracyError."""
        spec = QuadratureSpec(resolution=16, target_rel_error=1e-14, max_refinements=1)
        with pytest.raises(AccuracyError):
            integrate(lambda z: np.imag(z) ** 0.95, 1, spec)

    def test_profile_used_by_oracle_matches(self):
        """Test that the oracle profile and bump_profile agree."""
        t = np.array([-0.5, 0.0, 0.7])
        expected = np.exp(1 - 1 / (1 - t ** 2))
        assert np.allclose(bump_profile(t), expected)
