"""
Tests for the K-Bessel evaluation.
"""
import math

import mpmath
import numpy as np
import pytest

from src.domain.eisen.bessel import DEFAULT_STEP, bessel_k, bessel_k_imag_order, configure_step, configured_step
from src.domain.shared.errors import DomainError

K0_AT_ONE = 0.42102443824070834


def mp_besselk(nu, x):
    """mpmath reference value."""
    return complex(mpmath.besselk(mpmath.mpc(nu.real, nu.imag), x))


class TestImaginaryOrder:
    """Test K_{iT}(x) for real T."""

    def test_k0_at_one(self):
        """Test K_0(1) = 0.42102443824..."""
        assert abs(bessel_k_imag_order(0.0, 1.0) - K0_AT_ONE) < 1e-10

    @pytest.mark.parametrize("x", [0.02, 0.3, 1.0, 4.0, 20.0, 100.0])
    def test_against_mpmath(self, x):
        """Test K_{i}(x) against mpmath across scales."""
        reference = mp_besselk(1j, x).real
        assert abs(bessel_k_imag_order(1.0, x) - reference) <= 1e-10 * abs(reference) + 1e-14

    def test_large_order(self):
        """Test K_{7.5i}(2) against mpmath."""
        reference = mp_besselk(7.5j, 2.0).real
        assert abs(bessel_k_imag_order(7.5, 2.0) - reference) <= 1e-9 * abs(reference) + 1e-15

    def test_symmetry_in_order(self):
        """Test K_{iT} = K_{-iT}."""
        x = np.array([0.05, 0.7, 3.0])
        assert np.allclose(bessel_k_imag_order(2.3, x), bessel_k_imag_order(-2.3, x), rtol=1e-14, atol=0)

    def test_exponential_decay(self):
        """Test K_{i}(20)/K_{i}(10) < e^{-9}."""
        assert bessel_k_imag_order(1.0, 20.0) / bessel_k_imag_order(1.0, 10.0) < math.exp(-9)

    def test_small_argument_branch(self):
        """Test x below 1e-2 against mpmath."""
        reference = mp_besselk(0.8j, 0.004).real
        assert abs(bessel_k_imag_order(0.8, 0.004) - reference) < 1e-12 * abs(reference)

    def test_array_shape_preserved(self):
        """Test that arrays keep their shape."""
        x = np.linspace(0.1, 5, 12).reshape(3, 4)
        assert bessel_k_imag_order(0.5, x).shape == (3, 4)

    def test_rejects_nonpositive_argument(self):
        """Test that x <= 0 is a domain error."""
        with pytest.raises(DomainError):
            bessel_k_imag_order(1.0, 0.0)
        with pytest.raises(DomainError):
            bessel_k(0.5j, np.array([1.0, -2.0]))


class TestComplexOrder:
    """Test K_nu(x) with complex nu = s - 1/2."""

    @pytest.mark.parametrize("nu", [2.5 + 0.4j, 0.5 + 1.3j, -0.3 + 0.8j])
    @pytest.mark.parametrize("x", [0.05, 0.9, 6.0])
    def test_against_mpmath(self, nu, x):
        """Test complex orders against mpmath."""
        value = complex(bessel_k(nu, x))
        reference = mp_besselk(nu, x)
        assert abs(value - reference) <= 1e-10 * abs(reference) + 1e-15

    def test_real_order_uses_scipy(self):
        """Test K_{5/2}(x) against its closed form."""
        x = np.array([0.5, 2.0, 7.0])
        closed = np.sqrt(np.pi / (2 * x)) * np.exp(-x) * (1 + 3 / x + 3 / x ** 2)
        assert np.allclose(bessel_k(2.5, x).real, closed, rtol=1e-12)


class TestConfiguredStep:
    """Test the configurable trapezoid step."""

    def test_finer_step_agrees(self):
        """Test that a finer configured step leaves K_{iT}(x) unchanged."""
        x = np.array([0.3, 2.0, 9.0])
        reference = bessel_k(2.5j, x)
        try:
            configure_step(0.0625)
            assert configured_step() == 0.0625
            assert np.allclose(bessel_k(2.5j, x), reference, rtol=1e-9, atol=1e-14)
        finally:
            configure_step(DEFAULT_STEP)

    @pytest.mark.parametrize("step", [0.0, -0.1, 0.75])
    def test_rejects_bad_step(self, step):
        """Test that steps outside (0, 0.5] are rejected."""
        with pytest.raises(DomainError):
            configure_step(step)
