"""
Tests for the regularizing kernel and its Atkin-Lehner variant.
"""
import numpy as np
import pytest

from src.domain.characters.character_group import primitive_characters
from src.domain.characters.dirichlet_character import DirichletCharacter
from src.domain.cusps.cusp import Cusp
from src.domain.cusps.cusp_service import atkin_lehner_complement, cusp_set
from src.domain.reg.kernel import (
    FINITE_PART,
    SERIES,
    KernelTerm,
    RegKernel,
    atkin_lehner_log_derivative,
    build_atkin_lehner_kernel,
    build_kernel,
    cancellation_probe,
    infinity_cusp,
    kernel_limit_oracle,
    probe_all_cusps,
)
from src.domain.scatter.scattering import phi_atkin_lehner
from src.domain.shared.errors import DomainError

POINTS = np.array([0.15 + 1.1j, -0.3 + 0.7j, 0.4 + 1.9j])


def primitive_even(modulus):
    """Some even primitive character mod the modulus."""
    return next(chi for chi in primitive_characters(modulus) if chi.is_even)


class TestKernelTerm:
    """Test KernelTerm validation."""

    def test_unknown_kind(self):
        """Test that unknown kinds are rejected."""
        with pytest.raises(ValueError):
            KernelTerm(1.0, Cusp(1, 1, 1), "residue")

    def test_series_needs_s(self):
        """Test that series terms need a spectral parameter."""
        with pytest.raises(ValueError):
            KernelTerm(1.0, Cusp(1, 1, 1), SERIES)


class TestBuildKernel:
    """Test build_kernel."""

    def test_t_zero_rejected(self):
        """Test that T = 0 is rejected."""
        with pytest.raises(DomainError):
            build_kernel(5, t=0.0)

    def test_trivial_character_terms(self):
        """Test the term structure at N = 5 for the trivial character."""
        kernel = build_kernel(5, t=1.0)
        kinds = [term.kind for term in kernel.terms]
        assert kinds.count(SERIES) == 2
        assert set(kernel.finite_part_cusps()) == {Cusp(1, 1, 5), Cusp(1, 5, 5)}
        assert isinstance(kernel, RegKernel)

    def test_series_terms_conjugate(self):
        """Test that the two series terms form 2 Re of one term."""
        series = [term for term in build_kernel(6, t=1.0).terms if term.kind == SERIES]
        assert series[0].coefficient == pytest.approx(series[1].coefficient.conjugate())
        assert series[0].s == pytest.approx(series[1].s.conjugate())

    def test_nontrivial_character_has_no_series(self):
        """Test that phi_{oo oo} = 0 removes the series terms."""
        kernel = build_kernel(5, primitive_even(5), 1.0)
        assert all(term.kind == FINITE_PART for term in kernel.terms)
        assert kernel.finite_part_cusps() == [infinity_cusp(5), Cusp(1, 1, 5)]

    @pytest.mark.parametrize("level", [2, 5, 6])
    def test_matches_beta_limit(self, level):
        """Test the closed-form kernel against the numeric beta -> 0 limit."""
        kernel = build_kernel(level, t=1.0)
        oracle = kernel_limit_oracle(level, None, 1.0, POINTS)
        assert np.allclose(kernel.evaluate(POINTS), oracle, atol=1e-4)

    def test_matches_beta_limit_with_character(self):
        """Test the closed form against the beta-limit for a primitive character mod 5."""
        chi = primitive_even(5)
        kernel = build_kernel(5, chi, 1.5)
        oracle = kernel_limit_oracle(5, chi, 1.5, POINTS)
        assert np.allclose(kernel.evaluate(POINTS), oracle, atol=1e-4)

    def test_kernel_is_real(self):
        """Test that a scalar evaluation is a float."""
        assert isinstance(build_kernel(3, t=1.0).evaluate(0.1 + 1.2j), float)


class TestAtkinLehnerKernel:
    """Test build_atkin_lehner_kernel."""

    @pytest.mark.parametrize("modulus", [5, 7])
    def test_two_term_groups(self, modulus):
        """Test that the kernel holds FP_a and FP_{a*} only, with |phi|^2 = 1."""
        cusp = Cusp(1, 1, modulus)
        kernel = build_atkin_lehner_kernel(cusp, primitive_even(modulus), 1.0)
        assert kernel.finite_part_cusps() == [cusp, atkin_lehner_complement(cusp)]
        assert kernel.terms[1].coefficient.real == pytest.approx(1.0, abs=1e-10)

    def test_imprimitive_rejected(self):
        """Test that an imprimitive character is rejected."""
        with pytest.raises(DomainError):
            build_atkin_lehner_kernel(Cusp(1, 1, 5), DirichletCharacter.trivial(5), 1.0)

    @pytest.mark.parametrize("modulus,t", [(5, 1.0), (7, 0.7), (13, 2.0)])
    def test_log_derivative_by_difference(self, modulus, t):
        """Test D = -(log phi_{a a*})'(1/2 - iT, conj chi) by a central difference."""
        chi = primitive_even(modulus)
        cusp = Cusp(1, 1, modulus)
        complement = atkin_lehner_complement(cusp)
        dual = chi.conj()
        s = 0.5 - 1j * t
        h = 1e-5
        slope = (phi_atkin_lehner(cusp, complement, s + h, dual)
                 - phi_atkin_lehner(cusp, complement, s - h, dual)) / (2 * h)
        expected = -(slope / phi_atkin_lehner(cusp, complement, s, dual)).real
        assert atkin_lehner_log_derivative(cusp, t, chi) == pytest.approx(expected, abs=1e-6)


class TestCancellation:
    """Test that the kernel removes the growth of |E|^2 at every cusp."""

    @pytest.mark.slow
    @pytest.mark.parametrize("level", [5, 7, 12])
    def test_trivial_character_bounded(self, level):
        """Test ||E|^2 - K| stays bounded from y = 10 to 40 at every cusp."""
        kernel = build_kernel(level, t=1.0)
        for cusp, profile in probe_all_cusps(kernel).items():
            assert max(profile) <= 5 * profile[0], cusp

    @pytest.mark.slow
    @pytest.mark.parametrize("modulus", [5, 7])
    def test_atkin_lehner_bounded(self, modulus):
        """Test the Atkin-Lehner kernel at every cusp of a prime level."""
        kernel = build_atkin_lehner_kernel(Cusp(1, 1, modulus), primitive_even(modulus), 1.0)
        for cusp, profile in probe_all_cusps(kernel).items():
            assert max(profile) <= 5 * profile[0], cusp

    def test_density_alone_grows(self):
        """Test that |E|^2 without the kernel grows like y at oo."""
        kernel = build_kernel(5, primitive_even(5), 1.0)
        low = np.max(kernel.source_density(np.array([0.0, 0.5]) + 10j))
        high = np.max(kernel.source_density(np.array([0.0, 0.5]) + 40j))
        assert high > 3 * low

    def test_probe_shape(self):
        """Test that the probe returns one value per height."""
        kernel = build_kernel(2, t=1.0)
        assert len(cancellation_probe(kernel, cusp_set(2)[0], heights=(10.0, 20.0), samples=4)) == 2
