"""
Main terms of the regularized quantum variance.

Tracing the kernel of |E_oo(z, 1/2 + iT, chi)|^2 from level N down to M | N
gives

    Tr^N_M K(z) = c0 + sum_{g | M} c_g G(g z) + 2 Re sum_{g | M} c'_g E(g z, 1 + 2iT),

and pairing with a test function phi of level M splits off
alpha_phi = <Tr K - c0, phi>_M.
"""

import cmath
import logging
import math
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..arith.multiplicative import divisors, is_prime, mobius, nu_index, prime_divisors
from ..characters.dirichlet_character import DirichletCharacter
from ..cusps.coset_reps import coset_index, coset_reps
from ..cusps.cusp import Cusp
from ..cusps.cusp_service import reduce_cusp, relative_width
from ..cusps.gl2z import GL2Z
from ..eisen.cusp_eisenstein import basis_terms
from ..eisen.hecke import hecke_G_correction
from ..eisen.level1 import RESIDUE, eval_level1, eval_level1_G
from ..geom.bump import TestFunction, hyperbolic_volume
from ..geom.quadrature import Mapper, QuadratureSpec, bump_integral, pair_with_test_function
from ..lfun.dirichlet_l import completed_log_derivative, log_derivative, zeta_ratio_level
from ..scatter.scattering import (
    atkin_lehner_characters,
    finite_difference_log_derivative,
    phi_infinity_entry,
    phi_infinity_row,
    phi_log_derivative,
)
from ..shared.errors import DomainError
from .kernel import ORACLE_STEP, require_nonzero_t, atkin_lehner_log_derivative, infinity_cusp
from .laurent import laurent_data

logger = logging.getLogger(__name__)

GOOD_COSET_ALLOWANCE = 10.0
SWEEP_TS = (0.1, 0.05, 0.025)


def _require_sublevel(level: int, sublevel: int, operation: str) -> None:
    if sublevel < 1 or level % sublevel:
        raise DomainError(f"M={sublevel} must divide N={level}", operation=operation, N=level, M=sublevel)


class TracedForm:
    """c0 + sum c_g G(g z) + 2 Re sum c'_g E(g z, 1 + 2iT) at level M."""

    def __init__(self, level: int, sublevel: int, chi: DirichletCharacter, t: float, c0_exact: float,
                 c0_asymptotic: float, cg: Dict[int, float], cg_prime: Dict[int, complex]) -> None:
        self._level = level
        self._sublevel = sublevel
        self._chi = chi
        self._t = float(t)
        self._c0_exact = float(c0_exact)
        self._c0_asymptotic = float(c0_asymptotic)
        self._cg = dict(sorted(cg.items()))
        self._cg_prime = dict(sorted(cg_prime.items()))
        self.validate()

    @property
    def level(self) -> int:
        """The level N of the kernel."""
        return self._level

    @property
    def sublevel(self) -> int:
        """The level M of the trace."""
        return self._sublevel

    @property
    def chi(self) -> DirichletCharacter:
        """Central character mod N."""
        return self._chi

    @property
    def t(self) -> float:
        """T."""
        return self._t

    @property
    def c0_exact(self) -> float:
        """c0 assembled from the exact Laurent constants."""
        return self._c0_exact

    @property
    def c0_asymptotic(self) -> float:
        """V_M (log(N^2/(M (M, N/q))) + 4 Re L'/L(1+2iT, conj psi))."""
        return self._c0_asymptotic

    @property
    def discrepancy(self) -> float:
        """c0_exact - c0_asymptotic, the bounded error hidden by the asymptotic form."""
        return self._c0_exact - self._c0_asymptotic

    @property
    def cg(self) -> Dict[int, float]:
        """c_g keyed by g | M."""
        return dict(self._cg)

    @property
    def cg_prime(self) -> Dict[int, complex]:
        """c'_g keyed by g | M; empty for nontrivial chi."""
        return dict(self._cg_prime)

    def validate(self) -> None:
        """
        Raises:
            DomainError: If M does not divide N, T = 0 or a coefficient index does not divide M
        """
        _require_sublevel(self._level, self._sublevel, "TracedForm")
        require_nonzero_t(self._t, "TracedForm")
        for g in list(self._cg) + list(self._cg_prime):
            if self._sublevel % g:
                raise DomainError(f"Coefficient index {g} does not divide M={self._sublevel}", operation="TracedForm")

    def coefficient_mass(self) -> float:
        """sum_g (|c_g| + |c'_g|)."""
        return math.fsum(abs(c) for c in self._cg.values()) + math.fsum(abs(c) for c in self._cg_prime.values())

    def fitted_constant(self) -> float:
        """mass * M / max(1, log log (M + 2))^3, the constant of the coefficient bound."""
        scale = max(1.0, math.log(math.log(self._sublevel + 2)))
        return self.coefficient_mass() * self._sublevel / scale ** 3

    def evaluate(self, z: Any) -> Any:
        """Tr^N_M K at a point or array of points."""
        points = np.asarray(z, dtype=complex)
        total = np.full(points.shape, self._c0_exact)
        for g, c in self._cg.items():
            total = total + c * np.asarray(eval_level1_G(g * points))
        s = 1 + 2j * self._t
        for g, c in self._cg_prime.items():
            total = total + 2 * np.real(c * np.asarray(eval_level1(g * points, s)))
        if np.ndim(z) == 0:
            return float(total)
        return total

    def __call__(self, z: Any) -> Any:
        return self.evaluate(z)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'N': self._level,
            'M': self._sublevel,
            'q': self._chi.conductor,
            'T': self._t,
            'c0_exact': self._c0_exact,
            'c0_asymptotic_form': self._c0_asymptotic,
            'discrepancy': self.discrepancy,
            'cg': {str(g): c for g, c in self._cg.items()},
            'cg_prime': {str(g): [c.real, c.imag] for g, c in self._cg_prime.items()},
            'coefficient_mass': self.coefficient_mass(),
            'fitted_constant': self.fitted_constant(),
        }

    def __repr__(self) -> str:
        return f"TracedForm(N={self._level}, M={self._sublevel}, T={self._t}, c0={self._c0_exact:.12g})"


def asymptotic_form_constant(level: int, chi: DirichletCharacter, t: float, sublevel: int) -> float:
    """V_M (log(N^2/(M (M, N/q))) + 4 Re L'/L(1 + 2iT, conj psi)), psi the inducer of chi."""
    psi = chi.primitive_inducer()
    q = psi.modulus
    logarithm = math.log(level * level / (sublevel * gcd(sublevel, level // q)))
    value = logarithm + 4 * log_derivative(1 + 2j * t, psi.conj()).real
    return value / hyperbolic_volume(sublevel)


def traced_kernel(level: int, chi: Optional[DirichletCharacter] = None, t: float = 1.0,
                  sublevel: int = 1) -> TracedForm:
    """
    Tr^N_M of the kernel of |E_oo(z, 1/2 + iT, chi)|^2.

    Business rules:
    - Tr E_a^{(N)}(z, s) = W^M_N(a)^{1-s} E_{a_M}^{(M)}(z, s), a_M the class of a at level M
    - c0 = c_{oo,0} + sum_a |phi_{oo a}|^2 (c_{a_M,0} + V_M (D_a - log W^M_N(a)))
    - c_g = c_{oo,g} + sum_a |phi_{oo a}|^2 c_{a_M,g}, Laurent data at level M
    - c'_g = conj(phi_{oo oo}(1/2+iT)) mu(M/g) M^{-2s} g^s zeta(2s)/L(2s, chi_{0,M}) at s = 1 + 2iT

    Args:
        level: The level N
        chi: Even character mod N, trivial by default
        t: T != 0
        sublevel: M | N

    Returns:
        TracedForm

    Raises:
        DomainError: If T = 0, M does not divide N or chi is odd
    """
    require_nonzero_t(t, "traced_kernel")
    _require_sublevel(level, sublevel, "traced_kernel")
    chi = chi if chi is not None else DirichletCharacter.trivial(level)
    row = phi_infinity_row(level, chi, 0.5 + 1j * t)
    volume_inverse = 1 / hyperbolic_volume(sublevel)
    top = laurent_data(infinity_cusp(sublevel))
    c0 = top.constant
    cg = dict(top.g_coefficients)
    for cusp, entry in row.entries.items():
        mass = abs(entry) ** 2
        if mass == 0:
            continue
        data = laurent_data(reduce_cusp(cusp, sublevel))
        c0 += mass * data.constant
        for g, c in data.g_coefficients.items():
            cg[g] = cg.get(g, 0.0) + mass * c
        derivative = phi_log_derivative(cusp, t, chi).real
        c0 += volume_inverse * mass * (derivative - math.log(relative_width(cusp, sublevel)))
    cg_prime: Dict[int, complex] = {}
    diagonal = row.entries.get(infinity_cusp(level), 0j)
    if diagonal != 0:
        s = 1 + 2j * t
        ratio = zeta_ratio_level(2 * s, sublevel)
        for g in divisors(sublevel):
            mu = mobius(sublevel // g)
            if mu:
                cg_prime[g] = diagonal.conjugate() * mu * cmath.exp(-2 * s * math.log(sublevel) + s * math.log(g)) * ratio
    form = TracedForm(level, sublevel, chi, t, c0, asymptotic_form_constant(level, chi, t, sublevel),
                      {g: c for g, c in cg.items() if c != 0.0}, cg_prime)
    logger.info(f"Traced kernel N={level} -> M={sublevel}, T={t}: c0 = {c0:.12g}, discrepancy {form.discrepancy:.3g}")
    return form


def twisted_residuals(level: int, chi: Optional[DirichletCharacter] = None, t: float = 1.0,
                      sublevel: int = 1) -> Dict[Tuple[DirichletCharacter, int], complex]:
    """
    Total coefficient of each E_{eta,eta}(K z, 1), eta nontrivial, in the traced kernel.

    The coefficients of a twisted term depend on the cusp only through
    conj(eta)(-u); summed over the u-classes with their scattering weights
    they cancel, so every value returned is zero up to rounding.
    """
    _require_sublevel(level, sublevel, "twisted_residuals")
    chi = chi if chi is not None else DirichletCharacter.trivial(level)
    trivial = DirichletCharacter.trivial(sublevel)
    residuals: Dict[Tuple[DirichletCharacter, int], complex] = {}
    for cusp, entry in phi_infinity_row(level, chi, 0.5 + 1j * t).entries.items():
        mass = abs(entry) ** 2
        if mass == 0:
            continue
        for term in basis_terms(reduce_cusp(cusp, sublevel), trivial, 1.0):
            if term.series.chi1.modulus == 1:
                continue
            key = (term.series.chi1, term.series.dilation)
            residuals[key] = residuals.get(key, 0j) + mass * term.coefficient
    return residuals


class WeightedAverage:
    """sum_a |phi_{oo a}|^2 (D_a - log W_a), assembled two ways."""

    def __init__(self, value: complex, closed_form: complex, asymptotic_form: float) -> None:
        self._value = complex(value)
        self._closed_form = complex(closed_form)
        self._asymptotic_form = float(asymptotic_form)

    @property
    def value(self) -> complex:
        """From finite differences of the scattering row."""
        return self._value

    @property
    def closed_form(self) -> complex:
        """From 2 log f + 4 Re Lambda'/Lambda + the two Euler-factor sums."""
        return self._closed_form

    @property
    def asymptotic_form(self) -> float:
        """2 log N + 4 Re L'/L(1+2iT, conj psi)."""
        return self._asymptotic_form

    def path_difference(self) -> float:
        """|value - closed_form|."""
        return abs(self._value - self._closed_form)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'value': [self._value.real, self._value.imag],
            'closed_form': [self._closed_form.real, self._closed_form.imag],
            'asymptotic_form': self._asymptotic_form,
            'path_difference': self.path_difference(),
        }

    def __repr__(self) -> str:
        return f"WeightedAverage(value={self._value:.12g}, asymptotic_form={self._asymptotic_form:.12g})"


def weighted_average(level: int, chi: Optional[DirichletCharacter] = None, t: float = 1.0) -> WeightedAverage:
    """
    sum_a |phi_{oo a}(1/2+iT, chi)|^2 (-(log phi_{oo a})'(1/2-iT, conj chi) - log W_a).

    Business rules:
    - cusps with phi_{oo a} = 0 are skipped
    - D_a - log W_a = 2 log f + 4 Re Lambda'/Lambda(1+2iT, conj psi)
      + 2 sum_{p|N} psi(p) p^{-1+2iT} log p/(1 - psi(p) p^{-1+2iT})
      - 2 sum_{p|N/f} psi(p) p^{2iT} log p/(1 - psi(p) p^{2iT})
    - the result is real: the unitarity identity differentiated along Re s = 1/2

    Raises:
        DomainError: If T = 0
    """
    require_nonzero_t(t, "weighted_average")
    chi = chi if chi is not None else DirichletCharacter.trivial(level)
    psi = chi.primitive_inducer()
    row = phi_infinity_row(level, chi, 0.5 + 1j * t)
    gamma_part = 4 * completed_log_derivative(1 + 2j * t, psi.conj()).real
    value = 0j
    closed = 0j
    for cusp, entry in row.entries.items():
        mass = abs(entry) ** 2
        if mass == 0:
            continue
        value += mass * (finite_difference_log_derivative(cusp, t, chi) - math.log(cusp.width))
        piece = complex(2 * math.log(cusp.f) + gamma_part)
        for p in prime_divisors(level):
            term = psi(p) * cmath.exp((-1 + 2j * t) * math.log(p))
            piece += 2 * term * math.log(p) / (1 - term)
        for p in prime_divisors(level // cusp.f):
            term = psi(p) * cmath.exp(2j * t * math.log(p))
            piece -= 2 * term * math.log(p) / (1 - term)
        closed += mass * piece
    asymptotic = 2 * math.log(level) + 4 * log_derivative(1 + 2j * t, psi.conj()).real
    result = WeightedAverage(value, closed, asymptotic)
    logger.debug(f"Weighted average at N={level}, T={t}: {result.value:.12g}")
    return result


class AlphaResult:
    """alpha_phi with its summands."""

    def __init__(self, value: float, summands: Dict[str, float], error: float) -> None:
        self._value = float(value)
        self._summands = dict(summands)
        self._error = float(error)

    @property
    def value(self) -> float:
        """alpha_phi."""
        return self._value

    @property
    def summands(self) -> Dict[str, float]:
        """Each c_g <G|_g, phi> ('G:g') and 2 Re c'_g <E(g., 1+2iT), phi> ('E:g')."""
        return dict(self._summands)

    @property
    def error(self) -> float:
        """Sum of the quadrature error estimates."""
        return self._error

    def to_dict(self) -> Dict[str, Any]:
        return {'value': self._value, 'summands': dict(self._summands), 'error': self._error}

    def __repr__(self) -> str:
        return f"AlphaResult(value={self._value:.12g}, summands={len(self._summands)})"


def alpha_phi(form: TracedForm, phi: TestFunction, spec: Optional[QuadratureSpec] = None,
              mapper: Optional[Mapper] = None) -> AlphaResult:
    """
    alpha_phi = sum_g c_g <G|_g, phi>_M + 2 Re sum_g c'_g <E(g., 1+2iT), phi>_M.

    Raises:
        DomainError: If phi is not of level M
        AccuracyError: If a quadrature does not converge
    """
    if phi.level != form.sublevel:
        raise DomainError(f"Test function of level {phi.level} paired at M={form.sublevel}", operation="alpha_phi")
    summands: Dict[str, float] = {}
    error = 0.0
    for g, c in form.cg.items():
        result = pair_with_test_function(lambda z, g=g: eval_level1_G(g * z), phi, form.sublevel, spec, mapper)
        summands[f"G:{g}"] = c * result.value.real
        error += abs(c) * result.error
    s = 1 + 2j * form.t
    for g, c in form.cg_prime.items():
        result = pair_with_test_function(lambda z, g=g: eval_level1(g * z, s), phi, form.sublevel, spec, mapper)
        summands[f"E:{g}"] = 2 * (c * result.value).real
        error += 2 * abs(c) * result.error
    value = math.fsum(summands.values())
    logger.debug(f"alpha for {phi!r}: {value:.12g}")
    return AlphaResult(value, summands, error)


def main_term_pairing(form: TracedForm, phi: TestFunction, spec: Optional[QuadratureSpec] = None,
                      mapper: Optional[Mapper] = None) -> float:
    """<Tr K, phi>_M = c0 <1, phi> + alpha_phi."""
    return form.c0_exact * bump_integral(phi) + alpha_phi(form, phi, spec, mapper).value


def level_test_function(phi0: TestFunction, level: int, coset: Optional[int]) -> TestFunction:
    """phi0's bump as phi_j at level M."""
    _, _, y_lo, y_hi = phi0.support
    return TestFunction(phi0.x_center, phi0.x_halfwidth, y_lo, y_hi, level, coset)


class ConsistencyReport:
    """sum_j alpha_{phi_j} by quadrature and by Hecke operators."""

    def __init__(self, sublevel: int, by_quadrature: float, by_hecke: float, predicted: float,
                 log_coefficient: Optional[float], g_coefficient: float) -> None:
        self._sublevel = sublevel
        self._by_quadrature = float(by_quadrature)
        self._by_hecke = float(by_hecke)
        self._predicted = float(predicted)
        self._log_coefficient = log_coefficient
        self._g_coefficient = float(g_coefficient)

    @property
    def sublevel(self) -> int:
        """M."""
        return self._sublevel

    @property
    def by_quadrature(self) -> float:
        """sum over the cosets of alpha_{phi_j}."""
        return self._by_quadrature

    @property
    def by_hecke(self) -> float:
        """The same sum through Tr^g_1(f|_g) = sqrt(g) T_g f."""
        return self._by_hecke

    @property
    def predicted(self) -> float:
        """(3/pi) <1, phi0> log(M (M, N/q)) + 2 <G, phi0>."""
        return self._predicted

    @property
    def log_coefficient(self) -> Optional[float]:
        """The <1, phi0> coefficient over (3/pi) log M, tending to 1; None at M = 1."""
        return self._log_coefficient

    @property
    def g_coefficient(self) -> float:
        """The <G, phi0> coefficient, tending to 2."""
        return self._g_coefficient

    def route_difference(self) -> float:
        """|by_quadrature - by_hecke|."""
        return abs(self._by_quadrature - self._by_hecke)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'M': self._sublevel,
            'by_quadrature': self._by_quadrature,
            'by_hecke': self._by_hecke,
            'route_difference': self.route_difference(),
            'predicted': self._predicted,
            'log_coefficient': self._log_coefficient,
            'g_coefficient': self._g_coefficient,
        }

    def __repr__(self) -> str:
        return f"ConsistencyReport(M={self._sublevel}, quadrature={self._by_quadrature:.10g}, hecke={self._by_hecke:.10g})"


def consistency_sum(form: TracedForm, phi0: Optional[TestFunction] = None, spec: Optional[QuadratureSpec] = None,
                    mapper: Optional[Mapper] = None) -> ConsistencyReport:
    """
    sum_j alpha_{phi_j} over all cosets of level M, two ways.

    Business rules:
    - <G|_g, phi0>_M = (nu(M)/nu(g)) sqrt(g) (lambda(g) <G, phi0>_1 + h(g) <1, phi0>_1)
      with lambda(g) = sqrt(g) sum_{b|g} 1/b and h(g) the Hecke defect of G
    - for M prime the <G, phi0> coefficient is exactly 2 and the log
      coefficient is (M-1)/(M+1)

    Raises:
        DomainError: If M is not squarefree or some c'_g is nonzero
    """
    sublevel = form.sublevel
    if mobius(sublevel) == 0:
        raise DomainError(f"The Hecke route needs squarefree M, got {sublevel}", operation="consistency_sum")
    if form.cg_prime:
        raise DomainError("The Hecke route needs c'_g = 0 (nontrivial character)", operation="consistency_sum")
    phi0 = phi0 or TestFunction.standard(1)
    if phi0.level != 1 or phi0.coset is not None:
        raise DomainError("consistency_sum expects the level-one bump phi0", operation="consistency_sum")
    total = 0.0
    for j in range(len(coset_reps(sublevel))):
        total += alpha_phi(form, level_test_function(phi0, sublevel, j), spec, mapper).value
    one = bump_integral(phi0)
    g_pairing = pair_with_test_function(eval_level1_G, phi0, 1, spec, mapper).value.real
    one_coefficient = 0.0
    g_coefficient = 0.0
    for g, c in form.cg.items():
        scale = c * nu_index(sublevel) / nu_index(g) * math.sqrt(g)
        eigenvalue = math.sqrt(g) * math.fsum(1 / b for b in divisors(g))
        g_coefficient += scale * eigenvalue
        one_coefficient += scale * hecke_G_correction(g)
    by_hecke = one_coefficient * one + g_coefficient * g_pairing
    q = form.chi.conductor
    predicted = RESIDUE * one * math.log(sublevel * gcd(sublevel, form.level // q)) + 2 * g_pairing
    log_coefficient = one_coefficient / (RESIDUE * math.log(sublevel)) if sublevel > 1 else None
    report = ConsistencyReport(sublevel, total, by_hecke, predicted, log_coefficient, g_coefficient)
    logger.info(f"Consistency sum at M={sublevel}: routes differ by {report.route_difference():.2e}")
    return report


class AtkinLehnerMainTerm:
    """<K, phi0>_N for the Atkin-Lehner kernel, in closed form and in its asymptotic form."""

    def __init__(self, cusp: Cusp, value: float, asymptotic_form: float, log_derivative_value: float) -> None:
        self._cusp = cusp
        self._value = float(value)
        self._asymptotic_form = float(asymptotic_form)
        self._log_derivative_value = float(log_derivative_value)

    @property
    def cusp(self) -> Cusp:
        """The Atkin-Lehner cusp a."""
        return self._cusp

    @property
    def value(self) -> float:
        """(3/pi)(D - log N) <1, phi0> + 2 <G, phi0>."""
        return self._value

    @property
    def asymptotic_form(self) -> float:
        """(3/pi)(2 log N + 4 Re L'/L(1+2iT, conj psi)) <1, phi0> + 2 <G, phi0>."""
        return self._asymptotic_form

    @property
    def log_derivative_value(self) -> float:
        """D = -(log phi_{a a*})'(1/2 - iT, conj chi)."""
        return self._log_derivative_value

    def to_dict(self) -> Dict[str, Any]:
        return {
            'cusp': self._cusp.to_dict(),
            'value': self._value,
            'asymptotic_form': self._asymptotic_form,
            'D': self._log_derivative_value,
        }

    def __repr__(self) -> str:
        return f"AtkinLehnerMainTerm(cusp={self._cusp}, value={self._value:.12g})"


def atkin_lehner_main_term(cusp: Cusp, chi: DirichletCharacter, t: float = 1.0,
                           phi0: Optional[TestFunction] = None, spec: Optional[QuadratureSpec] = None,
                           mapper: Optional[Mapper] = None) -> AtkinLehnerMainTerm:
    """
    <K, phi0>_N for the kernel of |E_a(z, 1/2 + iT, chi)|^2, chi primitive, a Atkin-Lehner.

    Business rules:
    - Tr^N_1 FP_a = G - (3/pi) log W_a and W_a W_{a*} = N
    - so Tr^N_1 K = 2 G + (3/pi)(D - log N)

    Raises:
        DomainError: If T = 0, chi is imprimitive or a is not Atkin-Lehner
    """
    require_nonzero_t(t, "atkin_lehner_main_term")
    phi0 = phi0 or TestFunction.standard(1)
    derivative = atkin_lehner_log_derivative(cusp, t, chi)
    one = bump_integral(phi0)
    g_pairing = pair_with_test_function(eval_level1_G, phi0, 1, spec, mapper).value.real
    level = cusp.level
    value = RESIDUE * (derivative - math.log(level)) * one + 2 * g_pairing
    chi1, chi2 = atkin_lehner_characters(cusp, chi.conj())
    psi = chi1.product(chi2).primitive_inducer()
    asymptotic = RESIDUE * (2 * math.log(level) + 4 * log_derivative(1 + 2j * t, psi.conj()).real) * one + 2 * g_pairing
    return AtkinLehnerMainTerm(cusp, value, asymptotic, derivative)


def _level_series(sublevel: int, cusp_f: int, z: Any, s: complex) -> Any:
    # E^{(M)}_oo and E^{(M)}_0 for M prime in terms of E(z, s) and E(Mz, s)
    power = cmath.exp(-s * math.log(sublevel))
    denominator = 1 - power * power
    plain = eval_level1(z, s)
    dilated = eval_level1(sublevel * np.asarray(z), s)
    if cusp_f == sublevel:
        return (power * dilated - power * power * plain) / denominator
    return (power * plain - power * power * dilated) / denominator


def prime_level_example(level: int, chi: DirichletCharacter, t: float, sublevel: int, z: Any,
                        beta: float = ORACLE_STEP) -> Any:
    """
    Tr^N_M K for chi primitive mod N and M prime, from level-one series alone.

    Business rules:
    - only the cusp 0 of level N has phi_{oo 0} != 0, and W^M_N(0) = N/M
    - Tr K = lim (E^{(M)}_oo(z, 1+beta)
      + (N/M)^beta phi_{oo 0}(1/2+iT, chi) phi_{oo 0}(1/2+beta-iT, conj chi) E^{(M)}_0(z, 1-beta))
    - the limit is taken as 2 K(beta/2) - K(beta)

    Raises:
        DomainError: If chi is imprimitive, M is not a prime divisor of N or T = 0
    """
    require_nonzero_t(t, "prime_level_example")
    if not chi.is_primitive or chi.modulus != level:
        raise DomainError("The worked trace needs a primitive character mod N", operation="prime_level_example")
    if not is_prime(sublevel) or level % sublevel:
        raise DomainError(f"M={sublevel} must be a prime divisor of N={level}", operation="prime_level_example")
    zero = Cusp(1, 1, level)
    entry = phi_infinity_entry(zero, 0.5 + 1j * t, chi)

    def combination(b: float) -> Any:
        weight = (level / sublevel) ** b * entry * phi_infinity_entry(zero, 0.5 + b - 1j * t, chi.conj())
        return _level_series(sublevel, sublevel, z, 1 + b) + weight * _level_series(sublevel, 1, z, 1 - b)

    value = np.real(2 * combination(beta / 2) - combination(beta))
    if np.ndim(value) == 0:
        return float(value)
    return value


class ObstructionReport:
    """A coset where alpha_phi dominates the main term, next to one where it does not."""

    def __init__(self, bad_coset: int, bad_summand: float, main_term: float, good_coset: Optional[int],
                 good_alpha: Optional[float], bound: float) -> None:
        self._bad_coset = bad_coset
        self._bad_summand = float(bad_summand)
        self._main_term = float(main_term)
        self._good_coset = good_coset
        self._good_alpha = good_alpha
        self._bound = float(bound)

    @property
    def bad_coset(self) -> int:
        """Coset of the identity, whose bump sits high in the cusp."""
        return self._bad_coset

    @property
    def bad_summand(self) -> float:
        """c_M <G|_M, phi> on the bad coset."""
        return self._bad_summand

    @property
    def main_term(self) -> float:
        """c0 <1, phi> on the bad coset."""
        return self._main_term

    @property
    def ratio(self) -> float:
        """|bad_summand| / |main_term|."""
        return abs(self._bad_summand) / abs(self._main_term) if self._main_term else math.inf

    @property
    def good_coset(self) -> Optional[int]:
        """First coset with |alpha| within the bound, if any."""
        return self._good_coset

    @property
    def good_alpha(self) -> Optional[float]:
        """alpha on the good coset."""
        return self._good_alpha

    @property
    def bound(self) -> float:
        """10 M^{-1} ||phi0||_1."""
        return self._bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            'bad_coset': self._bad_coset,
            'bad_summand': self._bad_summand,
            'main_term': self._main_term,
            'ratio': self.ratio,
            'good_coset': self._good_coset,
            'good_alpha': self._good_alpha,
            'bound': self._bound,
        }

    def __repr__(self) -> str:
        return f"ObstructionReport(ratio={self.ratio:.4g}, good_coset={self._good_coset})"


def obstruction_report(form: TracedForm, spec: Optional[QuadratureSpec] = None,
                       mapper: Optional[Mapper] = None) -> ObstructionReport:
    """
    Compare a bump pushed up the cusp with the cosets where alpha stays small.

    Business rules:
    - the bad coset is that of the identity, with the bump on 2 <= y <= 3,
      where G(Mz) ~ My makes c_M <G|_M, phi> of order one
    - good cosets satisfy |alpha_phi| <= 10 M^{-1} ||phi0||_1 for the standard bump
    """
    sublevel = form.sublevel
    if sublevel not in form.cg:
        raise DomainError(f"c_M vanishes at M={sublevel}", operation="obstruction_report")
    bad = coset_index(GL2Z.identity(), sublevel)
    high = TestFunction.high(sublevel, bad)
    dilated = pair_with_test_function(lambda z: eval_level1_G(sublevel * z), high, sublevel, spec, mapper)
    bad_summand = form.cg[sublevel] * dilated.value.real
    main = form.c0_exact * bump_integral(high)
    standard = TestFunction.standard(1)
    bound = GOOD_COSET_ALLOWANCE / sublevel * bump_integral(standard)
    good_coset, good_alpha = None, None
    for j in range(len(coset_reps(sublevel))):
        alpha = alpha_phi(form, level_test_function(standard, sublevel, j), spec, mapper).value
        if abs(alpha) <= bound:
            good_coset, good_alpha = j, alpha
            break
    report = ObstructionReport(bad, bad_summand, main, good_coset, good_alpha, bound)
    logger.info(f"Obstruction at M={sublevel}: ratio {report.ratio:.3g}, good coset {good_coset}")
    return report


class TZeroSweep:
    """<K, phi0>_N at decreasing T with a linear extrapolation to T = 0."""

    def __init__(self, level: int, ts: Sequence[float], values: Sequence[float]) -> None:
        self._level = level
        self._ts = [float(t) for t in ts]
        self._values = [float(v) for v in values]
        self.validate()

    @property
    def level(self) -> int:
        """The level N."""
        return self._level

    @property
    def ts(self) -> List[float]:
        """The T values, decreasing."""
        return list(self._ts)

    @property
    def values(self) -> List[float]:
        """<K, phi0>_N at each T."""
        return list(self._values)

    def validate(self) -> None:
        """
        Raises:
            ValueError: If fewer than two points are given or the lengths differ
        """
        if len(self._ts) < 2 or len(self._ts) != len(self._values):
            raise ValueError("A T-sweep needs at least two (T, value) pairs")

    def extrapolated(self) -> float:
        """The line through the last two points, evaluated at T = 0."""
        t1, t2 = self._ts[-2], self._ts[-1]
        v1, v2 = self._values[-2], self._values[-1]
        return v2 - t2 * (v1 - v2) / (t1 - t2)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'N': self._level,
            'points': [{'T': t, 'value': v} for t, v in zip(self._ts, self._values)],
            'extrapolated': self.extrapolated(),
        }

    def __repr__(self) -> str:
        return f"TZeroSweep(N={self._level}, extrapolated={self.extrapolated():.6g})"


def t_zero_sweep(level: int, ts: Sequence[float] = SWEEP_TS, phi0: Optional[TestFunction] = None,
                 spec: Optional[QuadratureSpec] = None, mapper: Optional[Mapper] = None) -> TZeroSweep:
    """
    <K, phi0>_N = c0 <1, phi0> + alpha_{phi0} for M = q = 1 as T -> 0.

    Every T must be nonzero; the values tend to 0 with T.
    """
    if len(ts) < 2:
        raise ValueError("A T-sweep needs at least two values of T")
    phi0 = phi0 or TestFunction.standard(1)
    values = []
    for t in ts:
        form = traced_kernel(level, DirichletCharacter.trivial(level), t, 1)
        values.append(main_term_pairing(form, phi0, spec, mapper))
        logger.info(f"T-sweep at N={level}, T={t}: {values[-1]:.10g}")
    return TZeroSweep(level, ts, values)
