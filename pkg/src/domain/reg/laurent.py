"""
Laurent data of E_a(z, s) at s = 1 for the trivial character.

Every basis term with chi1 = chi2 trivial is a dilate E(Kz, s) of the
level-one series, so

    E_a(z, s) = V/(s - 1) + c_{a,0} + sum_{g | N} c_{a,g} G(g z)
                + (twisted E_{eta,eta} terms) + O(s - 1),

with V = 1/Vol(Y0(N)). Writing g0 = (f, N/f),

    F_a(s) = (W f)^{-s}/phi(g0) zeta(2s)/L(2s, chi_{0,N})
             prod_{p | f} (1 - p^{-s}) prod_{p | N/f} (1 - p^{-s}),

V = (3/pi) F_a(1) and c_{a,0} = V F_a'(1)/F_a(1).
"""

import cmath
import logging
import math
from math import gcd
from typing import Any, Dict, List

import numpy as np

from ..arith.multiplicative import divisors, euler_phi, mobius, prime_divisors
from ..characters.dirichlet_character import DirichletCharacter
from ..cusps.cusp import Cusp
from ..eisen.cusp_eisenstein import basis_terms, eval_cusp_eisenstein
from ..eisen.eisenstein_series import CuspAttached
from ..eisen.level1 import RESIDUE, RICHARDSON_STEP, eval_level1_G
from ..geom.bump import hyperbolic_volume
from ..lfun.dirichlet_l import zeta_ratio_level
from ..shared.errors import DomainError

logger = logging.getLogger(__name__)


class LaurentData:
    """Residue, constant and G-coefficients of E_a(z, s) at s = 1."""

    def __init__(self, cusp: Cusp, residue: float, constant: float, g_coefficients: Dict[int, float],
                 normalizer_residue: float, twisted_terms: int) -> None:
        self._cusp = cusp
        self._residue = float(residue)
        self._constant = float(constant)
        self._g_coefficients = dict(sorted(g_coefficients.items()))
        self._normalizer_residue = float(normalizer_residue)
        self._twisted_terms = twisted_terms

    @property
    def cusp(self) -> Cusp:
        """The cusp a."""
        return self._cusp

    @property
    def residue(self) -> float:
        """1/Vol(Y0(N))."""
        return self._residue

    @property
    def constant(self) -> float:
        """c_{a,0}."""
        return self._constant

    @property
    def g_coefficients(self) -> Dict[int, float]:
        """c_{a,g} keyed by g | N, zero entries dropped."""
        return dict(self._g_coefficients)

    @property
    def normalizer_residue(self) -> float:
        """(3/pi) F_a(1), computed from the normalizer itself."""
        return self._normalizer_residue

    @property
    def has_twisted_terms(self) -> bool:
        """Whether E_{eta,eta} terms with eta nontrivial occur in the basis."""
        return self._twisted_terms > 0

    def residue_defect(self) -> float:
        """|(3/pi) F_a(1) - 1/Vol(Y0(N))|."""
        return abs(self._normalizer_residue - self._residue)

    def g_part(self, z: Any) -> Any:
        """sum_g c_{a,g} G(g z)."""
        points = np.asarray(z, dtype=complex)
        total = np.zeros(points.shape)
        for g, coefficient in self._g_coefficients.items():
            total = total + coefficient * eval_level1_G(g * points)
        if np.ndim(z) == 0:
            return float(total)
        return total

    def to_dict(self) -> Dict[str, Any]:
        return {
            'cusp': self._cusp.to_dict(),
            'residue': self._residue,
            'constant': self._constant,
            'g_coefficients': {str(g): c for g, c in self._g_coefficients.items()},
            'residue_defect': self.residue_defect(),
            'twisted_terms': self._twisted_terms,
        }

    def __repr__(self) -> str:
        return f"LaurentData(cusp={self._cusp}, constant={self._constant:.12g}, g={list(self._g_coefficients)})"


def laurent_normalizer(cusp: Cusp, s: complex) -> complex:
    """F_a(s), the sum of the untwisted basis coefficients."""
    s = complex(s)
    level = cusp.level
    f = cusp.f
    value = cmath.exp(-s * math.log(cusp.width * f)) / euler_phi(cusp.g)
    value *= zeta_ratio_level(2 * s, level)
    for p in prime_divisors(f):
        value *= 1 - cmath.exp(-s * math.log(p))
    for p in prime_divisors(level // f):
        value *= 1 - cmath.exp(-s * math.log(p))
    return value


def laurent_constant(cusp: Cusp) -> float:
    """
    c_{a,0} = V (log(g0/N) + sum_{p|N} log p/(p+1) + sum_{p|g0} log p/(p-1)).
    """
    level = cusp.level
    g0 = gcd(cusp.f, level // cusp.f)
    value = math.log(g0 / level)
    value += math.fsum(math.log(p) / (p + 1) for p in prime_divisors(level))
    value += math.fsum(math.log(p) / (p - 1) for p in prime_divisors(g0))
    return value / hyperbolic_volume(level)


def laurent_g_coefficients(cusp: Cusp) -> Dict[int, float]:
    """
    c_{a,g} = g0/(N phi(g0)) zeta(2)/L(2, chi_{0,N}) sum_{a|f, b|N/f, bf/a = g} mu(a) mu(b)/(ab).
    """
    level = cusp.level
    f = cusp.f
    g0 = gcd(f, level // f)
    scale = g0 / (level * euler_phi(g0)) * zeta_ratio_level(2, level).real
    coefficients: Dict[int, float] = {}
    for a in divisors(f):
        for b in divisors(level // f):
            weight = mobius(a) * mobius(b)
            if weight == 0:
                continue
            g = b * f // a
            coefficients[g] = coefficients.get(g, 0.0) + scale * weight / (a * b)
    return {g: c for g, c in coefficients.items() if c != 0.0}


def laurent_data(cusp: Cusp) -> LaurentData:
    """
    Laurent data of E_a at s = 1 for the trivial character.

    Business rules:
    - the residue is 1/Vol(Y0(N)) for every cusp
    - c_{a,g} vanishes unless g | N
    - twisted terms (eta nontrivial) carry no residue and no G part

    Returns:
        LaurentData
    """
    trivial = DirichletCharacter.trivial(cusp.level)
    twisted = sum(1 for term in basis_terms(cusp, trivial, 2.0) if term.series.chi1.modulus > 1)
    data = LaurentData(
        cusp,
        residue=1 / hyperbolic_volume(cusp.level),
        constant=laurent_constant(cusp),
        g_coefficients=laurent_g_coefficients(cusp),
        normalizer_residue=RESIDUE * laurent_normalizer(cusp, 1.0).real,
        twisted_terms=twisted,
    )
    logger.debug(f"Laurent data at {cusp}: c0 = {data.constant:.12g}, defect {data.residue_defect():.2e}")
    return data


def _symmetric_mean(series: CuspAttached, z: Any, h: float) -> Any:
    plus = eval_cusp_eisenstein(series, z, 1 + h)
    minus = eval_cusp_eisenstein(series, z, 1 - h)
    return 0.5 * (np.real(plus) + np.real(minus))


def finite_part(cusp: Cusp, z: Any, h: float = RICHARDSON_STEP) -> Any:
    """
    FP_a(z), the constant term of E_a(z, s) at s = 1.

    Business rules:
    - the residue cancels in (E_a(z, 1+h) + E_a(z, 1-h))/2 = FP_a(z) + O(h^2)
    - one Richardson step removes the h^2 term, as for G
    """
    series = CuspAttached(cusp)
    coarse = _symmetric_mean(series, z, h)
    fine = _symmetric_mean(series, z, h / 2)
    value = (4 * fine - coarse) / 3
    if np.ndim(value) == 0:
        return float(value)
    return value


def finite_part_by_laurent(cusp: Cusp, z: Any) -> Any:
    """
    FP_a(z) = c_{a,0} + sum_g c_{a,g} G(g z) for cusps without twisted terms.

    Raises:
        DomainError: If E_{eta,eta} terms with eta nontrivial occur
    """
    data = laurent_data(cusp)
    if data.has_twisted_terms:
        raise DomainError(
            f"E_{cusp} has twisted terms whose Laurent constants are not tabulated",
            operation="finite_part_by_laurent",
        )
    return data.constant + data.g_part(z)


def untwisted_coefficients_at_one(cusp: Cusp) -> Dict[int, float]:
    """Basis coefficients at s = 1 summed by dilation, over the chi1 = chi2 = 1 terms."""
    trivial = DirichletCharacter.trivial(cusp.level)
    sums: Dict[int, float] = {}
    for term in basis_terms(cusp, trivial, 1.0):
        if term.series.chi1.modulus > 1:
            continue
        g = term.series.dilation
        sums[g] = sums.get(g, 0.0) + term.coefficient.real
    return {g: c for g, c in sums.items() if abs(c) > 1e-15}


def cusps_with_twisted_terms(cusps: List[Cusp]) -> List[Cusp]:
    """The cusps among the given ones whose basis contains E_{eta,eta}, eta nontrivial."""
    return [cusp for cusp in cusps if laurent_data(cusp).has_twisted_terms]
