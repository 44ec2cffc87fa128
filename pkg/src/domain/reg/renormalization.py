"""
Renormalized integrals over Y0(N).

For F with cusp profiles psi_a(y) = sum_i c_i y^{alpha_i} (alpha_i != 1),
F(sigma_a z) - psi_a(y) decays at every cusp a and

    RN int F dmu = int_{F(R)} F dmu + sum_a int_{F_a(R)} (F - psi_a) dmu
                   - sum_a sum_i c_i R^{alpha_i - 1}/(alpha_i - 1).

Y0(N) is tiled by translates gamma_j D. Cutting each translate at height Y
in D-coordinates cuts the cusp zone of a = gamma_j oo at height Y/W_a in
sigma_a-coordinates, so R_a = Y/W_a and the zone integrals are dropped
together with an exponentially small remainder.
"""

import logging
import math
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..arith.multiplicative import prime_divisors
from ..characters.dirichlet_character import DirichletCharacter
from ..cusps.cusp import Cusp
from ..cusps.cusp_service import cusp_set, singular_cusps
from ..geom.quadrature import Mapper, QuadratureSpec, integrate
from ..scatter.scattering import delta_general, phi_general
from ..shared.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_HEIGHT = 12.0
TAIL_WARNING = 1e-10

PointFunction = Callable[[np.ndarray], Any]


class CuspProfile:
    """psi(y) = sum_i c_i y^{alpha_i}, the growth of F at one cusp."""

    def __init__(self, terms: Sequence[Tuple[complex, complex]]) -> None:
        self._terms = [(complex(c), complex(alpha)) for c, alpha in terms if c != 0]
        self.validate()

    @classmethod
    def constant(cls, value: complex = 1.0) -> "CuspProfile":
        """psi = value * y^0."""
        return cls([(value, 0.0)])

    @property
    def terms(self) -> List[Tuple[complex, complex]]:
        """(coefficient, exponent) pairs."""
        return list(self._terms)

    def validate(self) -> None:
        """
        Raises:
            DomainError: If an exponent equals 1
        """
        for _, alpha in self._terms:
            if abs(alpha - 1) < 1e-12:
                raise DomainError("Profile exponent 1 has no power antiderivative",
                                  operation="renormalized_integral", exponent=alpha)

    def __call__(self, y: Any) -> Any:
        y = np.asarray(y, dtype=float)
        total = np.zeros(y.shape, dtype=complex)
        for c, alpha in self._terms:
            total = total + c * np.exp(alpha * np.log(y))
        return total

    def antiderivative(self, height: float) -> complex:
        """int^R psi(y) y^{-2} dy = sum_i c_i R^{alpha_i-1}/(alpha_i-1)."""
        log_r = math.log(height)
        return sum((c * np.exp((alpha - 1) * log_r) / (alpha - 1) for c, alpha in self._terms), 0j)

    def times(self, other: "CuspProfile") -> "CuspProfile":
        """The profile of a product, cross terms combined by exponent."""
        return CuspProfile([(c1 * c2, a1 + a2) for c1, a1 in self._terms for c2, a2 in other._terms])

    def conjugate(self) -> "CuspProfile":
        """The profile of the complex conjugate function (y real)."""
        return CuspProfile([(c.conjugate(), alpha.conjugate()) for c, alpha in self._terms])

    def to_dict(self) -> Dict[str, Any]:
        return {'terms': [{'c': [c.real, c.imag], 'alpha': [a.real, a.imag]} for c, a in self._terms]}

    def __repr__(self) -> str:
        return f"CuspProfile({self._terms!r})"


class RenormResult:
    """A renormalized integral with its R-independence residual."""

    def __init__(self, value: complex, R_used: float, residual: float, quadrature_error: float,
                 tolerance: float = math.inf) -> None:
        self._value = complex(value)
        self._R_used = float(R_used)
        self._residual = float(residual)
        self._quadrature_error = float(quadrature_error)
        self._tolerance = float(tolerance)

    @property
    def value(self) -> complex:
        """RN int F dmu at the cut height."""
        return self._value

    @property
    def R_used(self) -> float:
        """The cut height Y in D-coordinates."""
        return self._R_used

    @property
    def residual(self) -> float:
        """|RN(Y) - RN(2Y)|."""
        return self._residual

    @property
    def quadrature_error(self) -> float:
        """Sum of the refinement error estimates of the two cut integrals."""
        return self._quadrature_error

    @property
    def tolerance(self) -> float:
        """The larger absolute quadrature tolerance of the two cut integrals."""
        return self._tolerance

    def within_tolerance(self, factor: float = 2.0) -> bool:
        """Whether the R-independence residual is at most factor times the quadrature tolerance."""
        return self._residual <= factor * self._tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            're': self._value.real,
            'im': self._value.imag,
            'R_used': self._R_used,
            'residual': self._residual,
            'quadrature_error': self._quadrature_error,
            'tolerance': self._tolerance,
        }

    def __repr__(self) -> str:
        return f"RenormResult(value={self._value}, R={self._R_used}, residual={self._residual:.3e})"


def _cut_value(integrand: PointFunction, profiles: Dict[Cusp, CuspProfile], level: int, height: float,
               spec: QuadratureSpec, mapper: Optional[Mapper]) -> Tuple[complex, float, float]:
    cut = QuadratureSpec(spec.resolution, height, spec.target_rel_error, spec.max_refinements)
    result = integrate(integrand, level, cut, truncate=True, mapper=mapper)
    value = result.value
    for cusp in cusp_set(level):
        profile = profiles.get(cusp)
        if profile is not None:
            value -= profile.antiderivative(height / cusp.width)
    return value, result.error, result.tolerance


def renormalized_integral(integrand: PointFunction, profiles: Dict[Cusp, CuspProfile], level: int,
                          height: float = DEFAULT_HEIGHT, spec: Optional[QuadratureSpec] = None,
                          mapper: Optional[Mapper] = None) -> RenormResult:
    """
    RN int_{Y0(N)} F dmu.

    Business rules:
    - a cusp missing from profiles has profile zero
    - R_a = Y/W_a for the cut height Y of the translates of D
    - the result is recomputed at 2Y and the difference reported as residual
    - the residual is within tolerance when it is at most twice the larger
      absolute quadrature tolerance of the two cut integrals

    Args:
        integrand: Vectorized F on points of H
        profiles: Cusp growth profiles keyed by cusps of level N
        level: The level N
        height: Cut height Y of D, at least 5
        spec: Quadrature resolution and tolerance (its y_max is ignored)
        mapper: Optional parallel map over cells

    Returns:
        RenormResult

    Raises:
        DomainError: If a profile belongs to another level or has exponent 1
    """
    spec = spec or QuadratureSpec()
    for cusp in profiles:
        if cusp.level != level:
            raise DomainError(f"Profile at {cusp} is not of level {level}", operation="renormalized_integral")
    widest = max(cusp.width for cusp in cusp_set(level))
    tail = math.exp(-2 * math.pi * height / widest)
    if tail > TAIL_WARNING:
        logger.warning(f"Cut height {height} leaves a tail of order {tail:.1e} at the widest cusp")
    value, error, tolerance = _cut_value(integrand, profiles, level, height, spec, mapper)
    doubled, doubled_error, doubled_tolerance = _cut_value(integrand, profiles, level, 2 * height, spec, mapper)
    result = RenormResult(value, height, abs(value - doubled), error + doubled_error,
                          max(tolerance, doubled_tolerance))
    logger.info(f"Renormalized integral at N={level}: {result.value:.12g}, residual {result.residual:.2e}")
    return result


def eisenstein_profiles(cusp: Cusp, s: complex, chi: Optional[DirichletCharacter] = None) -> Dict[Cusp, CuspProfile]:
    """
    delta_ab y^s + phi_ab(s) y^{1-s} at every singular cusp b.

    Non-singular cusps get no profile: E_a decays there.
    """
    chi = chi if chi is not None else DirichletCharacter.trivial(cusp.level)
    s = complex(s)
    profiles = {}
    for target in singular_cusps(cusp.level, chi):
        profiles[target] = CuspProfile([
            (delta_general(cusp, target, s, chi), s),
            (phi_general(cusp, target, s, chi), 1 - s),
        ])
    return profiles


def product_profiles(first: Dict[Cusp, CuspProfile], second: Dict[Cusp, CuspProfile],
                     conjugate_second: bool = True) -> Dict[Cusp, CuspProfile]:
    """Profiles of F1 * conj(F2), or of F1 * F2, at cusps where both grow."""
    result = {}
    for cusp, profile in first.items():
        other = second.get(cusp)
        if other is None:
            continue
        result[cusp] = profile.times(other.conjugate() if conjugate_second else other)
    return result


def constant_profiles(level: int, value: complex = 1.0) -> Dict[Cusp, CuspProfile]:
    """The profile value * y^0 at every cusp."""
    return {cusp: CuspProfile.constant(value) for cusp in cusp_set(level)}


def eisenstein_pairing_norm(level: int, conductor: int) -> float:
    """
    Regularized self-pairing of E_{psi,psi} on Gamma0(N), psi primitive mod q.

    4 pi N prod_{p|q} (1 - 1/p) prod_{p|N} (1 + chi_{0,q}(p)/p).

    Raises:
        DomainError: If q does not divide N
    """
    if level < 1 or conductor < 1 or level % conductor:
        raise DomainError("Conductor must divide the level", operation="eisenstein_pairing_norm",
                          N=level, q=conductor)
    value = 4 * math.pi * level
    for p in prime_divisors(conductor):
        value *= 1 - 1 / p
    for p in prime_divisors(level):
        if conductor % p:
            value *= 1 + 1 / p
    return value


def formal_pairing(first: Cusp, second: Cusp) -> float:
    """<E_a, E_b>^Eis read off the constant-term pairing: 4 pi [a = b]."""
    if first.level != second.level:
        raise DomainError("Cusps of different levels", operation="formal_pairing")
    return 4 * math.pi if first == second else 0.0
