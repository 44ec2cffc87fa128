"""
Scattering entries phi_ab(s, chi) of Gamma0(N) with central character chi.

For singular cusps a, b

    E_a(sigma_b z, s, chi) = delta_ab y^s + phi_ab(s, chi) y^{1-s} + o(1).

phi_general reads the entry off the change of basis for E_a and the
constant terms of each E_{chi1,chi2}(K gamma_b W_b z); the row at oo and
the Atkin-Lehner entries also have closed forms in completed L-functions.
"""

import cmath
import logging
import math
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..arith.multiplicative import euler_phi, prime_divisors
from ..characters.dirichlet_character import DirichletCharacter, gauss_sum
from ..cusps.cusp import Cusp
from ..cusps.cusp_service import atkin_lehner_complement, is_singular, scaling_matrix, singular_cusps
from ..eisen.char_eisenstein import completed_ratio
from ..eisen.cusp_eisenstein import basis_terms, character_pairs, eval_cusp_eisenstein
from ..eisen.eisenstein_series import CuspAttached
from ..lfun.dirichlet_l import completed_log_derivative
from ..shared.errors import DomainError
from .constant_terms import ConstantTermPair, constant_term_coeffs

logger = logging.getLogger(__name__)

PROBE_SAMPLES = 16
DIFFERENCE_STEP = 1e-5


def _power(base: float, exponent: complex) -> complex:
    return cmath.exp(exponent * math.log(base))


def _require_singular(cusp: Cusp, chi: DirichletCharacter, operation: str) -> None:
    if not is_singular(cusp, chi):
        raise DomainError(f"Cusp {cusp} is not singular for the character", operation=operation, chi=chi)


class ScatteringRow:
    """
    The row (phi_{oo a}(s, chi)) indexed by the singular cusps.

    General entries phi_ab are computed on demand.
    """

    def __init__(self, level: int, chi: DirichletCharacter, s: complex, entries: Dict[Cusp, complex]) -> None:
        self._level = level
        self._chi = chi
        self._s = complex(s)
        self._entries = dict(entries)
        self.validate()

    @property
    def level(self) -> int:
        """The level N."""
        return self._level

    @property
    def chi(self) -> DirichletCharacter:
        """The central character mod N."""
        return self._chi

    @property
    def s(self) -> complex:
        """The spectral parameter."""
        return self._s

    @property
    def cusps(self) -> List[Cusp]:
        """Singular cusps in cusp-set order."""
        return list(self._entries)

    @property
    def entries(self) -> Dict[Cusp, complex]:
        """phi_{oo a} keyed by cusp."""
        return dict(self._entries)

    def validate(self) -> None:
        """
        Raises:
            ValueError: If the keys are not exactly the singular cusps
        """
        expected = singular_cusps(self._level, self._chi)
        if list(self._entries) != expected:
            raise ValueError(f"Scattering row at level {self._level} must be indexed by the singular cusps")

    def entry(self, cusp: Cusp) -> complex:
        """phi_{oo a}."""
        return self._entries[cusp]

    def unitarity_sum(self) -> float:
        """sum_a |phi_{oo a}|^2, equal to 1 on Re s = 1/2."""
        return math.fsum(abs(value) ** 2 for value in self._entries.values())

    def general(self, source: Cusp, target: Cusp) -> complex:
        """phi_ab at the row's s and character."""
        return phi_general(source, target, self._s, self._chi)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'N': self._level,
            'chi': self._chi.to_dict(),
            's': {'re': self._s.real, 'im': self._s.imag},
            'entries': [
                {'cusp': cusp.to_dict(), 're': value.real, 'im': value.imag, 'abs2': abs(value) ** 2}
                for cusp, value in self._entries.items()
            ],
            'unitarity_sum': self.unitarity_sum(),
        }

    def __repr__(self) -> str:
        return f"ScatteringRow(N={self._level}, s={self._s}, cusps={len(self._entries)})"


def constant_term_at(source: Cusp, target: Cusp, s: complex, chi: DirichletCharacter) -> ConstantTermPair:
    """
    (delta_ab, phi_ab) from the change of basis and the constant terms of its pieces.

    Business rules:
    - sigma_b = gamma_b diag(W_b, 1) up to scaling, gamma_b the completion of (u_b, f_b)
    - a piece coefficient * E_{chi1,chi2}(K z) contributes C W_b^s to
      delta and D W_b^{1-s} to phi

    Raises:
        DomainError: If a cusp is not singular or the levels differ
    """
    s = complex(s)
    if source.level != target.level:
        raise DomainError("Cusps of different levels", operation="constant_term_at")
    _require_singular(source, chi, "constant_term_at")
    _require_singular(target, chi, "constant_term_at")
    gamma = scaling_matrix(target).gamma
    width = target.width
    leading = 0j
    dual = 0j
    for term in basis_terms(source, chi, s):
        series = term.series
        pair = constant_term_coeffs(series.chi1, series.chi2, series.dilation, gamma, s)
        leading += term.coefficient * pair.C
        dual += term.coefficient * pair.D
    return ConstantTermPair(leading * _power(width, s), dual * _power(width, 1 - s))


def phi_general(source: Cusp, target: Cusp, s: complex, chi: Optional[DirichletCharacter] = None) -> complex:
    """
    phi_ab(s, chi) for singular cusps a, b.

    Raises:
        DomainError: If a cusp is not singular for chi
        PoleError: At a pole of a theta ratio
    """
    chi = chi if chi is not None else DirichletCharacter.trivial(source.level)
    return constant_term_at(source, target, s, chi).D


def delta_general(source: Cusp, target: Cusp, s: complex, chi: Optional[DirichletCharacter] = None) -> complex:
    """The y^s coefficient of E_a at b; 1 when a = b and 0 otherwise."""
    chi = chi if chi is not None else DirichletCharacter.trivial(source.level)
    return constant_term_at(source, target, s, chi).C


def scattering_matrix(level: int, chi: DirichletCharacter, s: complex) -> Tuple[List[Cusp], np.ndarray]:
    """Phi(s, chi) = (phi_ab) over the singular cusps, rows indexed by a."""
    cusps = singular_cusps(level, chi)
    matrix = np.array([[phi_general(a, b, s, chi) for b in cusps] for a in cusps], dtype=complex)
    return cusps, matrix


def phi_infinity_entry(target: Cusp, s: complex, chi: DirichletCharacter) -> complex:
    """
    phi_{oo b}(s, chi) in closed form.

    Business rules:
    - zero unless f | N/q, q the conductor of chi and psi its inducer
    - otherwise tau(conj psi) W^{-s} f^{1-2s}/phi((f, N/f))
      Lambda(2-2s, psi)/Lambda(2s, conj psi)
      prod_{p|N} (1 - conj psi(p) p^{-2s})^{-1} prod_{p|f} (1 - 1/p)
      prod_{p|N/f} (1 - conj psi(p) p^{1-2s})
    """
    s = complex(s)
    level = target.level
    psi = chi.primitive_inducer()
    dual = psi.conj()
    f = target.f
    if (level // psi.modulus) % f:
        return 0j
    value = gauss_sum(dual) * _power(target.width, -s) * _power(f, 1 - 2 * s) / euler_phi(gcd(f, level // f))
    value *= completed_ratio(dual, s)
    for p in prime_divisors(level):
        value /= 1 - dual(p) * _power(p, -2 * s)
    for p in prime_divisors(f):
        value *= 1 - 1 / p
    for p in prime_divisors(level // f):
        value *= 1 - dual(p) * _power(p, 1 - 2 * s)
    return value


def phi_infinity_row(level: int, chi: Optional[DirichletCharacter] = None, s: complex = 0.5) -> ScatteringRow:
    """
    (phi_{oo b}(s, chi)) over the singular cusps b.

    Business rules:
    - phi_{oo oo} = 0 for nontrivial chi
    - phi_{oo b}(1/2) = -[b = oo] for trivial chi

    Args:
        level: The level N
        chi: Even character mod N, trivial by default
        s: Complex spectral parameter

    Returns:
        ScatteringRow

    Raises:
        DomainError: If chi is odd or has the wrong modulus
    """
    chi = chi if chi is not None else DirichletCharacter.trivial(level)
    entries = {cusp: phi_infinity_entry(cusp, s, chi) for cusp in singular_cusps(level, chi)}
    row = ScatteringRow(level, chi, s, entries)
    logger.debug(f"Scattering row at N={level}, s={s}: sum |phi|^2 = {row.unitarity_sum():.12f}")
    return row


def atkin_lehner_characters(cusp: Cusp, chi: DirichletCharacter) -> Tuple[DirichletCharacter, DirichletCharacter]:
    """
    The factorization chi = chi1 conj(chi2), chi1 primitive mod N/f and chi2 primitive mod f.

    Raises:
        DomainError: If chi is imprimitive or the cusp is not Atkin-Lehner
    """
    if chi.modulus != cusp.level or not chi.is_primitive:
        raise DomainError("Atkin-Lehner entries need a primitive character mod N", operation="atkin_lehner")
    if not cusp.is_atkin_lehner:
        raise DomainError(f"{cusp} is not an Atkin-Lehner cusp", operation="atkin_lehner")
    for chi1, chi2 in character_pairs(cusp, chi):
        if chi1.modulus == cusp.complement and chi2.modulus == cusp.f:
            return chi1, chi2
    raise DomainError(f"No factorization of the character at {cusp}", operation="atkin_lehner")


def phi_atkin_lehner(source: Cusp, target: Cusp, s: complex, chi: DirichletCharacter) -> complex:
    """
    phi_ab(s, chi) for primitive chi mod N and Atkin-Lehner cusps.

    Business rules:
    - zero unless b is the complement a* = 1/(N/f_a)
    - phi_{a a*} = chi1(-1) tau(chi1) tau(chi2) N^{-s}
      Lambda(2-2s, conj(chi1 chi2)) / Lambda(2s, chi1 chi2)

    Raises:
        DomainError: If chi is imprimitive or a cusp is not Atkin-Lehner
    """
    s = complex(s)
    chi1, chi2 = atkin_lehner_characters(source, chi)
    if not target.is_atkin_lehner:
        raise DomainError(f"{target} is not an Atkin-Lehner cusp", operation="phi_atkin_lehner")
    if target != atkin_lehner_complement(source):
        return 0j
    psi = chi1.product(chi2).primitive_inducer()
    value = chi1(-1) * gauss_sum(chi1) * gauss_sum(chi2) * _power(source.level, -s)
    return value * completed_ratio(psi, s)


def phi_log_derivative(target: Cusp, t: float, chi: Optional[DirichletCharacter] = None) -> complex:
    """
    -(log phi_{oo a}(s, conj chi))' at s = 1/2 - iT.

    Business rules:
    - equals log(fN/(f, N/f)) + 4 Re Lambda'/Lambda(1+2iT, conj psi)
      + 2 sum_{p|N} psi(p) p^{-1+2iT} log p / (1 - psi(p) p^{-1+2iT})
      - 2 sum_{p|N/f} psi(p) p^{2iT} log p / (1 - psi(p) p^{2iT})

    Raises:
        DomainError: If the entry vanishes (f does not divide N/q)
        PoleError: At T = 0 for the trivial character
    """
    level = target.level
    chi = chi if chi is not None else DirichletCharacter.trivial(level)
    _require_singular(target, chi, "phi_log_derivative")
    psi = chi.primitive_inducer()
    f = target.f
    if (level // psi.modulus) % f:
        raise DomainError(
            f"phi_(oo {target}) vanishes identically", operation="phi_log_derivative", f=f, q=psi.modulus,
        )
    value = complex(math.log(f * level / gcd(f, level // f)))
    value += 4 * completed_log_derivative(1 + 2j * t, psi.conj()).real
    for p in prime_divisors(level):
        term = psi(p) * _power(p, -1 + 2j * t)
        value += 2 * term * math.log(p) / (1 - term)
    for p in prime_divisors(level // f):
        term = psi(p) * _power(p, 2j * t)
        value -= 2 * term * math.log(p) / (1 - term)
    return value


def finite_difference_log_derivative(target: Cusp, t: float, chi: Optional[DirichletCharacter] = None,
                                     step: float = DIFFERENCE_STEP) -> complex:
    """-(log phi_{oo a}(s, conj chi))' at 1/2 - iT by a central difference in s."""
    chi = chi if chi is not None else DirichletCharacter.trivial(target.level)
    dual = chi.conj()
    s = 0.5 - 1j * t
    upper = phi_infinity_entry(target, s + step, dual)
    lower = phi_infinity_entry(target, s - step, dual)
    centre = phi_infinity_entry(target, s, dual)
    return -(upper - lower) / (2 * step * centre)


def nonsingular_decay_probe(source: Cusp, target: Cusp, chi: DirichletCharacter, s: complex,
                            heights: Sequence[float], samples: int = PROBE_SAMPLES) -> List[float]:
    """
    max_x |E_a(sigma_b(x + iy), s, chi)| at each height y.

    For b not singular the series decays as y grows; for singular b it
    grows like |delta_ab y^s + phi_ab y^{1-s}|.
    """
    s = complex(s)
    series = CuspAttached(source, chi)
    sigma = scaling_matrix(target)
    x = np.arange(samples) / samples
    profile = []
    for y in heights:
        values = eval_cusp_eisenstein(series, sigma.apply(x + 1j * y), s)
        profile.append(float(np.max(np.abs(values))))
    logger.debug(f"Probe of E_{source} at {target}: {profile}")
    return profile
