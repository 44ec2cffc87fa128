"""
The regularizing kernel of |E_a(z, 1/2 + iT, chi)|^2.

For the cusp at infinity

    K(z) = 2 Re(phi_{oo oo}(1/2+iT, chi) E_oo(z, 1-2iT))
           + lim_{beta -> 0} (E_oo(z, 1+beta)
               + sum_a phi_{oo a}(1/2+iT, chi) phi_{oo a}(1/2+beta-iT, conj chi) E_a(z, 1-beta)),

all series on the right of trivial character. The residues cancel because
sum_a |phi_{oo a}|^2 = 1, and the limit is

    FP_oo(z) + sum_a |phi_{oo a}|^2 (FP_a(z) + V D_a),

D_a = -(log phi_{oo a}(s, conj chi))' at s = 1/2 - iT. For primitive chi and
an Atkin-Lehner cusp a the same construction with phi_{a a*} gives
FP_a + FP_{a*} + V D.
"""

import logging
import math
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..characters.dirichlet_character import DirichletCharacter
from ..cusps.coset_reps import coset_enumeration
from ..cusps.cusp import Cusp
from ..cusps.cusp_service import atkin_lehner_complement, cusp_set, scaling_matrix
from ..eisen.cusp_eisenstein import eval_cusp_eisenstein
from ..eisen.eisenstein_series import CuspAttached
from ..geom.bump import hyperbolic_volume
from ..lfun.dirichlet_l import completed_log_derivative
from ..scatter.scattering import (
    atkin_lehner_characters,
    phi_atkin_lehner,
    phi_infinity_entry,
    phi_infinity_row,
    phi_log_derivative,
)
from ..shared.errors import DomainError
from .laurent import finite_part

logger = logging.getLogger(__name__)

FINITE_PART = "finite_part"
SERIES = "series"
ORACLE_STEP = 1e-3
PROBE_HEIGHTS = (10.0, 20.0, 40.0)
PROBE_SAMPLES = 8


def infinity_cusp(level: int) -> Cusp:
    """The cusp oo = 1/N."""
    return Cusp(1, level, level)


def require_nonzero_t(t: float, operation: str) -> None:
    if t == 0:
        raise DomainError("The kernel is undefined at T = 0", operation=operation, T=t)


class KernelTerm:
    """coefficient * FP_a(z), or coefficient * E_a(z, s) with trivial character."""

    def __init__(self, coefficient: complex, cusp: Cusp, kind: str, s: Optional[complex] = None) -> None:
        self._coefficient = complex(coefficient)
        self._cusp = cusp
        self._kind = kind
        self._s = None if s is None else complex(s)
        self.validate()

    @property
    def coefficient(self) -> complex:
        """The coefficient."""
        return self._coefficient

    @property
    def cusp(self) -> Cusp:
        """The cusp of the series."""
        return self._cusp

    @property
    def kind(self) -> str:
        """FINITE_PART or SERIES."""
        return self._kind

    @property
    def s(self) -> Optional[complex]:
        """Spectral parameter of a SERIES term."""
        return self._s

    def validate(self) -> None:
        """
        Raises:
            ValueError: If the kind is unknown or a series term lacks s
        """
        if self._kind not in (FINITE_PART, SERIES):
            raise ValueError(f"Unknown kernel term kind {self._kind}")
        if self._kind == SERIES and self._s is None:
            raise ValueError("Series terms need a spectral parameter")

    def evaluate(self, z: Any) -> Any:
        if self._kind == FINITE_PART:
            return self._coefficient * np.asarray(finite_part(self._cusp, z))
        return self._coefficient * np.asarray(eval_cusp_eisenstein(CuspAttached(self._cusp), z, self._s))

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'kind': self._kind,
            'cusp': self._cusp.to_dict(),
            'coefficient': [self._coefficient.real, self._coefficient.imag],
        }
        if self._s is not None:
            data['s'] = [self._s.real, self._s.imag]
        return data

    def __repr__(self) -> str:
        return f"KernelTerm({self._kind}, {self._cusp}, {self._coefficient:.6g})"


class RegKernel:
    """
    A finite combination of Eisenstein data at s = 1 plus a constant.

    source is the cusp of the series being regularized; the source series
    E_source(z, 1/2 + iT, chi) is what |.|^2 refers to in the probe.
    """

    def __init__(self, level: int, chi: DirichletCharacter, t: float, source: Cusp,
                 terms: Sequence[KernelTerm], constant: float) -> None:
        self._level = level
        self._chi = chi
        self._t = float(t)
        self._source = source
        self._terms = list(terms)
        self._constant = float(constant)
        self.validate()

    @property
    def level(self) -> int:
        """The level N."""
        return self._level

    @property
    def chi(self) -> DirichletCharacter:
        """Central character of the regularized series."""
        return self._chi

    @property
    def t(self) -> float:
        """T, with s = 1/2 + iT."""
        return self._t

    @property
    def source(self) -> Cusp:
        """The cusp of the regularized series."""
        return self._source

    @property
    def terms(self) -> List[KernelTerm]:
        """The Eisenstein terms."""
        return list(self._terms)

    @property
    def constant(self) -> float:
        """The constant V sum |phi|^2 D."""
        return self._constant

    def validate(self) -> None:
        """
        Raises:
            DomainError: If T = 0 or a term has another level
        """
        require_nonzero_t(self._t, "RegKernel")
        for term in self._terms:
            if term.cusp.level != self._level:
                raise DomainError(f"Kernel term at {term.cusp} is not of level {self._level}", operation="RegKernel")

    def finite_part_cusps(self) -> List[Cusp]:
        """Cusps carrying a finite-part term."""
        return [term.cusp for term in self._terms if term.kind == FINITE_PART]

    def evaluate(self, z: Any) -> Any:
        """The kernel at a point or array of points (real)."""
        points = np.asarray(z, dtype=complex)
        total = np.full(points.shape, self._constant, dtype=complex)
        for term in self._terms:
            total = total + term.evaluate(points)
        if np.ndim(z) == 0:
            return float(np.real(total))
        return np.real(total)

    def __call__(self, z: Any) -> Any:
        return self.evaluate(z)

    def source_density(self, z: Any) -> Any:
        """|E_source(z, 1/2 + iT, chi)|^2."""
        values = eval_cusp_eisenstein(CuspAttached(self._source, self._chi), z, 0.5 + 1j * self._t)
        return np.abs(values) ** 2

    def trace_to(self, sublevel: int, z: Any) -> Any:
        """Tr^N_M of the kernel by summing over Gamma0(N)\\Gamma0(M)."""
        points = np.asarray(z, dtype=complex)
        total = np.zeros(points.shape)
        for gamma in coset_enumeration(self._level, sublevel):
            total = total + np.asarray(self.evaluate(gamma.act(points)))
        if np.ndim(z) == 0:
            return float(total)
        return total

    def to_dict(self) -> Dict[str, Any]:
        return {
            'N': self._level,
            'chi': self._chi.to_dict(),
            'T': self._t,
            'source': self._source.to_dict(),
            'constant': self._constant,
            'terms': [term.to_dict() for term in self._terms],
        }

    def __repr__(self) -> str:
        return f"RegKernel(N={self._level}, T={self._t}, source={self._source}, terms={len(self._terms)})"


def build_kernel(level: int, chi: Optional[DirichletCharacter] = None, t: float = 1.0) -> RegKernel:
    """
    The kernel of |E_oo(z, 1/2 + iT, chi)|^2.

    Business rules:
    - phi_{oo oo} = 0 for nontrivial chi, so the 2 Re term is dropped
    - cusps with phi_{oo a} = 0 contribute nothing
    - the beta-limit is taken in closed form from the Laurent data

    Args:
        level: The level N
        chi: Even character mod N, trivial by default
        t: T != 0

    Returns:
        RegKernel

    Raises:
        DomainError: If T = 0 or chi is odd
    """
    require_nonzero_t(t, "build_kernel")
    chi = chi if chi is not None else DirichletCharacter.trivial(level)
    s = 0.5 + 1j * t
    row = phi_infinity_row(level, chi, s)
    oo = infinity_cusp(level)
    terms = [KernelTerm(1.0, oo, FINITE_PART)]
    diagonal = row.entries.get(oo, 0j)
    if diagonal != 0:
        terms.append(KernelTerm(diagonal, oo, SERIES, 1 - 2j * t))
        terms.append(KernelTerm(diagonal.conjugate(), oo, SERIES, 1 + 2j * t))
    volume_inverse = 1 / hyperbolic_volume(level)
    constant = 0.0
    for cusp, entry in row.entries.items():
        mass = abs(entry) ** 2
        if mass == 0:
            continue
        terms.append(KernelTerm(mass, cusp, FINITE_PART))
        constant += volume_inverse * mass * phi_log_derivative(cusp, t, chi).real
    kernel = RegKernel(level, chi, t, oo, terms, constant)
    logger.info(f"Kernel at N={level}, T={t}: {len(terms)} terms, constant {constant:.12g}")
    return kernel


def atkin_lehner_log_derivative(cusp: Cusp, t: float, chi: DirichletCharacter) -> float:
    """
    -(log phi_{a a*}(s, conj chi))' at s = 1/2 - iT.

    Business rules:
    - phi_{a a*}(s, conj chi) = c N^{-s} Lambda(2-2s, conj psi)/Lambda(2s, psi)
      with psi induced by the factorization of conj chi at a
    - the derivative is log N + 4 Re Lambda'/Lambda(1+2iT, conj psi)
    """
    chi1, chi2 = atkin_lehner_characters(cusp, chi.conj())
    psi = chi1.product(chi2).primitive_inducer()
    value = math.log(cusp.level)
    value += 2 * completed_log_derivative(1 + 2j * t, psi.conj())
    value += 2 * completed_log_derivative(1 - 2j * t, psi)
    return value.real


def build_atkin_lehner_kernel(cusp: Cusp, chi: DirichletCharacter, t: float = 1.0) -> RegKernel:
    """
    The kernel of |E_a(z, 1/2 + iT, chi)|^2 for primitive chi and Atkin-Lehner a.

    Business rules:
    - only a* = 1/(N/f) is reached by the scattering row of a
    - the kernel is FP_a + |phi_{a a*}|^2 FP_{a*} + V |phi_{a a*}|^2 D

    Raises:
        DomainError: If T = 0, chi is imprimitive or a is not Atkin-Lehner
    """
    require_nonzero_t(t, "build_atkin_lehner_kernel")
    complement = atkin_lehner_complement(cusp)
    mass = abs(phi_atkin_lehner(cusp, complement, 0.5 + 1j * t, chi)) ** 2
    volume_inverse = 1 / hyperbolic_volume(cusp.level)
    terms = [KernelTerm(1.0, cusp, FINITE_PART), KernelTerm(mass, complement, FINITE_PART)]
    constant = volume_inverse * mass * atkin_lehner_log_derivative(cusp, t, chi)
    kernel = RegKernel(cusp.level, chi, t, cusp, terms, constant)
    logger.info(f"Atkin-Lehner kernel at {cusp}, T={t}: |phi|^2 = {mass:.12g}")
    return kernel


def _beta_combination(level: int, chi: DirichletCharacter, t: float, z: Any, beta: float) -> Any:
    s = 0.5 + 1j * t
    oo = infinity_cusp(level)
    dual = chi.conj()
    total = eval_cusp_eisenstein(CuspAttached(oo), z, 1 + beta)
    for cusp, entry in phi_infinity_row(level, chi, s).entries.items():
        if entry == 0:
            continue
        weight = entry * phi_infinity_entry(cusp, 0.5 + beta - 1j * t, dual)
        total = total + weight * eval_cusp_eisenstein(CuspAttached(cusp), z, 1 - beta)
    diagonal = phi_infinity_entry(oo, s, chi)
    if diagonal != 0:
        total = total + 2 * np.real(diagonal * eval_cusp_eisenstein(CuspAttached(oo), z, 1 - 2j * t))
    return total


def kernel_limit_oracle(level: int, chi: Optional[DirichletCharacter], t: float, z: Any,
                        beta: float = ORACLE_STEP) -> Any:
    """
    The kernel by a numeric beta -> 0 limit, 2 K(beta/2) - K(beta).

    Used only to check build_kernel.
    """
    require_nonzero_t(t, "kernel_limit_oracle")
    chi = chi if chi is not None else DirichletCharacter.trivial(level)
    coarse = _beta_combination(level, chi, t, z, beta)
    fine = _beta_combination(level, chi, t, z, beta / 2)
    value = np.real(2 * fine - coarse)
    if np.ndim(value) == 0:
        return float(value)
    return value


def cancellation_probe(kernel: RegKernel, target: Cusp, heights: Sequence[float] = PROBE_HEIGHTS,
                       samples: int = PROBE_SAMPLES) -> List[float]:
    """
    max_x ||E_source|^2 - K| at sigma_b(x + iy) for each height y.

    Bounded in y when the kernel removes every growing term of |E_source|^2.
    """
    sigma = scaling_matrix(target)
    x = np.arange(samples) / samples
    profile = []
    for y in heights:
        points = sigma.apply(x + 1j * y)
        difference = kernel.source_density(points) - kernel.evaluate(points)
        profile.append(float(np.max(np.abs(difference))))
    logger.debug(f"Kernel probe at {target}: {profile}")
    return profile


def probe_all_cusps(kernel: RegKernel, heights: Sequence[float] = PROBE_HEIGHTS,
                    samples: int = PROBE_SAMPLES) -> Dict[Cusp, List[float]]:
    """cancellation_probe at every cusp of the kernel's level."""
    return {cusp: cancellation_probe(kernel, cusp, heights, samples) for cusp in cusp_set(kernel.level)}
