"""
Constant terms of Eisenstein series at cusps.

For gamma = (u v; f w) in SL2(Z) and an integer dilation K,

    E_{chi1,chi2}(K gamma z, s) = C y^s + D y^{1-s} + o(1)      (y -> oo)

with C and D given in closed form below. The numerical side fits the
two powers to the x-average of a series at a few heights; it is used to
check the closed forms, never to produce scattering entries.
"""

import cmath
import logging
import math
from math import gcd
from typing import Any, Callable, Optional, Sequence

import numpy as np

from ..characters.dirichlet_character import DirichletCharacter
from ..cusps.cusp import Cusp
from ..cusps.cusp_service import scaling_matrix
from ..cusps.gl2z import GL2Z
from ..eisen.char_eisenstein import theta_ratio
from ..eisen.cusp_eisenstein import eval_cusp_eisenstein
from ..eisen.eisenstein_series import CuspAttached
from ..shared.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_HEIGHTS = (20.0, 30.0)
PERIOD_SAMPLES = 32


class ConstantTermPair:
    """Coefficients (C, D) of y^s and y^{1-s}."""

    def __init__(self, C: complex, D: complex) -> None:
        self._C = complex(C)
        self._D = complex(D)

    @property
    def C(self) -> complex:
        """Coefficient of y^s."""
        return self._C

    @property
    def D(self) -> complex:
        """Coefficient of y^{1-s}."""
        return self._D

    def at(self, y: Any, s: complex) -> Any:
        """C y^s + D y^{1-s}."""
        y = np.asarray(y, dtype=float)
        return self._C * y ** s + self._D * y ** (1 - s)

    def to_dict(self) -> dict:
        return {
            'C': {'re': self._C.real, 'im': self._C.imag},
            'D': {'re': self._D.real, 'im': self._D.imag},
        }

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, ConstantTermPair):
            return False
        return (self._C, self._D) == (other._C, other._D)

    def __hash__(self) -> int:
        return hash((self._C, self._D))

    def __repr__(self) -> str:
        return f"ConstantTermPair(C={self._C!r}, D={self._D!r})"


def _leading(chi1: DirichletCharacter, chi2: DirichletCharacter, dilation: int, u: int, f: int,
             s: complex) -> complex:
    """
    C for E_{chi1,chi2}(K gamma z, s).

    Only (c, d) with c q2 K u + d f = 0 survive as y -> oo; they are
    c = +-f/g, d = -+q2 K u/g with g = (q2 K, f).
    """
    q2 = chi2.modulus
    if f % q2:
        return 0j
    g = gcd(q2 * dilation, f)
    value = chi1(-f // g) * chi2(q2 * dilation * u // g)
    if value == 0:
        return 0j
    return value * cmath.exp(2 * s * math.log(g) - s * math.log(q2 * dilation))


def constant_term_coeffs(chi1: DirichletCharacter, chi2: DirichletCharacter, dilation: int, gamma: GL2Z,
                         s: complex) -> ConstantTermPair:
    """
    (C, D) with E_{chi1,chi2}(K gamma z, s) = C y^s + D y^{1-s} + o(1).

    Business rules:
    - C = [q2 | f] g^{2s} / (q2 K)^s chi1(-f/g) chi2(q2 K u/g), g = (q2 K, f)
    - D = theta_{conj chi2, conj chi1}(1-s)/theta_{chi1,chi2}(s) times the
      C of (conj chi2, conj chi1) at 1 - s
    - f = 0 (gamma upper triangular) is the expansion at oo

    Args:
        chi1: Primitive character mod q1
        chi2: Primitive character mod q2 of the same parity
        dilation: The integer K >= 1
        gamma: (u v; f w) in SL2(Z)
        s: Complex spectral parameter

    Returns:
        ConstantTermPair

    Raises:
        PoleError: At the poles of the theta ratio
        DomainError: If K < 1
    """
    if dilation < 1:
        raise DomainError(f"Dilation must be positive, got {dilation}", operation="constant_term_coeffs")
    s = complex(s)
    u, f = gamma.a, gamma.c
    leading = _leading(chi1, chi2, dilation, u, f, s)
    dual_leading = _leading(chi2.conj(), chi1.conj(), dilation, u, f, 1 - s)
    dual = 0j if dual_leading == 0 else theta_ratio(chi1, chi2, s) * dual_leading
    return ConstantTermPair(leading, dual)


def period_average(func: Callable[[np.ndarray], Any], y: float, period: float = 1.0,
                   samples: int = PERIOD_SAMPLES) -> complex:
    """Mean of func(x + iy) over equally spaced x in [0, period)."""
    x = period * np.arange(samples) / samples
    values = np.asarray(func(x + 1j * y), dtype=complex)
    return complex(values.mean())


def fit_powers(heights: Sequence[float], averages: Sequence[complex], s: complex) -> ConstantTermPair:
    """
    Least-squares (C, D) for averages ~ C y^s + D y^{1-s}.

    Raises:
        DomainError: With fewer than two distinct heights
    """
    y = np.asarray(heights, dtype=float)
    if len(set(y.tolist())) < 2:
        raise DomainError("At least two distinct heights are needed", operation="fit_powers")
    design = np.column_stack([y ** s, y ** (1 - s)])
    solution, *_ = np.linalg.lstsq(design, np.asarray(averages, dtype=complex), rcond=None)
    return ConstantTermPair(solution[0], solution[1])


def extract_constant_term(series: CuspAttached, target: Cusp, s: complex,
                          heights: Optional[Sequence[float]] = None,
                          samples: int = PERIOD_SAMPLES) -> ConstantTermPair:
    """
    Numerical (delta, phi) of E_a(sigma_b z, s, chi) = delta y^s + phi y^{1-s} + o(1).

    Business rules:
    - the x-average over one period removes every nonconstant frequency
      up to aliasing at multiples of `samples`
    - for a target that is not singular the fit returns (0, 0) up to
      rounding

    Args:
        series: The cusp-attached series E_a
        target: The cusp b, of the same level
        s: Complex spectral parameter
        heights: Heights for the fit, default (20, 30)
        samples: Points per period

    Returns:
        ConstantTermPair from a least-squares fit
    """
    s = complex(s)
    if target.level != series.level:
        raise DomainError(
            f"Target cusp level {target.level} differs from {series.level}", operation="extract_constant_term",
        )
    sigma = scaling_matrix(target)
    heights = tuple(heights or DEFAULT_HEIGHTS)

    def values(z: np.ndarray) -> Any:
        return eval_cusp_eisenstein(series, sigma.apply(z), s)

    averages = [period_average(values, y, 1.0, samples) for y in heights]
    pair = fit_powers(heights, averages, s)
    logger.debug(f"Constant term of E_{series.cusp} at {target}: {pair!r}")
    return pair
