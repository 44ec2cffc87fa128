"""
Trace from level N down to a level M | N, and the modulus check of the
slash action of a scaling matrix on E_{chi1,chi2}.
"""

import logging
from math import gcd
from typing import Any, Optional

import numpy as np

from ..characters.dirichlet_character import DirichletCharacter
from ..cusps.coset_reps import coset_enumeration
from ..cusps.cusp import Cusp
from ..cusps.cusp_service import reduce_cusp, relative_width, scaling_matrix
from ..shared.errors import DegeneratePointError, DomainError
from .char_eisenstein import eval_char_eisenstein
from .cusp_eisenstein import eval_cusp_eisenstein, require_trivial
from .eisenstein_series import CharAttached, CuspAttached, FourierTruncation

logger = logging.getLogger(__name__)

DEGENERATE_DENOMINATOR = 1e-12


def trace_down(series: CuspAttached, level: int, z: Any, s: complex,
               trunc: Optional[FourierTruncation] = None) -> Any:
    """
    Tr^N_M E^{(N)}_a(z, s) = sum_{gamma in Gamma0(N)\\Gamma0(M)} E^{(N)}_a(gamma z, s).

    Raises:
        DomainError: If M does not divide N or the character is not trivial
    """
    require_trivial(series.chi, "trace_down")
    if series.level % level != 0:
        raise DomainError(f"Level {level} must divide {series.level}", operation="trace_down")
    points = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    cosets = coset_enumeration(series.level, level)
    images = np.concatenate([gamma.act(points) for gamma in cosets])
    values = np.asarray(eval_cusp_eisenstein(series, images, s, trunc)).reshape(len(cosets), len(points))
    total = values.sum(axis=0)
    logger.debug(f"Trace of E_{series.cusp} from {series.level} to {level} over {len(cosets)} cosets")
    if np.ndim(z) == 0:
        return complex(total[0])
    return total.reshape(np.shape(z))


def trace_by_relative_width(series: CuspAttached, level: int, z: Any, s: complex,
                            trunc: Optional[FourierTruncation] = None) -> Any:
    """(W^M_N(a))^{1-s} E^{(M)}_a(z, s), the closed form of the trace."""
    require_trivial(series.chi, "trace_by_relative_width")
    s = complex(s)
    factor = relative_width(series.cusp, level) ** (1 - s)
    lowered = CuspAttached(reduce_cusp(series.cusp, level))
    return factor * eval_cusp_eisenstein(lowered, z, s, trunc)


def slash_modulus_check(chi1: DirichletCharacter, chi2: DirichletCharacter, z: complex, s: complex,
                        trunc: Optional[FourierTruncation] = None) -> float:
    """
    |E_{chi1,chi2}(sigma_a z, s)| / |E_{1,chi1 chi2}(z, s)| for a = 1/q2 at level q1 q2.

    Business rules:
    - needs coprime moduli, so that chi1 chi2 is primitive mod q1 q2

    Raises:
        DomainError: If the moduli are not coprime
        DegeneratePointError: If the denominator is below 1e-12
    """
    q1, q2 = chi1.modulus, chi2.modulus
    if gcd(q1, q2) != 1:
        raise DomainError("Conductors must be coprime", operation="slash_modulus_check", q1=q1, q2=q2)
    level = q1 * q2
    sigma = scaling_matrix(Cusp(1, q2, level))
    numerator = eval_char_eisenstein(CharAttached(chi1, chi2), complex(sigma.apply(z)), s, trunc)
    product = chi1.product(chi2)
    denominator = eval_char_eisenstein(CharAttached(DirichletCharacter.trivial(1), product), z, s, trunc)
    if abs(denominator) < DEGENERATE_DENOMINATOR:
        raise DegeneratePointError("E_{1,chi1 chi2} nearly vanishes here", point=z, s=s)
    return abs(numerator) / abs(denominator)
