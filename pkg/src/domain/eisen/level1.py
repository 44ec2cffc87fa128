"""
The level-one series E(z, s) and its Kronecker limit function G.

E(z, s) = (3/pi)/(s-1) + G(z) + O(s-1), with G(z) = y + O(log y).
"""

import logging
import math
from typing import Any, Optional

import numpy as np

from ..characters.dirichlet_character import DirichletCharacter
from .char_eisenstein import eval_char_eisenstein
from .eisenstein_series import CharAttached, FourierTruncation

logger = logging.getLogger(__name__)

RESIDUE = 3 / math.pi
RICHARDSON_STEP = 1e-2

_LEVEL_ONE = CharAttached(DirichletCharacter.trivial(1), DirichletCharacter.trivial(1))


def eval_level1(z: Any, s: complex, trunc: Optional[FourierTruncation] = None) -> Any:
    """E(z, s) = 1/2 sum_{(c, d) = 1} y^s / |cz + d|^{2s}, continued in s."""
    return eval_char_eisenstein(_LEVEL_ONE, z, s, trunc)


def _symmetric_mean(z: Any, h: float, trunc: Optional[FourierTruncation]) -> Any:
    # the residue terms at 1 + h and 1 - h cancel
    plus = eval_level1(z, 1 + h, trunc)
    minus = eval_level1(z, 1 - h, trunc)
    return 0.5 * (np.real(plus) + np.real(minus))


def eval_level1_G(z: Any, h: float = RICHARDSON_STEP, trunc: Optional[FourierTruncation] = None) -> Any:
    """
    G(z), the constant term of E(z, s) at s = 1.

    Business rules:
    - A(h) = (E(z, 1+h) + E(z, 1-h))/2 = G(z) + O(h^2)
    - one Richardson step G = (4 A(h/2) - A(h))/3 leaves O(h^4)

    Args:
        z: Point or array of points
        h: Outer step of the extrapolation

    Returns:
        Real value(s) of G
    """
    coarse = _symmetric_mean(z, h, trunc)
    fine = _symmetric_mean(z, h / 2, trunc)
    value = (4 * fine - coarse) / 3
    if np.ndim(value) == 0:
        return float(value)
    return value


def eval_level1_G_at_step(z: Any, h: float) -> Any:
    """The unextrapolated estimate E(z, 1+h) - (3/pi)/h averaged with its mirror."""
    return _symmetric_mean(z, h, None)
