"""
Reduction of points of the upper half plane into the standard fundamental
domain D = {|x| <= 1/2, |z| >= 1} of SL2(Z).
"""

import logging
from typing import Any, Tuple

import numpy as np

from ..cusps.gl2z import GL2Z
from ..shared.errors import DegeneratePointError

logger = logging.getLogger(__name__)

MAX_STEPS = 400
_EDGE = 1e-14


def reduce_points(z: Any) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vectorized reduction into D.

    Args:
        z: Complex scalar or array with positive imaginary parts

    Returns:
        (reduced points, matrices) where matrices has shape (..., 4) holding
        the entries (a, b, c, d) of delta with delta z = reduced point

    Raises:
        DegeneratePointError: If a point is not in the upper half plane or
            does not reach D within MAX_STEPS inversions
    """
    w = np.array(z, dtype=complex, copy=True)
    shape = w.shape
    w = w.ravel()
    if np.any(w.imag <= 0):
        raise DegeneratePointError("Points must lie in the upper half plane", point=z)
    a = np.ones(w.shape, dtype=np.int64)
    b = np.zeros(w.shape, dtype=np.int64)
    c = np.zeros(w.shape, dtype=np.int64)
    d = np.ones(w.shape, dtype=np.int64)
    for _ in range(MAX_STEPS):
        n = np.floor(w.real + 0.5).astype(np.int64)
        w = w - n
        # T^{-n} delta
        a = a - n * c
        b = b - n * d
        flip = np.abs(w) < 1.0 - _EDGE
        if not np.any(flip):
            break
        w[flip] = -1.0 / w[flip]
        # S delta
        a[flip], c[flip] = -c[flip], a[flip].copy()
        b[flip], d[flip] = -d[flip], b[flip].copy()
    else:
        raise DegeneratePointError("Reduction into D did not terminate", point=z)
    matrices = np.stack([a, b, c, d], axis=-1)
    return w.reshape(shape), matrices.reshape(shape + (4,))


def reduce_to_D(z: complex) -> Tuple[complex, GL2Z]:
    """
    The point of D equivalent to z and the matrix carrying z there.

    Returns:
        (z', delta) with delta in SL2(Z) and delta z = z'
    """
    reduced, matrices = reduce_points(np.array([z]))
    return complex(reduced[0]), GL2Z(*(int(v) for v in matrices[0]))


def in_fundamental_domain(z: Any) -> Any:
    """True where |x| <= 1/2 and |z| >= 1, up to rounding."""
    z = np.asarray(z)
    return (np.abs(z.real) <= 0.5 + 1e-12) & (np.abs(z) >= 1.0 - 1e-12)
