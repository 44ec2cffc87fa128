"""
Hecke operators on functions of level one.
"""

import math
from typing import Any, Callable

import numpy as np

from ..arith.multiplicative import divisors
from ..shared.errors import DomainError

PointFunction = Callable[[np.ndarray], np.ndarray]


def hecke_points(n: int, z: Any) -> np.ndarray:
    """
    The points (az + b)/d for ad = n, 0 <= b < d.

    Returns:
        Array of shape (sigma(n),) + shape(z)
    """
    z = np.asarray(z, dtype=complex)
    images = []
    for a in divisors(n):
        d = n // a
        for b in range(d):
            images.append((a * z + b) / d)
    return np.stack(images)


def hecke_apply(n: int, func: PointFunction, z: Any) -> Any:
    """
    T_n f(z) = n^{-1/2} sum_{ad = n} sum_{b mod d} f((az + b)/d).

    Args:
        n: Positive integer
        func: Vectorized function of level one
        z: Point or array of points

    Raises:
        DomainError: If n < 1
    """
    if n < 1:
        raise DomainError(f"Hecke index must be positive, got {n}", operation="hecke_apply")
    images = hecke_points(n, z)
    values = np.asarray(func(images.ravel())).reshape(images.shape)
    result = values.sum(axis=0) / math.sqrt(n)
    if np.ndim(z) == 0:
        return complex(result)
    return result


def hecke_G_correction(n: int) -> float:
    """(3/pi) sum_{a | n} (a/sqrt(n)) log(a^2/n), the defect of T_n on G."""
    root = math.sqrt(n)
    return 3 / math.pi * sum(a / root * math.log(a * a / n) for a in divisors(n))
