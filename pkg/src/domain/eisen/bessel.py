"""
Modified Bessel functions K_nu(x) of complex order.

K_nu(x) = int_0^oo exp(-x cosh t) cosh(nu t) dt is summed by the
trapezoidal rule in t. The integrand is analytic in a strip and decays
doubly exponentially, so a fixed step converges geometrically; the step
shrinks like x^{-1/2} for large x where the integrand becomes a narrow
Gaussian. Real orders go to scipy.special.kv and tiny arguments to mpmath.
"""

import logging
import math
from typing import Any, Optional

import mpmath
import numpy as np
from scipy.special import kv

from ..shared.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_STEP = 0.125
SMALL_ARGUMENT = 1e-2

# integrand below exp(-x - 42) relative to the scale of K is dropped
_DECAY = 42.0
_MAX_T = 40.0
_CHUNK = 2048

_configured_step = DEFAULT_STEP


def configure_step(step: float) -> None:
    """
    Set the trapezoid step used when callers pass none.

    Raises:
        DomainError: If the step is not in (0, 0.5]
    """
    global _configured_step
    if not 0 < step <= 0.5:
        raise DomainError(f"Bessel step must lie in (0, 0.5], got {step}", operation="configure_step")
    _configured_step = float(step)


def configured_step() -> float:
    """The step used when callers pass none."""
    return _configured_step


def _cutoff(nu: complex, x_min: float) -> float:
    r = abs(nu.real)
    t = math.acosh(1.0 + _DECAY / x_min)
    while x_min * (math.cosh(t) - 1.0) - r * t < _DECAY and t < _MAX_T:
        t += 0.25
    return t


def _trapezoid(nu: complex, x: np.ndarray, step: float) -> np.ndarray:
    x_min = float(x.min())
    x_max = float(x.max())
    h = min(step, 0.6 / math.sqrt(x_max))
    t = np.arange(0.0, _cutoff(nu, x_min) + h, h)
    weights = np.full(t.shape, h, dtype=complex)
    weights[0] = h / 2
    weights *= np.cosh(nu * t)
    shifted = np.cosh(t) - 1.0
    out = np.empty(x.shape, dtype=complex)
    for start in range(0, len(x), _CHUNK):
        xs = x[start:start + _CHUNK]
        out[start:start + _CHUNK] = (np.exp(-np.outer(xs, shifted)) @ weights) * np.exp(-xs)
    return out


def bessel_k(nu: complex, x: Any, step: Optional[float] = None) -> np.ndarray:
    """
    K_nu(x) for a scalar order and an array of positive arguments.

    Business rules:
    - real orders use scipy.special.kv
    - arguments below 1e-2 use mpmath.besselk
    - everything else is summed on octave groups of x, each with its own
      node set, so one large argument does not refine the whole batch

    Args:
        nu: Order, any complex number
        x: Positive real scalar or array
        step: Trapezoid step in t (upper bound), the configured step when None

    Returns:
        Complex array shaped like x

    Raises:
        DomainError: If some x <= 0
    """
    nu = complex(nu)
    step = step or _configured_step
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = x.ravel()
    if x.size and np.any(x <= 0):
        raise DomainError("K-Bessel argument must be positive", operation="bessel_k", nu=nu)
    if nu.imag == 0:
        return kv(nu.real, x).astype(complex).reshape(shape)

    out = np.zeros(x.shape, dtype=complex)
    small = x < SMALL_ARGUMENT
    for i in np.flatnonzero(small):
        out[i] = complex(mpmath.besselk(mpmath.mpc(nu.real, nu.imag), float(x[i])))
    # exp(-x) underflows beyond this
    large = x > 745.0
    regular = ~small & ~large
    if np.any(regular):
        octave = np.floor(np.log2(x[regular])).astype(int)
        idx = np.flatnonzero(regular)
        for level in np.unique(octave):
            group = idx[octave == level]
            out[group] = _trapezoid(nu, x[group], step)
    return out.reshape(shape)


def bessel_k_imag_order(T: float, x: Any, step: Optional[float] = None) -> Any:
    """
    K_{iT}(x), real for real T and x > 0.

    Raises:
        DomainError: If x <= 0
    """
    values = bessel_k(1j * float(T), x, step).real
    if np.ndim(values) == 0:
        return float(values)
    return values
