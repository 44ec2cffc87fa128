"""
Hurwitz zeta by Euler-Maclaurin summation, vectorized over the shift a.

zeta(s, a) = sum_{k<M} (k+a)^{-s} + (M+a)^{1-s}/(s-1) + (M+a)^{-s}/2
             + sum_{j=1}^{J} B_{2j}/(2j)! * s(s+1)...(s+2j-2) * (M+a)^{-s-2j+1}

The s-derivative is obtained by differentiating the same expansion term
by term; the Pochhammer products carry their derivatives along.
"""

import logging
import math
from typing import Tuple

import numpy as np
from scipy.special import bernoulli

from ..shared.errors import DomainError, PoleError
from .l_value import LValue

logger = logging.getLogger(__name__)

BERNOULLI_TERMS = 12

_B = bernoulli(2 * BERNOULLI_TERMS + 2)
# B_{2j}/(2j)! for j = 1..J+1; the last one drives the error bound
_EM_COEFFS = np.array([_B[2 * j] / math.factorial(2 * j) for j in range(1, BERNOULLI_TERMS + 2)])

_TAIL_SERIES_TERMS = 14


def cutoff(s: complex) -> int:
    """Number of explicitly summed terms, M = max(20, 2|s| + 10)."""
    return max(20, int(math.ceil(2 * abs(s) + 10)))


def _regular_tail(u: complex, log_x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(x^{-u} - 1)/u and its u-derivative, by series near u = 0."""
    t = -u * log_x
    if abs(u) * float(np.max(log_x)) < 0.1:
        value = np.zeros_like(t)
        deriv = np.zeros_like(t)
        power = np.ones_like(t)
        for k in range(_TAIL_SERIES_TERMS):
            value = value + power / math.factorial(k + 1)
            deriv = deriv + (k + 1) * power / math.factorial(k + 2)
            power = power * t
        return -log_x * value, log_x * log_x * deriv
    value = np.expm1(t) / u
    deriv = (-log_x * np.exp(t) * u - np.expm1(t)) / (u * u)
    return value, deriv


def hurwitz_zeta_array(
    s: complex, a: np.ndarray, drop_pole: bool = False
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    zeta(s, a) and its s-derivative for an array of shifts.

    With drop_pole the shift-independent part 1/(s-1) is removed from every
    value, leaving a function regular at s = 1. Weighted sums whose weights
    add up to zero are unchanged by this.

    Args:
        s: Complex argument, s != 1 unless drop_pole, Re s > -2
        a: Shifts in (0, 1] (larger shifts are accepted)
        drop_pole: Subtract 1/(s-1) from every value

    Returns:
        (values, derivatives, error estimates), each shaped like a

    Raises:
        PoleError: At s = 1
        DomainError: Outside the implementation window
    """
    s = complex(s)
    if s == 1 and not drop_pole:
        raise PoleError("Hurwitz zeta has a pole at s = 1", factor="hurwitz_zeta", s=s)
    if s.real <= -2:
        raise DomainError(f"Re s must exceed -2, got {s}", operation="hurwitz_zeta", s=s)
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if np.any(a <= 0):
        raise DomainError("Hurwitz shifts must be positive", operation="hurwitz_zeta")

    m = cutoff(s)
    base = np.arange(m)[:, None] + a[None, :]
    log_base = np.log(base)
    powers = np.exp(-s * log_base)
    values = powers.sum(axis=0)
    derivs = -(log_base * powers).sum(axis=0)

    x = m + a
    log_x = np.log(x)
    x_pow = np.exp(-s * log_x)
    if drop_pole:
        tail, tail_d = _regular_tail(s - 1, log_x)
    else:
        tail = x * x_pow / (s - 1)
        tail_d = -log_x * tail - tail / (s - 1)
    values = values + tail + 0.5 * x_pow
    derivs = derivs + tail_d - 0.5 * log_x * x_pow

    poch = s + 0j
    poch_d = 1 + 0j
    # x^{-s-1} for the j = 1 term
    x_term = x_pow / x
    error = np.zeros_like(a)
    for j in range(BERNOULLI_TERMS + 1):
        coeff = _EM_COEFFS[j]
        if j == BERNOULLI_TERMS:
            error = np.abs(coeff * poch * x_term) * (abs(s + 2 * j + 1) / max(s.real + 2 * j + 1, 1.0))
            break
        values = values + coeff * poch * x_term
        derivs = derivs + coeff * (poch_d - log_x * poch) * x_term
        for i in (2 * j + 1, 2 * j + 2):
            poch_d = poch_d * (s + i) + poch
            poch = poch * (s + i)
        x_term = x_term / (x * x)
    error = error + 1e-16 * np.abs(values) * m
    return values, derivs, error


def hurwitz_zeta(s: complex, a: float) -> LValue:
    """
    zeta(s, a) with its s-derivative.

    Args:
        s: Complex argument, s != 1
        a: Shift in (0, 1]

    Returns:
        LValue for zeta(s, a)
    """
    values, derivs, errs = hurwitz_zeta_array(s, np.array([a]))
    return LValue(s, values[0], derivs[0], errs[0])


def riemann_zeta(s: complex) -> LValue:
    """zeta(s) = zeta(s, 1)."""
    return hurwitz_zeta(s, 1.0)
