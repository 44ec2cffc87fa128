"""
Dirichlet L-functions, completed L-functions and their logarithmic
derivatives.

L(s, psi) for primitive psi mod q is assembled from Hurwitz zeta values
q^{-s} sum_a psi(a) zeta(s, a/q); imprimitive characters pick up the
missing Euler factors. The completed function
Lambda(s, psi) = (q/pi)^{(s+k)/2} Gamma((s+k)/2) L(s, psi), k the parity
bit, is evaluated directly for Re s >= 1/2 and through the functional
equation Lambda(s, psi) = eps(psi) Lambda(1-s, conj psi) below that.
"""

import cmath
import logging
import math
from typing import Tuple

import numpy as np
from scipy.special import loggamma, psi as digamma

from ..arith.multiplicative import prime_divisors
from ..characters.dirichlet_character import DirichletCharacter, gauss_sum
from ..shared.errors import DomainError, PoleError
from .hurwitz import hurwitz_zeta_array
from .l_value import LValue

logger = logging.getLogger(__name__)


def _primitive_l(s: complex, psi: DirichletCharacter) -> LValue:
    q = psi.modulus
    if q == 1:
        if s == 1:
            raise PoleError("zeta(s) has a pole at s = 1", factor="zeta", s=s)
        values, derivs, errs = hurwitz_zeta_array(s, np.array([1.0]))
        return LValue(s, values[0], derivs[0], errs[0])
    a = np.arange(1, q + 1)
    weights = psi.table()[a % q]
    mask = weights != 0
    # sum_a psi(a) = 0, so the pole parts of the Hurwitz values cancel
    values, derivs, errs = hurwitz_zeta_array(s, a[mask] / q, drop_pole=True)
    w = weights[mask]
    scale = cmath.exp(-s * math.log(q))
    total = np.sum(w * values)
    total_d = np.sum(w * derivs)
    value = scale * total
    derivative = scale * (total_d - math.log(q) * total)
    return LValue(s, value, derivative, abs(scale) * float(np.sum(errs)))


def euler_correction(s: complex, psi: DirichletCharacter, modulus: int) -> Tuple[complex, complex]:
    """
    prod_{p | N, p not dividing q} (1 - psi(p) p^{-s}) and its s-derivative.

    Args:
        s: Complex argument
        psi: Primitive character mod q
        modulus: The modulus N of the imprimitive character

    Returns:
        (factor, derivative)
    """
    factor = 1 + 0j
    factor_d = 0j
    for p in prime_divisors(modulus):
        if psi.modulus % p == 0:
            continue
        term = psi(p) * cmath.exp(-s * math.log(p))
        local = 1 - term
        local_d = math.log(p) * term
        factor_d = factor_d * local + factor * local_d
        factor = factor * local
    return factor, factor_d


def dirichlet_l(s: complex, chi: DirichletCharacter) -> LValue:
    """
    L(s, chi) with its s-derivative.

    Business rules:
    - primitive characters use q^{-s} sum_a chi(a) zeta(s, a/q)
    - imprimitive characters multiply by prod_{p|N, p not dividing q} (1 - psi(p) p^{-s})

    Args:
        s: Complex argument
        chi: Any Dirichlet character

    Returns:
        LValue for L(s, chi)

    Raises:
        PoleError: At s = 1 for characters induced from the trivial one
    """
    s = complex(s)
    psi = chi.primitive_inducer()
    base = _primitive_l(s, psi)
    if psi.modulus == chi.modulus:
        return base
    factor, factor_d = euler_correction(s, psi, chi.modulus)
    return base.scaled(factor, factor_d)


def log_derivative(s: complex, chi: DirichletCharacter) -> complex:
    """
    L'/L(s, chi).

    Intended for Re s >= 1, where L does not vanish.

    Raises:
        PoleError: At s = 1 for the trivial character
    """
    value = dirichlet_l(s, chi)
    if value.value == 0:
        raise PoleError("L(s, chi) vanishes; L'/L has a pole", factor="L", s=s)
    return value.log_derivative


def parity_bit(chi: DirichletCharacter) -> int:
    """0 for even characters, 1 for odd ones."""
    return 0 if chi.is_even else 1


def root_number(chi: DirichletCharacter) -> complex:
    """eps(chi) = tau(chi) / (i^k sqrt(q)) for primitive chi."""
    k = parity_bit(chi)
    return gauss_sum(chi) / ((1j ** k) * math.sqrt(chi.modulus))


def _direct_completed(s: complex, chi: DirichletCharacter) -> LValue:
    q = chi.modulus
    k = parity_bit(chi)
    half = (s + k) / 2
    gamma_factor = cmath.exp(half * math.log(q / math.pi) + complex(loggamma(half)))
    gamma_log_d = 0.5 * math.log(q / math.pi) + 0.5 * complex(digamma(half))
    l_value = _primitive_l(s, chi)
    value = gamma_factor * l_value.value
    derivative = gamma_factor * (l_value.derivative + l_value.value * gamma_log_d)
    return LValue(s, value, derivative, abs(gamma_factor) * l_value.est_abs_error)


def completed_l(s: complex, chi: DirichletCharacter) -> LValue:
    """
    Lambda(s, chi) with its s-derivative for primitive chi.

    Raises:
        DomainError: If chi is imprimitive
        PoleError: At s in {0, 1} for q = 1
    """
    s = complex(s)
    if not chi.is_primitive:
        raise DomainError("Completed L-function needs a primitive character", operation="completed_l", chi=chi)
    if chi.modulus == 1 and s in (0, 1):
        raise PoleError("Lambda(s) has poles at s = 0 and s = 1", factor="Lambda", s=s)
    if s.real >= 0.5:
        return _direct_completed(s, chi)
    eps = root_number(chi)
    reflected = _direct_completed(1 - s, chi.conj())
    return LValue(s, eps * reflected.value, -eps * reflected.derivative, reflected.est_abs_error)


def completed_log_derivative(s: complex, chi: DirichletCharacter) -> complex:
    """Lambda'/Lambda(s, chi) for primitive chi."""
    return completed_l(s, chi).log_derivative


def zeta_ratio_level(s: complex, level: int) -> complex:
    """zeta(s) / L(s, chi_{0,N}) = prod_{p|N} (1 - p^{-s})^{-1}."""
    result = 1 + 0j
    for p in prime_divisors(level):
        result /= 1 - cmath.exp(-s * math.log(p))
    return result
