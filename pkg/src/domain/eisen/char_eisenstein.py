"""
The series E_{chi1,chi2}(z, s) for primitive chi1 mod q1, chi2 mod q2.

    E_{chi1,chi2}(z, s) = 1/2 sum_{(c, d) = 1} chi1(c) chi2(d) (q2 y)^s / |c q2 z + d|^{2s}

Summing over all nonzero (c, d) instead multiplies by L(2s, chi1 chi2), so
E = q2^s F_omega(z) / L(2s, chi1 chi2) with omega(m, n) = [q2 | m] chi1(m/q2) chi2(n)
periodic mod q1 q2. Its expansion at oo reads

    E = [q1 = 1] (q2 y)^s + [q2 = 1] R(s) (q1 y)^{1-s}
        + 2 rho(s) sqrt(y) sum_{n >= 1} lambda(n, s) K_{s-1/2}(2 pi n y) (e(nx) + chi2(-1) e(-nx))

with rho = 1/theta the normalizing factor.
"""

import cmath
import logging
import math
from functools import lru_cache
from typing import Any, Optional

import numpy as np

from ..characters.dirichlet_character import DirichletCharacter, gauss_sum
from ..lfun.dirichlet_l import completed_l, dirichlet_l, euler_correction
from ..shared.errors import DomainError, PoleError
from .bessel import bessel_k
from .eisenstein_series import CharAttached, FourierTruncation
from .periodic_series import PeriodicWeight, evaluate_periodic_series

logger = logging.getLogger(__name__)

METHOD_REDUCED = "reduced"
METHOD_FOURIER = "fourier"


@lru_cache(maxsize=512)
def char_weight(chi1: DirichletCharacter, chi2: DirichletCharacter) -> PeriodicWeight:
    """omega(m, n) = [q2 | m] chi1(m/q2) chi2(n) on (Z/q1q2)^2."""
    q1, q2 = chi1.modulus, chi2.modulus
    modulus = q1 * q2
    table = np.zeros((modulus, modulus), dtype=complex)
    rows = np.arange(q1) * q2
    table[rows, :] = np.outer(chi1.values_at(np.arange(q1)), chi2.values_at(np.arange(modulus)))
    return PeriodicWeight(("char", chi1, chi2), table)


def inducing_character(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    """psi, the primitive character inducing chi1 chi2."""
    return chi1.product(chi2).primitive_inducer()


def _power(base: float, exponent: complex) -> complex:
    return cmath.exp(exponent * math.log(base))


def completed_ratio(psi: DirichletCharacter, s: complex) -> complex:
    """Lambda(2-2s, conj psi) / Lambda(2s, psi), with its limits for trivial psi."""
    if psi.modulus == 1:
        if s == 0.5:
            return -1 + 0j
        if s == 0:
            return 0j
        if s == 1:
            raise PoleError("Lambda(2-2s) has a pole at s = 1", factor="Lambda(2-2s)", s=s)
    return completed_l(2 - 2 * s, psi.conj()).value / completed_l(2 * s, psi).value


def theta(chi1: DirichletCharacter, chi2: DirichletCharacter, s: complex) -> complex:
    """
    theta_{chi1,chi2}(s) = q2^s q_psi^{-s} Lambda(2s, psi) Eul(2s) / tau(chi2).

    Eul(w) = prod_{p | q1 q2, p not dividing q_psi} (1 - psi(p) p^{-w}).

    Raises:
        PoleError: At the poles of Lambda(2s, psi)
    """
    s = complex(s)
    psi = inducing_character(chi1, chi2)
    euler, _ = euler_correction(2 * s, psi, chi1.modulus * chi2.modulus)
    lam = completed_l(2 * s, psi).value
    return _power(chi2.modulus, s) * _power(psi.modulus, -s) * lam * euler / gauss_sum(chi2)


def rho(chi1: DirichletCharacter, chi2: DirichletCharacter, s: complex) -> complex:
    """1/theta_{chi1,chi2}(s), zero at the poles of theta."""
    try:
        return 1 / theta(chi1, chi2, s)
    except PoleError:
        return 0j


def theta_ratio(chi1: DirichletCharacter, chi2: DirichletCharacter, s: complex) -> complex:
    """
    theta_{conj chi2, conj chi1}(1 - s) / theta_{chi1,chi2}(s).

    Business rules:
    - equals q1^{1-s} q2^{-s} q_psi^{2s-1} tau(chi2)/tau(conj chi1)
      Lambda(2-2s, conj psi)/Lambda(2s, psi) Eul_{conj psi}(2-2s)/Eul_psi(2s)
    - for trivial psi the Lambda ratio is -1 at s = 1/2 and 0 at s = 0

    Raises:
        PoleError: At s = 1 for trivial psi
    """
    s = complex(s)
    q1, q2 = chi1.modulus, chi2.modulus
    psi = inducing_character(chi1, chi2)
    euler_dual, _ = euler_correction(2 - 2 * s, psi.conj(), q1 * q2)
    euler, _ = euler_correction(2 * s, psi, q1 * q2)
    prefactor = _power(q1, 1 - s) * _power(q2, -s) * _power(psi.modulus, 2 * s - 1)
    gauss = gauss_sum(chi2) / gauss_sum(chi1.conj())
    return prefactor * gauss * completed_ratio(psi, s) * euler_dual / euler


def dual_coefficient(chi1: DirichletCharacter, chi2: DirichletCharacter, s: complex) -> complex:
    """
    R(s), the coefficient of (q1 y)^{1-s} when q2 = 1.

    R(s) = q1^s Lambda(2-2s, conj chi1) / (tau(conj chi1) Lambda(2s, chi1)).
    """
    s = complex(s)
    if chi2.modulus != 1:
        return 0j
    q1 = chi1.modulus
    return _power(q1, s) * completed_ratio(chi1, s) / gauss_sum(chi1.conj())


def lambda_coeff(chi1: DirichletCharacter, chi2: DirichletCharacter, n: int, s: complex) -> complex:
    """
    lambda_{chi1,chi2}(n, s) = chi2(sgn n) sum_{ab = |n|} chi1(a) conj(chi2)(b) (b/a)^{s-1/2}.

    Raises:
        DomainError: If n = 0
    """
    n = int(n)
    if n == 0:
        raise DomainError("lambda(n, s) needs n != 0", operation="lambda_coeff")
    s = complex(s)
    m = abs(n)
    total = 0j
    for a in range(1, m + 1):
        if m % a:
            continue
        b = m // a
        total += chi1(a) * chi2(b).conjugate() * _power(b / a, s - 0.5)
    sign = chi2(-1) if n < 0 else 1
    return sign * total


def lambda_table(chi1: DirichletCharacter, chi2: DirichletCharacter, n_max: int, s: complex) -> np.ndarray:
    """lambda(n, s) for n = 0..n_max (entry 0 unused), by a divisor sieve."""
    s = complex(s)
    out = np.zeros(n_max + 1, dtype=complex)
    for a in range(1, n_max + 1):
        b = np.arange(1, n_max // a + 1)
        weight = chi1(a) * np.conj(chi2.values_at(b)) * (b / a) ** (s - 0.5)
        np.add.at(out, a * b, weight)
    return out


def _vanishes_at_half(chi1: DirichletCharacter, chi2: DirichletCharacter, s: complex) -> bool:
    return s == 0.5 and inducing_character(chi1, chi2).modulus == 1


def _eval_reduced(series: CharAttached, w: np.ndarray, s: complex, trunc: FourierTruncation) -> np.ndarray:
    chi1, chi2 = series.chi1, series.chi2
    l_value = dirichlet_l(2 * s, chi1.product(chi2)).value
    lattice = evaluate_periodic_series(char_weight(chi1, chi2), w, s, trunc)
    return _power(chi2.modulus, s) * lattice / l_value


def _eval_fourier(series: CharAttached, w: np.ndarray, s: complex, trunc: FourierTruncation) -> np.ndarray:
    chi1, chi2 = series.chi1, series.chi2
    q1, q2 = chi1.modulus, chi2.modulus
    y = w.imag
    x = w.real
    out = np.zeros(w.shape, dtype=complex)
    if q1 == 1:
        out += (q2 * y) ** s
    if q2 == 1:
        out += dual_coefficient(chi1, chi2, s) * (q1 * y) ** (1 - s)
    n_max = trunc.cutoff(1, float(y.min()), s.imag)
    lam = lambda_table(chi1, chi2, n_max, s)[1:]
    n = np.arange(1, n_max + 1)
    sign = chi2(-1)
    norm = 2 * rho(chi1, chi2, s)
    for start in range(0, len(w), 256):
        ys = y[start:start + 256]
        xs = x[start:start + 256]
        kvals = bessel_k(s - 0.5, 2 * math.pi * np.outer(ys, n))
        phase = np.exp(2j * math.pi * np.outer(xs, n))
        tail = (kvals * lam[None, :] * (phase + sign / phase)).sum(axis=1)
        out[start:start + 256] += norm * np.sqrt(ys) * tail
    return out


def eval_char_eisenstein(
    series: CharAttached,
    z: Any,
    s: complex,
    trunc: Optional[FourierTruncation] = None,
    method: str = METHOD_REDUCED,
) -> Any:
    """
    E_{chi1,chi2}(g z, s) at a point or an array of points.

    Business rules:
    - "reduced" sums the lattice series after SL2(Z) reduction and is
      accurate everywhere in the upper half plane
    - "fourier" sums the expansion at oo and is meant for y not too small
    - E_{chi,conj chi}(z, 1/2) = 0 for trivial inducer of chi1 chi2

    Raises:
        PoleError: At s = 1 for chi1 chi2 induced from the trivial character
        DomainError: For an unknown method
    """
    s = complex(s)
    w = series.dilation * np.atleast_1d(np.asarray(z, dtype=complex))
    if _vanishes_at_half(series.chi1, series.chi2, s):
        values = np.zeros(w.shape, dtype=complex)
    elif method == METHOD_REDUCED:
        values = _eval_reduced(series, w.ravel(), s, trunc or FourierTruncation.automatic()).reshape(w.shape)
    elif method == METHOD_FOURIER:
        values = _eval_fourier(series, w.ravel(), s, trunc or FourierTruncation.automatic()).reshape(w.shape)
    else:
        raise DomainError(f"Unknown evaluation method {method!r}", operation="eval_char_eisenstein")
    if np.ndim(z) == 0:
        return complex(values[0])
    return values


def completed_char_eisenstein(series: CharAttached, z: Any, s: complex,
                              trunc: Optional[FourierTruncation] = None) -> Any:
    """E*_{chi1,chi2}(z, s) = theta_{chi1,chi2}(s) E_{chi1,chi2}(z, s)."""
    return theta(series.chi1, series.chi2, s) * eval_char_eisenstein(series, z, s, trunc)
