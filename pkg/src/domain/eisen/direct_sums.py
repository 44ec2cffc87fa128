"""
Truncated defining sums of the Eisenstein series.

They converge absolutely for Re s > 1 and serve as an independent check of
the Fourier evaluations at Re s = 3, where the truncation error of a box
of half-width B is of order B^{-4}.
"""

import logging
from functools import lru_cache
from math import gcd
from typing import Tuple

import numpy as np

from ..characters.dirichlet_character import DirichletCharacter
from ..cusps.cusp import Cusp
from ..cusps.gl2z import GL2Z
from ..shared.errors import DomainError

logger = logging.getLogger(__name__)

LATTICE_BOUND = 400
COSET_BOUND = 100
MIN_REAL_PART = 1.5


def _require_convergent(s: complex, operation: str) -> None:
    if s.real < MIN_REAL_PART:
        raise DomainError(f"Direct sums need Re s >= {MIN_REAL_PART}", operation=operation, s=s)


def lattice_sum(chi1: DirichletCharacter, chi2: DirichletCharacter, z: complex, s: complex,
                bound: int = LATTICE_BOUND) -> complex:
    """
    1/2 sum over coprime (c, d) with |c|, |d| <= bound of chi1(c) chi2(d) (q2 y)^s / |c q2 z + d|^{2s}.

    Raises:
        DomainError: If Re s is too small for the sum to converge
    """
    z, s = complex(z), complex(s)
    _require_convergent(s, "lattice_sum")
    q2 = chi2.modulus
    c, d = np.meshgrid(np.arange(-bound, bound + 1), np.arange(-bound, bound + 1), indexing="ij")
    mask = np.gcd(c, d) == 1
    c, d = c[mask], d[mask]
    weights = chi1.values_at(c) * chi2.values_at(d)
    terms = weights * np.abs(c * q2 * z + d) ** (-2 * s)
    return complex(0.5 * (q2 * z.imag) ** s * terms.sum())


@lru_cache(maxsize=4)
def _coprime_rows(bound: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Bottom rows (c, d) in the box with the top rows (a, b) completing them to SL2(Z)."""
    rows = [(c, d) for c in range(-bound, bound + 1) for d in range(-bound, bound + 1) if gcd(c, d) == 1]
    completions = [GL2Z.from_bottom_row(c, d) for c, d in rows]
    arrays = (
        np.array([c for c, _ in rows]),
        np.array([d for _, d in rows]),
        np.array([m.a for m in completions]),
        np.array([m.b for m in completions]),
    )
    for array in arrays:
        array.setflags(write=False)
    logger.debug(f"Completed {len(rows)} coprime rows in the box of half-width {bound}")
    return arrays


def coset_sum(cusp: Cusp, chi: DirichletCharacter, z: complex, s: complex, bound: int = COSET_BOUND) -> complex:
    """
    E_a(z, s, chi) as the sum over Gamma_a\\Gamma0(N) of conj chi(d_gamma) Im(sigma_a^{-1} gamma z)^s.

    Business rules:
    - gamma = tau delta with tau(oo) = u/f and delta running over coprime
      bottom rows (c, d), shifted by the W translates that keep tau delta
      in Gamma0(N)
    - only rows with |c|, |d| <= bound enter

    Raises:
        DomainError: If Re s is too small or chi is not a character mod N
    """
    z, s = complex(z), complex(s)
    _require_convergent(s, "coset_sum")
    level = cusp.level
    if chi.modulus != level:
        raise DomainError(f"Character modulus {chi.modulus} differs from the level {level}", operation="coset_sum")
    width, f = cusp.width, cusp.f
    tau_d = GL2Z.from_left_column(cusp.u, f).d
    c, d, a, b = _coprime_rows(bound)
    weight = np.zeros(len(c), dtype=complex)
    for k in range(width):
        in_group = (f * (a + k * c) + tau_d * c) % level == 0
        weight += np.where(in_group, np.conj(chi.values_at(f * (b + k * d) + tau_d * d)), 0)
    total = np.sum(weight * np.abs(c * z + d) ** (-2 * s))
    return complex(0.5 * width ** (-s) * z.imag ** s * total)
