"""
Cusp-attached Eisenstein series E_a(z, s, chi) on Gamma0(N).

For the cusp a = u/f of width W the series is expanded in the basis of
newform-type series:

    E_a(z, s, chi) = W^{-s} f^{-s} / phi((f, N/f))
        sum_{q1 | N/f} sum_{q2 | f} sum*_{chi1, chi2 : chi1 conj(chi2) ~ chi}
            conj(chi2)(-u) L(2s, chi1 chi2) / L(2s, chi1 chi2 chi_{0,N})
            sum_{a | f} sum_{b | N/f} mu(a) mu(b) chi1(b) chi2(a) / (ab)^s
                E_{chi1,chi2}(bf/(a q2) z, s)

The dilation bf/(a q2) is an integer for every nonzero term.
"""

import cmath
import logging
import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..arith.multiplicative import divisors, euler_phi, mobius, prime_divisors
from ..characters.character_group import primitive_characters
from ..characters.dirichlet_character import DirichletCharacter
from ..cusps.cusp import Cusp
from ..shared.errors import DomainError
from .char_eisenstein import eval_char_eisenstein
from .eisenstein_series import CharAttached, CuspAttached, FourierTruncation

logger = logging.getLogger(__name__)


class BasisTerm:
    """One summand coefficient * E_{chi1,chi2}(K z, s) of a cusp-attached series."""

    def __init__(self, chi1: DirichletCharacter, chi2: DirichletCharacter, dilation: int, coefficient: complex) -> None:
        self._series = CharAttached(chi1, chi2, dilation)
        self._coefficient = complex(coefficient)

    @property
    def series(self) -> CharAttached:
        """The dilated E_{chi1,chi2}."""
        return self._series

    @property
    def coefficient(self) -> complex:
        """Its coefficient at the chosen s."""
        return self._coefficient

    def __repr__(self) -> str:
        return f"BasisTerm(series={self._series!r}, coefficient={self._coefficient!r})"


def character_pairs(cusp: Cusp, chi: DirichletCharacter) -> List[Tuple[DirichletCharacter, DirichletCharacter]]:
    """
    Primitive (chi1 mod q1, chi2 mod q2) with q1 | N/f, q2 | f and chi1 conj(chi2) inducing chi.
    """
    pairs = []
    for q1 in divisors(cusp.complement):
        for q2 in divisors(cusp.f):
            for chi1 in primitive_characters(q1):
                for chi2 in primitive_characters(q2):
                    if chi1.product(chi2.conj()).agrees_with(chi):
                        pairs.append((chi1, chi2))
    return pairs


def _l_ratio(chi1: DirichletCharacter, chi2: DirichletCharacter, level: int, s: complex) -> complex:
    """L(2s, chi1 chi2) / L(2s, chi1 chi2 chi_{0,N}) as a finite Euler product."""
    q = chi1.modulus * chi2.modulus
    result = 1 + 0j
    for p in prime_divisors(level):
        if q % p == 0:
            continue
        result /= 1 - chi1(p) * chi2(p) * cmath.exp(-2 * s * math.log(p))
    return result


def basis_terms(cusp: Cusp, chi: DirichletCharacter, s: complex) -> List[BasisTerm]:
    """
    The change of basis for E_a(., s, chi).

    Business rules:
    - terms with mu(a) mu(b) chi1(b) chi2(a) = 0 are dropped
    - the normalization W^{-s} f^{-s}/phi((f, N/f)) is folded into every coefficient

    Returns:
        Nonzero BasisTerm list in (q1, q2, chi1, chi2, a, b) order
    """
    s = complex(s)
    level = cusp.level
    f = cusp.f
    norm = cmath.exp(-s * math.log(cusp.width * f)) / euler_phi(cusp.g)
    terms = []
    for chi1, chi2 in character_pairs(cusp, chi):
        q2 = chi2.modulus
        outer = norm * chi2(-cusp.u).conjugate() * _l_ratio(chi1, chi2, level, s)
        for a in divisors(f):
            mu_a = mobius(a)
            if mu_a == 0 or chi2(a) == 0:
                continue
            for b in divisors(cusp.complement):
                mu_b = mobius(b)
                if mu_b == 0 or chi1(b) == 0:
                    continue
                numerator = b * f
                if numerator % (a * q2):
                    continue
                weight = mu_a * mu_b * chi1(b) * chi2(a) * cmath.exp(-s * math.log(a * b))
                terms.append(BasisTerm(chi1, chi2, numerator // (a * q2), outer * weight))
    logger.debug(f"E_{cusp} at level {level}: {len(terms)} basis terms")
    return terms


def eval_cusp_eisenstein(
    series: CuspAttached,
    z: Any,
    s: complex,
    trunc: Optional[FourierTruncation] = None,
    method: str = "reduced",
) -> Any:
    """
    E_a(g z, s, chi) at a point or array of points.

    Business rules:
    - evaluated through the change of basis, one E_{chi1,chi2} evaluation
      per character pair at all of its dilations at once
    - automorphic of character chi: E_a(gamma z) = chi(d_gamma) E_a(z)

    Raises:
        PoleError: At s = 1 for the trivial character
    """
    s = complex(s)
    points = series.dilation * np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    grouped: Dict[Tuple[DirichletCharacter, DirichletCharacter], List[BasisTerm]] = {}
    for term in basis_terms(series.cusp, series.chi, s):
        grouped.setdefault((term.series.chi1, term.series.chi2), []).append(term)
    total = np.zeros(points.shape, dtype=complex)
    for (chi1, chi2), terms in grouped.items():
        stacked = np.concatenate([term.series.dilation * points for term in terms])
        values = eval_char_eisenstein(CharAttached(chi1, chi2), stacked, s, trunc, method)
        values = values.reshape(len(terms), len(points))
        for row, term in zip(values, terms):
            total += term.coefficient * row
    if np.ndim(z) == 0:
        return complex(total[0])
    return total.reshape(np.shape(z))


def eval_cusp_eisenstein_at(cusp: Cusp, z: Any, s: complex, chi: Optional[DirichletCharacter] = None,
                            trunc: Optional[FourierTruncation] = None) -> Any:
    """Shorthand for eval_cusp_eisenstein(CuspAttached(cusp, chi), z, s)."""
    return eval_cusp_eisenstein(CuspAttached(cusp, chi), z, s, trunc)


def require_trivial(chi: DirichletCharacter, operation: str) -> None:
    """Raise DomainError unless chi is principal."""
    if not chi.is_trivial:
        raise DomainError("Operation needs the trivial central character", operation=operation, chi=chi)
