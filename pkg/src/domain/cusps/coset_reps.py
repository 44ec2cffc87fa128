"""
Right cosets Gamma0(M)\\SL2(Z) through the projective line P^1(Z/M).

The coset of gamma is determined by its bottom row up to multiplication
by units mod M. Each class is stored by its normal form, the
lexicographically least (lambda*c mod M, lambda*d mod M); classes are
indexed in increasing normal-form order, so the identity class (0, 1)
always has index 0.
"""

from functools import lru_cache
from math import gcd
from typing import Dict, List, Tuple

from ..shared.errors import DomainError
from .gl2z import GL2Z


def _units(level: int) -> List[int]:
    return [u for u in range(1, level + 1) if gcd(u, level) == 1] if level > 1 else [1]


def normal_form(c: int, d: int, level: int) -> Tuple[int, int]:
    """Normal form of the class of (c : d) in P^1(Z/M)."""
    if level == 1:
        return (0, 0)
    return min(((u * c) % level, (u * d) % level) for u in _units(level))


def _small_lift(c: int, d: int, level: int) -> Tuple[int, int]:
    # coprime lift (c', d') = (c, d) mod M minimizing c'^2 + d'^2
    best = None
    span = 2
    while best is None:
        for i in range(-span, span + 1):
            for j in range(-span, span + 1):
                cc, dd = c + i * level, d + j * level
                if gcd(cc, dd) != 1:
                    continue
                key = (cc * cc + dd * dd, cc < 0, abs(cc), dd < 0, abs(dd))
                if best is None or key < best[0]:
                    best = (key, cc, dd)
        span *= 2
    return best[1], best[2]


@lru_cache(maxsize=256)
def _coset_table(level: int) -> Tuple[Tuple[GL2Z, ...], Dict[Tuple[int, int], int]]:
    if level < 1:
        raise DomainError(f"Level must be positive, got {level}", operation="coset_reps")
    forms = set()
    for c in range(level):
        for d in range(level):
            if gcd(gcd(c, d), level) == 1:
                forms.add(normal_form(c, d, level))
    ordered = sorted(forms)
    reps = []
    for c, d in ordered:
        if level == 1:
            reps.append(GL2Z.identity())
            continue
        cc, dd = _small_lift(c, d, level)
        reps.append(GL2Z.from_bottom_row(cc, dd))
    index = {form: j for j, form in enumerate(ordered)}
    return tuple(reps), index


def coset_reps(level: int) -> List[GL2Z]:
    """
    Representatives gamma_j of Gamma0(M)\\SL2(Z).

    Returns:
        nu(M) matrices with pairwise distinct bottom rows in P^1(Z/M),
        the identity first
    """
    return list(_coset_table(level)[0])


def coset_index(gamma: GL2Z, level: int) -> int:
    """The index j with Gamma0(M) gamma_j = Gamma0(M) gamma."""
    _, index = _coset_table(level)
    return index[normal_form(gamma.c, gamma.d, level)]


def coset_enumeration(level: int, sublevel: int) -> List[GL2Z]:
    """
    Representatives of Gamma0(N)\\Gamma0(M) for M | N.

    These are the level-N coset representatives whose bottom-left entry
    is divisible by M; there are nu(N)/nu(M) of them.
    """
    if level % sublevel != 0:
        raise DomainError(f"Sublevel {sublevel} must divide {level}", operation="coset_enumeration")
    return [gamma for gamma in coset_reps(level) if gamma.c % sublevel == 0]
