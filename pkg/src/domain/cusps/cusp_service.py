"""
Cusp classes of Gamma0(N): enumeration, reduction, equivalence, widths,
relative widths, coset counts, singularity and Atkin-Lehner complements.
"""

import logging
from math import gcd
from typing import List, Optional

from ..arith.multiplicative import divisors, lcm
from ..characters.dirichlet_character import DirichletCharacter
from ..shared.errors import DomainError
from .coset_reps import coset_enumeration
from .cusp import Cusp, ScalingMatrix, canonical_numerator
from .gl2z import GL2Z, CuspPoint, ProjectivePair, to_projective

logger = logging.getLogger(__name__)


def cusp_set(level: int) -> List[Cusp]:
    """
    A full set of inequivalent cusps of Gamma0(N).

    Business rules:
    - one class u/f for every f | N and every unit class mod (f, N/f)
    - ordered by f, then u; the class of oo is 1/N

    Args:
        level: The level N

    Returns:
        Canonical representatives, sum_{f|N} phi((f, N/f)) of them
    """
    if level < 1:
        raise DomainError(f"Level must be positive, got {level}", operation="cusp_set")
    cusps = []
    for f in divisors(level):
        g = gcd(f, level // f)
        for residue in range(1, g + 1):
            if gcd(residue, g) == 1:
                cusps.append(Cusp(canonical_numerator(residue, f, g), f, level))
    return cusps


def reduce_pair(pair: ProjectivePair, level: int) -> Cusp:
    """Canonical representative of the class of a/c (pair already in lowest terms)."""
    a, c = pair
    d = gcd(c, level)
    g = gcd(d, level // d)
    # a * (c/d) mod (d, N/d) is the class invariant
    residue = (a * (c // d)) % g if g > 1 else 0
    return Cusp(canonical_numerator(residue, d, g), d, level)


def reduce(point: CuspPoint, level: int) -> Cusp:
    """
    The Cusp representing the Gamma0(N)-class of a point of P^1(Q).

    Args:
        point: Fraction, int or "oo"
        level: The level N

    Returns:
        The canonical representative of its class
    """
    return reduce_pair(to_projective(point), level)


def reduce_cusp(cusp: Cusp, level: int) -> Cusp:
    """The class at level M | N of a cusp given at level N."""
    if cusp.level % level != 0:
        raise DomainError(f"Level {level} must divide {cusp.level}", operation="reduce_cusp")
    return reduce_pair((cusp.u, cusp.f), level)


def equivalent(first: CuspPoint, second: CuspPoint, level: int) -> bool:
    """True when the two points lie in the same Gamma0(N)-orbit."""
    return reduce(first, level) == reduce(second, level)


def equivalence_witness(first: CuspPoint, second: CuspPoint, level: int) -> Optional[GL2Z]:
    """
    A matrix gamma in Gamma0(N) with gamma(second) = first, or None.

    Every matrix of SL2(Z) carrying second to first is
    gamma_1 T^k gamma_2^{-1} up to sign, and its lower-left entry is
    periodic in k with period N, so scanning k mod N is exhaustive.
    """
    a1, c1 = to_projective(first)
    a2, c2 = to_projective(second)
    gamma_1 = GL2Z.from_left_column(a1, c1)
    gamma_2_inv = GL2Z.from_left_column(a2, c2).inverse()
    for k in range(level):
        candidate = gamma_1 @ GL2Z.translation(k) @ gamma_2_inv
        if candidate.in_gamma0(level):
            return candidate
    return None


def width(cusp: Cusp) -> int:
    """Absolute width N / (N, f^2)."""
    return cusp.width


def width_at(cusp: Cusp, level: int) -> int:
    """Width of the cusp's class viewed at level M | N: M / (M, (M, f)^2)."""
    f = gcd(cusp.f, level)
    return level // gcd(level, f * f)


def relative_width(cusp: Cusp, level: int) -> int:
    """
    W^M_N(a) = W^1_N(a) / W^1_M(a).

    Raises:
        DomainError: If M does not divide N
    """
    if cusp.level % level != 0:
        raise DomainError(
            f"Relative width needs M | N, got M={level}, N={cusp.level}",
            operation="relative_width", M=level, N=cusp.level,
        )
    return cusp.width // width_at(cusp, level)


def coset_count(first: Cusp, second: Cusp, level: int) -> int:
    """
    Number of gamma in Gamma0(N)\\Gamma0(M) with gamma(second) equivalent to first at level N.

    Equals W^M_N(first) when the cusps agree at level M and 0 otherwise.
    """
    if reduce_cusp(first, level) != reduce_cusp(second, level):
        return 0
    return relative_width(first, level)


def coset_count_by_enumeration(first: Cusp, second: Cusp, level: int) -> int:
    """coset_count computed by running over Gamma0(N)\\Gamma0(M)."""
    count = 0
    for gamma in coset_enumeration(first.level, level):
        if reduce_pair(gamma.act_on_pair((second.u, second.f)), first.level) == first:
            count += 1
    return count


def is_singular(cusp: Cusp, chi: DirichletCharacter) -> bool:
    """
    Singularity of a cusp for an even character.

    Business rules:
    - singular iff the conductor of chi divides lcm(f, N/f)

    Raises:
        DomainError: If chi is odd or its modulus differs from the level
    """
    if not chi.is_even:
        raise DomainError("Eisenstein series need an even character", operation="is_singular", chi=chi)
    if chi.modulus != cusp.level:
        raise DomainError(
            f"Character modulus {chi.modulus} differs from level {cusp.level}",
            operation="is_singular",
        )
    return lcm(cusp.f, cusp.complement) % chi.conductor == 0


def singular_cusps(level: int, chi: DirichletCharacter) -> List[Cusp]:
    """C_chi(N), the singular cusps in cusp_set order."""
    return [cusp for cusp in cusp_set(level) if is_singular(cusp, chi)]


def singular_conductors(cusp: Cusp) -> List[int]:
    """Conductors q | N for which the cusp is singular."""
    bound = lcm(cusp.f, cusp.complement)
    return [q for q in divisors(cusp.level) if bound % q == 0]


def atkin_lehner_complement(cusp: Cusp) -> Cusp:
    """
    The complement 1/(N/f) of an Atkin-Lehner cusp 1/f.

    Raises:
        DomainError: If gcd(f, N/f) > 1 or u != 1
    """
    if not cusp.is_atkin_lehner:
        raise DomainError(f"{cusp} is not an Atkin-Lehner cusp", operation="atkin_lehner_complement")
    return Cusp(1, cusp.complement, cusp.level)


def scaling_matrix(cusp: Cusp) -> ScalingMatrix:
    """sigma_a = gamma_a diag(sqrt(W), 1/sqrt(W)) with gamma_a(oo) = u/f."""
    return ScalingMatrix(GL2Z.from_left_column(cusp.u, cusp.f), cusp.width)
