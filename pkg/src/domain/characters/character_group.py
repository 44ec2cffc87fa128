"""
Enumeration of the character group mod N.

Characters are listed in lexicographic order of their exponent vectors,
so the trivial character is always first and list indices are stable.
"""

from functools import lru_cache
from itertools import product
from typing import List, Tuple

from ..shared.errors import DomainError
from .dirichlet_character import DirichletCharacter
from .unit_group import unit_group


@lru_cache(maxsize=256)
def _all_characters(modulus: int) -> Tuple[DirichletCharacter, ...]:
    orders = unit_group(modulus).orders
    return tuple(DirichletCharacter(modulus, exps) for exps in product(*(range(n) for n in orders)))


def all_characters(modulus: int) -> List[DirichletCharacter]:
    """All phi(N) characters mod N."""
    if modulus < 1:
        raise DomainError(f"Modulus must be positive, got {modulus}", operation="all_characters")
    return list(_all_characters(modulus))


def even_characters(modulus: int) -> List[DirichletCharacter]:
    """Even characters mod N (the ones carrying weight-zero Eisenstein series)."""
    return [chi for chi in _all_characters(modulus) if chi.is_even]


def primitive_characters(modulus: int) -> List[DirichletCharacter]:
    """Primitive characters mod q; for q = 1 the trivial character."""
    return [chi for chi in _all_characters(modulus) if chi.is_primitive]


def characters_with_conductor(modulus: int, conductor: int) -> List[DirichletCharacter]:
    """Characters mod N whose conductor is exactly `conductor`."""
    return [chi for chi in _all_characters(modulus) if chi.conductor == conductor]


def select_character(modulus: int, selector: str) -> DirichletCharacter:
    """
    Resolve a command-line selector to a character mod N.

    Business rules:
    - "trivial" is the principal character mod N
    - "index:k" is the k-th character of all_characters(N)
    - "conductor:q" is the first even character mod N of conductor q

    Args:
        modulus: The modulus N
        selector: Selector string

    Returns:
        The selected character

    Raises:
        DomainError: If the selector is malformed or selects nothing
    """
    if selector == "trivial":
        return DirichletCharacter.trivial(modulus)
    kind, _, value = selector.partition(":")
    if not value.lstrip("-").isdigit():
        raise DomainError(f"Unrecognized character selector {selector!r}", operation="select_character")
    number = int(value)
    if kind == "index":
        characters = _all_characters(modulus)
        if not 0 <= number < len(characters):
            raise DomainError(
                f"Character index {number} out of range for modulus {modulus}",
                operation="select_character",
            )
        return characters[number]
    if kind == "conductor":
        for chi in _all_characters(modulus):
            if chi.conductor == number and chi.is_even:
                return chi
        raise DomainError(
            f"No even character mod {modulus} with conductor {number}",
            operation="select_character",
        )
    raise DomainError(f"Unrecognized character selector {selector!r}", operation="select_character")
