"""
Eisenstein series descriptors and Fourier truncation control.

EisensteinSeries is a tagged union: CharAttached(chi1, chi2) is the
newform-type series E_{chi1,chi2}, CuspAttached(cusp, chi) the series
E_a(., s, chi) attached to a singular cusp. Both carry a dilation g so
that f(gz) slash-forms can be described.
"""

import math
from enum import Enum
from typing import Any, Dict, Optional

from ..characters.dirichlet_character import DirichletCharacter
from ..cusps.cusp import Cusp
from ..cusps.cusp_service import is_singular
from ..shared.errors import DomainError


class SeriesKind(str, Enum):
    """Which family an Eisenstein series belongs to."""
    CHAR_ATTACHED = "char"
    CUSP_ATTACHED = "cusp"

    def __str__(self) -> str:
        return self.value


class EisensteinSeries:
    """Common part of the two series families."""

    kind: SeriesKind

    def __init__(self, dilation: int = 1) -> None:
        self._dilation = int(dilation)

    @property
    def dilation(self) -> int:
        """The g of z -> E(gz)."""
        return self._dilation

    def validate(self) -> None:
        if self._dilation < 1:
            raise DomainError(f"Dilation must be positive, got {self._dilation}", operation="EisensteinSeries")

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': str(self.kind), 'dilation': self._dilation}


class CharAttached(EisensteinSeries):
    """E_{chi1,chi2}(gz, s) for primitive chi1 mod q1 and chi2 mod q2 of equal parity."""

    kind = SeriesKind.CHAR_ATTACHED

    def __init__(self, chi1: DirichletCharacter, chi2: DirichletCharacter, dilation: int = 1) -> None:
        super().__init__(dilation)
        self._chi1 = chi1
        self._chi2 = chi2
        self.validate()

    @property
    def chi1(self) -> DirichletCharacter:
        """Character attached to the lower-left entry."""
        return self._chi1

    @property
    def chi2(self) -> DirichletCharacter:
        """Character attached to the lower-right entry."""
        return self._chi2

    @property
    def q1(self) -> int:
        """Modulus of chi1."""
        return self._chi1.modulus

    @property
    def q2(self) -> int:
        """Modulus of chi2."""
        return self._chi2.modulus

    @property
    def level(self) -> int:
        """q1 q2 g, the level on which E(gz) is automorphic."""
        return self.q1 * self.q2 * self._dilation

    def validate(self) -> None:
        """
        Validates the pair.

        Raises:
            DomainError: If a character is imprimitive or the parities differ
        """
        super().validate()
        if not (self._chi1.is_primitive and self._chi2.is_primitive):
            raise DomainError("E_{chi1,chi2} needs primitive characters", operation="CharAttached")
        if self._chi1.parity != self._chi2.parity:
            raise DomainError(
                "chi1 and chi2 must have the same parity",
                operation="CharAttached", chi1=self._chi1, chi2=self._chi2,
            )

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data.update({'chi1': self._chi1.to_dict(), 'chi2': self._chi2.to_dict()})
        return data

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, CharAttached):
            return False
        return (self._chi1, self._chi2, self._dilation) == (other._chi1, other._chi2, other._dilation)

    def __hash__(self) -> int:
        return hash((self.kind, self._chi1, self._chi2, self._dilation))

    def __repr__(self) -> str:
        return f"CharAttached(chi1={self._chi1!r}, chi2={self._chi2!r}, dilation={self._dilation})"


class CuspAttached(EisensteinSeries):
    """E_a(gz, s, chi) at level N for a cusp singular for chi."""

    kind = SeriesKind.CUSP_ATTACHED

    def __init__(self, cusp: Cusp, chi: Optional[DirichletCharacter] = None, dilation: int = 1) -> None:
        super().__init__(dilation)
        self._cusp = cusp
        self._chi = chi if chi is not None else DirichletCharacter.trivial(cusp.level)
        self.validate()

    @property
    def cusp(self) -> Cusp:
        """The cusp a."""
        return self._cusp

    @property
    def chi(self) -> DirichletCharacter:
        """The central character mod N."""
        return self._chi

    @property
    def level(self) -> int:
        """The level N of the cusp."""
        return self._cusp.level

    def validate(self) -> None:
        """
        Validates the cusp against the character.

        Raises:
            DomainError: If the character is odd, has the wrong modulus, or
                the cusp is not singular
        """
        super().validate()
        if not is_singular(self._cusp, self._chi):
            raise DomainError(
                f"Cusp {self._cusp} is not singular for the character",
                operation="CuspAttached", chi=self._chi,
            )

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data.update({'cusp': self._cusp.to_dict(), 'chi': self._chi.to_dict()})
        return data

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, CuspAttached):
            return False
        return (self._cusp, self._chi, self._dilation) == (other._cusp, other._chi, other._dilation)

    def __hash__(self) -> int:
        return hash((self.kind, self._cusp, self._chi, self._dilation))

    def __repr__(self) -> str:
        return f"CuspAttached(cusp={self._cusp!r}, chi={self._chi!r}, dilation={self._dilation})"


class FourierTruncation:
    """
    Truncation of the Fourier tail.

    With n_max unset the cutoff is chosen per batch so that the first
    dropped Bessel factor is below target_abs_error.
    """

    def __init__(self, n_max: Optional[int] = None, target_abs_error: float = 1e-16) -> None:
        self._n_max = n_max
        self._target_abs_error = float(target_abs_error)
        self.validate()

    @classmethod
    def automatic(cls) -> "FourierTruncation":
        """Cutoff chosen from the point heights."""
        return cls()

    @property
    def n_max(self) -> Optional[int]:
        """Fixed number of frequencies, or None for automatic."""
        return self._n_max

    @property
    def target_abs_error(self) -> float:
        """Target size of the first dropped term."""
        return self._target_abs_error

    def validate(self) -> None:
        if self._n_max is not None and self._n_max < 1:
            raise ValueError(f"n_max must be at least 1, got {self._n_max}")
        if not self._target_abs_error > 0:
            raise ValueError(f"target_abs_error must be positive, got {self._target_abs_error}")

    def cutoff(self, period: int, y_min: float, t: float = 0.0) -> int:
        """
        Frequencies kept for terms K(2 pi l y / period) e(l x / period).

        Business rules:
        - automatic: ceil(period (log(1/target) + |t|) / (2 pi y_min)),
          which is ceil(period (37 + |t|) / (2 pi y_min)) at the default target
        """
        if self._n_max is not None:
            return self._n_max
        decay = -math.log(self._target_abs_error) + abs(t)
        return max(1, int(math.ceil(period * decay / (2 * math.pi * y_min))))

    def to_dict(self) -> Dict[str, Any]:
        return {'n_max': self._n_max, 'target_abs_error': self._target_abs_error}

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, FourierTruncation):
            return False
        return (self._n_max, self._target_abs_error) == (other._n_max, other._target_abs_error)

    def __hash__(self) -> int:
        return hash((self._n_max, self._target_abs_error))

    def __repr__(self) -> str:
        return f"FourierTruncation(n_max={self._n_max}, target_abs_error={self._target_abs_error})"
