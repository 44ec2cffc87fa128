"""
The test-function system: a smooth bump supported in the interior of D,
spread over the coset translates of D that tile Y0(M).

phi_0 is the bump extended to H by SL2(Z)-invariance. phi_j^{(M)} keeps
phi_0 on the translates gamma_j D of coset j and vanishes elsewhere, so
the phi_j have disjoint supports and sum to phi_0.
"""

import math
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..cusps.coset_reps import coset_reps, normal_form
from .fundamental_domain import reduce_points

ALL_COSETS = None


def bump_profile(t: Any) -> np.ndarray:
    """b(t) = exp(1 - 1/(1 - t^2)) on |t| < 1, zero outside; b(0) = 1."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape)
    inside = np.abs(t) < 1
    out[inside] = np.exp(1 - 1 / (1 - t[inside] ** 2))
    return out


class TestFunction:
    """
    phi_j^{(M)} built from a product bump on a rectangle inside D.

    The rectangle is |x - x_center| < x_halfwidth, y_lower < y < y_upper.
    coset is the index j into coset_reps(M), or ALL_COSETS for phi_0.
    """

    __test__ = False

    def __init__(self, x_center: float = 0.0, x_halfwidth: float = 0.4, y_lower: float = 1.5,
                 y_upper: float = 2.5, level: int = 1, coset: Optional[int] = ALL_COSETS) -> None:
        self._x_center = float(x_center)
        self._x_halfwidth = float(x_halfwidth)
        self._y_lower = float(y_lower)
        self._y_upper = float(y_upper)
        self._level = level
        self._coset = coset
        self.validate()

    @classmethod
    def standard(cls, level: int = 1, coset: Optional[int] = ALL_COSETS) -> "TestFunction":
        """The default bump on [-0.4, 0.4] x [1.5, 2.5]."""
        return cls(level=level, coset=coset)

    @classmethod
    def high(cls, level: int = 1, coset: Optional[int] = ALL_COSETS) -> "TestFunction":
        """The bump supported in 2 <= y <= 3, used for the bad-coset comparison."""
        return cls(y_lower=2.0, y_upper=3.0, level=level, coset=coset)

    @property
    def x_center(self) -> float:
        """Center of the x-support."""
        return self._x_center

    @property
    def x_halfwidth(self) -> float:
        """Half width of the x-support."""
        return self._x_halfwidth

    @property
    def y_support(self) -> Tuple[float, float]:
        """(y_lower, y_upper)."""
        return self._y_lower, self._y_upper

    @property
    def level(self) -> int:
        """The level M of the coset system."""
        return self._level

    @property
    def coset(self) -> Optional[int]:
        """Coset index j, or None for phi_0."""
        return self._coset

    @property
    def support(self) -> Tuple[float, float, float, float]:
        """Support rectangle (x_lo, x_hi, y_lo, y_hi) inside D."""
        return (self._x_center - self._x_halfwidth, self._x_center + self._x_halfwidth,
                self._y_lower, self._y_upper)

    def validate(self) -> None:
        """
        Raises:
            ValueError: If the support leaves the interior of D or the coset is out of range
        """
        if self._x_halfwidth <= 0 or abs(self._x_center) + self._x_halfwidth >= 0.5:
            raise ValueError("Bump x-support must lie inside |x| < 1/2")
        if not 1.0 < self._y_lower < self._y_upper:
            raise ValueError("Bump y-support must satisfy 1 < y_lower < y_upper")
        if self._level < 1:
            raise ValueError(f"Level must be positive, got {self._level}")
        if self._coset is not None and not 0 <= self._coset < len(coset_reps(self._level)):
            raise ValueError(f"Coset index {self._coset} out of range for level {self._level}")

    def for_coset(self, coset: Optional[int]) -> "TestFunction":
        """The same bump restricted to another coset."""
        return TestFunction(self._x_center, self._x_halfwidth, self._y_lower, self._y_upper, self._level, coset)

    def base(self, w: Any) -> np.ndarray:
        """The bump at points w of D."""
        w = np.asarray(w, dtype=complex)
        tx = (w.real - self._x_center) / self._x_halfwidth
        ty = (2 * w.imag - self._y_lower - self._y_upper) / (self._y_upper - self._y_lower)
        return bump_profile(tx) * bump_profile(ty)

    def __call__(self, z: Any) -> Any:
        return eval_test_function(self, z)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'x_center': self._x_center,
            'x_halfwidth': self._x_halfwidth,
            'y_support': [self._y_lower, self._y_upper],
            'level': self._level,
            'coset': 'all' if self._coset is None else self._coset,
        }

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TestFunction):
            return False
        return self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash((self.support, self._level, self._coset))

    def __repr__(self) -> str:
        return f"TestFunction(level={self._level}, coset={self._coset}, support={self.support})"


def coset_labels(matrices: np.ndarray, level: int) -> np.ndarray:
    """
    coset_index(delta^{-1}, M) for reducing matrices delta given as rows (a, b, c, d).

    delta^{-1} has bottom row (-c, a).
    """
    matrices = np.asarray(matrices)
    flat = matrices.reshape(-1, 4)
    if level == 1:
        return np.zeros(flat.shape[0], dtype=int).reshape(matrices.shape[:-1])
    lookup = {}
    for j, gamma in enumerate(coset_reps(level)):
        lookup[normal_form(gamma.c, gamma.d, level)] = j
    rows = np.stack([(-flat[:, 2]) % level, flat[:, 0] % level], axis=-1)
    unique, inverse = np.unique(rows, axis=0, return_inverse=True)
    labels = np.array([lookup[normal_form(int(c), int(d), level)] for c, d in unique], dtype=int)
    return labels[np.asarray(inverse).ravel()].reshape(matrices.shape[:-1])


def eval_test_function(phi: TestFunction, z: Any) -> Any:
    """
    phi_j^{(M)}(z).

    Business rules:
    - z is reduced to z' in D with delta z = z'
    - phi_0(z) = base(z')
    - phi_j(z) = base(z') when coset_index(delta^{-1}, M) = j, else 0

    Returns:
        Float for a scalar z, otherwise an array shaped like z
    """
    points = np.asarray(z, dtype=complex)
    reduced, matrices = reduce_points(points)
    values = phi.base(reduced)
    if phi.coset is not None:
        values = np.where(coset_labels(matrices, phi.level) == phi.coset, values, 0.0)
    if np.ndim(z) == 0:
        return float(values)
    return values


def hyperbolic_volume(level: int) -> float:
    """Vol(Y0(M)) = nu(M) pi/3."""
    return len(coset_reps(level)) * math.pi / 3
