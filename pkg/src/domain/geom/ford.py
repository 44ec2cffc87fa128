"""
The Ford strip B_M = {M^{-1} < y <= 20000 M^{-1}} and the explicit family
of cosets Gamma0(M) gamma whose translates gamma(D^c(100)) lie inside it.

D^c(R) is the part of D below height R.
"""

import logging
import math
from math import gcd
from typing import Any, Dict, List, Tuple

import numpy as np

from ..cusps.coset_reps import normal_form
from ..cusps.gl2z import GL2Z

logger = logging.getLogger(__name__)

STRIP_TOP = 20000.0
PORTION_HEIGHT = 100.0
BOUNDARY_SAMPLES = 50


def ford_membership(z: Any, level: int) -> Any:
    """True where 1/M < Im z <= 20000/M."""
    y = np.imag(np.asarray(z, dtype=complex))
    inside = (y > 1.0 / level) & (y <= STRIP_TOP / level)
    if np.ndim(inside) == 0:
        return bool(inside)
    return inside


def boundary_sample(count: int = BOUNDARY_SAMPLES, height: float = PORTION_HEIGHT) -> np.ndarray:
    """
    Points spread along the boundary of D^c(height).

    The boundary is the unit arc between the corners, the two vertical
    sides and the top edge; each piece gets about a quarter of the points.
    """
    quarter = max(2, count // 4)
    rest = count - 3 * quarter
    theta = np.linspace(math.pi / 3, 2 * math.pi / 3, quarter)
    arc = np.exp(1j * theta)
    side_y = np.linspace(math.sqrt(3) / 2, height, quarter)
    left = -0.5 + 1j * side_y
    right = 0.5 + 1j * side_y
    top = np.linspace(-0.5, 0.5, max(rest, 2)) + 1j * height
    return np.concatenate([arc, left, right, top])[:count]


class PortionSet:
    """
    S = {(c, d) : sqrt(M)/100 <= c <= sqrt(M)/20, 0 <= d <= c/4, (c, d) = 1}.

    Each pair is completed to gamma in SL2(Z); the translates
    gamma(D^c(100)) are checked against B_M on a boundary sample and the
    cosets are checked to be distinct.
    """

    def __init__(self, level: int, pairs: List[Tuple[int, int]], verified: bool, distinct: bool,
                 min_height: float, max_height: float) -> None:
        self._level = level
        self._pairs = pairs
        self._verified = verified
        self._distinct = distinct
        self._min_height = min_height
        self._max_height = max_height

    @property
    def level(self) -> int:
        """The level M."""
        return self._level

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        """Bottom rows (c, d) in increasing order."""
        return list(self._pairs)

    @property
    def count(self) -> int:
        """#S."""
        return len(self._pairs)

    @property
    def density(self) -> float:
        """#S / M."""
        return len(self._pairs) / self._level

    @property
    def verified(self) -> bool:
        """Every sampled image point lies in B_M."""
        return self._verified

    @property
    def distinct(self) -> bool:
        """The cosets Gamma0(M) gamma are pairwise distinct."""
        return self._distinct

    @property
    def height_range(self) -> Tuple[float, float]:
        """Smallest and largest sampled image height, times M."""
        return self._min_height, self._max_height

    def to_dict(self) -> Dict[str, Any]:
        return {
            'M': self._level,
            'count': self.count,
            'density': self.density,
            'predicted_density': predicted_density(),
            'verified': self._verified,
            'distinct': self._distinct,
            'scaled_height_range': [self._min_height, self._max_height],
            'pairs': [list(pair) for pair in self._pairs],
        }

    def __repr__(self) -> str:
        return f"PortionSet(M={self._level}, count={self.count}, verified={self._verified})"


def predicted_density() -> float:
    """Limit of #S/M: (6/pi^2)(1/8)(1/400 - 1/10^4)."""
    return 6 / math.pi ** 2 / 8 * (1 / 400 - 1 / 10 ** 4)


def portion_pairs(level: int) -> List[Tuple[int, int]]:
    """The pairs of S in increasing (c, d) order."""
    root = math.sqrt(level)
    c_lo = math.ceil(root / 100 - 1e-12)
    c_hi = math.floor(root / 20 + 1e-12)
    pairs = []
    for c in range(max(c_lo, 1), c_hi + 1):
        for d in range(0, c // 4 + 1):
            if gcd(c, d) == 1:
                pairs.append((c, d))
    return pairs


def cosets_distinct(pairs: List[Tuple[int, int]], level: int) -> bool:
    """Pairwise c1 d2 != c2 d1 mod M, the criterion for distinct cosets with c >= 0."""
    seen = set()
    for c, d in pairs:
        key = normal_form(c, d, level)
        if key in seen:
            return False
        seen.add(key)
    return True


def portion_set(level: int) -> PortionSet:
    """
    Build and check S for level M.

    Business rules:
    - gamma(D^c(100)) lies in B_M for every (c, d) in S
    - the cosets of distinct pairs are distinct

    Args:
        level: M, meaningful from about 10^4

    Returns:
        PortionSet with the check outcomes
    """
    pairs = portion_pairs(level)
    sample = boundary_sample()
    verified = True
    low, high = math.inf, 0.0
    for c, d in pairs:
        gamma = GL2Z.from_bottom_row(c, d)
        images = gamma.act(sample)
        inside = ford_membership(images, level)
        verified = verified and bool(np.all(inside))
        heights = images.imag * level
        low = min(low, float(heights.min()))
        high = max(high, float(heights.max()))
    distinct = cosets_distinct(pairs, level)
    if not pairs:
        low = high = 0.0
    logger.info(f"Portion set at M={level}: {len(pairs)} pairs, verified={verified}, distinct={distinct}")
    return PortionSet(level, pairs, verified, distinct, low, high)
