"""
Lattice sums with periodic weights.

For omega: (Z/M)^2 -> C the series

    F_omega(w, s) = 1/2 sum_{(m, n) != 0} omega(m, n) Im(w)^s / |m w + n|^{2s}

satisfies F_omega(w) = F_{omega o delta}(delta w) for delta in SL2(Z),
where (omega o delta)(m, n) = omega((m, n) delta). Every evaluation first
moves the point into the fundamental domain of SL2(Z), where Im w >= sqrt(3)/2,
and then sums the Fourier expansion of the transformed series:

    F = 1/2 A y^s + 1/2 sqrt(pi) Gamma(s-1/2) / (M Gamma(s)) B y^{1-s}
        + sqrt(y) sum_{l != 0} c_l K_{s-1/2}(2 pi |l| y / M) e(l x / M)

with A = sum_{n != 0} omega(0, n) |n|^{-2s},
B = sum_{m != 0} hat(m, 0) |m|^{1-2s}, hat(m, k) = sum_b omega(m, b) e(kb/M)
and c_l = pi^s M^{-1/2-s} / Gamma(s) sum_{km = l} hat(m, k) (|k|/|m|)^{s-1/2}.
A and B are finite Hurwitz combinations.
"""

import logging
import math
import threading
from typing import Any, Dict, Hashable, Optional, Tuple

import numpy as np
from scipy.special import gamma, rgamma

from ..geom.fundamental_domain import reduce_points
from ..lfun.hurwitz import hurwitz_zeta_array
from ..shared.errors import DomainError, PoleError
from .bessel import bessel_k
from .eisenstein_series import FourierTruncation

logger = logging.getLogger(__name__)

REDUCED_HEIGHT = math.sqrt(3) / 2
_POINT_CHUNK = 256
_CANCEL_TOL = 1e-10

Matrix = Tuple[int, int, int, int]


class PeriodicWeight:
    """A weight omega on (Z/M)^2 stored as an M x M table."""

    def __init__(self, key: Hashable, table: np.ndarray) -> None:
        table = np.array(table, dtype=complex)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] < 1:
            raise DomainError("Periodic weight table must be square", operation="PeriodicWeight")
        table.setflags(write=False)
        self._key = key
        self._table = table

    @property
    def key(self) -> Hashable:
        """Identity used by the coefficient cache."""
        return self._key

    @property
    def modulus(self) -> int:
        """The period M."""
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        """omega(m, n) for 0 <= m, n < M."""
        return self._table

    def transformed(self, delta: Matrix) -> np.ndarray:
        """Table of omega o delta: (m, n) -> omega(m a + n c, m b + n d)."""
        a, b, c, d = delta
        modulus = self.modulus
        m = np.arange(modulus)[:, None]
        n = np.arange(modulus)[None, :]
        return self._table[(m * a + n * c) % modulus, (m * b + n * d) % modulus]

    def __repr__(self) -> str:
        return f"PeriodicWeight(key={self._key!r}, modulus={self.modulus})"


def _weighted_hurwitz(sigma: complex, weights: np.ndarray, shifts: np.ndarray, factor: str) -> Tuple[complex, complex]:
    """sum_j weights_j zeta(sigma, shifts_j) and its sigma-derivative."""
    mask = weights != 0
    if not np.any(mask):
        return 0j, 0j
    w = weights[mask]
    scale = float(np.max(np.abs(w)))
    cancels = abs(np.sum(w)) <= _CANCEL_TOL * scale * len(w)
    if sigma == 1 and not cancels:
        raise PoleError("Lattice sum diverges at this s", factor=factor, s=sigma)
    values, derivs, _ = hurwitz_zeta_array(sigma, shifts[mask], drop_pole=cancels)
    return complex(np.sum(w * values)), complex(np.sum(w * derivs))


class SeriesCoefficients:
    """Fourier data of one transformed weight at one s, frequencies up to l_max."""

    def __init__(self, modulus: int, s: complex, l_max: int, power_coeff: complex,
                 dual_coeff: complex, positive: np.ndarray, negative: np.ndarray) -> None:
        self._modulus = modulus
        self._s = s
        self._l_max = l_max
        self._power_coeff = power_coeff
        self._dual_coeff = dual_coeff
        self._positive = positive
        self._negative = negative

    @property
    def l_max(self) -> int:
        """Largest frequency index l kept."""
        return self._l_max

    @property
    def power_coeff(self) -> complex:
        """Coefficient of y^s in the constant term."""
        return self._power_coeff

    @property
    def dual_coeff(self) -> complex:
        """Coefficient of y^{1-s} in the constant term."""
        return self._dual_coeff

    def coefficient(self, l: int) -> complex:
        """Coefficient of sqrt(y) K_{s-1/2}(2 pi |l| y / M) e(l x / M)."""
        if l == 0 or abs(l) > self._l_max:
            return 0j
        return complex(self._positive[l] if l > 0 else self._negative[-l])

    def evaluate(self, w: np.ndarray, l_max: Optional[int] = None) -> np.ndarray:
        """Sum the truncated expansion at points w."""
        s = self._s
        modulus = self._modulus
        l_max = self._l_max if l_max is None else min(l_max, self._l_max)
        y = w.imag
        x = w.real
        out = self._power_coeff * y ** s + self._dual_coeff * y ** (1 - s)
        if l_max == 0:
            return out
        ell = np.arange(1, l_max + 1)
        pos = self._positive[1:l_max + 1]
        neg = self._negative[1:l_max + 1]
        for start in range(0, len(w), _POINT_CHUNK):
            ys = y[start:start + _POINT_CHUNK]
            xs = x[start:start + _POINT_CHUNK]
            args = 2 * math.pi * np.outer(ys, ell) / modulus
            kvals = bessel_k(s - 0.5, args)
            phase = np.exp(2j * math.pi * np.outer(xs, ell) / modulus)
            tail = (kvals * (pos[None, :] * phase + neg[None, :] / phase)).sum(axis=1)
            out[start:start + _POINT_CHUNK] += np.sqrt(ys) * tail
        return out


def compute_coefficients(table: np.ndarray, s: complex, l_max: int) -> SeriesCoefficients:
    """
    Fourier data of F_omega for the weight table at s.

    Business rules:
    - the y^s and y^{1-s} coefficients come from Hurwitz combinations,
      with the pole at s = 1 (resp. 1/2) dropped when the weights cancel
    - at s = 1/2 the Gamma(s - 1/2) pole is resolved by B'(1/2) when B(1/2) = 0

    Raises:
        PoleError: When the series has a genuine pole at s
    """
    s = complex(s)
    modulus = table.shape[0]
    hat = modulus * np.fft.ifft(table, axis=1)
    idx = np.arange(1, modulus + 1)
    shifts = idx / modulus

    a_weights = table[0, idx % modulus] + table[0, (-idx) % modulus]
    a_sum, _ = _weighted_hurwitz(2 * s, a_weights, shifts, factor="zeta(2s)")
    power_coeff = 0.5 * modulus ** (-2 * s) * a_sum

    b_weights = hat[idx % modulus, 0] + hat[(-idx) % modulus, 0]
    if abs(s - 0.5) < 1e-12:
        b_sum, b_deriv = _weighted_hurwitz(0j, b_weights, shifts, factor="Gamma(s-1/2)")
        if abs(b_sum) > 1e-9 * (1 + float(np.max(np.abs(b_weights)))):
            raise PoleError("Lattice sum has a pole at s = 1/2", factor="Gamma(s-1/2)", s=s)
        # Gamma(s - 1/2) B(s) -> B'(1/2) = 2 sum w zeta'(0, a)
        dual_coeff = 0.5 * 2 * b_deriv / modulus
    else:
        b_sum, _ = _weighted_hurwitz(2 * s - 1, b_weights, shifts, factor="zeta(2s-1)")
        ratio = complex(gamma(s - 0.5) * rgamma(s))
        dual_coeff = 0.5 * math.sqrt(math.pi) * ratio / modulus * modulus ** (1 - 2 * s) * b_sum

    positive = np.zeros(l_max + 1, dtype=complex)
    negative = np.zeros(l_max + 1, dtype=complex)
    for m in range(1, l_max + 1):
        k = np.arange(1, l_max // m + 1)
        ell = m * k
        weight = (k / m) ** (s - 0.5)
        np.add.at(positive, ell, (hat[m % modulus, k % modulus] + hat[-m % modulus, -k % modulus]) * weight)
        np.add.at(negative, ell, (hat[m % modulus, -k % modulus] + hat[-m % modulus, k % modulus]) * weight)
    scale = complex(math.pi ** s * modulus ** (-0.5 - s) * rgamma(s))
    return SeriesCoefficients(modulus, s, l_max, power_coeff, dual_coeff, scale * positive, scale * negative)


class CoefficientCache:
    """
    Thread-safe cache of SeriesCoefficients keyed by (weight, delta mod M, s).

    Entries are immutable; a request for more frequencies replaces the entry
    with a longer one, so readers always see a complete table.
    """

    def __init__(self, max_entries: int = 20000) -> None:
        self._entries: Dict[Tuple[Any, ...], SeriesCoefficients] = {}
        self._lock = threading.Lock()
        self._max_entries = max_entries

    def get(self, weight: PeriodicWeight, delta: Matrix, s: complex, l_max: int) -> SeriesCoefficients:
        key = (weight.key, weight.modulus, delta, complex(s))
        with self._lock:
            entry = self._entries.get(key)
        if entry is not None and entry.l_max >= l_max:
            return entry
        entry = compute_coefficients(weight.transformed(delta), s, l_max)
        logger.debug(f"Coefficient table for {weight.key} delta={delta} s={s} extended to l_max={l_max}")
        with self._lock:
            current = self._entries.get(key)
            if current is not None and current.l_max >= l_max:
                return current
            if len(self._entries) >= self._max_entries:
                self._entries.clear()
            self._entries[key] = entry
        return entry

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)


_CACHE = CoefficientCache()


def coefficient_cache() -> CoefficientCache:
    """The process-wide coefficient cache."""
    return _CACHE


def evaluate_periodic_series(
    weight: PeriodicWeight, w: Any, s: complex, trunc: Optional[FourierTruncation] = None
) -> np.ndarray:
    """
    F_omega(w, s) at an array of points.

    Business rules:
    - points are reduced into the SL2(Z) fundamental domain and grouped by
      the reducing matrix mod M
    - the frequency cutoff is taken at the reduced height sqrt(3)/2

    Args:
        weight: The periodic weight
        w: Complex scalar or array in the upper half plane
        s: Complex argument
        trunc: Fourier truncation, automatic by default

    Returns:
        Complex array shaped like w
    """
    trunc = trunc or FourierTruncation.automatic()
    s = complex(s)
    points = np.asarray(w, dtype=complex)
    shape = points.shape
    reduced, matrices = reduce_points(points.ravel())
    modulus = weight.modulus
    l_max = trunc.cutoff(modulus, REDUCED_HEIGHT, s.imag)
    residues = np.mod(matrices, modulus)
    groups, inverse = np.unique(residues, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).ravel()
    out = np.empty(reduced.shape, dtype=complex)
    for g, row in enumerate(groups):
        idx = np.flatnonzero(inverse == g)
        delta = tuple(int(v) for v in row)
        coeffs = _CACHE.get(weight, delta, s, l_max)
        out[idx] = coeffs.evaluate(reduced[idx], l_max)
    return out.reshape(shape)


def constant_term(weight: PeriodicWeight, delta: Matrix, s: complex) -> Tuple[complex, complex]:
    """
    (a, b) with F_omega(delta^{-1} w) = a y^s + b y^{1-s} + (oscillating terms in x).

    The frequencies of the oscillating part are multiples of 1/M in Re w.
    """
    residues = tuple(int(v) % weight.modulus for v in delta)
    coeffs = _CACHE.get(weight, residues, s, 0)
    return coeffs.power_coeff, coeffs.dual_coeff
