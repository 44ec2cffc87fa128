"""
Quadrature over Y0(L) against the hyperbolic measure dmu = dx dy / y^2.

Y0(L) is realized as the union of the translates gamma_j D over the
coset representatives of Gamma0(L)\\SL2(Z), so

    <f, g>_L = sum_j int_D f(gamma_j w) conj(g(gamma_j w)) dmu(w).

On D the rule is a product of composite Gauss-Legendre rules: over the
whole of D in (x, t = 1/y), where dmu = dx dt and the cusp becomes a
finite edge; over a support rectangle in (x, log y), where dmu = dx du / y.
"""

import logging
import math
from functools import lru_cache
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..cusps.coset_reps import coset_index, coset_reps
from ..shared.errors import AccuracyError
from .bump import TestFunction, bump_profile

logger = logging.getLogger(__name__)

PANEL_ORDER = 8
WARN_FACTOR = 100.0

PointFunction = Callable[[np.ndarray], Any]
Rectangle = Tuple[float, float, float, float]
Mapper = Callable[[Callable[[int], Tuple[float, float, float]], Iterable[int]], Iterable[Tuple[float, float, float]]]


class QuadratureSpec:
    """Resolution, cusp cutoff and tolerance of a quadrature."""

    def __init__(self, resolution: int = 48, y_max: float = 20.0, target_rel_error: float = 1e-6,
                 max_refinements: int = 4) -> None:
        self._resolution = resolution
        self._y_max = float(y_max)
        self._target_rel_error = float(target_rel_error)
        self._max_refinements = max_refinements
        self.validate()

    @property
    def resolution(self) -> int:
        """Gauss nodes per axis of D on the coarsest grid."""
        return self._resolution

    @property
    def y_max(self) -> float:
        """Height where the cusp is cut off in truncated integrals."""
        return self._y_max

    @property
    def target_rel_error(self) -> float:
        """Refinement stops once successive grids agree to this relative error."""
        return self._target_rel_error

    @property
    def max_refinements(self) -> int:
        """Number of grid doublings allowed."""
        return self._max_refinements

    def validate(self) -> None:
        """
        Raises:
            ValueError: If resolution < 16, y_max < 5 or the tolerance is not positive
        """
        if self._resolution < 16:
            raise ValueError(f"Quadrature resolution must be at least 16, got {self._resolution}")
        if self._y_max < 5:
            raise ValueError(f"Cusp cutoff must be at least 5, got {self._y_max}")
        if self._target_rel_error <= 0:
            raise ValueError("Target relative error must be positive")
        if self._max_refinements < 1:
            raise ValueError("At least one refinement is needed for an error estimate")

    def with_tolerance(self, target_rel_error: float) -> "QuadratureSpec":
        return QuadratureSpec(self._resolution, self._y_max, target_rel_error, self._max_refinements)

    def to_dict(self) -> dict:
        return {
            'resolution': self._resolution,
            'y_max': self._y_max,
            'target_rel_error': self._target_rel_error,
            'max_refinements': self._max_refinements,
        }

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, QuadratureSpec):
            return False
        return self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(tuple(self.to_dict().values()))

    def __repr__(self) -> str:
        return f"QuadratureSpec(resolution={self._resolution}, y_max={self._y_max}, tol={self._target_rel_error})"


class QuadratureResult:
    """Value of an integral with its refinement error estimate."""

    def __init__(self, value: complex, error: float, nodes: int, tolerance: float = math.inf) -> None:
        self._value = complex(value)
        self._error = float(error)
        self._nodes = nodes
        self._tolerance = float(tolerance)

    @property
    def value(self) -> complex:
        """The integral on the finest grid."""
        return self._value

    @property
    def error(self) -> float:
        """|I_fine - I_coarse|."""
        return self._error

    @property
    def nodes(self) -> int:
        """Nodes per cell on the finest grid."""
        return self._nodes

    @property
    def tolerance(self) -> float:
        """The absolute tolerance target_rel_error * max(|I|, int |integrand| dmu)."""
        return self._tolerance

    def to_dict(self) -> dict:
        return {'re': self._value.real, 'im': self._value.imag, 'error': self._error,
                'tolerance': self._tolerance, 'nodes': self._nodes}

    def __repr__(self) -> str:
        return f"QuadratureResult(value={self._value}, error={self._error:.3e})"


@lru_cache(maxsize=32)
def unit_rule(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule with about n nodes on [0, 1]."""
    panels = max(1, -(-n // PANEL_ORDER))
    base, base_weights = leggauss(PANEL_ORDER)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = np.diff(edges) / 2
    mids = (edges[:-1] + edges[1:]) / 2
    nodes = (mids[:, None] + half[:, None] * base[None, :]).ravel()
    weights = (half[:, None] * base_weights[None, :]).ravel()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def rectangle_rule(rect: Rectangle, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Points and dmu-weights on a rectangle of D, Gauss in x and in log y."""
    x_lo, x_hi, y_lo, y_hi = rect
    nodes, weights = unit_rule(n)
    x = x_lo + (x_hi - x_lo) * nodes
    wx = (x_hi - x_lo) * weights
    u_lo, u_hi = math.log(y_lo), math.log(y_hi)
    y = np.exp(u_lo + (u_hi - u_lo) * nodes)
    wy = (u_hi - u_lo) * weights / y
    points = (x[:, None] + 1j * y[None, :]).ravel()
    return points, np.outer(wx, wy).ravel()


def domain_rule(n: int, y_max: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Points and dmu-weights on D, or on D cut at y_max.

    With t = 1/y the whole of D is 0 < t < 1/sqrt(1 - x^2) and dmu = dx dt.
    The cut domain uses u = log y on sqrt(1 - x^2) < y < y_max, where
    dmu = dx du / y, so integrands growing like a power of y stay smooth.
    """
    nodes, weights = unit_rule(n)
    x = -0.5 + nodes
    wx = weights
    if y_max is None:
        t_hi = 1.0 / np.sqrt(1.0 - x ** 2)
        t = t_hi[:, None] * nodes[None, :]
        wt = t_hi[:, None] * weights[None, :]
        points = (x[:, None] + 1j / t).ravel()
        return points, (wx[:, None] * wt).ravel()
    u_lo = 0.5 * np.log(1.0 - x ** 2)
    span = math.log(y_max) - u_lo
    y = np.exp(u_lo[:, None] + span[:, None] * nodes[None, :])
    wu = span[:, None] * weights[None, :] / y
    points = (x[:, None] + 1j * y).ravel()
    return points, (wx[:, None] * wu).ravel()


def _cell_sum(values: np.ndarray, weights: np.ndarray) -> Tuple[float, float, float]:
    terms = values * weights
    return (math.fsum(np.real(terms)), math.fsum(np.imag(terms)), math.fsum(np.abs(terms)))


def _integrate_once(integrand: PointFunction, cells: Sequence[int], level: int, points: np.ndarray,
                    weights: np.ndarray, mapper: Optional[Mapper]) -> Tuple[complex, float]:
    reps = coset_reps(level)

    def cell(j: int) -> Tuple[float, float, float]:
        values = np.asarray(integrand(reps[j].act(points)), dtype=complex)
        return _cell_sum(values, weights)

    results = list((mapper or map)(cell, cells))
    real = math.fsum(r[0] for r in results)
    imag = math.fsum(r[1] for r in results)
    mass = math.fsum(r[2] for r in results)
    return complex(real, imag), mass


def integrate(integrand: PointFunction, level: int, spec: Optional[QuadratureSpec] = None,
              support: Optional[Rectangle] = None, truncate: bool = False,
              cosets: Optional[Sequence[int]] = None, mapper: Optional[Mapper] = None) -> QuadratureResult:
    """
    int_{Y0(L)} integrand dmu by refinement.

    Business rules:
    - support restricts every translate gamma_j D to gamma_j(rectangle)
    - truncate cuts D at spec.y_max; otherwise the whole of D is used
    - cosets restricts the sum to the listed translates
    - the grid doubles until two successive values agree to
      target_rel_error relative to max(|I|, int |integrand| dmu)
    - cells are reduced in index order with compensated sums

    Raises:
        AccuracyError: If the last two grids differ by more than 100 times the tolerance
    """
    spec = spec or QuadratureSpec()
    cells = list(range(len(coset_reps(level)))) if cosets is None else list(cosets)

    def rule(n: int) -> Tuple[np.ndarray, np.ndarray]:
        if support is not None:
            return rectangle_rule(support, n)
        return domain_rule(n, spec.y_max if truncate else None)

    n = spec.resolution
    previous, _ = _integrate_once(integrand, cells, level, *rule(n), mapper)
    error = math.inf
    current, mass = previous, 0.0
    for _ in range(spec.max_refinements):
        n *= 2
        current, mass = _integrate_once(integrand, cells, level, *rule(n), mapper)
        error = abs(current - previous)
        scale = max(abs(current), mass)
        if error <= spec.target_rel_error * scale:
            logger.debug(f"Quadrature on {len(cells)} cells converged at {n} nodes per axis, error {error:.3e}")
            return QuadratureResult(current, error, n, spec.target_rel_error * scale)
        previous = current
    scale = max(abs(current), mass)
    if error <= WARN_FACTOR * spec.target_rel_error * scale:
        logger.warning(f"Quadrature error {error:.3e} above tolerance {spec.target_rel_error:.1e} at {n} nodes")
        return QuadratureResult(current, error, n, spec.target_rel_error * scale)
    raise AccuracyError(
        "Quadrature refinement did not converge",
        estimate=error, tolerance=spec.target_rel_error * scale, operation="integrate",
    )


def inner_product(f: PointFunction, g: PointFunction, level: int, spec: Optional[QuadratureSpec] = None,
                  support: Optional[Rectangle] = None, cosets: Optional[Sequence[int]] = None,
                  mapper: Optional[Mapper] = None) -> complex:
    """<f, g>_L = int_{Y0(L)} f conj(g) dmu."""
    result = integrate(lambda z: np.asarray(f(z)) * np.conj(np.asarray(g(z))), level, spec,
                       support=support, cosets=cosets, mapper=mapper)
    return result.value


def pair_with_test_function(f: PointFunction, phi: TestFunction, level: int,
                            spec: Optional[QuadratureSpec] = None, mapper: Optional[Mapper] = None) -> QuadratureResult:
    """
    <f, phi>_L for a test function of level M | L.

    Only the translates meeting the support of phi are visited: those
    gamma_j of level L whose coset mod M is phi's coset.
    """
    cells = _cells_for(phi, level)
    return integrate(lambda z: np.asarray(f(z)) * phi(z), level, spec, support=phi.support, cosets=cells, mapper=mapper)


def _cells_for(phi: TestFunction, level: int) -> List[int]:
    if level % phi.level != 0:
        raise ValueError(f"Test function level {phi.level} must divide {level}")
    if phi.coset is None:
        return list(range(len(coset_reps(level))))
    return [j for j, gamma in enumerate(coset_reps(level)) if coset_index(gamma, phi.level) == phi.coset]


def constant_one(z: Any) -> np.ndarray:
    """The constant function 1."""
    return np.ones(np.shape(z))


def bump_integral(phi: TestFunction, n: int = 512) -> float:
    """
    <1, phi_0>_1 = int_D base dmu, a product of two one-dimensional integrals.

    Equal to <1, phi_j^{(M)}>_M for every coset j.
    """
    x_lo, x_hi, y_lo, y_hi = phi.support
    nodes, weights = unit_rule(n)
    x_integral = (x_hi - x_lo) * float(np.dot(weights, bump_profile(2 * nodes - 1)))
    y = y_lo + (y_hi - y_lo) * nodes
    y_integral = (y_hi - y_lo) * float(np.dot(weights, bump_profile(2 * nodes - 1) / y ** 2))
    return x_integral * y_integral
