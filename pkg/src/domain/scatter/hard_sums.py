"""
Weighted sums of |phi_{oo a}(1/2 + iT, chi)|^2 over the cusps and the
divisor sums used to bound them.

With q the conductor of chi and f_a the denominator of a,

    S1 = sum_a |phi_{oo a}|^2 log(N/(q f_a))
    S2 = sum_a |phi_{oo a}|^2 sum_{p | N/f_a} psi(p) log p / (psi(p) p^{2s-1} - 1)
    S3 = sum_a |phi_{oo a}|^2 log f_a

and unitarity gives S1 + S3 = log(N/q) exactly. The masses
S_f = sum_{f_a = f} |phi_{oo a}|^2 also factor as C_f prod_{p | N/f} S_f^p.
"""

import cmath
import logging
import math
from typing import Any, Dict, List, Optional

from ..arith.multiplicative import divisors, omega, ppart_order, prime_divisors
from ..characters.dirichlet_character import DirichletCharacter
from .scattering import phi_infinity_row

logger = logging.getLogger(__name__)


class HardSums:
    """S1, S2, S3 at one (N, chi, T) together with the per-denominator masses."""

    def __init__(self, level: int, conductor: int, t: float, s1: float, s2: complex, s3: float,
                 unitarity: float, masses: Dict[int, float], rows: List[Dict[str, Any]]) -> None:
        self._level = level
        self._conductor = conductor
        self._t = float(t)
        self._s1 = s1
        self._s2 = complex(s2)
        self._s3 = s3
        self._unitarity = unitarity
        self._masses = dict(masses)
        self._rows = list(rows)

    @property
    def level(self) -> int:
        """The level N."""
        return self._level

    @property
    def conductor(self) -> int:
        """The conductor q of chi."""
        return self._conductor

    @property
    def t(self) -> float:
        """T in s = 1/2 + iT."""
        return self._t

    @property
    def s1(self) -> float:
        """sum |phi|^2 log(N/(q f))."""
        return self._s1

    @property
    def s2(self) -> complex:
        """sum |phi|^2 sum_{p | N/f} psi(p) log p / (psi(p) p^{2iT} - 1)."""
        return self._s2

    @property
    def s3(self) -> float:
        """sum |phi|^2 log f."""
        return self._s3

    @property
    def unitarity(self) -> float:
        """sum |phi|^2."""
        return self._unitarity

    @property
    def identity_residual(self) -> float:
        """S1 + S3 - log(N/q)."""
        return self._s1 + self._s3 - math.log(self._level / self._conductor)

    @property
    def masses(self) -> Dict[int, float]:
        """S_f = sum over the cusps with denominator f of |phi|^2."""
        return dict(self._masses)

    def mass_bound(self, f: int) -> float:
        """(q f / N) 4^{omega(N/(q f))}, an upper bound for S_f when f | N/q."""
        rest = self._level // (self._conductor * f)
        return self._conductor * f / self._level * 4 ** omega(rest)

    def bounds_hold(self) -> bool:
        """Every S_f lies below its bound."""
        return all(mass <= self.mass_bound(f) * (1 + 1e-12) for f, mass in self._masses.items())

    def rows(self) -> List[Dict[str, Any]]:
        """One record per cusp, for tabular output."""
        return [dict(row) for row in self._rows]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'N': self._level,
            'q': self._conductor,
            'T': self._t,
            'S1': self._s1,
            'S2': {'re': self._s2.real, 'im': self._s2.imag},
            'S3': self._s3,
            'unitarity': self._unitarity,
            'identity_residual': self.identity_residual,
            'bounds_hold': self.bounds_hold(),
        }

    def __repr__(self) -> str:
        return f"HardSums(N={self._level}, q={self._conductor}, T={self._t}, S1={self._s1:.6f}, S3={self._s3:.6f})"


def hard_sums(level: int, chi: Optional[DirichletCharacter] = None, t: float = 1.0) -> HardSums:
    """
    S1, S2, S3 from the scattering row at s = 1/2 + iT.

    Business rules:
    - only cusps with f | N/q carry mass
    - S1 + S3 = log(N/q) since the row has unit norm

    Args:
        level: The level N
        chi: Even character mod N, trivial by default
        t: T

    Returns:
        HardSums
    """
    chi = chi if chi is not None else DirichletCharacter.trivial(level)
    psi = chi.primitive_inducer()
    q = psi.modulus
    s = 0.5 + 1j * t
    row = phi_infinity_row(level, chi, s)
    s1: List[float] = []
    s3: List[float] = []
    s2 = 0j
    masses: Dict[int, float] = {}
    records = []
    for cusp, value in row.entries.items():
        weight = abs(value) ** 2
        f = cusp.f
        masses[f] = masses.get(f, 0.0) + weight
        if weight == 0:
            continue
        first = weight * math.log(level / (q * f))
        third = weight * math.log(f)
        local = 0j
        for p in prime_divisors(level // f):
            twist = psi(p)
            local += twist * math.log(p) / (twist * cmath.exp(2j * t * math.log(p)) - 1)
        s1.append(first)
        s3.append(third)
        s2 += weight * local
        records.append({'N': level, 'q': q, 'T': float(t), 'f': f, 'u': cusp.u,
                        'abs2': weight, 'S1_part': first, 'S3_part': third})
    result = HardSums(level, q, t, math.fsum(s1), s2, math.fsum(s3), row.unitarity_sum(),
                      {f: mass for f, mass in masses.items() if (level // q) % f == 0}, records)
    logger.info(f"Weighted log sums at N={level}, q={q}, T={t}: residual {result.identity_residual:.3e}")
    return result


def mertens_sums(n: int) -> Dict[str, float]:
    """
    sum_{p|n} 1/p and sum_{p|n} log p / p with their reference growth.

    The first is compared with log log log(n + 15), the second with log log(n + 2).
    """
    primes = prime_divisors(n)
    return {
        'reciprocal': math.fsum(1 / p for p in primes),
        'log_weighted': math.fsum(math.log(p) / p for p in primes),
        'reciprocal_scale': math.log(math.log(math.log(n + 15))),
        'log_weighted_scale': math.log(math.log(n + 2)),
    }


def divisor_log_sum(bound: int, k: int) -> float:
    """sum_{g | L} (log g / g) k^{omega(g)} by enumeration."""
    return math.fsum(math.log(g) / g * k ** omega(g) for g in divisors(bound))


def divisor_log_sum_factored(bound: int, k: int) -> float:
    """
    The same sum through its prime decomposition.

    sum_{p|L} log p (k sum_{i <= nu_p(L)} i/p^i) prod_{p' | L, p' != p} (1 + k sum_{j <= nu_p'(L)} p'^{-j})
    """
    primes = prime_divisors(bound)
    orders = {p: ppart_order(p, bound) for p in primes}
    local = {p: 1 + k * math.fsum(p ** -j for j in range(1, orders[p] + 1)) for p in primes}
    total = []
    for p in primes:
        inner = k * math.fsum(i / p ** i for i in range(1, orders[p] + 1))
        rest = math.prod(local[r] for r in primes if r != p)
        total.append(math.log(p) * inner * rest)
    return math.fsum(total)


def mass_local_factor(psi: DirichletCharacter, t: float, p: int) -> float:
    """S_f^p = |1 - conj psi(p) p^{1-2s}|^2 / |1 - conj psi(p) p^{-2s}|^2 at s = 1/2 + iT; at most 4, and 1 if p | q."""
    twist = complex(psi(p)).conjugate() * cmath.exp(-2j * t * math.log(p))
    return abs(1 - twist) ** 2 / abs(1 - twist / p) ** 2


def mass_constant(level: int, psi: DirichletCharacter, t: float, f: int) -> float:
    """
    C_f = (q f / N) prod_{p | (f, N/f)} (1 - 1/p)
          prod_{p | f, p not dividing N/f} (1 - 1/p)^2 / |1 - conj psi(p) p^{-2s}|^2.
    """
    complement = level // f
    value = psi.modulus * f / level
    for p in prime_divisors(f):
        if complement % p == 0:
            value *= 1 - 1 / p
        else:
            twist = complex(psi(p)).conjugate() * cmath.exp(-2j * t * math.log(p)) / p
            value *= (1 - 1 / p) ** 2 / abs(1 - twist) ** 2
    return value


def factorized_masses(level: int, chi: Optional[DirichletCharacter] = None, t: float = 1.0) -> Dict[int, float]:
    """
    S_f = C_f prod_{p | N/f} S_f^p for every f | N/q, without the scattering row.

    Business rules:
    - agrees with HardSums.masses, which sums |phi_{oo a}|^2 directly
    - S_f <= (q f / N) 4^{omega(N/(q f))}
    """
    chi = chi if chi is not None else DirichletCharacter.trivial(level)
    psi = chi.primitive_inducer()
    masses = {}
    for f in divisors(level // psi.modulus):
        mass = mass_constant(level, psi, t, f)
        for p in prime_divisors(level // f):
            mass *= mass_local_factor(psi, t, p)
        masses[f] = mass
    return masses
