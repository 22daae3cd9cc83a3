"""The quadratic character chi(n) = (a|n) on integers coprime to 2a, as a
periodic function mod 8|a|, and the conditionally convergent value L(1, chi).

L(1, chi) is summed in complete periods: the partial sums A(x) of chi are
periodic with mean zero, so Abel summation bounds the tail after N = (whole
periods) terms by 2*max|A|/(N+1).  No Euler-Maclaurin correction is applied;
the series is simply pushed far enough, in numpy chunks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import SurfaceParam, kronecker


@dataclass
class EulerEstimate:
    """A numerical value for a conditionally convergent product/series,
    together with a rigorous-or-empirical truncation bound and the cut."""

    value: float
    bound: float
    cut: int


class ToleranceError(RuntimeError):
    """Raised when an estimate cannot reach the requested tolerance; carries
    the best estimate computed so far."""

    def __init__(self, msg: str, best: EulerEstimate):
        super().__init__(msg)
        self.best = best


class CharacterChi:
    """chi(n) = kronecker(a, n) gated by gcd(n, 2a) = 1, periodic mod 8|a|."""

    def __init__(self, a: int | SurfaceParam):
        self.param = a if isinstance(a, SurfaceParam) else SurfaceParam(a)
        a = self.param.a
        self.a = a
        self.modulus = 8 * abs(a)
        two_a = 2 * abs(a)
        table = np.zeros(self.modulus, dtype=np.int8)
        for n in range(1, self.modulus + 1):
            if math.gcd(n, two_a) == 1:
                table[n % self.modulus] = kronecker(a, n)
        self.table = table  # indexed by n mod modulus
        if int(table.sum()) != 0:
            raise AssertionError("character table does not sum to zero over a period")
        self._running = np.cumsum(table[np.r_[1 : self.modulus, 0]])  # A(1..m)
        self.partial_max = int(np.max(np.abs(self._running)))

    def chi(self, n: int) -> int:
        if n < 1:
            raise ValueError("chi defined on positive integers")
        return int(self.table[n % self.modulus])

    def partial_sum(self, x: int) -> int:
        """A(x) = sum_{n <= x} chi(n).  Periodic in x since period sums vanish."""
        if x <= 0:
            return 0
        r = x % self.modulus
        return int(self._running[r - 1]) if r else 0

    def L1(self, tolerance: float, max_terms: int = 2_000_000_000) -> EulerEstimate:
        """L(1, chi) = sum chi(n)/n with tail bound 2*max|A|/(N+1) <= tolerance."""
        if tolerance <= 0:
            raise ValueError("tolerance must be positive")
        m = self.modulus
        amax = self.partial_max
        need = int(2 * amax / tolerance) + 1
        N = ((need + m - 1) // m) * m  # whole periods
        if N > max_terms:
            N_cap = (max_terms // m) * m
            est = self._sum_upto(N_cap)
            bound = 2 * amax / (N_cap + 1)
            raise ToleranceError(
                f"tolerance {tolerance} needs {N} terms (cap {max_terms})",
                EulerEstimate(est, bound, N_cap),
            )
        value = self._sum_upto(N)
        return EulerEstimate(value, 2 * amax / (N + 1), N)

    def _sum_upto(self, N: int) -> float:
        table = self.table.astype(np.float64)
        total = 0.0
        chunk = 8_000_000
        for start in range(1, N + 1, chunk):
            stop = min(start + chunk, N + 1)
            n = np.arange(start, stop, dtype=np.int64)
            total += float(np.sum(table[n % self.modulus] / n))
        return total
