"""The coprimality/congruence weights theta0, theta1, theta2.

theta1 and theta2 are Euler products whose factor at p depends only on the
valuation pattern v = (v_p(a1), ..., v_p(a4)) (resp. (v_p(a2), v_p(a3),
v_p(a4))) and on eta / r_a.  Away from 2a*a1*a2*a3*a4 the factor is the
generic supp-empty value, so the products are stored as
(exceptional factor map, generic factor rule) and can be evaluated exactly
over any prime cut without truncation error in the exceptional part.

theta1_factor_identity re-derives the theta1 factor at one prime from first
principles: it enumerates the local Moebius data (d56, d58, d5, d6, d7) with
squarefree p-exponents in {0,1}, forms g = p^min(e58 + v1, v_p(a)),
g' = p^ceil(v_p(g)/2), counts rho by residue enumeration, and sums
mu * eta / norm.  That finite sum must equal the table value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, primes_upto, valuation
from .eta import eta_bruteforce, eta_closed
from .local_densities import r_a


@dataclass(frozen=True)
class ValuationPattern:
    v: tuple[int, int, int, int]

    @property
    def supp(self) -> frozenset[int]:
        return frozenset(i + 1 for i, x in enumerate(self.v) if x != 0)


def theta0(a1: int, a2: int, a3: int, a4: int) -> int:
    """1 iff gcd(a4, a1*a3) = gcd(a3, a1) = gcd(a2, a1) = 1."""
    if min(a1, a2, a3, a4) < 1:
        raise ValueError("arguments must be positive")
    if math.gcd(a4, a1 * a3) != 1 or math.gcd(a3, a1) != 1 or math.gcd(a2, a1) != 1:
        return 0
    return 1


def _theta1_inner(p: int, v1: int, a: int) -> Fraction:
    """theta_{1,p}(v1): the supp in {{}, {1}} sub-factor."""
    if v1 == 0:
        return 1 + Fraction(1, p) - Fraction(eta_closed(p, 1, a), p * p)
    n = valuation(p, a)
    lead = eta_closed(p, v1, a) * Fraction(p ** (min(v1, n) // 2))
    sub = eta_closed(p, v1 + 1, a) * Fraction(p ** (min(v1 + 1, n) // 2), p * p)
    return lead - sub


def theta1_local(p: int, a: int, v: tuple[int, int, int, int]) -> Fraction:
    """The theta1 Euler factor at p for valuation pattern v."""
    supp = frozenset(i + 1 for i, x in enumerate(v) if x != 0)
    one_minus = 1 - Fraction(1, p)
    if supp <= {1}:
        return one_minus * _theta1_inner(p, v[0], a)
    if supp in ({3}, {4}):
        return one_minus**2
    if supp in ({2}, {2, 3}, {2, 4}):
        return one_minus**3
    return Fraction(0)


def theta2_local(p: int, a: int, v: tuple[int, int, int]) -> Fraction:
    """The theta2 Euler factor at p for valuation pattern (v2, v3, v4)."""
    supp = frozenset(i + 2 for i, x in enumerate(v) if x != 0)
    one_minus = 1 - Fraction(1, p)
    if not supp:
        return one_minus**2 * (1 + (2 + r_a(p, a)) / p)
    if supp in ({3}, {4}):
        return one_minus**3
    if supp in ({2}, {2, 3}, {2, 4}):
        return one_minus**4
    return Fraction(0)


class FiniteEulerProduct:
    """An Euler product with finitely many exceptional factors and a generic
    rule elsewhere.  Exact over any finite prime cut; the full product over
    all primes converges only conditionally and is never materialized."""

    def __init__(self, exceptional: dict[int, Fraction], generic):
        self.exceptional = dict(exceptional)
        self.generic = generic

    def factor(self, p: int) -> Fraction:
        if p in self.exceptional:
            return self.exceptional[p]
        return self.generic(p)

    def value_over_cut(self, prime_cut: int) -> Fraction:
        out = Fraction(1)
        for p in primes_upto(prime_cut):
            out *= self.factor(p)
            if out == 0:
                break
        return out

    def is_zero(self) -> bool:
        return any(f == 0 for f in self.exceptional.values())


def theta1(a: int, a1: int, a2: int, a3: int, a4: int) -> FiniteEulerProduct:
    """theta1(a1..a4) as a finite-exceptional Euler product."""
    if min(a1, a2, a3, a4) < 1:
        raise ValueError("arguments must be positive")
    exceptional = {}
    for p, _ in factorize(2 * a * a1 * a2 * a3 * a4):
        v = (valuation(p, a1), valuation(p, a2), valuation(p, a3), valuation(p, a4))
        exceptional[p] = theta1_local(p, a, v)
    return FiniteEulerProduct(exceptional, lambda p: theta1_local(p, a, (0, 0, 0, 0)))


def theta2(a: int, a2: int, a3: int, a4: int) -> FiniteEulerProduct:
    """theta2(a2, a3, a4) as a finite-exceptional Euler product."""
    if min(a2, a3, a4) < 1:
        raise ValueError("arguments must be positive")
    exceptional = {}
    for p, _ in factorize(2 * a * a2 * a3 * a4):
        v = (valuation(p, a2), valuation(p, a3), valuation(p, a4))
        exceptional[p] = theta2_local(p, a, v)
    return FiniteEulerProduct(exceptional, lambda p: theta2_local(p, a, (0, 0, 0)))


def theta1_factor_identity(p: int, a: int, v: tuple[int, int, int, int]):
    """Check theta1_local(p, a, v) against the local Moebius/rho sum.

    Returns (table_value, local_sum, passed).  The local sum enumerates the
    five squarefree inversion exponents (e56, e58, e5, e6, e7) in {0,1} with

        e56 = 1 only if v1 = v2 = v3 = v4 = 0
        e58 = 1 only if v2 = v3 = v4 = 0,
              and v_p(a) odd  =>  e58 + v1 <= v_p(a)
        e5  = 1 only if v2 + v4 >= 1
        e6  = 1 only if v1 + v2 + v3 >= 1
        e7  = 1 only if v2 + v3 + v4 >= 1

    and sums mu * (rho count) / p^D with
    D = e5+e6+e7+e56+e58+max(e56,e58) - floor(min(e58+v1, v_p(a))/2),
    where the rho count is eta(p^(e58+v1); a) evaluated by residue
    enumeration.  theta0 violations force the table value 0 and an empty sum
    contribution pattern is not asserted there.
    """
    v1, v2, v3, v4 = v
    n = valuation(p, a)
    # theta0 localized at p: no pair (1,2), (1,3), (1,4-with-3) etc.
    t0_ok = not (
        (v4 > 0 and (v1 > 0 or v3 > 0)) or (v3 > 0 and v1 > 0) or (v2 > 0 and v1 > 0)
    )
    table = theta1_local(p, a, v) if t0_ok else Fraction(0)

    total = Fraction(0)
    if t0_ok:
        for e56 in (0, 1):
            if e56 and (v1 or v2 or v3 or v4):
                continue
            for e58 in (0, 1):
                if e58 and (v2 or v3 or v4):
                    continue
                if n % 2 == 1 and e58 + v1 > n:
                    continue
                vg = min(e58 + v1, n)
                rho_count = eta_bruteforce(p ** (e58 + v1), a) if e58 + v1 else 1
                for e5 in (0, 1):
                    if e5 and v2 + v4 == 0:
                        continue
                    for e6 in (0, 1):
                        if e6 and v1 + v2 + v3 == 0:
                            continue
                        for e7 in (0, 1):
                            if e7 and v2 + v3 + v4 == 0:
                                continue
                            sign = (-1) ** (e56 + e58 + e5 + e6 + e7)
                            D = e5 + e6 + e7 + e56 + e58 + max(e56, e58) - vg // 2
                            total += Fraction(sign * rho_count, p**D) if D >= 0 else Fraction(
                                sign * rho_count * p**-D
                            )
    return table, total, table == total


def theta1_average(a: int, a2: int, a3: int, a4: int, x: int):
    """(sum_{a1 <= x} theta1, theta2 * x), both exact over the cut of all
    primes <= max(x, primes of 2a*a2*a3*a4).

    The cut cancels in the ratio: primes beyond it contribute identical
    generic factors to both sides.
    """
    t2 = theta2(a, a2, a3, a4)
    cut_primes = set(primes_upto(max(x, 2)))
    for n in (2 * a, a2, a3, a4):
        cut_primes.update(p for p, _ in factorize(n))
    cut_primes = sorted(cut_primes)

    # common generic scaffold: product of theta1 generic factors over the cut,
    # then per a1 only the exceptional corrections vary
    generic1 = {p: theta1_local(p, a, (0, 0, 0, 0)) for p in cut_primes}
    base = Fraction(1)
    for p in cut_primes:
        base *= generic1[p]

    total = Fraction(0)
    if x >= 1:
        for a1 in range(1, x + 1):
            corr = Fraction(1)
            special = {p for p, _ in factorize(2 * a * a1 * a2 * a3 * a4)}
            for p in special:
                vv = (
                    valuation(p, a1),
                    valuation(p, a2),
                    valuation(p, a3),
                    valuation(p, a4),
                )
                f = theta1_local(p, a, vv)
                if f == 0:
                    corr = Fraction(0)
                    break
                corr *= f / generic1[p]
            if corr:
                total += corr
        total *= base

    prediction = x * t2.value_over_cut(cut_primes[-1]) if cut_primes else Fraction(x)
    return total, prediction
