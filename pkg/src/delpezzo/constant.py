"""Assembly of the predicted leading constant c = alpha * omega_inf * prod_p omega_p.

The finite product converges only conditionally in its raw form.  It is
computed through the absolutely convergent splitting

    prod_p omega_p = [prod_{p | 2a} omega_p] * L(1, chi)
                     * prod_{p not| 2a} omega_p (1 - chi(p)/p),

where omega_p (1 - chi(p)/p) = 1 + O(1/p^2): for p not dividing 2a,
omega_p = (1-1/p)^5 (1 + (5+chi(p))/p + 1/p^2), so pairing with the L-factor
removes the chi(p)/p oscillation.  Truncation error is estimated empirically
by doubling the prime cut.

The general number-field constant shape
    c = alpha * rho_K^5 * |Delta_K|^(-1) * prod_v omega_v
is kept visible through NumberFieldInvariants; only the Q instance is
constructible here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .alpha_polytope import ALPHA
from .archimedean import RegionIntegral, omega_inf_chart, omega_inf_region
from .arith import factorize, primes_upto
from .characters import CharacterChi, EulerEstimate
from .local_densities import omega_p


@dataclass(frozen=True)
class NumberFieldInvariants:
    r1: int
    r2: int
    h: int
    R: float
    mu_order: int
    disc: int

    @property
    def rho(self) -> float:
        return (
            2**self.r1
            * (2 * math.pi) ** self.r2
            * self.R
            * self.h
            / (self.mu_order * math.sqrt(abs(self.disc)))
        )


RATIONALS = NumberFieldInvariants(r1=1, r2=0, h=1, R=1.0, mu_order=2, disc=1)


@dataclass
class ConstantBreakdown:
    a: int
    alpha: Fraction
    omega_inf: RegionIntegral
    omega_inf_alt: RegionIntegral
    finite_product: EulerEstimate
    L1_chi: EulerEstimate
    field: NumberFieldInvariants
    c: float

    def factors(self) -> dict:
        return {
            "alpha": float(self.alpha),
            "omega_inf": self.omega_inf.value,
            "omega_inf_alt": self.omega_inf_alt.value,
            "omega_inf_rel_gap": abs(self.omega_inf.value - self.omega_inf_alt.value)
            / self.omega_inf.value,
            "finite_product": self.finite_product.value,
            "finite_product_bound": self.finite_product.bound,
            "L1_chi": self.L1_chi.value,
            "L1_bound": self.L1_chi.bound,
            "rho_field": self.field.rho,
            "c": self.c,
        }


def finite_product(a: int, prime_cut: int, l1_tolerance: float = 1e-7) -> EulerEstimate:
    """prod_p omega_p by the convergence-factor splitting; error by doubling."""
    if prime_cut < 100:
        raise ValueError("prime_cut must be at least 100")
    chi = CharacterChi(a)
    L1 = chi.L1(l1_tolerance)
    bad = {p for p, _ in factorize(2 * a)}
    value_at = {}
    for cut in (prime_cut, 2 * prime_cut):
        prod = 1.0
        for p in primes_upto(cut):
            if p in bad:
                continue
            prod *= float(omega_p(p, a)) * (1 - chi.chi(p) / p)
        value_at[cut] = prod
    head = 1.0
    for p in bad:
        head *= float(omega_p(p, a))
    val = head * L1.value * value_at[2 * prime_cut]
    doubling = abs(value_at[2 * prime_cut] - value_at[prime_cut]) * head * abs(L1.value)
    bound = doubling + head * value_at[2 * prime_cut] * L1.bound
    return EulerEstimate(val, bound, prime_cut)


def naive_partial_product(a: int, cut: int) -> float:
    """The raw conditionally convergent prod_{p <= cut} omega_p (slow route)."""
    prod = 1.0
    for p in primes_upto(cut):
        prod *= float(omega_p(p, a))
    return prod


def naive_product_curve(a: int, cut: int):
    """(primes, running products of omega_p) in float64, vectorized away from
    p | 2a, for studying the conditional oscillation at large cuts."""
    import numpy as np

    chi = CharacterChi(a)
    ps = np.array(primes_upto(cut), dtype=np.int64)
    bad = {p for p, _ in factorize(2 * a)}
    chis = chi.table[ps % chi.modulus].astype(np.float64)
    pf = ps.astype(np.float64)
    factors = (1 - 1 / pf) ** 5 * (1 + (5 + chis) / pf + 1 / pf**2)
    for i, p in enumerate(ps):
        if int(p) in bad:
            factors[i] = float(omega_p(int(p), a))
    return ps, np.cumprod(factors)


def naive_product_smoothed(a: int, cut: int) -> float:
    """Cesaro-style average of the conditional partial products over the last
    stretch of primes (one chi-period worth of residues)."""
    import numpy as np

    ps, curve = naive_product_curve(a, cut)
    window = max(1000, len(ps) // 10)
    return float(np.mean(curve[-window:]))


def predict_constant(
    a: int,
    prime_cut: int = 20000,
    tolerance: float = 1e-6,
    l1_tolerance: float = 1e-7,
) -> ConstantBreakdown:
    """Every factor of the predicted constant over Q (field factors are 1)."""
    chi = CharacterChi(a)
    fp = finite_product(a, prime_cut, l1_tolerance)
    om_chart = omega_inf_chart(a, tolerance)
    om_region = omega_inf_region(a, tolerance)
    c = float(ALPHA) * om_chart.value * fp.value  # rho_Q = 1, |disc| = 1
    return ConstantBreakdown(
        a=a,
        alpha=ALPHA,
        omega_inf=om_chart,
        omega_inf_alt=om_region,
        finite_product=fp,
        L1_chi=chi.L1(l1_tolerance),
        field=RATIONALS,
        c=c,
    )


@dataclass
class CompareRow:
    B: float
    count: int
    prediction: float
    ratio: float


def compare(a: int, B_list, breakdown: ConstantBreakdown | None = None, methods=("direct", "torsor")):
    """Rows (B, N(B), c B (log B)^4, ratio) with N(B) cross-checked between
    the requested counters (raises on mismatch)."""
    from .counting import direct_count, torsor_count

    bd = breakdown or predict_constant(a)
    rows = []
    for B in B_list:
        counts = {}
        if "direct" in methods:
            counts["direct"] = direct_count(a, B).count
        if "torsor" in methods:
            counts["torsor"] = torsor_count(a, B).count
        vals = set(counts.values())
        if len(vals) > 1:
            raise AssertionError(f"counter mismatch at B={B}: {counts}")
        n = vals.pop()
        pred = bd.c * B * math.log(B) ** 4 if B > 1 else 0.0
        ratio = n / pred if pred > 0 else math.inf
        rows.append(CompareRow(B=float(B), count=n, prediction=pred, ratio=ratio))
    return rows
