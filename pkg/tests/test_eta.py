import math

import pytest

from delpezzo.arith import TESTBED, omega, primes_upto
from delpezzo.eta import EtaContext, eta, eta_bruteforce, eta_closed


def test_worked_2adic_values():
    # squarefree a = 1 mod 8: eta(2)=1, eta(4)=2, eta(8..)=4
    assert eta_bruteforce(2, 17) == 1
    assert eta_bruteforce(4, 17) == 2
    assert eta_bruteforce(8, 17) == 4
    assert eta_bruteforce(16, 17) == 4
    # a = 5 mod 8 stops at the mod-8 obstruction
    assert eta_bruteforce(8, 5) == 0
    # p | a squarefree, k = 1
    assert eta_bruteforce(3, 6) == 1
    assert eta_bruteforce(3, 5) == 0


def test_closed_examples():
    assert eta_closed(7, 3, 2) == 1 + 1  # 3^2 = 2 mod 7
    assert eta_closed(3, 5, 18) == 0  # 18/9 = 2 is a nonresidue mod 3
    assert eta_closed(5, 1, 10) == 1


def test_eta_multiplicative_examples():
    assert eta(1, 7) == 1
    assert eta(24, 17) == 0  # the 3-adic factor vanishes for 17 = 2 mod 3
    assert eta(24, 17) == eta(8, 17) * eta(3, 17)
    # squarefree coprime q with a a QR at every factor: 2^(number of primes)
    assert eta(35, 11) == 2 ** omega(35)  # 11 is a QR mod 5 and mod 7


def test_squarefree_2adic_table():
    # for squarefree a: eta(2^k; a) is 1, 2, 4 as k = 1, 2, >= 3 with
    # a = 1 mod 2, 4, 8 respectively, else 0 (beyond the trivial window)
    squarefree_odd = (-5, -1, 3, 5, 17)
    for a in squarefree_odd:
        assert eta_closed(2, 1, a) == 1
        assert eta_closed(2, 2, a) == (2 if a % 4 == 1 else 0)
        for k in (3, 5, 8):
            assert eta_closed(2, k, a) == (4 if a % 8 == 1 else 0), (a, k)


def test_closed_vs_bruteforce_small_grid():
    for a in TESTBED:
        for p in primes_upto(13):
            for k in range(1, 7):
                assert eta_closed(p, k, a) == eta_bruteforce(p**k, a), (p, k, a)


def test_multiplicativity_vs_bruteforce():
    pairs = [(q1, q2) for q1 in range(2, 61) for q2 in range(2, 61) if math.gcd(q1, q2) == 1]
    for a in (-1, 12, 17):
        for q1, q2 in pairs[::7]:
            assert eta(q1 * q2, a) == eta_bruteforce(q1, a) * eta_bruteforce(q2, a)


def test_middle_range_upper_bound_at_2():
    # at p = 2 with even v, the window v < k <= v_2(4a)+1 obeys
    # eta(2^k) <= 2^(k-v) - 2^(k-v-1)
    for a in (17, 5, 3, 12, 8 * 9):
        v = 0
        aa = a
        while aa % 2 == 0:
            aa //= 2
            v += 1
        if v % 2:
            continue
        for k in range(v + 1, v + 4):
            assert eta_closed(2, k, a) <= 2 ** (k - v) - 2 ** (k - v - 1), (a, k)


def test_global_bound():
    # eta(q; a) <= 8 * 2^omega(q)
    for a in TESTBED:
        for q in range(1, 400):
            assert eta(q, a) <= 8 * 2 ** omega(q), (q, a)


def test_summation_trend():
    # sum_{q <= t} eta(q; a) (1+C)^omega(q) stays O(t log^C t): check the
    # ratio against t (log t)^C is bounded along decades (trend only)
    import numpy as np

    a, C = -1, 1.0
    T = 10**6
    spf = np.zeros(T + 1, dtype=np.int64)
    for p in range(2, T + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    vals = np.zeros(T + 1)
    vals[1] = 1.0
    for q in range(2, T + 1):
        p = int(spf[q])
        m, k = q, 0
        while m % p == 0:
            m //= p
            k += 1
        vals[q] = vals[m] * eta_closed(p, k, a) * (1 + C if k else 1)
        # (1+C)^omega factor: one factor of (1+C) per distinct prime
    csum = np.cumsum(vals)
    ratios = [csum[t] / (t * math.log(t) ** C) for t in (10**3, 10**4, 10**5, 10**6)]
    assert max(ratios) / min(ratios) < 3.0, ratios


def test_eta_context_memo():
    ctx = EtaContext(12)
    assert ctx.prime_power(2, 3) == eta_closed(2, 3, 12)
    assert ctx.memo[(2, 3)] == eta_bruteforce(8, 12)


def test_square_a_rejected():
    with pytest.raises(ValueError):
        eta_bruteforce(5, 4)
    with pytest.raises(ValueError):
        eta_closed(5, 1, 9)
    with pytest.raises(ValueError):
        eta(5, 16)
