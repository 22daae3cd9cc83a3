"""The two independent point counters and the Moebius-slice identity.

direct_count  enumerates coordinate triples (x1, x3, x4) of the projection
              away from the x4-line, maps them back to the surface, reduces,
              and deduplicates.  Any point of height <= B is reproduced by its
              own triple, so the count is complete.  Two internal strategies
              give the same set: the plain O(B^3) box scan, and a pruned scan
              over primitive triples used for large B (derivation in
              _direct_pruned_count).

torsor_count  enumerates torsor tuples (a1, ..., a7) with a8 forced by the
              torsor equation and divides the orbit total by 32.  Signs are
              factored out on the fast path: every height monomial and
              coprimality condition depends only on absolute values, so the
              full total is 64 * (positive-orthant total with a7 >= 0,
              weight 2 when a7 > 0), and 64/32 = 2.  The all_signs path
              enumerates sign patterns literally and checks divisibility by 32.

moebius_slice_check  verifies, on one fixed slice (a1..a4), that the number
              of completions (a5, a6, a7, a8) equals the Moebius-inverted sum
              over (d56, d58, d5, d6, d7) and square-root classes rho, with
              gamma7 solved by non-coprime CRT and lattice points counted by
              floor arithmetic on the explicit a7 windows.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import ceil_sqrt, crt, factorize, moebius, squarefree_divisors, valuation


@dataclass
class CountResult:
    a: int
    B: Fraction
    method: str
    count: int
    elapsed: float
    stats: dict = field(default_factory=dict)


def _check_nonsquare(a: int) -> None:
    if a == 0 or (a > 0 and math.isqrt(a) ** 2 == a):
        raise ValueError(f"a = {a} must be a nonzero nonsquare")


def _floor(x) -> int:
    x = Fraction(x)
    return x.numerator // x.denominator


# ---------------------------------------------------------------------------
# direct counter


def _normalize_rows(arr: np.ndarray) -> np.ndarray:
    """gcd-reduce rows of an (n, 5) int64 array and fix the sign convention."""
    g = np.gcd.reduce(np.abs(arr), axis=1)
    arr = arr // g[:, None]
    sgn = np.where(arr[:, 0] != 0, np.sign(arr[:, 0]), np.sign(arr[:, 1]))
    sgn = np.where(sgn != 0, sgn, 1)  # x2 = x4^3/g > 0 when the first two vanish
    return arr * sgn[:, None]


def _direct_box(a: int, B1: int) -> set[tuple[int, ...]]:
    """All points of height <= B1 via the full triple box, deduplicated."""
    pts: set[tuple[int, ...]] = set()
    x1 = np.arange(-B1, B1 + 1, dtype=np.int64)[None, :]
    x3_all = np.concatenate(
        [np.arange(-B1, 0, dtype=np.int64), np.arange(1, B1 + 1, dtype=np.int64)]
    )
    width = 2 * B1 + 1
    chunk = max(1, 4_000_000 // width)
    for x4 in range(1, B1 + 1):
        for s in range(0, len(x3_all), chunk):
            x3 = x3_all[s : s + chunk][:, None]
            shape = (x3.shape[0], width)
            x3sq = x3 * x3
            cols = [
                np.broadcast_to((a * x3sq - x1 * x1) * x3, shape),
                np.broadcast_to(x1 * x3 * x4, shape),
                np.broadcast_to(np.int64(x4**3), shape),
                np.broadcast_to(x3sq * x4, shape),
                np.broadcast_to(x3 * x4 * x4, shape),
            ]
            arr = np.stack([c.reshape(-1) for c in cols], axis=1)
            arr = _normalize_rows(arr)
            mask = np.max(np.abs(arr), axis=1) <= B1
            if mask.any():
                pts.update(map(tuple, arr[mask].tolist()))
    return pts


def _ragged_ranges(starts: np.ndarray, stops: np.ndarray):
    """Flatten inclusive integer ranges [starts[i], stops[i]] into one array,
    returning (values, owner_index)."""
    lens = np.maximum(stops - starts + 1, 0).astype(np.int64)
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    owner = np.repeat(np.arange(len(starts), dtype=np.int64), lens)
    offsets = np.concatenate(([0], np.cumsum(lens)[:-1]))
    flat = np.arange(total, dtype=np.int64) - np.repeat(offsets, lens) + np.repeat(starts, lens)
    return flat, owner


def _isqrt_exact(n: np.ndarray, guess: np.ndarray) -> np.ndarray:
    """Fix up float-sqrt guesses to exact floor square roots."""
    r = guess
    r = np.where(r * r > n, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= n, r + 1, r)
    r = np.where(r * r > n, r - 1, r)
    return np.maximum(r, 0)


def _floor_sqrt_arr(n: np.ndarray) -> np.ndarray:
    return _isqrt_exact(n, np.sqrt(n.astype(np.float64)).astype(np.int64))


def _ceil_sqrt_arr(n: np.ndarray) -> np.ndarray:
    r = _floor_sqrt_arr(n)
    return np.where(r * r == n, r, r + 1)


def _direct_pruned_count(a: int, B1: int) -> int:
    """Count points of height <= B1 by primitive-triple enumeration.

    Soundness of the pruning, for a primitive triple t = (x1, x3, x4) mapping
    to the primitive point y with image gcd g:
      * (y1, y3, y4) = (x3 x4 / g) * t, and an integral multiple of a
        primitive integer vector needs an integer multiplier, so g | x3 x4
        and H(y) >= |X_i| / (|x3| x4) for every image component X_i; in
        particular |x1| <= B, |x3| <= B, x4 <= B, x4^2 <= B |x3| and
        |a x3^2 - x1^2| <= B x4;
      * g | gcd(x4^3, x3^2 x4, x3 x4^2) = x4 c^2 with c = gcd(x3, x4), so
        H(y) >= x4^3 / (x4 c^2) = (x4/c)^2 and m = x4/c <= sqrt(B);
      * distinct primitive triples with x4 >= 1 give distinct points, and the
        primitive part of any point's own triple lies in the search domain,
        so counting passing triples counts each point exactly once;
      * x3 -> -x3 flips the signs of three image components, preserving the
        gcd, the height, and primitivity, and pairs distinct points, so only
        x3 > 0 is enumerated and the total is doubled (likewise x1 = +-t
        are distinct points counted by weight 2 for t > 0);
      * for q | c primitivity gives q coprime to x1, so the q-valuation of
        X_0 = (a x3^2 - x1^2) x3 is exactly v_q(x3); combined with
        g | x4 c^2 this yields the x1-independent divisor bound
        g | D := gcd(x3 m^3, x4 c^2) (and still g <= x3 x4), which prunes
        whole (x3, x4) pairs and tightens the x1 windows.
    """
    if B1 > 100_000:
        raise ValueError("direct enumeration overflows int64 beyond B = 1e5")
    total = 0
    for m in range(1, math.isqrt(B1) + 1):
        n = np.arange(1, B1 + 1, dtype=np.int64)
        if m > 1:
            n = n[np.gcd(n, m) == 1]
        cmax = np.minimum(B1 // m, np.minimum(B1 // n, (B1 * n) // (m * m)))
        keep = cmax >= 1
        n, cmax = n[keep], cmax[keep]
        if not len(n):
            continue
        c, owner = _ragged_ranges(np.ones(len(n), dtype=np.int64), cmax)
        total += 2 * _pruned_pairs(a, B1, m, c, c * n[owner])
    return total


def _pruned_pairs(a: int, B1: int, m: int, c: np.ndarray, x3: np.ndarray) -> int:
    """Weighted passing-triple count over the (x3, x4 = c*m) pairs, x1 = t >= 0."""
    x4 = c * m
    D = np.minimum(np.gcd(x3 * m**3, x4 * c * c), x3 * x4)
    BD = B1 * D
    keep = (x4 * x4 * x4 <= BD) & (x3 * x3 * x4 <= BD) & (x3 * x4 * x4 <= BD)
    if not keep.any():
        return 0
    c, x3, x4, BD = (v[keep] for v in (c, x3, x4, BD))
    ax3sq = a * x3 * x3
    lim0 = BD // x3  # |a x3^2 - t^2| <= B g / |x3| <= lim0
    hi2 = ax3sq + lim0
    keep = hi2 >= 0
    if not keep.any():
        return 0
    c, x3, x4, ax3sq, hi2, lim0, BD = (
        v[keep] for v in (c, x3, x4, ax3sq, hi2, lim0, BD)
    )
    lo2 = ax3sq - lim0
    U = np.minimum(np.minimum(_floor_sqrt_arr(hi2), B1), BD // (x3 * x4))
    L = np.where(lo2 > 0, _ceil_sqrt_arr(np.maximum(lo2, 0)), 0)
    keep = U >= L
    if not keep.any():
        return 0
    c, x3, x4, L, U = (v[keep] for v in (c, x3, x4, L, U))

    total = 0
    cum = np.cumsum(U - L + 1)
    start = 0
    while start < len(c):
        base = int(cum[start - 1]) if start else 0
        stop = min(int(np.searchsorted(cum, base + 4_000_000, side="left")) + 1, len(c))
        t, owner = _ragged_ranges(L[start:stop], U[start:stop])
        if len(t):
            cc = c[start:stop][owner]
            prim = np.gcd(t, cc) == 1
            t, owner = t[prim], owner[prim]
            if len(t):
                xx3 = x3[start:stop][owner]
                xx4 = x4[start:stop][owner]
                x3sq = xx3 * xx3
                arr = np.stack(
                    [
                        (a * x3sq - t * t) * xx3,
                        t * xx3 * xx4,
                        xx4 * xx4 * xx4,
                        x3sq * xx4,
                        xx3 * xx4 * xx4,
                    ],
                    axis=1,
                )
                g = np.gcd.reduce(np.abs(arr), axis=1)
                passing = np.max(np.abs(arr), axis=1) <= B1 * g
                w = np.where(t > 0, 2, 1)
                total += int(w[passing].sum())
        start = stop
    return total


_DIRECT_BOX_LIMIT = 200  # box scan up to here; pruned primitive scan beyond


def _pruned_m_worker(args) -> int:
    a, B1, ms = args
    total = 0
    for m in ms:
        n = np.arange(1, B1 + 1, dtype=np.int64)
        if m > 1:
            n = n[np.gcd(n, m) == 1]
        cmax = np.minimum(B1 // m, np.minimum(B1 // n, (B1 * n) // (m * m)))
        keep = cmax >= 1
        n, cmax = n[keep], cmax[keep]
        if not len(n):
            continue
        c, owner = _ragged_ranges(np.ones(len(n), dtype=np.int64), cmax)
        total += 2 * _pruned_pairs(a, B1, m, c, c * n[owner])
    return total


def direct_count(a: int, B, force_box: bool | None = None, jobs: int = 1) -> CountResult:
    """Count U(Q)-points of height <= B through the projection chart."""
    _check_nonsquare(a)
    B = Fraction(B)
    t0 = time.time()
    B1 = _floor(B)
    if B1 < 1:
        return CountResult(a, B, "direct", 0, time.time() - t0)
    use_box = force_box if force_box is not None else B1 <= _DIRECT_BOX_LIMIT
    if use_box:
        n = len(_direct_box(a, B1))
        method = "direct/box"
    elif jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        mmax = math.isqrt(B1)
        parts = [(a, B1, list(range(w + 1, mmax + 1, jobs))) for w in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            n = sum(pool.map(_pruned_m_worker, parts))
        method = f"direct/pruned x{jobs}"
    else:
        n = _direct_pruned_count(a, B1)
        method = "direct/pruned"
    return CountResult(a, B, method, n, time.time() - t0)


# ---------------------------------------------------------------------------
# torsor counter


@lru_cache(maxsize=200_000)
def _sqrt_classes(c_mod: int, m: int) -> tuple[int, ...]:
    """Residues r mod m with r^2 = c_mod (mod m)."""
    return tuple(r for r in range(m) if (r * r - c_mod) % m == 0)


def _icbrt(n: int) -> int:
    if n < 1:
        return 0
    r = round(n ** (1 / 3))
    while r > 0 and r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def _iroot4(n: int) -> int:
    if n < 1:
        return 0
    r = math.isqrt(math.isqrt(n))
    while (r + 1) ** 4 <= n:
        r += 1
    return r


def torsor_count(a: int, B, all_signs: bool = False, jobs: int = 1) -> CountResult:
    """Count U(Q)-points of height <= B through the torsor parameterization.

    all_signs=True enumerates every sign pattern literally and checks the raw
    orbit total is divisible by 32 (validation mode, small B only).
    jobs > 1 partitions the (a2, a3) outer pairs over worker processes and
    sums the partial weighted counts (deterministic merge).
    """
    _check_nonsquare(a)
    B = Fraction(B)
    t0 = time.time()
    B1 = _floor(B)
    if B1 < 1:
        return CountResult(a, B, "torsor", 0, time.time() - t0)
    if all_signs:
        raw, visited = _torsor_all_signs(a, B, B1)
        if raw % 32:
            raise AssertionError(f"raw torsor tuple total {raw} not divisible by 32")
        return CountResult(
            a, B, "torsor/all-signs", raw // 32, time.time() - t0,
            {"raw_tuples": raw, "visited": visited},
        )
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        pairs = _a23_pairs(B1)
        parts = [(a, B, B1, pairs[w::jobs]) for w in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            weighted = sum(pool.map(_torsor_pairs_worker, parts))
        return CountResult(a, B, f"torsor x{jobs}", 2 * weighted, time.time() - t0)
    weighted, visited = _torsor_positive(a, B, B1)
    return CountResult(
        a, B, "torsor", 2 * weighted, time.time() - t0,
        {"weighted_positive": weighted, "visited": visited},
    )


def _a23_pairs(B1: int) -> list[tuple[int, int]]:
    return [
        (a2, a3)
        for a2 in range(1, _icbrt(B1) + 1)
        for a3 in range(1, math.isqrt(B1 // a2**3) + 1)
    ]


def _torsor_pairs_worker(args) -> int:
    a, B, B1, pairs = args
    return sum(_torsor_positive(a, B, B1, pair)[0] for pair in pairs)


def _torsor_positive(a: int, B: Fraction, B1: int, only_pair=None) -> tuple[int, int]:
    """Weighted tuple count over a1..a6 >= 1 and a7 >= 0 (weight 2 if a7 > 0).

    Loop bounds are the exact height-monomial conditions
    M3 = a1^2 a2 a3^2 a5^3 <= B,  M4 = a2^3 a3^2 a4^4 a5 a6^2 <= B,
    M5 = a1 a2^2 a3^2 a4^2 a5^2 a6 <= B, and the a7 window encodes
    M1 = a6 |c - a7^2| / a1 <= B and M2 = a2 a3 a4 a5 a6 |a7| <= B.
    """
    total = 0
    visited = 0
    Bn, Bd = B.numerator, B.denominator
    a2_range = range(1, _icbrt(B1) + 1) if only_pair is None else (only_pair[0],)
    for a2 in a2_range:
        a2c = a2**3
        a3_range = (
            range(1, math.isqrt(B1 // a2c) + 1) if only_pair is None else (only_pair[1],)
        )
        for a3 in a3_range:
            m4_23 = a2c * a3 * a3
            a4 = 0
            while True:
                a4 += 1
                m4_234 = m4_23 * a4**4
                if m4_234 > B1:
                    break
                if math.gcd(a4, a3) != 1:
                    continue
                c_base = a * a2**4 * a3**2 * a4**6
                d7 = a2 * a3 * a4
                for a1 in range(1, math.isqrt(B1 // (a2 * a3 * a3)) + 1):
                    if math.gcd(a1, d7) != 1:
                        continue
                    m3_123 = a1 * a1 * a2 * a3 * a3
                    g5 = a2 * a4
                    for a5 in range(1, _icbrt(B1 // m3_123) + 1):
                        if math.gcd(a5, g5) != 1:
                            continue
                        m4_2345 = m4_234 * a5
                        m5_12345 = a1 * a2 * a2 * a3 * a3 * a4 * a4 * a5 * a5
                        a6_hi = min(math.isqrt(B1 // m4_2345), B1 // m5_12345)
                        g6 = a1 * a2 * a3 * a5
                        d7a5 = d7 * a5
                        for a6 in range(1, a6_hi + 1):
                            if math.gcd(a6, g6) != 1:
                                continue
                            visited += 1
                            c = c_base * a6 * a6
                            T = Bn * a1 // (Bd * a6)
                            H2 = Bn // (Bd * d7a5 * a6)
                            hi2 = c + T
                            if hi2 < 0:
                                continue
                            lo2 = c - T
                            U = min(math.isqrt(hi2), H2)
                            L = ceil_sqrt(lo2) if lo2 > 0 else 0
                            if U < L:
                                continue
                            for r in _sqrt_classes(c % a1, a1):
                                a7 = L + (r - L) % a1
                                while a7 <= U:
                                    if math.gcd(a7, d7) == 1:
                                        a8 = (c - a7 * a7) // a1
                                        if math.gcd(a8, a5) == 1:
                                            total += 2 if a7 > 0 else 1
                                    a7 += a1
    return total, visited


def _torsor_all_signs(a: int, B: Fraction, B1: int) -> tuple[int, int]:
    """Literal enumeration over all sign patterns (small B validation path)."""
    from .torsor import TorsorTuple, height_tilde, validate

    raw = 0
    visited = 0
    for a1 in _signed(math.isqrt(B1)):
        for a2 in _signed(_icbrt(B1)):
            for a3 in _signed(math.isqrt(B1)):
                if a1 * a1 * abs(a2) * a3 * a3 > B1:
                    continue
                for a4 in _signed(_iroot4(B1)):
                    for a5 in _signed(_icbrt(B1)):
                        if a1 * a1 * abs(a2 * a5**3) * a3 * a3 > B1:
                            continue
                        for a6 in _signed(math.isqrt(B1)):
                            if abs(a2**3 * a5) * a3 * a3 * a4**4 * a6 * a6 > B1:
                                continue
                            c = a * a2**4 * a3**2 * a4**6 * a6**2
                            H2 = B1 // abs(a2 * a3 * a4 * a5 * a6)
                            for a7 in range(-H2, H2 + 1):
                                visited += 1
                                if (c - a7 * a7) % a1:
                                    continue
                                a8 = (c - a7 * a7) // a1
                                t = TorsorTuple(a1, a2, a3, a4, a5, a6, a7, a8)
                                ok, _ = validate(t, a)
                                if ok and height_tilde(a, a1, a2, a3, a4, a5, a6, a7) <= B:
                                    raw += 1
    return raw, visited


def _signed(hi: int):
    for v in range(1, hi + 1):
        yield v
        yield -v


# ---------------------------------------------------------------------------
# Moebius slice identity


def _a7_windows(c: int, T: int, H2: int) -> list[tuple[int, int]]:
    """Intervals of a7 in Z with |c - a7^2| <= T and |a7| <= H2."""
    hi2 = c + T
    if hi2 < 0 or H2 < 0:
        return []
    lo2 = c - T
    U = min(math.isqrt(hi2), H2)
    L = ceil_sqrt(lo2) if lo2 > 0 else 0
    if U < L:
        return []
    if L == 0:
        return [(-U, U)]
    return [(-U, -L), (L, U)]


def _count_ap(lo: int, hi: int, r: int, m: int) -> int:
    """#{x in [lo, hi] : x = r (mod m)}."""
    if hi < lo:
        return 0
    first = lo + (r - lo) % m
    if first > hi:
        return 0
    return (hi - first) // m + 1


def moebius_slice_check(a: int, a1: int, a2: int, a3: int, a4: int, B) -> tuple[int, int]:
    """Both sides of the Moebius-inversion identity on one (a1..a4) slice."""
    _check_nonsquare(a)
    from .theta import theta0

    if theta0(a1, a2, a3, a4) != 1:
        raise ValueError("slice requires theta0(a1..a4) = 1")
    B = Fraction(B)
    return _slice_lhs(a, a1, a2, a3, a4, B), _slice_rhs(a, a1, a2, a3, a4, B)


def _slice_lhs(a: int, a1: int, a2: int, a3: int, a4: int, B: Fraction) -> int:
    """Completions (a5, a6, a7, a8) with the torsor equation, the remaining
    coprimality conditions, and height <= B;  a5, a6 range over both signs."""
    B1 = _floor(B)
    if B1 < 1:
        return 0
    m3 = a1 * a1 * a2 * a3 * a3
    m4 = a2**3 * a3**2 * a4**4
    m5 = a1 * a2 * a2 * a3 * a3 * a4 * a4
    c_base = a * a2**4 * a3**2 * a4**6
    d7 = a2 * a3 * a4
    if m3 > B1:
        return 0
    count = 0
    for a5a in range(1, _icbrt(B1 // m3) + 1):
        if math.gcd(a5a, a2 * a4) != 1:
            continue
        a6_hi = min(math.isqrt(B1 // (m4 * a5a)), B1 // (m5 * a5a * a5a))
        for a6a in range(1, a6_hi + 1):
            if math.gcd(a6a, a1 * a2 * a3 * a5a) != 1:
                continue
            c = c_base * a6a * a6a
            T = _floor(B * a1 / a6a)
            H2 = _floor(B / (d7 * a5a * a6a))
            n_good = 0
            for lo, hi in _a7_windows(c, T, H2):
                for a7 in range(lo, hi + 1):
                    if (c - a7 * a7) % a1:
                        continue
                    if math.gcd(a7, d7) != 1:
                        continue
                    a8 = (c - a7 * a7) // a1
                    if math.gcd(a8, a5a) != 1:
                        continue
                    n_good += 1
            count += 4 * n_good  # signs of a5 and a6 (windows are symmetric)
    return count


def _slice_rhs(a: int, a1: int, a2: int, a3: int, a4: int, B: Fraction) -> int:
    """The Moebius-inverted side: sum over inversion data and rho classes."""
    B1 = _floor(B)
    if B1 < 1:
        return 0
    m3 = a1 * a1 * a2 * a3 * a3
    if m3 > B1:
        return 0
    m4 = a2**3 * a3**2 * a4**4
    m5 = a1 * a2 * a2 * a3 * a3 * a4 * a4
    c_base = a * a2**4 * a3**2 * a4**6
    A5 = _icbrt(B1 // m3)
    A6 = math.isqrt(B1 // m4) if m4 <= B1 else 0
    if A5 < 1 or A6 < 1:
        return 0
    a_odd = [(p, e) for p, e in factorize(a) if e % 2 == 1]

    total = 0
    for d56 in range(1, A6 + 1):
        mu56 = moebius(d56)
        if mu56 == 0 or math.gcd(d56, a1 * a2 * a3 * a4) != 1:
            continue
        for d58 in range(1, A5 + 1):
            mu58 = moebius(d58)
            if mu58 == 0 or math.gcd(d58, a2 * a3 * a4) != 1:
                continue
            d58a1 = d58 * a1
            if any(valuation(p, d58a1) > e for p, e in a_odd):
                continue
            g = math.gcd(d58a1, abs(a))
            gp = 1
            for p, e in factorize(g):
                gp *= p ** ((e + 1) // 2)
            q = d58a1 // g
            rhos = [
                rho
                for rho in range(q * gp)
                if _rho_ok(rho, q, gp) and (rho * rho - a) % d58a1 == 0
            ]
            if not rhos:
                continue
            lcm_5658 = math.lcm(d56, d58)
            rr = a2 * a2 * a3 * a4**3
            for d5 in squarefree_divisors(a2 * a4):
                b5 = d5 * lcm_5658
                if b5 > A5:
                    continue
                mu5 = moebius(d5)
                for d6 in squarefree_divisors(a1 * a2 * a3):
                    b6 = d6 * d56
                    if b6 > A6:
                        continue
                    mu56856 = mu56 * mu58 * mu5 * moebius(d6)
                    for d7 in squarefree_divisors(a2 * a3 * a4):
                        mu = mu56856 * moebius(d7)
                        b7 = d7 * q * gp
                        for rho in rhos:
                            sol = crt([(0, gp * d7), (rho * rr % (q * gp), q * gp)])
                            if sol is None:
                                raise AssertionError("gamma7 CRT must be compatible")
                            gamma7, mod7 = sol
                            if mod7 != b7:
                                raise AssertionError("gamma7 modulus mismatch")
                            total += mu * _lattice_count(
                                a, a1, a2, a3, a4, B, b5, b6, b7, gamma7,
                                m3, m4, m5, c_base,
                            )
    return total


def _rho_ok(rho: int, q: int, gp: int) -> bool:
    """rho*Z + (q*gp)*Z = gp*Z."""
    if q * gp == 1:
        return rho == 0
    return math.gcd(rho if rho else q * gp, q * gp) == gp


def _lattice_count(a, a1, a2, a3, a4, B, b5, b6, b7, gamma7, m3, m4, m5, c_base) -> int:
    """#{(a5, a6, a7) : b5 | a5 != 0, b6 | a6 != 0, a7 = gamma7 a6 (mod b7),
    height <= B}."""
    B1 = _floor(B)
    d7 = a2 * a3 * a4
    count = 0
    for a5a in range(b5, _icbrt(B1 // m3) + 1, b5):
        a6_hi = min(math.isqrt(B1 // (m4 * a5a)), B1 // (m5 * a5a * a5a))
        for a6a in range(b6, a6_hi + 1, b6):
            c = c_base * a6a * a6a
            T = _floor(B * a1 / a6a)
            H2 = _floor(B / (d7 * a5a * a6a))
            windows = _a7_windows(c, T, H2)
            if not windows:
                continue
            # a6 = +-a6a give residues +-gamma7 a6a; a5 signs are free
            for r in (gamma7 * a6a % b7, -gamma7 * a6a % b7):
                n7 = sum(_count_ap(lo, hi, r, b7) for lo, hi in windows)
                count += 2 * n7
    return count
