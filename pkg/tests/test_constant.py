import math
from fractions import Fraction

import pytest

from delpezzo.constant import (
    RATIONALS,
    compare,
    finite_product,
    naive_partial_product,
    predict_constant,
)


def test_field_invariants_rationals():
    assert (RATIONALS.r1, RATIONALS.r2, RATIONALS.h) == (1, 0, 1)
    assert RATIONALS.mu_order == 2 and RATIONALS.disc == 1
    assert abs(RATIONALS.rho - 1.0) < 1e-15


def test_alpha_exact_in_breakdown():
    bd = predict_constant(-1, prime_cut=500)
    assert bd.alpha == Fraction(1, 1728)
    assert bd.c > 0
    assert bd.omega_inf.value > 0 and bd.finite_product.value > 0


def test_finite_product_positive_factors():
    fp = finite_product(17, 300)
    assert fp.value > 0 and fp.bound >= 0


def test_finite_product_cut_floor():
    with pytest.raises(ValueError):
        finite_product(-1, 50)


def test_finite_product_stability_under_doubling():
    for a in (-1, 5):
        f1 = finite_product(a, 1000)
        f2 = finite_product(a, 2000)
        assert abs(f1.value / f2.value - 1) < 0.01, a
        assert abs(f1.value - f2.value) <= f1.bound + f2.bound


def test_splitting_vs_naive_partial_product():
    # the raw conditional product oscillates toward the same value
    a = -1
    fp = finite_product(a, 4000)
    naive = naive_partial_product(a, 100_000)
    assert abs(naive / fp.value - 1) < 0.01


def test_splitting_vs_smoothed_naive_at_1e7():
    from delpezzo.constant import naive_product_smoothed

    fp = finite_product(-1, 10_000)
    nv = naive_product_smoothed(-1, 10**7)
    assert abs(nv / fp.value - 1) < 1e-3


def test_predict_constant_assembly():
    bd = predict_constant(2, prime_cut=800)
    f = bd.factors()
    assert f["rho_field"] == 1.0
    assert abs(bd.c - float(bd.alpha) * bd.omega_inf.value * bd.finite_product.value) < 1e-15
    assert f["omega_inf_rel_gap"] < 1e-3


def test_compare_rows():
    bd = predict_constant(-1, prime_cut=500)
    rows = compare(-1, [50, 100, 200], breakdown=bd)
    assert [r.B for r in rows] == [50.0, 100.0, 200.0]
    for r in rows:
        assert r.count >= 0 and r.prediction > 0
        assert math.isfinite(r.ratio) and r.ratio > 0
    # ratio varies slowly under doubling
    assert abs(rows[2].ratio / rows[1].ratio - 1) < 0.5


def test_compare_detects_mismatch(monkeypatch):
    import delpezzo.counting as counting
    import delpezzo.constant as constant

    bd = predict_constant(-1, prime_cut=500)
    real = counting.torsor_count

    def broken(a, B, **kw):
        r = real(a, B, **kw)
        r.count += 1
        return r

    monkeypatch.setattr(constant, "torsor_count", None, raising=False)
    monkeypatch.setattr(counting, "torsor_count", broken)
    with pytest.raises(AssertionError):
        compare(-1, [20], breakdown=bd)
