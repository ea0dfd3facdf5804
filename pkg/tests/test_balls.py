"""Enclosure semantics of the Ball type."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from eulersum.balls import Ball, ball_sum

rationals = st.fractions(min_value=-100, max_value=100,
                         max_denominator=1000)
small_rads = st.fractions(min_value=0, max_value=2, max_denominator=1000)


def test_exact_int_has_zero_radius():
    b = Ball.exact(7)
    assert b.mid == 7 and b.rad == 0 and not b.empirical


def test_exact_fraction_rounds_into_radius():
    b = Ball.exact(Fraction(1, 3))
    with mp.workprec(500):
        assert abs(b.mid - mpf(1) / 3) <= b.rad
        assert b.rad <= mpf(2) ** (-40)
        assert b.rad > 0


def test_from_interval_contains_endpoints():
    b = Ball.from_interval(1, 2)
    assert b.contains(1) and b.contains(2) and b.contains(1.5)
    assert not b.contains(2.5)


def test_interval_bounds_exposed():
    b = Ball(3, 1)
    assert b.lower == 2 and b.upper == 4


def test_contains_and_overlaps():
    a = Ball(0, 1)
    b = Ball(3, 1)
    c = Ball(1.5, 1)
    assert not a.overlaps(b)
    assert a.overlaps(c) and b.overlaps(c)
    assert a.overlaps(b, inflate=1)


def test_widened_and_empirical_flag():
    a = Ball(1, 0).widened("1e-10")
    assert a.rad == mpf("1e-10")
    assert Ball(1, 0, empirical=True).as_empirical().empirical
    assert (Ball(1, 0, empirical=True) + Ball(1, 0)).empirical
    assert not (Ball(1, 0) + Ball(1, 0)).empirical


def test_reciprocal_rejects_zero_straddling():
    with pytest.raises(ZeroDivisionError):
        Ball(0, 1).reciprocal()
    with pytest.raises(ZeroDivisionError):
        Ball(1, 0) / Ball(0, 0)


def test_integer_power_and_type_guard():
    b = Ball(2, 0) ** 10
    assert b.contains(1024)
    with pytest.raises(TypeError):
        Ball(2, 0) ** 1.5
    inv = Ball(2, 0) ** -2
    assert inv.contains(Fraction(1, 4))


@given(rationals, rationals)
def test_exact_sum_contains_exact_value(a, b):
    with mp.workprec(120):
        out = Ball.exact(a) + Ball.exact(b)
        target = Ball.exact(a + b)
        assert abs(out.mid - target.mid) <= out.rad + target.rad


@given(rationals, small_rads, rationals, small_rads)
def test_product_encloses_sampled_points(am, ar, bm, br):
    """x*y stays inside X*Y for corner and center samples of X, Y."""
    with mp.workprec(120):
        X = Ball.exact(am).widened(Ball.exact(ar).mid + Ball.exact(ar).rad)
        Y = Ball.exact(bm).widened(Ball.exact(br).mid + Ball.exact(br).rad)
        P = X * Y
        for x in (X.lower, X.mid, X.upper):
            for y in (Y.lower, Y.mid, Y.upper):
                assert P.widened("1e-25").contains(x * y)


@given(st.lists(rationals, min_size=0, max_size=12))
def test_ball_sum_matches_exact_rational_total(values):
    with mp.workprec(150):
        total = sum(values, Fraction(0))
        out = ball_sum(Ball.exact(v) for v in values)
        assert abs(out.mid - Ball.exact(total).mid) <= out.rad + mpf("1e-30")


def test_division_encloses_exact_quotient():
    with mp.workprec(120):
        out = Ball.exact(Fraction(22, 7)) / Ball.exact(Fraction(2, 7))
        assert out.widened("1e-30").contains(11)
