"""Nested-series evaluation: certified depth-two values and deep sums."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from eulersum.compositions import comp
from eulersum.precision import Accel, PrecisionContext
from eulersum.mzv import eval_mzv, eval_poly
from eulersum.errors import DivergentInput
from eulersum.words import dualize

from _oracles import ball_close, ball_holds, pi_power, zeta

CTX = PrecisionContext()


def brute_double_sum(s1, s2, sigma1, sigma2, terms):
    """Plain partial double sum with a crude integral tail envelope."""
    with mp.workprec(300):
        total = mpf(0)
        for k in range(2, terms + 1):
            inner = sum((mpf(sigma2) ** j) / mpf(j) ** s2
                        for j in range(1, k))
            total += (mpf(sigma1) ** k) / mpf(k) ** s1 * inner
        # |inner| <= zeta(s2) or H_{k} <= 1+log k; bound the dropped tail by
        # zeta(s2_cap) * integral_terms^inf log(x) x^-s1 dx, generously.
        tail = (1 + mp.log(terms)) * 2 * mpf(terms) ** (1 - s1) / (s1 - 1)
        return total, tail


def test_zeta21_equals_zeta3_certified():
    ball = eval_mzv(comp(2, 1), CTX)
    assert ball_holds(ball, zeta(3))
    assert ball.rad <= mpf("1e-30")
    assert not ball.empirical


def test_zeta21_against_in_test_brute_force():
    ball = eval_mzv(comp(2, 1), CTX)
    total, tail = brute_double_sum(2, 1, 1, 1, 4000)
    assert abs(ball.mid - total) <= tail + ball.rad


def test_zeta31_is_pi4_over_360():
    ball = eval_mzv(comp(3, 1), CTX)
    assert ball_holds(ball, pi_power(4) / 360)


def test_zeta22_is_three_quarters_zeta4():
    ball = eval_mzv(comp(2, 2), CTX)
    assert ball_holds(ball, mpf(3) / 4 * zeta(4))


def test_alternating_leading_two_one_is_zeta3_over_eight():
    ball = eval_mzv(comp(-2, 1), CTX)
    assert ball_holds(ball, zeta(3) / 8)
    assert not ball.empirical


def test_alternating_inner_one():
    """Inner-sign value checked against a brute-force partial sum."""
    ball = eval_mzv(comp(2, -1), CTX)
    total, tail = brute_double_sum(2, 1, 1, -1, 4000)
    assert abs(ball.mid - total) <= tail + ball.rad
    assert not ball.empirical


def test_doubly_alternating():
    ball = eval_mzv(comp(-2, -1), CTX)
    total, tail = brute_double_sum(2, 1, -1, -1, 4000)
    assert abs(ball.mid - total) <= tail + ball.rad


def test_depth_four_duality_pair():
    deep = PrecisionContext(target_digits=15)
    lhs = eval_mzv(comp(2, 1, 2, 1), deep)
    rhs = eval_mzv(comp(3, 3), deep)
    assert lhs.widened("1e-8").overlaps(rhs)
    assert lhs.empirical


def test_depth_three_all_twos_closed_form():
    deep = PrecisionContext(target_digits=15)
    ball = eval_mzv(comp(2, 2, 2), deep)
    with mp.workprec(400):
        expected = pi_power(6) / mp.factorial(7)
    assert ball_close(ball, expected, "1e-8")


def test_deep_engine_flags_empirical():
    deep = PrecisionContext(target_digits=12)
    assert eval_mzv(comp(2, 1, 1), deep).empirical


def test_divergent_leading_one_rejected():
    with pytest.raises(DivergentInput):
        eval_mzv(comp(1, 2), CTX)
    with pytest.raises(DivergentInput):
        eval_mzv(comp(1), CTX)


def test_plain_acceleration_mode_agrees_coarsely():
    plain = PrecisionContext(target_digits=6, max_terms=60_000,
                             acceleration=Accel.NONE)
    ball = eval_mzv(comp(2, 1), plain)
    assert ball_holds(ball, zeta(3), slack="1e-10")
    assert ball.rad <= mpf("1e-3")
    assert ball.empirical


def test_eval_poly_combines_terms_linearly():
    from eulersum.compositions import CompositionPolynomial
    p = CompositionPolynomial.single(comp(2, 1), Fraction(2)) \
        + CompositionPolynomial.single(comp(3, 1))
    ball = eval_poly(p, CTX)
    with mp.workprec(400):
        expected = 2 * zeta(3) + pi_power(4) / 360
    assert ball_holds(ball, expected)


def test_repeat_evaluation_is_deterministic():
    a = eval_mzv(comp(3, 1), CTX)
    b = eval_mzv(comp(3, 1), CTX)
    assert a.mid == b.mid and a.rad == b.rad


admissible_parts = st.lists(
    st.integers(min_value=1, max_value=4), min_size=1, max_size=3,
).map(lambda ps: [max(ps[0], 2)] + ps[1:],
).filter(lambda ps: sum(ps) <= 7)


@settings(max_examples=12)
@given(admissible_parts)
def test_duality_preserves_value(parts):
    """Dual compositions evaluate to overlapping balls."""
    composition = comp(*parts)
    dual = dualize(composition)
    deep = PrecisionContext(target_digits=12)
    a = eval_mzv(composition, deep)
    b = eval_mzv(dual, deep)
    assert a.widened("1e-8").overlaps(b)
