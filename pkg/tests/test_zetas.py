"""Depth-one zeta and polylogarithm evaluators against mpmath references."""

import pytest
from fractions import Fraction
from mpmath import mp, mpf

from eulersum.precision import PrecisionContext
from eulersum.zetas import eval_polylog, eval_zeta
from eulersum.errors import DivergentInput, OutOfRange, PrecisionUnreachable

from _oracles import altzeta_signed, ball_holds, log2, polylog, zeta

CTX = PrecisionContext()


@pytest.mark.parametrize("s", range(2, 11))
def test_unsigned_zeta_matches_reference(s):
    ball = eval_zeta(s, 1, CTX)
    assert ball_holds(ball, zeta(s))
    assert ball.rad <= mpf("1e-30")
    assert not ball.empirical


def test_alternating_weight_one_is_minus_log2():
    ball = eval_zeta(1, -1, CTX)
    assert ball_holds(ball, -log2())


@pytest.mark.parametrize("s", range(2, 9))
def test_alternating_zeta_closed_form(s):
    """Signed depth-one values equal (2^(1-s) - 1) * zeta(s)."""
    ball = eval_zeta(s, -1, CTX)
    with mp.workprec(400):
        expected = (mpf(2) ** (1 - s) - 1) * zeta(s)
    assert ball_holds(ball, expected)
    assert ball_holds(ball, altzeta_signed(s))


def test_unsigned_weight_one_diverges():
    with pytest.raises(DivergentInput):
        eval_zeta(1, 1, CTX)


@pytest.mark.parametrize("s", [1, 2, 3, 4])
@pytest.mark.parametrize("num, den", [(1, 2), (-1, 2), (1, 3), (-1, 3)])
def test_polylog_interior_points(s, num, den):
    arg = Fraction(num, den)
    ball = eval_polylog(s, arg, CTX)
    assert ball_holds(ball, polylog(s, arg))


def test_polylog_dilog_half_closed_form():
    ball = eval_polylog(2, Fraction(1, 2), CTX)
    with mp.workprec(400):
        expected = mp.pi ** 2 / 12 - log2() ** 2 / 2
    assert ball_holds(ball, expected)


def test_polylog_trilog_half_closed_form():
    ball = eval_polylog(3, Fraction(1, 2), CTX)
    with mp.workprec(400):
        expected = mpf(7) / 8 * zeta(3) - mp.pi ** 2 / 12 * log2() \
            + log2() ** 3 / 6
    assert ball_holds(ball, expected)


def test_polylog_at_minus_one_is_signed_zeta():
    ball = eval_polylog(2, Fraction(-1), CTX)
    with mp.workprec(400):
        assert ball_holds(ball, -mp.pi ** 2 / 12)


def test_polylog_at_one_delegates_to_zeta():
    ball = eval_polylog(2, Fraction(1), CTX)
    assert ball_holds(ball, zeta(2))


def test_polylog_rejects_arguments_outside_unit_interval():
    with pytest.raises(OutOfRange):
        eval_polylog(2, Fraction(3, 2), CTX)
    with pytest.raises(OutOfRange):
        eval_polylog(2, Fraction(-2), CTX)


def test_polylog_reports_unreachable_precision_near_one():
    tight = CTX.with_max_terms(1000)
    with pytest.raises(PrecisionUnreachable):
        eval_polylog(1, Fraction(999, 1000), tight)
