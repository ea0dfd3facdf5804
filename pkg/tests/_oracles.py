"""Reference values for the numeric tests, computed with mpmath built-ins
at 400-bit precision.  The engines under test never call these routines;
mpmath's zeta/polylog/log implementations are an independent path to the
same constants.
"""

from fractions import Fraction

from mpmath import mp, mpf

ORACLE_PREC = 400


def at_oracle_prec(fn):
    with mp.workprec(ORACLE_PREC):
        return +fn()


def zeta(s):
    return at_oracle_prec(lambda: mp.zeta(s))


def altzeta_signed(s):
    """Sum of (-1)^k / k^s, i.e. minus mpmath's eta function."""
    return at_oracle_prec(lambda: -mp.altzeta(s))


def log2():
    return at_oracle_prec(lambda: mp.log(2))


def pi_power(k):
    return at_oracle_prec(lambda: mp.pi ** k)


def polylog(s, x):
    x = Fraction(x)
    return at_oracle_prec(
        lambda: mp.polylog(s, mpf(x.numerator) / x.denominator))


def rational(q):
    q = Fraction(q)
    return at_oracle_prec(lambda: mpf(q.numerator) / q.denominator)


def ball_holds(ball, value, slack="1e-80") -> bool:
    """True when the ball, widened by rounding slack, contains the value."""
    with mp.workprec(ORACLE_PREC):
        return abs(ball.mid - value) <= ball.rad + mpf(slack)


def ball_close(ball, value, tol) -> bool:
    """True when the midpoint is within tol of value and the radius fits."""
    with mp.workprec(ORACLE_PREC):
        tol = mpf(tol)
        return abs(ball.mid - value) <= tol and ball.rad <= tol
