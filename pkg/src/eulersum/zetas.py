"""Depth-one engines: zeta values, alternating zeta values, polylogarithms."""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp, mpf

from .balls import Ball, ball_sum
from .errors import DivergentInput, OutOfRange, PrecisionUnreachable
from .precision import Accel, DEFAULT_CONTEXT, PrecisionContext
from .tails import alt_power_tail, power_tail

_CACHE = {}


def eval_zeta(s: int, sign: int = 1, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Ball for sum_{k>=1} sign^k / k^s (so sign=-1 gives -eta(s))."""
    if not isinstance(s, int) or s < 1:
        raise OutOfRange(f"exponent must be a positive integer, got {s!r}")
    if sign not in (1, -1):
        raise OutOfRange(f"sign must be +-1, got {sign!r}")
    if s == 1 and sign == 1:
        raise DivergentInput("the harmonic series diverges")
    key = (s, sign, ctx.working_prec_bits, ctx.acceleration, ctx.max_terms)
    if key not in _CACHE:
        with mp.workprec(ctx.working_prec_bits):
            _CACHE[key] = _eval_zeta_uncached(s, sign, ctx)
    return _CACHE[key]


def _eval_zeta_uncached(s, sign, ctx):
    if ctx.acceleration is Accel.NONE:
        return _zeta_plain(s, sign, ctx)
    if ctx.acceleration is Accel.ALTERNATING_AVERAGE:
        eta = _cvz_eta(s)
        if sign == -1:
            return -eta
        # zeta(s) = eta(s) / (1 - 2^(1-s))
        return eta / (Ball(1) - Ball.exact(Fraction(1, 2 ** (s - 1))))
    # Euler-Maclaurin path
    N = max(64, 2 * ctx.target_digits)
    if sign == 1:
        partial = ball_sum(Ball(mpf(n)).reciprocal() ** s for n in range(1, N + 1))
        return partial + power_tail(s, mpf(N + 1))
    partial = ball_sum(Ball.exact((-1) ** n) * Ball(mpf(n)).reciprocal() ** s
                       for n in range(1, N + 1))
    tail = alt_power_tail(s, mpf(N + 1))
    if N % 2 == 0:
        tail = -tail
    return partial + tail


def _zeta_plain(s, sign, ctx):
    """Raw partial sum with an unaccelerated (but still proved) tail bound."""
    N = min(ctx.max_terms, max(1000, 40 * ctx.target_digits))
    partial = ball_sum(Ball.exact(sign ** n) * Ball(mpf(n)).reciprocal() ** s
                       for n in range(1, N + 1))
    if sign == 1:
        lo = mpf(N + 1) ** (1 - s) / (s - 1)
        hi = mpf(N) ** (1 - s) / (s - 1)
        return partial + Ball.from_interval(lo, hi)
    first = mpf(N + 1) ** (-s)
    return partial.widened(first)


def _cvz_eta(s):
    """eta(s) by Chebyshev-polynomial acceleration of the alternating series.

    Valid because 1/(k+1)^s is a totally monotone sequence; the error is
    below (3+sqrt(8))^-n times a small constant.
    """
    rho = 3 + mp.sqrt(8)
    n = int(mp.prec * mp.log(2) / mp.log(rho)) + 8
    d = rho ** n
    d = (d + 1 / d) / 2
    b = mpf(-1)
    c = -d
    acc = mpf(0)
    for k in range(n):
        c = b - c
        acc += c / mpf(k + 1) ** s
        b *= (k + n) * (k - n) / ((k + mpf("0.5")) * (k + 1))
    value = acc / d
    radius = 8 / rho ** n + (6 * n + 16) * abs(value) * mpf(2) ** (2 - mp.prec)
    return Ball(value, radius)


def eval_polylog(s: int, x: Fraction, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Ball for Li_s(x) = sum x^n / n^s with rational |x| <= 1."""
    if not isinstance(s, int) or s < 1:
        raise OutOfRange(f"order must be a positive integer, got {s!r}")
    x = Fraction(x)
    if abs(x) > 1:
        raise OutOfRange(f"|x| must be <= 1, got {x}")
    if x == 1:
        return eval_zeta(s, 1, ctx)
    if x == -1:
        return eval_zeta(s, -1, ctx)
    if x == 0:
        return Ball(0)
    with mp.workprec(ctx.working_prec_bits):
        ax = abs(x)
        need = (ctx.target_digits + ctx.guard_digits + 4) * mp.log(10)
        N = int(need / -mp.log(mpf(ax.numerator) / ax.denominator)) + 4
        if N > ctx.max_terms:
            raise PrecisionUnreachable(
                f"|x|={float(ax):.4f} needs {N} terms, budget is {ctx.max_terms}")
        xb = Ball.exact(x)
        terms = []
        p = Ball(1)
        for n in range(1, N + 1):
            p = p * xb
            terms.append(p * Ball(mpf(n)).reciprocal() ** s)
        total = ball_sum(terms)
        axm = mpf(ax.numerator) / ax.denominator
        bound = axm ** (N + 1) / (mpf(N + 1) ** s * (1 - axm))
        return total.widened(bound)
