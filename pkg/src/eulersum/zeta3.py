"""Three independent series for zeta(3): binomial, base-4096 digit, hyperbolic.

The binomial and digit series come with proved tail bounds and must enclose
zeta(3); the hyperbolic one returns the stated combination for the requested
number of terms (its radius covers rounding only, since the defining formula
is a finite expression once K is fixed).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from mpmath import mp, mpf

from .balls import Ball, ball_sum, pi_ball
from .errors import OutOfRange
from .precision import DEFAULT_CONTEXT, PrecisionContext

# Numerators of the base-4096 digit series for 672*zeta(3), indexed by the
# residue 1..23 of the cubed denominator mod 24.
_DIGIT_NUMERATORS = (
    2048, -11264, -1024, 11776, -512, 4096, 256, 3456, 128, -704, -64, -128,
    -32, -176, 16, 216, 8, 64, -4, 46, -2, -11, 1,
)
_DIGIT_ABS_SUM = sum(abs(a) for a in _DIGIT_NUMERATORS)


def zeta3_apery(ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """(5/2) sum_{k>=1} (-1)^(k+1) / (k^3 binom(2k,k)).

    The terms alternate and their magnitudes decrease (the ratio is
    k^3 / ((k+1)(2k+1)(2k+2)) < 1), so the first omitted term bounds the
    remainder.
    """
    with mp.workprec(ctx.working_prec_bits):
        cutoff = mpf(10) ** (-(ctx.target_digits + ctx.guard_digits + 2))
        terms = []
        k = 1
        while True:
            t = Fraction((-1) ** (k + 1) * 5, 2 * k ** 3 * comb(2 * k, k))
            if abs(mpf(t.numerator) / t.denominator) < cutoff or k > ctx.max_terms:
                bound = abs(mpf(t.numerator)) / t.denominator
                break
            terms.append(Ball.exact(t))
            k += 1
        return ball_sum(terms).widened(bound)


def zeta3_bbp(ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """zeta(3) as (1/672) sum_k 4096^-k of 23 shifted cubes per block.

    The block sum is bounded by the total numerator mass over (24k+1)^3,
    so the geometric tail after the last block is explicit.
    """
    with mp.workprec(ctx.working_prec_bits):
        need = ctx.target_digits + ctx.guard_digits + 2
        K = int(need * mp.log(10) / mp.log(4096)) + 2
        blocks = []
        scale = Ball.exact(Fraction(1))
        inv4096 = Ball.exact(Fraction(1, 4096))
        for k in range(K + 1):
            block = ball_sum(
                Ball.exact(a) * Ball(mpf(24 * k + j)).reciprocal() ** 3
                for j, a in enumerate(_DIGIT_NUMERATORS, start=1))
            blocks.append(scale * block)
            scale = scale * inv4096
        total = ball_sum(blocks) * Ball.exact(Fraction(1, 672))
        tail = (mpf(_DIGIT_ABS_SUM) / 672 * mpf(4096) ** (-(K + 1))
                / mpf(24 * (K + 1) + 1) ** 3 / (1 - mpf(4096) ** -1))
        return total.widened(tail)


def zeta3_ramanujan(K: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """7 pi^3 / 180 - 2 sum_{k=1..K} 1/(k^3 (e^(2 pi k) - 1)).

    K = 0 returns the bare pi^3 multiple; already at K = 1 the result agrees
    with zeta(3) to about seven digits, and the convergence is geometric
    with ratio e^(-2 pi).
    """
    if K < 0:
        raise OutOfRange("term count must be >= 0")
    with mp.workprec(ctx.working_prec_bits):
        pi3 = pi_ball() ** 3
        total = Ball.exact(Fraction(7, 180)) * pi3
        if K:
            two_pi = pi_ball() * 2
            terms = []
            for k in range(1, K + 1):
                den = (two_pi * k).exp() - Ball(1)
                terms.append((Ball(mpf(k)) ** 3 * den).reciprocal())
            total = total - Ball(2) * ball_sum(terms)
        return total
