"""Triple sums W(r,s,t) = sum over n,m >= 1 of n^-r m^-s (n+m)^-t.

The inner sum over m is resolved exactly by partial fractions in m with
parameter n (the two simple-pole pieces pair into a finite harmonic block,
so every piece converges).  The outer sum over n is then a combination of
plain power sums, a harmonic-weighted sum, and remainder-weighted sums,
each of which has a certified Euler-Maclaurin tail.  This route shares no
code with the stuffle-recursion reduction in the symbolic module, so the
two can cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp, mpf

from .balls import Ball, ball_sum
from .errors import NonConvergent, OutOfRange
from .mzv import _tail_inner_harmonic, _tail_inner_zeta_remainder
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .tails import (bernoulli_fraction, pochhammer, power_tail,
                    product_power_tail, shifted_reciprocal_coeffs)
from .zetas import eval_zeta


def witten_convergent(r: int, s: int, t: int) -> bool:
    """Double-sum convergence: r+t > 1, s+t > 1 and r+s+t > 2."""
    return r + t >= 2 and s + t >= 2 and r + s + t >= 3


@dataclass(frozen=True)
class WittenParams:
    """Exponent triple for a convergent W(r,s,t)."""

    r: int
    s: int
    t: int

    def __post_init__(self):
        for name in ("r", "s", "t"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise OutOfRange(f"{name} must be a nonnegative integer, got {v!r}")
        if not witten_convergent(self.r, self.s, self.t):
            raise NonConvergent(
                f"W({self.r},{self.s},{self.t}) diverges: need r+t>1, s+t>1, r+s+t>2")


def eval_witten(r, s=None, t=None, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Ball for W(r,s,t); accepts a WittenParams or three integers."""
    if isinstance(r, WittenParams):
        if t is not None:
            raise OutOfRange("pass either WittenParams or three integers")
        if isinstance(s, PrecisionContext):
            ctx = s
        p = r
    else:
        p = WittenParams(r, s, t)
    r, s, t = p.r, p.s, p.t
    with mp.workprec(ctx.working_prec_bits):
        if t == 0:
            # the double sum factors
            return eval_zeta(r, 1, ctx) * eval_zeta(s, 1, ctx)
        if r == 0 and s == 0:
            # n+m = k occurs k-1 times
            return eval_zeta(t - 1, 1, ctx) - eval_zeta(t, 1, ctx)
        if s == 0:
            return _remainder_weighted_sum(r, t, ctx)
        if r == 0:
            return _remainder_weighted_sum(s, t, ctx)
        return _general_triple(r, s, t, ctx)


def _cut(ctx: PrecisionContext) -> int:
    return max(96, 2 * ctx.target_digits + 32)


def _remainder_weighted_sum(a: int, t: int, ctx: PrecisionContext) -> Ball:
    """W(a,0,t) = sum_n n^-a rem_t(n+1) with rem_t(x) = sum_{k>=x} k^-t.

    The remainder factor is carried along exactly (rem(n+1) = rem(n) - n^-t),
    so each term is a tiny ball; the outer tail converts back to the
    zeta-minus-prefix form whose expansion is certified.
    """
    N = _cut(ctx)
    rem = eval_zeta(t, 1, ctx)      # rem_t(1)
    terms = []
    for n in range(1, N + 1):
        inv = Ball(mpf(n)).reciprocal()
        rem = rem - inv ** t
        terms.append(inv ** a * rem)
    partial = ball_sum(terms)
    if a >= 2:
        tail = (eval_zeta(t, 1, ctx) * power_tail(a, mpf(N + 1))
                - _tail_inner_zeta_remainder(a, 1, t, N, ctx)
                - power_tail(a + t, mpf(N + 1)))
    else:
        tail = _harmonic_weight_remainder_tail(t, N)
    return partial + tail


def _harmonic_weight_remainder_tail(t: int, N: int) -> Ball:
    """sum_{n>N} n^-1 rem_t(n+1), kept in paired product-tail form because
    the split pieces would individually diverge.

    rem_t(n+1) expands as the asymptotic series of the power tail at n+1;
    each coefficient multiplies sum_{n>N} n^-1 (n+1)^-beta, and the
    expansion remainder keeps one sign so the first omitted coefficient
    bounds it.
    """
    cache = {}
    total = (Ball.exact(Fraction(1, t - 1))
             * product_power_tail(1, t - 1, 1, N, cache))
    total = total + (Ball.exact(Fraction(1, 2))
                     * product_power_tail(1, t, 1, N, cache))
    floor = mpf(2) ** (-mp.prec - 10)
    j = 1
    while True:
        coeff = (bernoulli_fraction(2 * j) * pochhammer(t, 2 * j - 1)
                 / Fraction(factorial(2 * j)))
        bound = abs(mpf(coeff.numerator) / coeff.denominator) * mpf(N + 1) ** (-t - 2 * j)
        basis = product_power_tail(1, t + 2 * j - 1, 1, N, cache)
        if bound <= floor or j > 40:
            total = total.widened((Ball.exact(abs(coeff)) * basis).mag())
            break
        total = total + Ball.exact(coeff) * basis
        j += 1
    return total


def _general_triple(r: int, s: int, t: int, ctx: PrecisionContext) -> Ball:
    """W(r,s,t) for r,s,t >= 1 via partial fractions on the inner index."""
    A, B = shifted_reciprocal_coeffs(s, t)
    w = r + s + t
    N = _cut(ctx)

    zetas = {i: eval_zeta(i, 1, ctx) for i in A if i >= 2}
    rems = {l: eval_zeta(l, 1, ctx) for l in B if l >= 2}  # rem_l(n+1) running
    rem_consts = {l: eval_zeta(l, 1, ctx) for l in B if l >= 2}

    harmonic = Ball(0)
    terms = []
    for n in range(1, N + 1):
        inv = Ball(mpf(n)).reciprocal()
        harmonic = harmonic + inv
        h = Ball(0)
        powers = {}

        def ipow(e):
            if e not in powers:
                powers[e] = inv ** e
            return powers[e]

        h = h + Ball.exact(A[1]) * harmonic * ipow(w - 1 - r)
        for i, c in A.items():
            if i >= 2:
                h = h + Ball.exact(c) * zetas[i] * ipow(w - i - r)
        for l, c in B.items():
            if l >= 2:
                rems[l] = rems[l] - ipow(l)
                h = h + Ball.exact(c) * rems[l] * ipow(w - l - r)
        terms.append(ipow(r) * h)
    partial = ball_sum(terms)

    tail = Ball.exact(A[1]) * (_tail_inner_harmonic(w - 1, 1, N)
                               + power_tail(w, mpf(N + 1)))
    for i, c in A.items():
        if i >= 2:
            tail = tail + Ball.exact(c) * zetas[i] * power_tail(w - i, mpf(N + 1))
    for l, c in B.items():
        if l >= 2:
            piece = (rem_consts[l] * power_tail(w - l, mpf(N + 1))
                     - _tail_inner_zeta_remainder(w - l, 1, l, N, ctx)
                     - power_tail(w, mpf(N + 1)))
            tail = tail + Ball.exact(c) * piece
    return partial + tail
