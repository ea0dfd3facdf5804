"""Unsigned Stirling-cycle numbers u(n,m) and the slow zeta series they drive.

The triangle satisfies u(n+1, m) = u(n, m-1) + n * u(n, m) and feeds
zeta(m+1) = sum_{n >= m} u(n,m) / (n! * n).  The ratio u(n,m)/n! is the
elementary symmetric polynomial e_{m-1}(1, 1/2, ..., 1/(n-1)), which this
module also tracks as a running ball so the series can be pushed past the
exact-table range without big-integer blowup.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from mpmath import mp, mpf

from .balls import Ball, ball_sum, euler_gamma_ball
from .errors import OutOfRange
from .mzv import eval_mzv
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .zetas import eval_zeta


class StirlingTable:
    """Exact triangle u(n,m), 1 <= m <= n <= n_max, built lazily by rows."""

    def __init__(self, n_max: int = 300):
        if n_max < 1:
            raise OutOfRange("n_max must be >= 1")
        self.n_max = n_max
        self._rows = [None, (1,)]  # row n is a tuple (u(n,1), ..., u(n,n))

    def row(self, n: int) -> tuple:
        if not (1 <= n <= self.n_max):
            raise OutOfRange(f"row {n} outside 1..{self.n_max}")
        while len(self._rows) <= n:
            k = len(self._rows) - 1      # have rows up to k, build k+1
            prev = self._rows[k]
            nxt = [k * prev[0]]
            for m in range(2, k + 1):
                nxt.append(prev[m - 2] + k * prev[m - 1])
            nxt.append(1)
            self._rows.append(tuple(nxt))
        return self._rows[n]

    def u(self, n: int, m: int) -> int:
        if not (1 <= m <= n):
            raise OutOfRange(f"need 1 <= m <= n, got m={m}, n={n}")
        return self.row(n)[m - 1]


_TABLE = StirlingTable()


def stirling_u(n: int, m: int) -> int:
    """Exact u(n,m) from the shared table."""
    return _TABLE.u(n, m)


def eval_zeta_via_stirling(m: int, N: int,
                           ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Partial sum of zeta(m+1) = sum_{n>=m} u(n,m)/(n! n) up to n = N,
    plus a bracketed remainder.

    The remainder upper bound comes from u(n,m)/n! <= H_{n-1}^{m-1}/(m-1)!
    with H_{n-1} < log n + gamma and an integral comparison; the matching
    lower bound uses H_{n-1} >= log n (available in closed form for
    m <= 2, zero otherwise), so the bracket stays monotone in N.
    """
    if m < 1:
        raise OutOfRange("m must be >= 1")
    if N < m:
        raise OutOfRange("need N >= m terms")
    with mp.workprec(ctx.working_prec_bits):
        # u(n,m)/n! = e_{m-1}(1, 1/2, ..., 1/(n-1)), so term(n) = e_{m-1}/n^2
        e = [Ball(1)] + [Ball(0)] * (m - 1)
        terms = []
        for n in range(1, N + 1):
            inv = Ball(mpf(n)).reciprocal()
            if n >= m:
                terms.append(e[m - 1] * inv * inv)
            for k in range(min(m - 1, n), 0, -1):
                e[k] = e[k] + e[k - 1] * inv
        partial = ball_sum(terms)
        hi = _tail_upper(m, N)
        lo = _tail_lower(m, N)
        return Ball.from_interval(partial.lower + (lo.mid - lo.rad),
                                  partial.upper + (hi.mid + hi.rad))


def _poly_exp_sum(m: int, x: Ball) -> Ball:
    """sum_{k=0}^{m-1} x^k / k!"""
    return ball_sum(x ** k * Ball.exact(Fraction(1, factorial(k)))
                    for k in range(m))


def _tail_upper(m: int, N: int) -> Ball:
    """(1/N) sum_{k<m} (log N + gamma)^k / k! bounds the remainder above:
    term(n) < (log n + gamma)^{m-1}/((m-1)! n^2), summed against the
    integral from N with u = log x + gamma."""
    a = Ball(mpf(N)).log() + euler_gamma_ball()
    return _poly_exp_sum(m, a) * Ball(mpf(N)).reciprocal()


def _tail_lower(m: int, N: int) -> Ball:
    """Closed-form lower bounds for the remainder (exact enough for the
    midpoint to track the true value at small m)."""
    if m == 1:
        # remainder = sum_{n>N} 1/n^2 >= 1/(N+1)
        return Ball(mpf(1) / (N + 1))
    if m == 2:
        # H_{n-1} >= log n, and sum_{n>N} log n / n^2 >= integral from N+1
        a = Ball(mpf(N + 1))
        return (a.log() + Ball(1)) * a.reciprocal()
    return Ball(0)


def butzer_m3_residual(ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Ball for zeta(3) - 2*zeta(-2,1) + zeta(-3); contains zero."""
    with mp.workprec(ctx.working_prec_bits):
        return (eval_zeta(3, 1, ctx)
                - Ball(2) * eval_mzv([-2, 1], ctx)
                + eval_zeta(3, -1, ctx))
