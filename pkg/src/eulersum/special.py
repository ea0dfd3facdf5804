"""Finite rational identities, digamma generating functions, and the
operator norm of the reciprocal-sum matrix.

The generating-function residuals evaluate both sides as literal series
in ball arithmetic.  Truncation tails expand 1/(n-x) geometrically in
x/n with an explicit remainder and land on the certified power and
log-power tail primitives, so every radius is a proved bound except for
the matrix norm, whose upper endpoint comes from a power-iteration
residual and is flagged empirical.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from mpmath import mp, mpf

from .balls import Ball
from .errors import NoConvergence, OutOfRange, PoleAtPositiveInteger
from .mzv import eval_mzv
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .tails import log_power_tail, power_tail, psi_point
from .zetas import eval_zeta


def finite_z21_check(N: int):
    """Exact rational triple (lhs, mid, rhs) of the finite analogue

        sum_{n<=N} 1/n^3 - sum_{n<=N} (1/n^2) sum_{k<n} 1/k
          = sum_{n<=N} (1/n^2) (H_N - H_{N-n})
          = sum_{n<=N} (1/n^2) sum_{k<=n} 1/(N-k+1).

    All three sums are returned as Fractions; they must be equal, and
    the right side is sandwiched between H_N/N and 2 H_N/(N+1).
    """
    if not isinstance(N, int) or N < 1:
        raise OutOfRange(f"need a positive integer truncation, got {N!r}")
    harmonic = [Fraction(0)] * (N + 1)
    for k in range(1, N + 1):
        harmonic[k] = harmonic[k - 1] + Fraction(1, k)
    lhs = Fraction(0)
    mid = Fraction(0)
    rhs = Fraction(0)
    inner = Fraction(0)
    for n in range(1, N + 1):
        square = Fraction(1, n * n)
        lhs += square * (Fraction(1, n) - harmonic[n - 1])
        mid += square * (harmonic[N] - harmonic[N - n])
        inner += Fraction(1, N - n + 1)
        rhs += square * inner
    return lhs, mid, rhs


def _coerce_x(x) -> Fraction:
    if isinstance(x, float):
        x = Fraction(str(x))
    return Fraction(x)


def _geometric_order(x: Fraction, N: int, need_digits: int) -> int:
    if x == 0:
        return 1
    ratio = float(abs(x)) / N
    import math
    return max(6, int(need_digits * math.log(10) / -math.log(ratio)) + 4)


def sumgf_residual(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Difference of the two sides of the harmonic generating identity

        sum_n 1/(n(n-x)) sum_{m<n} 1/(m-x)  =  sum_n 1/(n^2 (n-x)),

    each series evaluated directly with certified tails.  The ball must
    contain zero.  Defined here for rational x < 1.
    """
    x = _coerce_x(x)
    if x.denominator == 1 and x >= 1:
        raise PoleAtPositiveInteger(f"series has a pole at x = {x}")
    if x >= 1:
        raise OutOfRange("evaluation domain is x < 1")

    need = ctx.target_digits + ctx.guard_digits
    absx = abs(x)
    N = max(128, 2 * ctx.target_digits + 32, int(4 * absx) + 8)
    I = max(_geometric_order(x, N, need), 6)
    a = N + 1

    with mp.workprec(ctx.working_prec_bits):
        xb = Ball.exact(x)
        lhs = Ball(0)
        rhs = Ball(0)
        prefix = Ball(0)                      # sum_{m<n} 1/(m-x)
        for n in range(1, N + 1):
            shift_inv = (Ball(n) - xb).reciprocal()
            n_inv = Ball.exact(Fraction(1, n))
            lhs = lhs + n_inv * shift_inv * prefix
            rhs = rhs + n_inv * n_inv * shift_inv
            prefix = prefix + shift_inv

        # For n > N the prefix is psi(n-x) - psi(1-x).  Expand the digamma as
        # log(n-x) - 1/2(n-x) - 1/12(n-x)^2 + 1/120(n-x)^4 with remainder
        # below 1/252(n-x)^6, then regroup everything in powers of 1/n:
        # prefix = log n + K + sum_u gamma_u n^-u + controlled remainders.
        shift = 1 - x
        K = -psi_point(mpf(shift.numerator) / shift.denominator)
        gamma_coeff = {}
        for u in range(1, I):
            g = -x ** u / u - Fraction(1, 2) * x ** (u - 1)
            if u >= 2:
                g -= Fraction(u - 1, 12) * x ** (u - 2)
            if u >= 4:
                g += Fraction((u - 1) * (u - 2) * (u - 3), 6 * 120) * x ** (u - 4)
            gamma_coeff[u] = g

        pt_cache = {}

        def pt(k):
            if k not in pt_cache:
                pt_cache[k] = power_tail(k, a)
            return pt_cache[k]

        lhs_tail = Ball(0)
        rhs_tail = Ball(0)
        for s in range(I):
            xs = Ball.exact(x ** s)
            lhs_tail = lhs_tail + xs * (log_power_tail(2 + s, a) + K * pt(2 + s))
            rhs_tail = rhs_tail + xs * pt(3 + s)
            for u in range(1, I):
                lhs_tail = lhs_tail + Ball.exact(x ** s * gamma_coeff[u]) * pt(2 + s + u)

        fx = float(absx)
        ratio = fx / a
        # psi remainder against the full 1/(n(n-x)) factor
        c4 = (1.0 / 252.0) / (1.0 - ratio) ** 6
        err = 2.0 * c4 * pt(8).mag()
        # gamma-series truncation against the geometric part
        gamma_rem = 1.5 * (I + 1) ** 3 * fx ** max(I - 4, 0)
        err += gamma_rem * pt(2 + I).mag() / (1.0 - ratio)
        # geometric remainder against log n + K and against the small parts
        geo_rem = 2.0 * fx ** I
        err += geo_rem * (log_power_tail(2 + I, a).mag()
                          + (K.mag() + 1.0) * pt(2 + I).mag())
        err += geo_rem * (2.0 * fx + 1.2) * pt(3 + I).mag()
        # right-hand geometric remainder
        err += geo_rem * pt(3 + I).mag()
        out = (lhs + lhs_tail) - (rhs + rhs_tail)
        return out.widened(err)


def lambda_gf_check(x, M: int = 12, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Residual of the depth-two generating function: the closed form

        (psi'(1-x) - zeta(2))/2 - (psi(1-x) + gamma)^2/2, divided by x,

    with both digamma series summed directly, minus the truncated power
    series sum_{n<M} zeta(n+2,1) x^n.  The ball contains zero up to the
    series-truncation bound, which is added to the radius.
    """
    x = _coerce_x(x)
    if not abs(x) < 1:
        raise OutOfRange("the power series needs |x| < 1")
    if not isinstance(M, int) or M < 1:
        raise OutOfRange(f"need at least one coefficient, got {M!r}")

    need = ctx.target_digits + ctx.guard_digits
    N = max(96, 2 * ctx.target_digits + 32)
    I = _geometric_order(x, N, need)
    a = N + 1

    with mp.workprec(ctx.working_prec_bits):
        if x == 0:
            closed = eval_zeta(3, ctx=ctx)
        else:
            xb = Ball.exact(x)
            dig = Ball(0)                     # psi(1-x) + gamma
            trig = Ball(0)                    # psi'(1-x) - zeta(2)
            for n in range(1, N + 1):
                shift_inv = (Ball(n) - xb).reciprocal()
                n_inv = Ball.exact(Fraction(1, n))
                dig = dig - xb * n_inv * shift_inv
                trig = trig + shift_inv * shift_inv - n_inv * n_inv
            absx = abs(x)
            xpow = Ball(1)
            dig_tail = Ball(0)
            trig_tail = Ball(0)
            for i in range(I):
                pt = power_tail(2 + i, a)
                dig_tail = dig_tail + xpow * pt
                if i >= 1:
                    trig_tail = trig_tail + (i + 1) * xpow * pt
                xpow = xpow * xb
            rem_pt = power_tail(2 + I, a).mag()
            dig_tail = dig_tail.widened(2 * float(absx) ** I * rem_pt)
            trig_tail = trig_tail.widened(4 * (I + 1) * float(absx) ** I * rem_pt)
            dig = dig - xb * dig_tail
            trig = trig + trig_tail
            half = Fraction(1, 2)
            closed = (half * trig - half * dig * dig) * xb.reciprocal()

        head = Ball(0)
        xpow = Ball(1)
        xb = Ball.exact(x)
        for n in range(M):
            head = head + eval_mzv((n + 2, 1), ctx=ctx) * xpow
            xpow = xpow * xb
        bound21 = eval_mzv((2, 1), ctx=ctx).mag()
        trunc = bound21 * float(abs(x)) ** M / float(1 - abs(x))
        return (closed - head).widened(trunc)


_FP_EPS = 2.220446049250313e-16


def hilbert_norm(N: int, residual_tol: float = 1e-5,
                 max_iterations: int = 50_000) -> Ball:
    """Largest singular value of the N x N matrix with entries 1/(i+j),
    1 <= i,j <= N, by power iteration on the Gram matrix.

    The Rayleigh quotient is a true lower bound; the upper endpoint adds
    the iteration residual, so the ball is flagged empirical.  Values
    increase strictly with N and stay below pi.
    """
    if not isinstance(N, int) or N < 1:
        raise OutOfRange(f"need a positive dimension, got {N!r}")
    if N == 1:
        return Ball.exact(Fraction(1, 2))
    idx = np.arange(1, N + 1, dtype=np.float64)
    H = 1.0 / np.add.outer(idx, idx)
    v = np.full(N, 1.0 / np.sqrt(N))
    for _ in range(max_iterations):
        w = H @ (H @ v)                      # Gram matrix apply; H is symmetric
        rho = float(v @ w)
        resid = float(np.linalg.norm(w - rho * v))
        v = w / np.linalg.norm(w)
        if resid <= residual_tol:
            fp = 64.0 * N * _FP_EPS
            lo = np.sqrt(max(rho - fp, 0.0))
            hi = np.sqrt(rho + resid + fp)
            return Ball.from_interval(lo, hi, empirical=True)
    raise NoConvergence(
        f"power iteration residual stuck above {residual_tol} after "
        f"{max_iterations} steps at N={N}")
