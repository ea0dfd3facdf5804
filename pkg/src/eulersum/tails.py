"""Certified tail sums via Euler-Maclaurin expansions and Euler transforms.

Every function returns a Ball whose radius covers the truncation error with
a proved bound: Euler-Maclaurin remainders are bounded by the first omitted
term while the relevant derivative keeps a constant sign, and alternating
sums of totally monotone sequences are bracketed through the Euler transform
(remainder between 0 and the last binomial difference over 2^J).

All arithmetic runs at the ambient mpmath precision; callers wrap calls in
mp.workprec.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from mpmath import mp, mpf

from .balls import Ball, ball_sum, euler_gamma_ball, log2_ball

_BERNOULLI_CACHE = [Fraction(1), Fraction(-1, 2)]


def bernoulli_fraction(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2 convention)."""
    while len(_BERNOULLI_CACHE) <= m:
        k = len(_BERNOULLI_CACHE)
        acc = Fraction(0)
        for j in range(k):
            acc += comb(k + 1, j) * _BERNOULLI_CACHE[j]
        _BERNOULLI_CACHE.append(-acc / (k + 1))
    return _BERNOULLI_CACHE[m]


def pochhammer(s: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= s + i
    return out


def _tiny_floor(scale) -> mpf:
    return (abs(scale) + mpf(1)) * mpf(2) ** (-mp.prec - 8)


def power_tail(s: int, a) -> Ball:
    """Sum of (a+k)^-s over k >= 0, for integer s >= 2 and real a >= 1.

    Euler-Maclaurin at a; all even derivatives of x^-s are positive on
    (0, inf), so the remainder is bounded by the first omitted term.
    """
    if s < 2:
        raise ValueError("power_tail needs s >= 2")
    a = mpf(a)
    if a < 1:
        raise ValueError("power_tail needs a >= 1")
    ab = Ball(a)
    inv = ab.reciprocal()
    p = inv ** (s - 1)                      # a^(1-s)
    total = p * Ball.exact(Fraction(1, s - 1)) + p * inv * Ball.exact(Fraction(1, 2))
    inv2 = inv * inv
    q = p * inv2                            # a^(-s-1) -> exponent 1-s-2j at step j
    floor = _tiny_floor(total.mid)
    prev_mag = None
    radius = None
    for j in range(1, 61):
        c = bernoulli_fraction(2 * j) * Fraction(pochhammer(s, 2 * j - 1), 1)
        c /= Fraction(_factorial(2 * j))
        term = Ball.exact(c) * q
        mag = term.mag()
        if prev_mag is not None and mag >= prev_mag:
            radius = mag
            break
        if mag <= floor:
            total = total + term
            radius = mag
            break
        total = total + term
        prev_mag = mag
        q = q * inv2
    if radius is None:
        radius = prev_mag if prev_mag is not None else floor
    return total.widened(radius)


_FACTORIALS = [1]


def _factorial(n: int) -> int:
    while len(_FACTORIALS) <= n:
        _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))
    return _FACTORIALS[n]


def _log_deriv_coeffs(s: int, m: int):
    """alpha_m, beta_m with d^m/dx^m [log x * x^-s]
    = (-1)^m x^(-s-m) (alpha_m log x - beta_m)."""
    alpha, beta = Fraction(1), Fraction(0)
    for i in range(m):
        alpha, beta = alpha * (s + i), beta * (s + i) + alpha
    return alpha, beta


_LOG_TAIL_FLOOR = 64


def log_power_tail(s: int, a) -> Ball:
    """Sum of log(a+k) * (a+k)^-s over k >= 0, integer s >= 2, a >= 1.

    Terms with a+k below 64 are summed directly; beyond that the even
    derivatives of log x * x^-s keep a constant sign for every order used
    here (log 64 exceeds sum 1/(s+i) over the orders involved), so the
    Euler-Maclaurin remainder is again bounded by the first omitted term.
    """
    if s < 2:
        raise ValueError("log_power_tail needs s >= 2")
    a = mpf(a)
    if a < 1:
        raise ValueError("log_power_tail needs a >= 1")
    head = []
    while a < _LOG_TAIL_FLOOR:
        ab = Ball(a)
        head.append(ab.log() * ab.reciprocal() ** s)
        a += 1
    ab = Ball(a)
    la = ab.log()
    inv = ab.reciprocal()
    p = inv ** (s - 1)
    sm1 = Ball.exact(Fraction(1, s - 1))
    total = p * (la * sm1 + sm1 * sm1) + la * p * inv * Ball.exact(Fraction(1, 2))
    inv2 = inv * inv
    q = p * inv2
    floor = _tiny_floor(total.mid)
    prev_mag = None
    radius = None
    threshold = mp.log(a)
    for j in range(1, 39):
        alpha, beta = _log_deriv_coeffs(s, 2 * j - 1)
        # sign constancy of the (2j)-th derivative needs log a > beta/alpha
        a2, b2 = _log_deriv_coeffs(s, 2 * j)
        if mpf(b2.numerator) / mpf(b2.denominator) >= threshold * mpf(a2.numerator) / mpf(a2.denominator):
            # sign constancy lost at this order: previous term already added,
            # so fall back to twice its magnitude
            radius = 2 * prev_mag if prev_mag is not None else total.mag()
            break
        c = bernoulli_fraction(2 * j) / Fraction(_factorial(2 * j))
        term = Ball.exact(c) * q * (Ball.exact(alpha) * la - Ball.exact(beta))
        mag = term.mag()
        if prev_mag is not None and mag >= prev_mag:
            radius = mag
            break
        if mag <= floor:
            total = total + term
            radius = mag
            break
        total = total + term
        prev_mag = mag
        q = q * inv2
    if radius is None:
        radius = prev_mag if prev_mag is not None else floor
    result = total.widened(radius)
    if head:
        result = ball_sum(head) + result
    return result


_PSI_FLOOR = 32


def psi_point(x) -> Ball:
    """Digamma at real x > 0 via the asymptotic series after shifting up."""
    x = mpf(x)
    if x <= 0:
        raise ValueError("psi_point needs x > 0")
    head = []
    while x < _PSI_FLOOR:
        head.append(Ball(x).reciprocal())
        x += 1
    xb = Ball(x)
    inv = xb.reciprocal()
    total = xb.log() - inv * Ball.exact(Fraction(1, 2))
    inv2 = inv * inv
    q = inv2
    floor = _tiny_floor(total.mid)
    prev_mag = None
    radius = None
    for j in range(1, 61):
        c = bernoulli_fraction(2 * j) / Fraction(2 * j)
        term = Ball.exact(-c) * q
        mag = term.mag()
        if prev_mag is not None and mag >= prev_mag:
            radius = mag
            break
        if mag <= floor:
            total = total + term
            radius = mag
            break
        total = total + term
        prev_mag = mag
        q = q * inv2
    if radius is None:
        radius = prev_mag if prev_mag is not None else floor
    total = total.widened(radius)
    if head:
        total = total - ball_sum(head)
    return total


def harmonic_point(n) -> Ball:
    """H_n = psi(n+1) + gamma for real n >= 0."""
    return psi_point(mpf(n) + 1) + euler_gamma_ball()


def alt_power_tail(s: int, a) -> Ball:
    """Sum of (-1)^k (a+k)^-s over k >= 0, integer s >= 1, real a >= 1."""
    a = mpf(a)
    if s == 1:
        half = Ball.exact(Fraction(1, 2))
        return (psi_point((a + 1) / 2) - psi_point(a / 2)) * half
    head = Ball(0)
    sign = 1
    # advance past the small-argument region where the halved-argument
    # tails would truncate early
    while a < 2 * _LOG_TAIL_FLOOR:
        head = head + Ball.exact(sign) * Ball(a).reciprocal() ** s
        a += 1
        sign = -sign
    scale = Ball.exact(Fraction(1, 2 ** s))

    def even_part(x):
        return scale * power_tail(s, x / 2)

    return head + Ball.exact(sign) * (even_part(a) - even_part(a + 1))


def alt_log_power_tail(s: int, a, euler_len=None) -> Ball:
    """Sum of (-1)^k log(a+k) (a+k)^-s over k >= 0, s >= 1, a >= 1."""
    a = mpf(a)
    if s >= 2:
        head = Ball(0)
        sign = 1
        while a < 2 * _LOG_TAIL_FLOOR:
            ab = Ball(a)
            head = head + Ball.exact(sign) * ab.log() * ab.reciprocal() ** s
            a += 1
            sign = -sign
        scale = Ball.exact(Fraction(1, 2 ** s))
        l2 = log2_ball()

        def even_part(x):
            return scale * (l2 * power_tail(s, x / 2) + log_power_tail(s, x / 2))

        return head + Ball.exact(sign) * (even_part(a) - even_part(a + 1))
    # s == 1: log x / x is completely monotone only up to derivative order
    # ~ x / e^gamma, so shift the start far enough for the Euler transform.
    J = euler_len or min(max(mp.prec + 16, 80), 400)
    start = mpf(max(320, int(2.5 * J) + 8))
    head = []
    sign = 1
    while a < start:
        ab = Ball(a)
        head.append(Ball.exact(sign) * ab.log() * ab.reciprocal())
        a += 1
        sign = -sign
    values = []
    for i in range(J + 1):
        xb = Ball(a + i)
        values.append(xb.log() * xb.reciprocal())
    tail, ok = euler_transform_alt_sum(values)
    if not ok:
        tail = tail.as_empirical()
    if sign < 0:
        tail = -tail
    if head:
        tail = ball_sum(head) + tail
    return tail


def euler_transform_alt_sum(values):
    """Sum (-1)^k v_k for a totally monotone sequence given by v_0..v_J.

    Returns (ball, ok).  The transform writes the sum as
    sum_j (delta^j v)(0) / 2^(j+1) with delta the forward decrement;
    for totally monotone v every difference is nonnegative and the remainder
    after J terms lies in [0, (delta^J v)(0) / 2^J].  ok reports whether the
    nonnegativity was actually observed; on failure the bracket is widened
    to the first-term alternating bound.
    """
    row = list(values)
    total = Ball(0)
    ok = True
    half = Ball.exact(Fraction(1, 2))
    power = half
    floor = _tiny_floor(values[0].mag() if values else 0)
    j = 0
    remainder = None
    while True:
        d0 = row[0]
        # Difference-row radii roughly double per row while the midpoints
        # shrink, so only an upper bound below zero is evidence against
        # total monotonicity; a merely negative lower bound is noise.
        if d0.mid + d0.rad < 0:
            ok = False
        contribution = d0 * power
        noise_bound = (j >= 4 and abs(contribution.mid) <= contribution.rad)
        if (contribution.mag() <= floor or noise_bound
                or len(row) == 1 or j == len(values) - 1):
            remainder = contribution
            break
        total = total + contribution
        row = [row[i] - row[i + 1] for i in range(len(row) - 1)]
        power = power * half
        j += 1
    # remainder of the transformed series lies in [0, 2 * contribution]
    total = total + remainder
    total = total.widened(remainder.mag())
    if not ok:
        total = total.widened(values[0].mag())
    return total, ok


def shifted_reciprocal_coeffs(s: int, t: int):
    """Exact partial fractions of 1/(x^s (x+y)^t) in x with parameter y:

        sum_{i=1}^{s} A_i y^{-(s+t-i)} x^{-i}
      + sum_{l=1}^{t} B_l y^{-(s+t-l)} (x+y)^{-l}

    Returns (A, B) as {exponent: Fraction}.  A_1 + B_1 = 0 always, which is
    what makes the paired harmonic term finite.
    """
    if s == 0:
        return {}, {t: Fraction(1)}
    if t == 0:
        return {s: Fraction(1)}, {}
    A = {}
    for i in range(1, s + 1):
        r = s - i
        A[i] = Fraction((-1) ** r * comb(t + r - 1, t - 1))
    B = {}
    for l in range(1, t + 1):
        B[l] = Fraction((-1) ** s * comb(s + t - l - 1, s - 1))
    assert A[1] + B[1] == 0
    return A, B


def product_power_tail(s1: int, s2: int, j: int, N: int,
                       cache=None, harmonic_span=None) -> Ball:
    """G(j) = sum_{n > N} n^-s1 (n+j)^-s2 for j >= 1, exactly via partial
    fractions: power tails at N+1 and N+1+j plus a finite harmonic block."""
    A, B = shifted_reciprocal_coeffs(s1, s2)
    jb = Ball(mpf(j))
    jinv = jb.reciprocal()
    pieces = []
    # paired i=1 / l=1 terms: A_1 j^{1-s1-s2} * sum_{m=N+1}^{N+j} 1/m
    if 1 in A:
        hs = harmonic_span if harmonic_span is not None else _harmonic_block(N, j)
        pieces.append(Ball.exact(A[1]) * jinv ** (s1 + s2 - 1) * hs)
    for i, c in A.items():
        if i == 1:
            continue
        tail = _cached_power_tail(i, mpf(N + 1), cache)
        pieces.append(Ball.exact(c) * jinv ** (s1 + s2 - i) * tail)
    for l, c in B.items():
        if l == 1:
            continue
        tail = _cached_power_tail(l, mpf(N + 1 + j), cache)
        pieces.append(Ball.exact(c) * jinv ** (s1 + s2 - l) * tail)
    return ball_sum(pieces)


def _harmonic_block(N: int, j: int) -> Ball:
    return ball_sum(Ball(mpf(m)).reciprocal() for m in range(N + 1, N + j + 1))


def _cached_power_tail(s: int, a, cache) -> Ball:
    if cache is None:
        return power_tail(s, a)
    key = (s, a)
    if key not in cache:
        cache[key] = power_tail(s, a)
    return cache[key]
