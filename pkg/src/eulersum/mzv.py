"""Engines for nested signed sums of arbitrary depth.

Depth one delegates to the zeta engines.  Depth two, under the default
acceleration, is fully certified: the inner prefix is expanded around the
cut point into explicit basis tails whose remainders carry proved bounds.
Depth three and beyond use a single forward pass over the nested partial
sums followed by extrapolation; those enclosures are flagged empirical.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import mp, mpf

from .balls import Ball, ball_sum, euler_gamma_ball
from .compositions import CompositionPolynomial, SignedComposition
from .errors import DivergentInput, PrecisionUnreachable
from .precision import Accel, DEFAULT_CONTEXT, PrecisionContext, deep_target
from .tails import (alt_log_power_tail, alt_power_tail, bernoulli_fraction,
                    euler_transform_alt_sum, log_power_tail, pochhammer,
                    power_tail, product_power_tail)
from .zetas import eval_zeta

_CACHE = {}


def eval_mzv(comp, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Ball enclosure for the nested sum named by a signed composition."""
    if not isinstance(comp, SignedComposition):
        comp = SignedComposition(comp)
    if not comp.convergent():
        raise DivergentInput(f"{comp.render()} names a divergent sum")
    key = (comp.parts, ctx.target_digits, ctx.guard_digits,
           ctx.max_terms, ctx.acceleration)
    if key in _CACHE:
        return _CACHE[key]
    with mp.workprec(ctx.working_prec_bits):
        if comp.depth == 1:
            s, e = comp.parts[0]
            value = eval_zeta(s, e, ctx)
        elif comp.depth == 2 and ctx.acceleration is Accel.EULER_MACLAURIN:
            value = _depth2_certified(comp, ctx)
        elif ctx.acceleration is Accel.NONE:
            value = _plain_partial(comp, ctx)
        else:
            value = _deep_extrapolated(comp, ctx)
    _CACHE[key] = value
    return value


def eval_poly(poly: CompositionPolynomial,
              ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Ball for a rational combination of nested sums."""
    with mp.workprec(ctx.working_prec_bits):
        if not len(poly):
            return Ball(0)
        return ball_sum(Ball.exact(coeff) * eval_mzv(c, ctx)
                        for c, coeff in poly)


# ----------------------------------------------------------------------
# depth two, certified


def _outer_tail(beta: int, N: int, outer_sign: int, with_log: bool) -> Ball:
    """Sum over n > N of outer_sign^n (log n)^{0,1} n^-beta."""
    a = mpf(N + 1)
    if outer_sign == 1:
        return log_power_tail(beta, a) if with_log else power_tail(beta, a)
    t = alt_log_power_tail(beta, a) if with_log else alt_power_tail(beta, a)
    # sum_{n>N} (-1)^n h(n) = (-1)^(N+1) sum_{k>=0} (-1)^k h(N+1+k)
    return t if (N + 1) % 2 == 0 else -t


def _depth2_certified(comp: SignedComposition, ctx: PrecisionContext) -> Ball:
    (s1, e1), (s2, e2) = comp.parts
    N = max(96, 2 * ctx.target_digits + 32)

    direct = Ball(0)
    prefix = Ball(0)
    for n in range(1, N + 1):
        inv = Ball(mpf(n)).reciprocal()
        term = inv ** s1 * prefix
        if e1 == -1 and n % 2 == 1:
            term = -term
        direct = direct + term
        inner = inv ** s2
        if e2 == -1 and n % 2 == 1:
            inner = -inner
        prefix = prefix + inner

    if e2 == 1 and s2 == 1:
        tail = _tail_inner_harmonic(s1, e1, N)
    elif e2 == 1:
        tail = _tail_inner_zeta_remainder(s1, e1, s2, N, ctx)
    else:
        tail = _tail_inner_alternating(s1, e1, s2, N, ctx)
    return direct + tail


def _tail_inner_harmonic(s1: int, e1: int, N: int) -> Ball:
    """Tail when the inner prefix is the harmonic number H_{n-1}.

    H_{n-1} = psi(n) + gamma and psi(n) expands as
    log n - 1/(2n) - sum_j B_2j/(2j) n^-2j with a remainder bounded by
    the first omitted coefficient, so each basis piece reduces to the
    log/power outer tails.
    """
    total = _outer_tail(s1, N, e1, True)
    total = total + euler_gamma_ball() * _outer_tail(s1, N, e1, False)
    total = total - Ball.exact(Fraction(1, 2)) * _outer_tail(s1 + 1, N, e1, False)
    floor = mpf(2) ** (-mp.prec - 10)
    j = 1
    while True:
        coeff = bernoulli_fraction(2 * j) / (2 * j)
        bound = abs(mpf(coeff.numerator) / coeff.denominator) * mpf(N + 1) ** (-s1 - 2 * j)
        if bound <= floor or j > 40:
            # remainder of the psi expansion, bounded by the first
            # omitted coefficient at every n > N
            rem = Ball.exact(abs(coeff)) * power_tail(s1 + 2 * j, mpf(N + 1))
            total = total.widened(rem.mag())
            break
        total = total - Ball.exact(coeff) * _outer_tail(s1 + 2 * j, N, e1, False)
        j += 1
    return total


def _tail_inner_zeta_remainder(s1: int, e1: int, s2: int, N: int,
                               ctx: PrecisionContext) -> Ball:
    """Tail when the inner prefix is zeta(s2) minus the remainder sum r(n)."""
    z2 = eval_zeta(s2, 1, ctx)
    total = z2 * _outer_tail(s1, N, e1, False)
    total = total - Ball.exact(Fraction(1, s2 - 1)) * _outer_tail(s1 + s2 - 1, N, e1, False)
    total = total - Ball.exact(Fraction(1, 2)) * _outer_tail(s1 + s2, N, e1, False)
    floor = mpf(2) ** (-mp.prec - 10)
    j = 1
    while True:
        coeff = (bernoulli_fraction(2 * j) * pochhammer(s2, 2 * j - 1)
                 / math.factorial(2 * j))
        bound = abs(mpf(coeff.numerator) / coeff.denominator) * mpf(N + 1) ** (1 - s1 - s2 - 2 * j)
        if bound <= floor or j > 40:
            rem = Ball.exact(abs(coeff)) * power_tail(s1 + s2 + 2 * j - 1, mpf(N + 1))
            total = total.widened(rem.mag())
            break
        total = total - Ball.exact(coeff) * _outer_tail(s1 + s2 + 2 * j - 1, N, e1, False)
        j += 1
    return total


def _tail_inner_alternating(s1: int, e1: int, s2: int, N: int,
                            ctx: PrecisionContext) -> Ball:
    """Tail when the inner prefix carries sign (-1)^m.

    Prefix(n-1) = L2 - (-1)^n phi(n) with phi(n) the alternating tail
    starting at n, so the correction sum has outer sign e1 * (-1)^n.
    """
    L2 = eval_zeta(s2, -1, ctx)
    total = L2 * _outer_tail(s1, N, e1, False)
    if e1 == 1:
        corr = _alternating_phi_correction(s1, s2, N)
        if (N + 1) % 2 == 1:
            corr = -corr
    else:
        corr = _positive_phi_correction(s1, s2, N)
    return total - corr


def _alternating_phi_correction(s1: int, s2: int, N: int) -> Ball:
    """sum_{k>=0} (-1)^k g(k) with g(k) = (N+1+k)^-s1 phi_s2(N+1+k).

    g is a product of completely monotone factors, hence completely
    monotone, so the transformed series gives a certified bracket.
    """
    J = max(32, mp.prec + 10 - int((s1 + s2) * math.log2(N)))
    J = min(J, 400)
    values = []
    for k in range(J + 1):
        n = N + 1 + k
        values.append(Ball(mpf(n)).reciprocal() ** s1 * alt_power_tail(s2, mpf(n)))
    out, ok = euler_transform_alt_sum(values)
    return out if ok else out.as_empirical()


def _positive_phi_correction(s1: int, s2: int, N: int) -> Ball:
    """sum_{n>N} n^-s1 phi_s2(n), reorganised as an alternating sum over
    the shift j of G(j) = sum_{n>N} n^-s1 (n+j)^-s2.

    G is completely monotone in j (finite differences of (n+j)^-s2 pass
    under the absolutely convergent sum), and pairing consecutive terms
    justifies the interchange even when s2 = 1.
    """
    J = max(32, mp.prec + 10 - int((s1 + s2 - 1) * math.log2(N)))
    J = min(J, 400)
    cache = {}
    values = [power_tail(s1 + s2, mpf(N + 1))]
    harmonic_span = Ball(0)
    for j in range(1, J + 1):
        harmonic_span = harmonic_span + Ball(mpf(N + j)).reciprocal()
        values.append(product_power_tail(s1, s2, j, N, cache, harmonic_span))
    out, ok = euler_transform_alt_sum(values)
    return out if ok else out.as_empirical()


# ----------------------------------------------------------------------
# generic direct summation (depth >= 3, and non-default accelerations)


def _deep_prec_bits(ctx: PrecisionContext) -> int:
    digits = deep_target(ctx) + ctx.guard_digits
    # floor of 140 bits keeps the extrapolation solves well conditioned
    return max(int(math.ceil(digits * 3.3219281)) + 8, 140)


def _forward_pass(parts, N, collect_at=(), window=0):
    """March the nested partial sums S_j(n) up to n = N.

    Returns (final S_1, snapshots dict {n: S_1(n)}, trailing window list,
    max absolute S value seen, window at N//2 if requested).
    """
    m = len(parts)
    sums = [mpf(0)] * (m + 1)
    sums[m] = mpf(1)  # S_{m+1} == 1
    snapshots = {}
    collect = set(collect_at)
    ring = []
    half_ring = None
    half_n = N // 2
    maxabs = mpf(0)
    exps = [s for s, _ in parts]
    negs = [e == -1 for _, e in parts]
    one = mpf(1)
    for n in range(1, N + 1):
        invn = one / n
        odd = n % 2 == 1
        powcache = {}
        for j in range(m):
            s = exps[j]
            p = powcache.get(s)
            if p is None:
                p = invn ** s
                powcache[s] = p
            t = p * sums[j + 1]
            if negs[j] and odd:
                sums[j] -= t
            else:
                sums[j] += t
        a = abs(sums[0])
        if a > maxabs:
            maxabs = a
        if window and n > N - window:
            ring.append(sums[0])
        if n in collect:
            snapshots[n] = sums[0]
        if window and half_n - window < n <= half_n:
            if half_ring is None:
                half_ring = []
            half_ring.append(sums[0])
    return sums[0], snapshots, ring, maxabs, half_ring


def _average_down(ring):
    """Iterated pairwise averaging; returns (estimate, spread-of-final-row)."""
    arr = list(ring)
    while len(arr) > 6:
        arr = [(arr[i] + arr[i + 1]) / 2 for i in range(len(arr) - 1)]
    est = sum(arr) / len(arr)
    spread = max(arr) - min(arr)
    return est, spread


def _solve_dense(A, b):
    """Gaussian elimination with partial pivoting on mpf rows."""
    n = len(b)
    M = [list(row) + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(M[r][col]))
        if M[piv][col] == 0:
            raise ZeroDivisionError("singular extrapolation system")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        for r in range(col + 1, n):
            f = M[r][col] * inv
            if f != 0:
                for c in range(col, n + 1):
                    M[r][c] -= f * M[col][c]
    x = [mpf(0)] * n
    for r in range(n - 1, -1, -1):
        acc = M[r][n]
        for c in range(r + 1, n):
            acc -= M[r][c] * x[c]
        x[r] = acc / M[r][r]
    return x


def _richardson_fit(points, basis_terms):
    """Fit S(n) ~ S + sum c_i f_i(n); return the constant term S."""
    A = []
    b = []
    for n, v in points:
        ln = mp.log(n)
        row = [mpf(1)]
        for p, q in basis_terms:
            row.append(ln ** p * mpf(n) ** (-q))
        A.append(row)
        b.append(v)
    return _solve_dense(A, b)[0]


def _deep_extrapolated(comp: SignedComposition, ctx: PrecisionContext) -> Ball:
    parts = comp.parts
    s1, e1 = parts[0]
    prec = _deep_prec_bits(ctx)
    with mp.workprec(prec):
        N = min(ctx.max_terms, 60000)
        if e1 == -1:
            window = min(160, N // 4)
            final, _, ring, maxabs, half_ring = _forward_pass(
                parts, N, window=window)
            est, spread = _average_down(ring)
            est_half, _ = _average_down(half_ring)
            slop = (8 * N * len(parts) + 64) * maxabs * mpf(2) ** (2 - prec)
            rad = 8 * max(spread, abs(est - est_half)) + slop
            return Ball(est, rad, empirical=True)
        # positive outer sign: log-aware extrapolation on snapshots
        lam = sum(1 for s, e in parts[1:] if s == 1 and e == 1)
        P = min(lam, 5)
        q0 = s1 - 1
        basis = [(p, q) for q in (q0, q0 + 1, q0 + 2) for p in range(P + 1)]
        k = 1 + len(basis)
        count = k + 4
        ratio = mpf("0.78")
        ns = []
        v = mpf(N)
        for _ in range(count):
            ns.append(int(v))
            v = v * ratio
        ns = sorted(set(ns), reverse=True)
        final, snaps, _, maxabs, _ = _forward_pass(parts, N, collect_at=ns)
        pts = [(n, snaps[n]) for n in ns]
        reduced = [bq for bq in basis if bq[1] != q0 + 2]
        estimates = []
        for offset in range(3):
            estimates.append(_richardson_fit(pts[offset:offset + k], basis))
        for offset in range(2):
            estimates.append(
                _richardson_fit(pts[offset:offset + 1 + len(reduced)], reduced))
        mid = estimates[0]
        spread = max(abs(e - mid) for e in estimates[1:])
        slop = (8 * N * len(parts) + 64) * maxabs * mpf(2) ** (2 - prec)
        rad = 8 * spread + slop
        out = Ball(mid, rad, empirical=True)
    if out.rad > mpf("1e-4"):
        raise PrecisionUnreachable(
            f"extrapolation for {comp.render()} stalled at radius {float(out.rad):.2e}")
    return out


def _plain_partial(comp: SignedComposition, ctx: PrecisionContext) -> Ball:
    """No acceleration: raw partial sum with a spread-based empirical radius."""
    parts = comp.parts
    prec = _deep_prec_bits(ctx)
    with mp.workprec(prec):
        N = min(ctx.max_terms, 60000)
        checkpoint = (3 * N) // 4
        final, snaps, _, maxabs, _ = _forward_pass(parts, N, collect_at=[checkpoint])
        slop = (8 * N * len(parts) + 64) * maxabs * mpf(2) ** (2 - prec)
        rad = 8 * abs(final - snaps[checkpoint]) + slop
        return Ball(final, rad, empirical=True)
