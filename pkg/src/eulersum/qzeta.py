"""Nested q-deformed zeta sums and the finite-geometric-series residual.

zeta[s_1,...,s_m] sums prod q^((s_j-1) k_j) / [k_j]^(s_j) over
k_1 > ... > k_m > 0 with [k] = (1-q^k)/(1-q).  Truncation tails are
bounded exactly: inner partial sums obey polynomial-in-n envelopes
computed bottom-up, and the resulting polynomial-times-geometric outer
tail has a rational closed form via Eulerian polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from mpmath import mp, mpf

from .balls import Ball, ball_sum
from .compositions import SignedComposition
from .errors import (DivergentInput, InvalidQ, PrecisionUnreachable,
                     UnsupportedSigns)
from .precision import DEFAULT_CONTEXT, PrecisionContext

_EULERIAN_ROWS = [(1,)]  # row d lists <d,0> .. <d,max(d-1,0)>; row 0 is <0,0> = 1


def _eulerian_row(d: int) -> tuple:
    while len(_EULERIAN_ROWS) <= d:
        n = len(_EULERIAN_ROWS)
        prev = _EULERIAN_ROWS[-1]
        row = []
        for k in range(n):
            left = (k + 1) * prev[k] if k < len(prev) else 0
            right = (n - k) * prev[k - 1] if 0 < k <= len(prev) else 0
            row.append(left + right)
        _EULERIAN_ROWS.append(tuple(row))
    return _EULERIAN_ROWS[d]


def polylog_negative(d: int, x: Fraction) -> Fraction:
    """Exact sum_{j>=1} j^d x^j for |x| < 1 and integer d >= 0."""
    x = Fraction(x)
    if not abs(x) < 1:
        raise InvalidQ("closed form needs |x| < 1")
    if d == 0:
        return x / (1 - x)
    row = _eulerian_row(d)
    num = sum(row[k] * x ** (d - k) for k in range(d))
    return num / (1 - x) ** (d + 1)


def poly_geometric_tail(m: int, x: Fraction, N: int) -> Fraction:
    """Exact sum_{k>N} k^m x^k for 0 < x < 1."""
    return x ** N * sum(Fraction(comb(m, b)) * N ** b * polylog_negative(m - b, x)
                        for b in range(m + 1))


def _coerce_q(q) -> Fraction:
    if isinstance(q, float):
        q = Fraction(str(q))
    try:
        q = Fraction(q)
    except (TypeError, ValueError) as exc:
        raise InvalidQ(f"cannot read {q!r} as a rational") from exc
    if not 0 < q < 1:
        raise InvalidQ(f"q must lie strictly between 0 and 1, got {q}")
    return q


def _tail_envelope(parts, q: Fraction):
    """(P, m) with the inner partial sums below the first index bounded by
    P * n^m; P is built bottom-up from the exact negative-order polylogs."""
    P = Fraction(1)
    m = 0
    for s, _ in reversed(parts[1:]):
        if s == 1:
            m += 1
        else:
            P *= polylog_negative(m, q ** (s - 1))
            m = 0
    return P, m


def eval_qmzv(q, comp, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Ball for zeta[s_1,...,s_m] at rational q in (0,1)."""
    q = _coerce_q(q)
    if not isinstance(comp, SignedComposition):
        comp = SignedComposition(comp)
    if not comp.all_positive():
        raise UnsupportedSigns(f"{comp.render()} has signed parts")
    parts = comp.parts
    s1 = parts[0][0]
    if s1 < 2:
        raise DivergentInput("leading exponent must be at least 2")

    P, m_poly = _tail_envelope(parts, q)
    x = q ** (s1 - 1)
    need = Fraction(1, 10) ** (ctx.target_digits + ctx.guard_digits)
    N = _pick_cut(P, m_poly, x, need, ctx.max_terms)
    tail_bound = P * poly_geometric_tail(m_poly, x, N)

    with mp.workprec(ctx.working_prec_bits):
        qb = Ball.exact(q)
        one_minus_q = Ball(1) - qb
        m = len(parts)
        sums = [Ball(0)] * m + [Ball(1)]
        qn = Ball(1)
        for n in range(1, N + 1):
            qn = qn * qb
            bracket_inv = one_minus_q / (Ball(1) - qn)   # 1/[n]_q
            powers = {}
            for j in range(m):
                s = parts[j][0]
                w = powers.get(s)
                if w is None:
                    w = bracket_inv ** s
                    if s > 1:
                        w = w * qn ** (s - 1)
                    powers[s] = w
                sums[j] = sums[j] + w * sums[j + 1]
        frac = tail_bound.numerator / mpf(tail_bound.denominator)
        return sums[0].widened(frac)


def _pick_cut(P: Fraction, m_poly: int, x: Fraction, need: Fraction,
              max_terms: int) -> int:
    xf = mpf(x.numerator) / x.denominator
    guess = int(mp.log(mpf(need.denominator)) / -mp.log(xf)) + 4
    N = max(8, guess)
    while P * poly_geometric_tail(m_poly, x, N) > need:
        N = int(N * 1.4) + 8
        if N > max_terms:
            raise PrecisionUnreachable(
                f"q-tail needs more than {max_terms} terms at this precision")
    return min(N, max_terms)


def q_general_residual(q, s: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """LHS minus RHS of the finite-geometric-series double identity:

        sum_k q^(2k)/(1-q^k)^(s+1)
          = sum_{k>m>0} q^k / ((1-q^k)^s (1-q^m))
          + sum_{j=1}^{s-2} sum_{k>m>0} q^(k+m) / ((1-q^k)^(s-j) (1-q^m)^(j+1))

    valid for integer s >= 2; the returned ball must contain zero.
    """
    q = _coerce_q(q)
    if not isinstance(s, int) or s < 2:
        raise DivergentInput("the identity needs an integer s >= 2")

    need = Fraction(1, 10) ** (ctx.target_digits + ctx.guard_digits)
    one_minus = 1 - q
    # crude exact tail majorants: every k-term is below c * k * q^k
    c = (s - 1) * Fraction(1) / one_minus ** (s + 2)
    N = 8
    while c * poly_geometric_tail(1, q, N) > need:
        N = int(N * 1.4) + 8
        if N > ctx.max_terms:
            raise PrecisionUnreachable(
                f"residual tail needs more than {ctx.max_terms} terms")

    with mp.workprec(ctx.working_prec_bits):
        qb = Ball.exact(q)
        lhs = Ball(0)
        rhs1 = Ball(0)
        rhs2 = Ball(0)
        prefix_c = Ball(0)                       # sum_{m<k} 1/(1-q^m)
        prefix_d = [Ball(0)] * (s - 1)           # sum_{m<k} q^m/(1-q^m)^(j+1)
        qk = Ball(1)
        for k in range(1, N + 1):
            qk = qk * qb
            inv = (Ball(1) - qk).reciprocal()    # 1/(1-q^k)
            lhs = lhs + qk * qk * inv ** (s + 1)
            rhs1 = rhs1 + qk * inv ** s * prefix_c
            for j in range(1, s - 1):
                rhs2 = rhs2 + qk * inv ** (s - j) * prefix_d[j]
            prefix_c = prefix_c + inv
            for j in range(1, s - 1):
                prefix_d[j] = prefix_d[j] + qk * inv ** (j + 1)
        out = lhs - rhs1 - rhs2
        lhs_tail = q ** (2 * (N + 1)) / ((1 - q * q) * one_minus ** (s + 1))
        rhs1_tail = poly_geometric_tail(1, q, N) / one_minus ** (s + 1)
        rhs2_tail = (s - 2) * q ** (N + 2) / (1 - q) / one_minus ** (s + 2)
        total = lhs_tail + rhs1_tail + rhs2_tail
        return out.widened(total.numerator / mpf(total.denominator))
