"""Certified-tolerance quadrature for one-dimensional integral forms.

Each catalog entry ties an integral representation of a nested-sum constant
to its claimed closed form.  Evaluation is adaptive bisection with an
embedded Gauss pair per panel; endpoint log-power singularities are removed
by exponential substitutions declared per entry, and infinite intervals are
mapped to (0, 1) first.  The returned radius folds in the summed embedded
differences scaled by a safety factor of four; like the empirical series
tails, this is an engineering certificate and the Ball is flagged as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .balls import Ball
from .errors import OutOfRange, ToleranceNotMet, UnknownEntry
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .symbolic import ZetaPolynomial, zeta_sym

__all__ = ["CATALOG", "CatalogEntry", "catalog_ids", "integrate",
           "laplace_moment"]

_SAFETY = 4
_MIN_TOL = mpf("1e-30")


# ----------------------------------------------------------------------
# Gauss-Legendre panel rules

_NODE_CACHE = {}


def _gauss_nodes(n: int, prec: int) -> tuple:
    """Nodes and weights of the n-point rule on (-1, 1); n must be even."""
    key = (n, prec)
    cached = _NODE_CACHE.get(key)
    if cached is not None:
        return cached
    with mp.workprec(prec + 24):
        pairs = []
        for i in range(1, n // 2 + 1):
            x = mp.cos(mp.pi * (i - mpf(1) / 4) / (n + mpf(1) / 2))
            for _ in range(120):
                p0, p1 = mpf(1), x
                for j in range(2, n + 1):
                    p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
                deriv = n * (x * p1 - p0) / (x * x - 1)
                step = p1 / deriv
                x = x - step
                if abs(step) < mpf(2) ** (-prec - 12):
                    break
            p0, p1 = mpf(1), x
            for j in range(2, n + 1):
                p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
            deriv = n * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * deriv * deriv)
            pairs.append((x, w))
            pairs.append((-x, w))
        result = tuple(pairs)
    _NODE_CACHE[key] = result
    return result


def _panel_value(f, a, b, nodes):
    half = (b - a) / 2
    mid = (a + b) / 2
    acc = mpf(0)
    for x, w in nodes:
        acc += w * f(mid + half * x)
    return half * acc


def _adaptive(f, lo, hi, tol, prec, budget):
    """Adaptive bisection; returns (value, summed embedded differences)."""
    coarse_nodes = _gauss_nodes(24, prec)
    fine_nodes = _gauss_nodes(48, prec)
    width = hi - lo
    # Panels narrower than this are accepted as-is.  The floor keeps Gauss
    # nodes clear of interval endpoints: the innermost node sits at a relative
    # offset of about 2^-11 from the edge, so a floor of 2^-prec+16 keeps
    # every evaluation point representably distinct from the endpoint even
    # when an integrand is singular there and the bisection walks right up
    # to the boundary.
    min_width = (hi - lo) * mpf(2) ** (-prec + 16)
    stack = [(lo, hi)]
    value = mpf(0)
    err = mpf(0)
    panels = 0
    while stack:
        a, b = stack.pop()
        panels += 1
        if panels > budget:
            raise ToleranceNotMet(f"panel budget {budget} exhausted")
        coarse = _panel_value(f, a, b, coarse_nodes)
        fine = _panel_value(f, a, b, fine_nodes)
        diff = abs(fine - coarse)
        if _SAFETY * diff <= tol * (b - a) / width or (b - a) < min_width:
            value += fine
            err += diff
        else:
            m = (a + b) / 2
            stack.append((a, m))
            stack.append((m, b))
    return value, err


# ----------------------------------------------------------------------
# substitutions

def _map_infinite(f):
    """u = v/(1-v) pulls an integral over (0, inf) back to (0, 1)."""
    def g(v):
        w = 1 - v
        return f(v / w) / (w * w)
    return g


def _map_left_singular(f, lo, hi):
    """x = lo + (hi-lo) e^{-u} removes a log-power singularity at lo."""
    span = hi - lo
    def g(u):
        scale = span * mp.e ** (-u)
        return f(lo + scale) * scale
    return _map_infinite(g)


def _map_right_singular(f_right, span):
    """x = hi - span e^{-u}; f_right takes the distance from the endpoint.

    Working from the distance keeps the integrand numerically stable once
    the substitution drives x within rounding range of the endpoint.
    """
    def g(u):
        d = span * mp.e ** (-u)
        return f_right(d) * d
    return _map_infinite(g)


# ----------------------------------------------------------------------
# catalog

@dataclass(frozen=True)
class CatalogEntry:
    """One integral representation with its claimed constant value."""

    id: str
    integrand: callable
    hi_frac: Fraction          # upper endpoint = hi_frac + hi_pi * pi
    hi_pi: int
    singular: str              # "none" | "zero" | "one" | "both" | "inf"
    prefactor: Fraction
    pi_power: int              # prefactor *= pi ** pi_power
    claimed_value: ZetaPolynomial
    default_tol: mpf
    note: str
    # integrand as a function of the distance below the upper endpoint,
    # written to stay stable where x itself would round to the endpoint
    right_form: callable = None


def _f_w111(s):
    return mp.log(1 - s) ** 2 / s


def _f_stirling3(x):
    return mp.log(1 - x) ** 3 / x


def _f_parts3(x):
    return mp.log(x) * mp.log(1 - x) / x


def _f_logs21(u):
    return mp.log(u) * mp.log(1 - u) / (1 - u)


def _f_triple57(u):
    return mp.log(u + 1) ** 2 / (u * (u + 1) * (u + 2))


def _f_alt21(u):
    return mp.log(1 + u) ** 2 / u


def _f_clausen(t):
    return (mp.pi - t) * mp.log(2 * mp.sin(t / 2))


def _f_parseval(t):
    return (mp.pi - t) ** 2 * mp.log(2 * mp.sin(t / 2)) ** 2


def _d_w111(d):
    return mp.log(d) ** 2 / (1 - d)


def _d_stirling3(d):
    return mp.log(d) ** 3 / (1 - d)


def _d_parts3(d):
    return mp.log(1 - d) * mp.log(d) / (1 - d)


def _d_logs21(d):
    return mp.log(1 - d) * mp.log(d) / d


def _d_parseval(d):
    # with d = 2 pi - t: pi - t = d - pi and sin(t/2) = sin(d/2)
    return (d - mp.pi) ** 2 * mp.log(2 * mp.sin(d / 2)) ** 2


def _zp(k, coeff=1):
    return ZetaPolynomial.const(zeta_sym(k), coeff)


_TIGHT = mpf("1e-20")
_FOURIER = mpf("1e-12")

CATALOG = {e.id: e for e in (
    CatalogEntry("w111", _f_w111, Fraction(1), 0, "one",
                 Fraction(1, 2), 0, _zp(3), _TIGHT,
                 "half the squared-log kernel over the unit interval",
                 right_form=_d_w111),
    CatalogEntry("zeta_stirling_2", _f_w111, Fraction(1), 0, "one",
                 Fraction(1, 2), 0, _zp(3), _TIGHT,
                 "order-2 member of the log-power family",
                 right_form=_d_w111),
    CatalogEntry("zeta_stirling_3", _f_stirling3, Fraction(1), 0, "one",
                 Fraction(-1, 6), 0, _zp(4), _TIGHT,
                 "order-3 member of the log-power family",
                 right_form=_d_stirling3),
    CatalogEntry("parts3", _f_parts3, Fraction(1), 0, "both",
                 Fraction(1), 0, _zp(3), _TIGHT,
                 "product of logs against 1/x, integrated by parts",
                 right_form=_d_parts3),
    CatalogEntry("logs21", _f_logs21, Fraction(1), 0, "both",
                 Fraction(1), 0, _zp(3), _TIGHT,
                 "double-sum form: evaluates the depth-2 sum with trailing 1",
                 right_form=_d_logs21),
    CatalogEntry("triple57", _f_triple57, Fraction(1), 0, "inf",
                 Fraction(4), 0, _zp(3), _TIGHT,
                 "one-dimensional reduction of a symmetric triple integral"),
    CatalogEntry("alt21", _f_alt21, Fraction(1), 0, "none",
                 Fraction(1, 2), 0, _zp(3, Fraction(1, 8)), _TIGHT,
                 "alternating counterpart: equals one eighth of the cube sum"),
    CatalogEntry("clausen_pi", _f_clausen, Fraction(0), 1, "zero",
                 Fraction(-1, 2), 0, _zp(3, Fraction(7, 8)), _FOURIER,
                 "log-sine kernel against the sawtooth, up to the half period"),
    CatalogEntry("parseval4", _f_parseval, Fraction(0), 2, "both",
                 Fraction(1, 4), -1, _zp(4, Fraction(11, 4)), _FOURIER,
                 "squared log-sine kernel against the squared sawtooth",
                 right_form=_d_parseval),
)}


def catalog_ids() -> tuple:
    return tuple(sorted(CATALOG))


def _prec_bits(tol, ctx: PrecisionContext) -> int:
    tol_digits = int(math.ceil(-math.log10(float(tol))))
    digits = max(ctx.target_digits, tol_digits) + 15
    return int(math.ceil(digits * 3.3219281)) + 8


def _pieces(entry: CatalogEntry, substitute: bool):
    hi = mpf(entry.hi_frac.numerator) / entry.hi_frac.denominator
    if entry.hi_pi:
        hi += entry.hi_pi * mp.pi
    f = entry.integrand
    if not substitute:
        if entry.singular == "inf":
            return [(_map_infinite(f), mpf(0), mpf(1))]
        return [(f, mpf(0), hi)]
    kind = entry.singular
    if kind == "inf":
        return [(_map_infinite(f), mpf(0), mpf(1))]
    if kind == "none":
        return [(f, mpf(0), hi)]
    right = entry.right_form or (lambda d: f(hi - d))
    if kind == "zero":
        return [(_map_left_singular(f, mpf(0), hi), mpf(0), mpf(1))]
    if kind == "one":
        return [(_map_right_singular(right, hi), mpf(0), mpf(1))]
    mid = hi / 2
    return [(_map_left_singular(f, mpf(0), mid), mpf(0), mpf(1)),
            (_map_right_singular(right, hi - mid), mpf(0), mpf(1))]


def integrate(entry_id: str, tol=None, ctx: PrecisionContext = DEFAULT_CONTEXT,
              *, substitute: bool = True, budget: int = 4000) -> Ball:
    """Enclosure for a catalog integral at the requested tolerance.

    The radius is the safety-scaled sum of embedded-rule differences plus
    an arithmetic guard; it must come out at or below tol, otherwise
    ToleranceNotMet is raised.  Balls are flagged empirical.
    """
    entry = CATALOG.get(entry_id)
    if entry is None:
        raise UnknownEntry(f"no catalog integral named {entry_id!r}")
    tol = mpf(entry.default_tol) if tol is None else mpf(tol)
    if tol < _MIN_TOL:
        raise OutOfRange("tolerance below 1e-30 is not certifiable here")
    prec = _prec_bits(tol, ctx)
    with mp.workprec(prec):
        total = mpf(0)
        err = mpf(0)
        # each piece gets the full tolerance; the safety factor absorbs
        # the at-most-two pieces
        for f, lo, hi in _pieces(entry, substitute):
            value, diff = _adaptive(f, lo, hi, tol / 2, prec, budget)
            total += value
            err += diff
        rad = _SAFETY * err + mpf(2) ** (-prec + 10) * (1 + abs(total))
        if rad > tol:
            raise ToleranceNotMet(
                f"{entry_id}: radius {mp.nstr(rad, 5)} above tolerance {mp.nstr(tol, 5)}")
        result = Ball(total, rad, empirical=True)
        factor = Ball.exact(entry.prefactor)
        if entry.pi_power:
            pi_ball = Ball(+mp.pi, abs(mp.pi) * mpf(2) ** (-prec + 2))
            power = pi_ball ** abs(entry.pi_power)
            factor = factor * power if entry.pi_power > 0 else factor / power
        return result * factor


def laplace_moment(r: int, sigma: int, tol=mpf("1e-20"),
                   ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Moment of the negative log over (0, 1): exact value sigma!/r^(sigma+1).

    Computed by quadrature after the left-endpoint exponential substitution,
    for comparison against the exact rational.
    """
    if r < 1 or sigma < 0:
        raise OutOfRange("laplace_moment needs r >= 1, sigma >= 0")
    tol = mpf(tol)
    if tol < _MIN_TOL:
        raise OutOfRange("tolerance below 1e-30 is not certifiable here")
    prec = _prec_bits(tol, ctx)
    with mp.workprec(prec):
        def g(u):
            return mp.e ** (-r * u) * u ** sigma

        value, err = _adaptive(_map_infinite(g), mpf(0), mpf(1), tol, prec, 4000)
        rad = _SAFETY * err + mpf(2) ** (-prec + 10) * (1 + abs(value))
        if rad > tol:
            raise ToleranceNotMet(
                f"laplace_moment({r},{sigma}): radius above tolerance")
        return Ball(value, rad, empirical=True)
