"""Midpoint-radius balls with conservative error propagation.

All arithmetic happens at the ambient mpmath working precision; every
operation adds a rounding allowance of a few ulps of the midpoint so the
returned ball always contains the exact result of the interval operation.
The `empirical` flag marks radii that come from extrapolation diagnostics
rather than proved tail bounds; it is sticky under arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp, mpf

# Relative inflation applied to every computed radius.  Working precision is
# always >= 50 bits, so 2^-20 dominates the rounding error of the radius
# arithmetic itself by a wide margin.
_RAD_INFLATE = mpf(1) + mpf(2) ** -20


def _slop(mid):
    """Rounding allowance: a few ulps of mid at the current precision."""
    if mid == 0:
        return mpf(0)
    return abs(mid) * mpf(2) ** (2 - mp.prec)


class Ball:
    """A real number known to lie within [mid - rad, mid + rad]."""

    __slots__ = ("mid", "rad", "empirical")

    def __init__(self, mid, rad=0, empirical=False):
        self.mid = mpf(mid)
        self.rad = mpf(rad)
        if self.rad < 0:
            raise ValueError("radius must be nonnegative")
        self.empirical = bool(empirical)

    # --- constructors ---

    @staticmethod
    def exact(value) -> "Ball":
        """Ball around an exactly representable value (int or Fraction)."""
        if isinstance(value, int):
            return Ball(mpf(value), 0)
        if isinstance(value, Fraction):
            num = mpf(value.numerator)
            den = mpf(value.denominator)
            mid = num / den
            return Ball(mid, _slop(mid))
        raise TypeError(f"cannot build an exact ball from {type(value).__name__}")

    @staticmethod
    def from_interval(lo, hi, empirical=False) -> "Ball":
        lo, hi = mpf(lo), mpf(hi)
        if hi < lo:
            lo, hi = hi, lo
        mid = (lo + hi) / 2
        rad = (hi - lo) / 2 + _slop(mid) + _slop(hi - lo)
        return Ball(mid, rad, empirical)

    # --- queries ---

    def contains(self, value) -> bool:
        if isinstance(value, Ball):
            return abs(self.mid - value.mid) * _RAD_INFLATE <= self.rad - value.rad
        if isinstance(value, Fraction):
            value = mpf(value.numerator) / mpf(value.denominator)
        d = abs(self.mid - mpf(value))
        return d <= (self.rad + _slop(self.mid)) * _RAD_INFLATE

    def overlaps(self, other: "Ball", inflate=0) -> bool:
        gap = abs(self.mid - other.mid)
        return gap <= (self.rad + other.rad + mpf(inflate)) * _RAD_INFLATE

    @property
    def lower(self):
        return self.mid - self.rad

    @property
    def upper(self):
        return self.mid + self.rad

    def mag(self):
        """Upper bound for |value|."""
        return abs(self.mid) + self.rad

    # --- arithmetic ---

    def _wrap(self, mid, rad, other_empirical=False):
        return Ball(mid, (rad + _slop(mid)) * _RAD_INFLATE,
                    self.empirical or other_empirical)

    def __add__(self, other):
        other = _coerce(other)
        return self._wrap(self.mid + other.mid, self.rad + other.rad,
                          other.empirical)

    __radd__ = __add__

    def __neg__(self):
        return Ball(-self.mid, self.rad, self.empirical)

    def __sub__(self, other):
        other = _coerce(other)
        return self._wrap(self.mid - other.mid, self.rad + other.rad,
                          other.empirical)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        rad = (abs(self.mid) * other.rad + abs(other.mid) * self.rad
               + self.rad * other.rad)
        return self._wrap(self.mid * other.mid, rad, other.empirical)

    __rmul__ = __mul__

    def reciprocal(self) -> "Ball":
        m, r = abs(self.mid), self.rad
        if m <= r:
            raise ZeroDivisionError("ball contains zero")
        return self._wrap(1 / self.mid, r / (m * (m - r)))

    def __truediv__(self, other):
        other = _coerce(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return _coerce(other) * self.reciprocal()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("ball powers must be integers")
        if n < 0:
            return (self ** (-n)).reciprocal()
        result = Ball(mpf(1), 0, self.empirical)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def exp(self) -> "Ball":
        mid = mp.exp(self.mid)
        rad = mp.exp(self.mid + self.rad) - mid if self.rad != 0 else mpf(0)
        return self._wrap(mid, rad)

    def log(self) -> "Ball":
        if self.mid - self.rad <= 0:
            raise ValueError("log of a ball touching zero")
        mid = mp.log(self.mid)
        if self.rad == 0:
            rad = mpf(0)
        else:
            rad = max(mp.log(self.mid + self.rad) - mid,
                      mid - mp.log(self.mid - self.rad))
        return self._wrap(mid, rad)

    def widened(self, extra) -> "Ball":
        return Ball(self.mid, self.rad + mpf(extra), self.empirical)

    def as_empirical(self) -> "Ball":
        return Ball(self.mid, self.rad, True)

    # --- rendering ---

    def __repr__(self):
        return f"Ball({self.render()})"

    def render(self, digits=None) -> str:
        if digits is None:
            digits = max(mp.dps - 2, 6)
        mid = mp.nstr(self.mid, digits, strip_zeros=False)
        rad = mp.nstr(self.rad, 3)
        tag = " [empirical]" if self.empirical else ""
        return f"{mid} +/- {rad}{tag}"


def _coerce(x) -> Ball:
    if isinstance(x, Ball):
        return x
    if isinstance(x, int):
        return Ball(mpf(x), 0)
    if isinstance(x, Fraction):
        return Ball.exact(x)
    if isinstance(x, mpf):
        return Ball(x, 0)
    raise TypeError(f"cannot mix Ball with {type(x).__name__}")


def ball_sum(balls) -> Ball:
    """Sum an iterable of balls without quadratic slop buildup."""
    mid = mpf(0)
    rad = mpf(0)
    scale = mpf(0)
    count = 0
    empirical = False
    for b in balls:
        mid += b.mid
        rad += b.rad
        scale = max(scale, abs(mid))
        count += 1
        empirical = empirical or b.empirical
    rad += scale * (count + 2) * mpf(2) ** (2 - mp.prec)
    return Ball(mid, rad * _RAD_INFLATE, empirical)


def pi_ball() -> Ball:
    mid = +mp.pi
    return Ball(mid, _slop(mid))


def log2_ball() -> Ball:
    mid = mp.log(2)
    return Ball(mid, _slop(mid))


def euler_gamma_ball() -> Ball:
    mid = +mp.euler
    return Ball(mid, _slop(mid))
