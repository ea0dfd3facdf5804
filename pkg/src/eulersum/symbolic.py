"""Exact relation families among nested harmonic sums.

Every identity this module produces is a :class:`Relation`: a composition
polynomial on the left and, on the right, a composition polynomial plus a
polynomial in the formal constants ``zeta(k)``, alternating ``zeta(k)`` and
``log 2``.  Construction is exact rational arithmetic throughout; numeric
confirmation goes through the series engines via :func:`relation_residual`,
which returns a certified enclosure that must contain zero.

Families implemented:

* ``euler_reduction`` -- the weight reduction of the double sum with a
  trailing 1 into products of depth-one values.
* ``sum_formula`` -- the fixed-depth sum of all admissible compositions of a
  given weight collapsing to a single depth-one value.
* ``euler_decomposition`` -- the binomially weighted decomposition of a
  general double sum, derived from a partial-fraction expansion that
  :func:`parfrac_check` verifies exactly at rational points.
* ``drinfeld_expand`` -- the two-variable generating function whose
  coefficients reduce ``zeta(m+2, {1}^n)`` to depth-one polynomials.
* ``kummer_expand`` -- the hypergeometric summation at argument -1, expanded
  through formal prefix-sum symbols into alternating double sums.
* ``double_shuffle`` -- equality of the interleaving and index-merging
  products of two convergent sums.
* ``witten_reduce`` -- recursive reduction of the convergent double sum over
  two independent indices and their total.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from mpmath import mp

from .balls import Ball, ball_sum
from .compositions import CompositionPolynomial, SignedComposition, stuffle
from .errors import DivergentComposition, NonConvergent, OutOfRange
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .witten import witten_convergent
from .words import comp_to_word, shuffle
from .zetas import eval_zeta

__all__ = [
    "LOG2",
    "ConstSymbol",
    "Relation",
    "ZetaPolynomial",
    "database_relations",
    "dejavu_relation",
    "double_shuffle",
    "drinfeld_expand",
    "drinfeld_relation",
    "euler_decomposition",
    "euler_reduction",
    "kummer_coefficient",
    "kummer_expand",
    "kummer_gamma_coefficients",
    "parfrac_check",
    "relation_residual",
    "sum_formula",
    "witten_reduce",
    "zeta_poly_eval",
    "zeta_sym",
    "zetabar_sym",
]


# ----------------------------------------------------------------------
# formal constants

_KIND_ORDER = {"zeta": 0, "zetabar": 1, "log2": 2}


@dataclass(frozen=True)
class ConstSymbol:
    """One formal constant: zeta(k), alternating zeta(k), or log 2."""

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind == "zeta":
            if self.index < 2:
                raise OutOfRange("plain zeta symbol needs index >= 2")
        elif self.kind == "zetabar":
            if self.index < 1:
                raise OutOfRange("alternating zeta symbol needs index >= 1")
        elif self.kind == "log2":
            if self.index:
                raise OutOfRange("log2 carries no index")
        else:
            raise OutOfRange(f"unknown constant kind {self.kind!r}")

    @property
    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.index)

    def render(self) -> str:
        if self.kind == "zeta":
            return f"zeta({self.index})"
        if self.kind == "zetabar":
            return f"zeta({-self.index})"
        return "log2"

    def __repr__(self):
        return f"ConstSymbol<{self.render()}>"


def zeta_sym(k: int) -> ConstSymbol:
    return ConstSymbol("zeta", k)


def zetabar_sym(k: int) -> ConstSymbol:
    return ConstSymbol("zetabar", k)


LOG2 = ConstSymbol("log2")


def _mono_key(mono: tuple) -> tuple:
    return (len(mono), tuple(s.sort_key for s in mono))


class ZetaPolynomial:
    """Polynomial in formal constants with exact rational coefficients.

    Monomials are multisets of :class:`ConstSymbol`, stored as canonically
    sorted tuples; zero coefficients are dropped on construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, coeff in items:
                mono = tuple(sorted(mono, key=lambda s: s.sort_key))
                coeff = Fraction(coeff)
                if coeff:
                    data[mono] = data.get(mono, Fraction(0)) + coeff
                    if not data[mono]:
                        del data[mono]
        self.terms = data

    @staticmethod
    def zero() -> "ZetaPolynomial":
        return ZetaPolynomial()

    @staticmethod
    def one() -> "ZetaPolynomial":
        return ZetaPolynomial({(): Fraction(1)})

    @staticmethod
    def scalar(value) -> "ZetaPolynomial":
        return ZetaPolynomial({(): Fraction(value)})

    @staticmethod
    def const(sym: ConstSymbol, coeff=1) -> "ZetaPolynomial":
        return ZetaPolynomial({(sym,): Fraction(coeff)})

    @staticmethod
    def monomial(symbols, coeff=1) -> "ZetaPolynomial":
        return ZetaPolynomial({tuple(symbols): Fraction(coeff)})

    def __add__(self, other: "ZetaPolynomial") -> "ZetaPolynomial":
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coeff
            if not out[mono]:
                del out[mono]
        return ZetaPolynomial(out)

    def __sub__(self, other: "ZetaPolynomial") -> "ZetaPolynomial":
        return self + other * -1

    def __neg__(self) -> "ZetaPolynomial":
        return self * -1

    def __mul__(self, other) -> "ZetaPolynomial":
        if isinstance(other, ZetaPolynomial):
            out = {}
            for u, cu in self.terms.items():
                for v, cv in other.terms.items():
                    mono = tuple(sorted(u + v, key=lambda s: s.sort_key))
                    out[mono] = out.get(mono, Fraction(0)) + cu * cv
            return ZetaPolynomial(out)
        scalar = Fraction(other)
        return ZetaPolynomial({m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ZetaPolynomial) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0])))

    def coefficient(self, symbols) -> Fraction:
        mono = tuple(sorted(symbols, key=lambda s: s.sort_key))
        return self.terms.get(mono, Fraction(0))

    def substitute_zetabar(self) -> "ZetaPolynomial":
        """Rewrite alternating constants in terms of zeta(k) and log 2.

        Uses the exact depth-one folding: the alternating sum of 1/n^k equals
        (2^(1-k) - 1) zeta(k) for k >= 2 and -log 2 for k = 1.
        """
        out = ZetaPolynomial()
        for mono, coeff in self.terms.items():
            symbols = []
            factor = Fraction(coeff)
            for sym in mono:
                if sym.kind != "zetabar":
                    symbols.append(sym)
                elif sym.index == 1:
                    symbols.append(LOG2)
                    factor = -factor
                else:
                    symbols.append(zeta_sym(sym.index))
                    factor *= Fraction(2, 2**sym.index) - 1
            out = out + ZetaPolynomial.monomial(symbols, factor)
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        ordered = sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0]))
        for i, (mono, coeff) in enumerate(ordered):
            frags = []
            for sym, group in itertools.groupby(mono):
                power = len(tuple(group))
                frags.append(sym.render() if power == 1 else f"{sym.render()}^{power}")
            body = "*".join(frags)
            mag = abs(coeff)
            if not body:
                frag = _frac_str(mag)
            elif mag == 1:
                frag = body
            else:
                frag = f"{_frac_str(mag)}*{body}"
            if i == 0:
                out = frag if coeff > 0 else f"0 - {frag}"
            else:
                out += (" + " if coeff > 0 else " - ") + frag
        return out

    def __repr__(self):
        return f"ZetaPolynomial<{self.render()}>"


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ----------------------------------------------------------------------
# relations

PROVENANCES = ("euler_reduction", "sum_formula", "decomposition", "drinfeld",
               "kummer", "double_shuffle", "database")


class Relation:
    """Equality between nested sums and polynomials in formal constants.

    ``lhs`` and ``rhs_comp`` are composition polynomials, ``rhs_const`` a
    :class:`ZetaPolynomial`; the claim is lhs == rhs_comp + rhs_const.
    """

    __slots__ = ("lhs", "rhs_comp", "rhs_const", "provenance")

    def __init__(self, lhs, rhs_comp=None, rhs_const=None, provenance="database"):
        if provenance not in PROVENANCES:
            raise OutOfRange(f"unknown provenance {provenance!r}")
        self.lhs = lhs
        self.rhs_comp = rhs_comp if rhs_comp is not None else CompositionPolynomial()
        self.rhs_const = rhs_const if rhs_const is not None else ZetaPolynomial()
        self.provenance = provenance

    def scaled(self, scalar) -> "Relation":
        scalar = Fraction(scalar)
        return Relation(self.lhs * scalar, self.rhs_comp * scalar,
                        self.rhs_const * scalar, self.provenance)

    def residual(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
        return relation_residual(self, ctx)

    def render(self) -> str:
        comp_s = self.rhs_comp.render()
        const_s = self.rhs_const.render()
        if comp_s == "0":
            rhs = const_s
        elif const_s == "0":
            rhs = comp_s
        elif const_s.startswith("0 - "):
            rhs = f"{comp_s} - {const_s[4:]}"
        else:
            rhs = f"{comp_s} + {const_s}"
        return f"{self.lhs.render()} == {rhs}"

    def __repr__(self):
        return f"Relation[{self.provenance}]<{self.render()}>"


def zeta_poly_eval(p: ZetaPolynomial,
                   ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Certified enclosure of a constant polynomial's value."""
    with mp.workprec(ctx.working_prec_bits):
        if not p.terms:
            return Ball(0)
        products = []
        for mono, coeff in p:
            term = Ball.exact(coeff)
            for sym in mono:
                term = term * _symbol_ball(sym, ctx)
            products.append(term)
        return ball_sum(products)


def _symbol_ball(sym: ConstSymbol, ctx: PrecisionContext) -> Ball:
    if sym.kind == "zeta":
        return eval_zeta(sym.index, 1, ctx)
    if sym.kind == "zetabar":
        return eval_zeta(sym.index, -1, ctx)
    return -eval_zeta(1, -1, ctx)


def relation_residual(rel: Relation,
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """lhs minus rhs as a certified enclosure; contains 0 for true relations."""
    with mp.workprec(ctx.working_prec_bits):
        lhs = rel.lhs.eval(ctx)
        rhs = rel.rhs_comp.eval(ctx) + zeta_poly_eval(rel.rhs_const, ctx)
        return lhs - rhs


# ----------------------------------------------------------------------
# reduction of the double sum with a trailing 1

def euler_reduction(m: int) -> Relation:
    """2*zeta(m,1) as a polynomial in depth-one values, for m >= 2."""
    if m < 2:
        raise OutOfRange("euler_reduction needs m >= 2")
    lhs = CompositionPolynomial.single(SignedComposition(((m, 1), (1, 1))), 2)
    rhs = ZetaPolynomial.const(zeta_sym(m + 1), m)
    for j in range(1, m - 1):
        rhs = rhs - ZetaPolynomial.monomial((zeta_sym(j + 1), zeta_sym(m - j)))
    return Relation(lhs, None, rhs, "euler_reduction")


# ----------------------------------------------------------------------
# fixed-depth sum formula

def _weak_compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def sum_formula(r: int, s: int) -> Relation:
    """Sum of all depth-r compositions of the shape (a1+2, a2+1, ..., ar+1).

    The a_i range over nonnegative integers with a1 + ... + ar = s; the sum
    collapses to the single depth-one value of weight r + s + 1.
    """
    if r < 1 or s < 0 or (r, s) == (1, 0):
        raise OutOfRange("sum_formula needs r >= 1, s >= 0, (r, s) != (1, 0)")
    lhs = CompositionPolynomial()
    for a in _weak_compositions(s, r):
        parts = ((a[0] + 2, 1),) + tuple((ai + 1, 1) for ai in a[1:])
        lhs = lhs + CompositionPolynomial.single(SignedComposition(parts))
    rhs = ZetaPolynomial.const(zeta_sym(r + s + 1))
    return Relation(lhs, None, rhs, "sum_formula")


# ----------------------------------------------------------------------
# binomially weighted decomposition of a general double sum

def parfrac_check(s: int, t: int, alpha: Fraction, x: Fraction) -> bool:
    """Exact rational check of the two-pole partial-fraction expansion.

    Verifies 1/(x^s (x-alpha)^t) against the binomially weighted sum of
    pure powers of x, alpha and (x-alpha).
    """
    if s < 1 or t < 1:
        raise OutOfRange("parfrac_check needs s, t >= 1")
    alpha, x = Fraction(alpha), Fraction(x)
    if alpha == 0 or x == 0 or x == alpha:
        raise OutOfRange("parfrac_check needs alpha, x nonzero and distinct")
    lhs = Fraction(1) / (x**s * (x - alpha) ** t)
    rhs = Fraction(0)
    for r in range(s):
        rhs += Fraction((-1) ** t * comb(t + r - 1, t - 1)) / (x ** (s - r) * alpha ** (t + r))
    for r in range(t):
        rhs += Fraction(comb(s + r - 1, s - 1) * (-1) ** r) / (alpha ** (s + r) * (x - alpha) ** (t - r))
    return lhs == rhs


def euler_decomposition(s: int, t: int) -> Relation:
    """The double sum zeta(s,t) decomposed with binomial weights, s >= 2, t >= 1.

    The right side mixes shifted double sums zeta(s-r, t+r), products of
    depth-one values, and the weight s+t pair zeta(s+t), zeta(s+t-1, 1).
    """
    if s < 2 or t < 1:
        raise OutOfRange("euler_decomposition needs s >= 2, t >= 1")
    sign_t = (-1) ** t
    lhs = CompositionPolynomial.single(SignedComposition(((s, 1), (t, 1))))
    rhs_comp = CompositionPolynomial()
    rhs_const = ZetaPolynomial.zero()
    for r in range(s - 1):
        coeff = sign_t * comb(t + r - 1, t - 1)
        rhs_comp = rhs_comp + CompositionPolynomial.single(
            SignedComposition(((s - r, 1), (t + r, 1))), coeff)
    for r in range(t - 1):
        coeff = (-1) ** r * comb(s + r - 1, s - 1)
        rhs_const = rhs_const + ZetaPolynomial.monomial(
            (zeta_sym(t - r), zeta_sym(s + r)), coeff)
    edge = sign_t * comb(s + t - 2, s - 1)
    rhs_const = rhs_const - ZetaPolynomial.const(zeta_sym(s + t), edge)
    rhs_comp = rhs_comp - CompositionPolynomial.single(
        SignedComposition(((s + t - 1, 1), (1, 1))), edge)
    return Relation(lhs, rhs_comp, rhs_const, "decomposition")


# ----------------------------------------------------------------------
# two-variable generating function for zeta(m+2, {1}^n)

def drinfeld_expand(M: int, N: int, *, max_order: int = 12) -> dict:
    """Table {(m, n): ZetaPolynomial} reducing zeta(m+2, {1}^n), exactly.

    Expands 1 - exp(sum over k >= 2 of (x^k + y^k - (x+y)^k) zeta(k)/k) with
    dense rational coefficient arrays; the exponential is built from the
    logarithmic-derivative recurrence.  The table is symmetric in (m, n).
    """
    if M < 0 or N < 0:
        raise OutOfRange("drinfeld_expand needs M, N >= 0")
    if M + N > max_order:
        raise OutOfRange(f"drinfeld_expand total order capped at {max_order}")
    imax, jmax = M + 1, N + 1
    # Mixed coefficients of the exponent: pure x^k / y^k terms cancel.
    log_coeff = {(i, j): Fraction(-comb(i + j, i), i + j)
                 for i in range(1, imax + 1) for j in range(1, jmax + 1)}
    expd = {(0, 0): ZetaPolynomial.one()}
    for i in range(imax + 1):
        for j in range(jmax + 1):
            if (i, j) == (0, 0):
                continue
            if i == 0 or j == 0:
                expd[(i, j)] = ZetaPolynomial.zero()
                continue
            acc = ZetaPolynomial.zero()
            for u in range(1, i + 1):
                for v in range(1, j + 1):
                    prev = expd[(i - u, j - v)]
                    if prev:
                        acc = acc + prev * ZetaPolynomial.const(
                            zeta_sym(u + v), log_coeff[(u, v)] * Fraction(u, i))
            expd[(i, j)] = acc
    return {(m, n): -expd[(m + 1, n + 1)]
            for m in range(M + 1) for n in range(N + 1)}


def drinfeld_relation(m: int, n: int, table: dict = None) -> Relation:
    """zeta(m+2, {1}^n) == its depth-one reduction from the table."""
    if table is None or (m, n) not in table:
        table = drinfeld_expand(m, n)
    parts = ((m + 2, 1),) + ((1, 1),) * n
    lhs = CompositionPolynomial.single(SignedComposition(parts))
    return Relation(lhs, None, table[(m, n)], "drinfeld")


# ----------------------------------------------------------------------
# hypergeometric summation at -1

def kummer_gamma_coefficients() -> dict:
    """Linear coefficients of the Euler constant in the gamma-ratio exponent.

    The four gamma factors carry arguments x/2, x-y, x, x/2-y with signs
    +, +, -, -; both linear coefficients must vanish for the expansion to be
    free of the Euler constant.
    """
    # (coefficient of x, coefficient of y) per signed argument
    args = [(Fraction(1, 2), Fraction(0)), (Fraction(1), Fraction(-1)),
            (Fraction(-1), Fraction(0)), (Fraction(-1, 2), Fraction(1))]
    return {"x": -sum(a for a, _ in args), "y": -sum(b for _, b in args)}


def _hp_series_mul(f: dict, g: dict, cap: int) -> dict:
    out = {}
    for (dx1, dy1, h1, p1), c1 in f.items():
        for (dx2, dy2, h2, p2), c2 in g.items():
            dx, dy = dx1 + dx2, dy1 + dy2
            if dx + dy > cap:
                continue
            key = (dx, dy, tuple(sorted(h1 + h2)), p1 + p2)
            out[key] = out.get(key, Fraction(0)) + c1 * c2
            if not out[key]:
                del out[key]
    return out


def _kummer_lhs_exponent(cap: int) -> dict:
    """Exponent of the term-ratio product, over formal prefix-power symbols.

    Keys are (x-degree, y-degree, sorted tuple of prefix-sum orders, extra
    power of the outer index); the prefix-sum symbol of order i stands for
    the sum of j^(-i) over j below the outer index.
    """
    expo = {}

    def add(key, val):
        if val:
            expo[key] = expo.get(key, Fraction(0)) + val
            if not expo[key]:
                del expo[key]

    for i in range(1, cap + 1):
        outer = Fraction((-1) ** (i + 1), i)
        add((i, 0, (i,), 0), outer)
        add((0, i, (i,), 0), outer)
        for j in range(i + 1):
            c = comb(i, j) * (-1) ** j * outer
            add((i - j, j, (i,), 0), -c)
            add((i - j, j, (), i), -c)
    return expo


def _series_exp_hp(expo: dict, cap: int) -> dict:
    result = {(0, 0, (), 0): Fraction(1)}
    power = {(0, 0, (), 0): Fraction(1)}
    for m in range(1, cap + 1):
        power = _hp_series_mul(power, expo, cap)
        power = {k: v / m for k, v in power.items()}
        for key, val in power.items():
            result[key] = result.get(key, Fraction(0)) + val
            if not result[key]:
                del result[key]
    return result


def _stuffle_right(poly: CompositionPolynomial,
                   single: SignedComposition) -> CompositionPolynomial:
    out = CompositionPolynomial()
    for c, coeff in poly:
        out = out + stuffle(c, single) * coeff
    return out


def _prefix_product_value(hs: tuple, pweight: int) -> CompositionPolynomial:
    """Alternating outer sum against a product of prefix sums, as compositions.

    The product of prefix sums of orders hs, taken below the outer index k
    and weighted by (-1)^k k^(-2-pweight), is a polynomial in compositions
    whose first part is alternating of weight 2 + pweight.
    """
    head = (2 + pweight, -1)
    if not hs:
        return CompositionPolynomial.single(SignedComposition((head,)))
    prod = CompositionPolynomial.single(SignedComposition(((hs[0], 1),)))
    for order in hs[1:]:
        prod = _stuffle_right(prod, SignedComposition(((order, 1),)))
    return prod.prepend(head)


def _kummer_rhs_table(order: int) -> dict:
    """Coefficients {(a, b): ZetaPolynomial} of the gamma-ratio expansion."""
    gamma = kummer_gamma_coefficients()
    if gamma["x"] or gamma["y"]:
        raise RuntimeError("gamma coefficient failed to cancel in gamma ratio")
    # exponent: sum over i >= 2 of ((-1)^i zeta(i)/i) [(x/2)^i + (x-y)^i
    #                                                  - x^i - (x/2-y)^i]
    expo = {}
    for i in range(2, order + 1):
        outer = Fraction((-1) ** i, i)
        sym = zeta_sym(i)

        def add(dx, dy, val):
            if val:
                piece = ZetaPolynomial.const(sym, val * outer)
                expo[(dx, dy)] = expo[(dx, dy)] + piece if (dx, dy) in expo else piece

        add(i, 0, Fraction(1, 2**i) - 1)
        for j in range(i + 1):
            binom = comb(i, j) * (-1) ** j
            add(i - j, j, Fraction(binom))
            add(i - j, j, -Fraction(binom, 2 ** (i - j)))
    expo = {k: v for k, v in expo.items() if v}
    # exponential by accumulating powers; minimum degree of the exponent is 2
    result = {(0, 0): ZetaPolynomial.one()}
    power = {(0, 0): ZetaPolynomial.one()}
    for m in range(1, order // 2 + 1):
        nxt = {}
        for (dx1, dy1), p1 in power.items():
            for (dx2, dy2), p2 in expo.items():
                dx, dy = dx1 + dx2, dy1 + dy2
                if dx + dy > order:
                    continue
                prod = p1 * p2 * Fraction(1, m)
                nxt[(dx, dy)] = nxt[(dx, dy)] + prod if (dx, dy) in nxt else prod
        power = {k: v for k, v in nxt.items() if v}
        for key, val in power.items():
            result[key] = result[key] + val if key in result else val
    return {k: v for k, v in result.items() if v}


def kummer_coefficient(a: int, b: int, order: int = None) -> Relation:
    """Relation from the coefficient of x^a y^b in the summation theorem.

    Depth-one alternating terms of the double-sum side are folded into the
    constant polynomial; deeper terms stay as compositions on the left.
    """
    if a < 1 or b < 1:
        raise OutOfRange("kummer_coefficient needs a, b >= 1")
    if order is None:
        order = a + b
    if order < a + b:
        raise OutOfRange("expansion order below requested coefficient")
    exp_lhs = _series_exp_hp(_kummer_lhs_exponent(order - 1), order - 1)
    lhs = CompositionPolynomial()
    for (dx, dy, hs, pw), coeff in exp_lhs.items():
        if (dx, dy) == (a - 1, b - 1):
            lhs = lhs + _prefix_product_value(hs, pw) * coeff
    rhs_const = _kummer_rhs_table(order).get((a, b), ZetaPolynomial.zero())
    deep = CompositionPolynomial()
    for c, coeff in lhs:
        if c.depth == 1:
            s, e = c.parts[0]
            sym = zeta_sym(s) if e == 1 else zetabar_sym(s)
            rhs_const = rhs_const - ZetaPolynomial.const(sym, coeff)
        else:
            deep = deep + CompositionPolynomial.single(c, coeff)
    return Relation(deep, None, rhs_const, "kummer")


def kummer_expand(order: int = 3) -> Relation:
    """The xy^2 coefficient relation, folded to plain constants and cleared.

    With alternating depth-one constants rewritten via their zeta(k)/log 2
    closed forms and denominators cleared, the result is the eight-fold
    evaluation of the alternating double sum.
    """
    if order < 3:
        raise OutOfRange("kummer_expand needs order >= 3")
    raw = kummer_coefficient(1, 2, order=order)
    folded = Relation(raw.lhs, raw.rhs_comp, raw.rhs_const.substitute_zetabar(),
                      "kummer")
    denoms = [c.denominator for _, c in folded.lhs]
    denoms += [c.denominator for _, c in folded.rhs_comp]
    denoms += [c.denominator for _, c in folded.rhs_const]
    return folded.scaled(lcm(*denoms)) if denoms else folded


# ----------------------------------------------------------------------
# shuffle against stuffle

def double_shuffle(u: SignedComposition, v: SignedComposition) -> Relation:
    """Index-merged product == interleaving product, for convergent inputs."""
    if not (u.convergent() and v.convergent()):
        raise DivergentComposition("double_shuffle needs convergent compositions")
    st = stuffle(u, v)
    sh = shuffle(comp_to_word(u), comp_to_word(v)).to_compositions()
    return Relation(st, sh, None, "double_shuffle")


def dejavu_relation() -> Relation:
    """Eliminating between the two signed depth-(2,1) shuffle identities.

    Adding the residuals of the double-shuffle relations for the pairs
    (alternating 2, alternating 1) and (plain 2, alternating 1) cancels
    everything except the alternating double sum and two depth-one values.
    """
    r1 = double_shuffle(SignedComposition(((2, -1),)), SignedComposition(((1, -1),)))
    r2 = double_shuffle(SignedComposition(((2, 1),)), SignedComposition(((1, -1),)))
    combined = (r1.lhs - r1.rhs_comp) + (r2.lhs - r2.rhs_comp)
    lhs = CompositionPolynomial.single(SignedComposition(((2, -1), (1, 1))), 2)
    survivors = (CompositionPolynomial.single(SignedComposition(((3, -1),)))
                 + CompositionPolynomial.single(SignedComposition(((3, 1),))))
    if combined != survivors - lhs:
        raise RuntimeError("shuffle/stuffle elimination produced unexpected terms")
    rhs = ZetaPolynomial.const(zeta_sym(3)) + ZetaPolynomial.const(zetabar_sym(3))
    return Relation(lhs, None, rhs, "double_shuffle")


# ----------------------------------------------------------------------
# reduction of the two-index double sum with a total-weight factor

def witten_reduce(r: int, s: int, t: int) -> CompositionPolynomial:
    """Reduce the double sum over m, n, m+n to depth <= 2 compositions.

    Recurses on W(r,s,t) = W(r-1,s,t+1) + W(r,s-1,t+1) down to the product
    base at t = 0 and the single nested sums at r = 0 or s = 0.
    """
    if min(r, s, t) < 0 or not witten_convergent(r, s, t):
        raise NonConvergent(f"witten_reduce needs a convergent triple, got {(r, s, t)}")
    return _witten_reduce(r, s, t, {})


def _witten_reduce(r: int, s: int, t: int, memo: dict) -> CompositionPolynomial:
    if r > s:
        r, s = s, r
    key = (r, s, t)
    if key in memo:
        return memo[key]
    single = CompositionPolynomial.single
    if r == 0 and s == 0:
        out = single(SignedComposition(((t - 1, 1),))) - single(SignedComposition(((t, 1),)))
    elif r == 0:
        out = single(SignedComposition(((t, 1), (s, 1))))
    elif t == 0:
        out = stuffle(SignedComposition(((r, 1),)), SignedComposition(((s, 1),)))
    else:
        out = _witten_reduce(r - 1, s, t + 1, memo) + _witten_reduce(r, s - 1, t + 1, memo)
    memo[key] = out
    return out


# ----------------------------------------------------------------------
# closed forms kept as a small database

def database_relations() -> tuple:
    """Closed forms for low-weight sums, checkable via relation_residual."""
    single = CompositionPolynomial.single
    const = ZetaPolynomial.const

    def c(*parts):
        return SignedComposition(parts)

    z2log2 = ZetaPolynomial.monomial((zeta_sym(2), LOG2), Fraction(3, 2))
    entries = (
        (single(c((2, 1), (1, 1))), const(zeta_sym(3))),
        (single(c((2, -1), (1, 1))), const(zeta_sym(3), Fraction(1, 8))),
        (single(c((3, 1), (1, 1))), const(zeta_sym(4), Fraction(1, 4))),
        (single(c((2, 1), (2, 1))), const(zeta_sym(4), Fraction(3, 4))),
        (single(c((3, -1))), const(zeta_sym(3), Fraction(-3, 4))),
        (single(c((1, -1))), const(LOG2, -1)),
        (single(c((2, 1), (1, -1))), const(zeta_sym(3)) - z2log2),
        (single(c((2, -1), (1, -1))), z2log2 - const(zeta_sym(3), Fraction(13, 8))),
    )
    return tuple(Relation(lhs, None, rhs, "database") for lhs, rhs in entries)
