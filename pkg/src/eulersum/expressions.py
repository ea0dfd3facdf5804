"""Expression calculus for the command-line front end.

A small arithmetic language over the package's evaluators: rational
literals, the constants ``pi`` and ``log2``, and function calls that
dispatch to the series, quadrature, and special-value engines.  The
module provides a tokenizer with byte offsets, a recursive-descent
parser producing immutable syntax trees, a canonical renderer (parsing
a rendered tree reproduces the tree), and a Ball evaluator.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := primary ('^' uint)?
    primary := number | 'pi' | 'log2' | call | '(' expr ')'

Calls take literal arguments, not sub-expressions: signed integers for
``zeta`` (negative means the alternating sign pattern), signed rationals
for ``li`` and the modulus slot of ``qzeta``, bare identifiers for
``int``.  ``qzeta`` separates the modulus from the exponent list with a
semicolon.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .balls import Ball
from .compositions import SignedComposition
from .errors import ArityError, DomainError, ExpressionSyntaxError
from .mzv import eval_mzv
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .qzeta import eval_qmzv
from .quadrature import integrate
from .stirling import eval_zeta_via_stirling
from .witten import eval_witten
from .zeta3 import zeta3_apery, zeta3_bbp, zeta3_ramanujan
from .zetas import eval_polylog, eval_zeta

__all__ = [
    "Number", "Const", "Call", "BinOp", "Power",
    "parse", "render", "eval_expr", "expression_depth", "default_tolerance",
]


# ----------------------------------------------------------------------
# syntax trees

def _is_decimal_fraction(q: Fraction) -> bool:
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


@dataclass(frozen=True)
class Number:
    """Nonnegative literal whose denominator divides a power of ten.

    Negative quantities are written with the subtraction operator;
    general rationals with the division operator.  The restriction keeps
    the rendering of a literal re-parseable as the same literal.
    """

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value < 0:
            raise DomainError("literals are nonnegative; use subtraction")
        if not _is_decimal_fraction(self.value):
            raise DomainError(
                f"{self.value} is not a decimal literal; use division")


@dataclass(frozen=True)
class Const:
    """Named constant: 'pi' or 'log2'."""

    name: str

    def __post_init__(self):
        if self.name not in ("pi", "log2"):
            raise DomainError(f"unknown constant {self.name!r}")


@dataclass(frozen=True)
class Call:
    """Function call with literal arguments (ints, Fractions, strings)."""

    func: str
    args: tuple


@dataclass(frozen=True)
class BinOp:
    """Binary operator node; op is one of '+', '-', '*', '/'."""

    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Power:
    """Nonnegative integer power of a primary."""

    base: object
    exponent: int


# ----------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<number>\d+(?:\.\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\^|[-+*/(),;])"
)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(
                f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), _byte_offset(text, pos)))
        pos = m.end()
    return tokens


# ----------------------------------------------------------------------
# parser

_FUNCTIONS = ("zeta", "qzeta", "li", "witten", "int",
              "apery", "bbp", "ramanujan", "stirlingzeta")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    # token plumbing -------------------------------------------------
    def _peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return (None, "", len(self.text.encode("utf-8")))

    def _advance(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def _expect_op(self, op: str):
        kind, text, off = self._peek()
        if kind != "op" or text != op:
            raise ExpressionSyntaxError(
                f"expected {op!r}" + (f", found {text!r}" if kind else ""), off)
        return self._advance()

    def _accept_op(self, *ops):
        kind, text, _ = self._peek()
        if kind == "op" and text in ops:
            return self._advance()[1]
        return None

    # grammar --------------------------------------------------------
    def parse(self):
        node = self._expr()
        kind, text, off = self._peek()
        if kind is not None:
            raise ExpressionSyntaxError(f"trailing input {text!r}", off)
        return node

    def _expr(self):
        node = self._term()
        while True:
            op = self._accept_op("+", "-")
            if op is None:
                return node
            node = BinOp(op, node, self._term())

    def _term(self):
        node = self._factor()
        while True:
            op = self._accept_op("*", "/")
            if op is None:
                return node
            node = BinOp(op, node, self._factor())

    def _factor(self):
        node = self._primary()
        if self._accept_op("^") is None:
            return node
        kind, text, off = self._peek()
        if kind != "number" or "." in text:
            raise ExpressionSyntaxError("expected an integer exponent", off)
        self._advance()
        return Power(node, int(text))

    def _primary(self):
        kind, text, off = self._peek()
        if kind == "number":
            self._advance()
            return Number(Fraction(text))
        if kind == "name":
            self._advance()
            if text in ("pi", "log2"):
                return Const(text)
            if text in _FUNCTIONS:
                return self._call(text, off)
            raise ExpressionSyntaxError(f"unknown name {text!r}", off)
        if kind == "op" and text == "(":
            self._advance()
            node = self._expr()
            self._expect_op(")")
            return node
        raise ExpressionSyntaxError(
            "expected a number, constant, call, or parenthesis", off)

    # call arguments -------------------------------------------------
    def _literal(self):
        """Signed rational literal: ['-'] number ['/' uint]."""
        sign = -1 if self._accept_op("-") else 1
        kind, text, off = self._peek()
        if kind != "number":
            raise ExpressionSyntaxError("expected a numeric argument", off)
        self._advance()
        value = Fraction(text)
        if self._accept_op("/"):
            kind, text, off = self._peek()
            if kind != "number" or "." in text:
                raise ExpressionSyntaxError("expected an integer denominator",
                                            off)
            self._advance()
            if int(text) == 0:
                raise DomainError("zero denominator in literal")
            value /= int(text)
        return sign * value

    def _int_argument(self, func: str):
        off = self._peek()[2]
        value = self._literal()
        if value.denominator != 1:
            raise DomainError(
                f"{func} takes integer arguments, got {value} at offset {off}")
        return int(value)

    def _call(self, func: str, name_off: int):
        self._expect_op("(")
        if func in ("apery", "bbp"):
            self._expect_op(")")
            return Call(func, ())
        if func == "int":
            kind, text, off = self._peek()
            if kind != "name":
                raise ExpressionSyntaxError("expected a catalog entry name",
                                            off)
            self._advance()
            self._expect_op(")")
            return Call(func, (text,))
        if func == "qzeta":
            q = self._literal()
            if not (0 < q < 1):
                raise DomainError(f"qzeta modulus must lie in (0,1), got {q}")
            self._expect_op(";")
            exponents = [self._int_argument(func)]
            while self._accept_op(","):
                exponents.append(self._int_argument(func))
            self._expect_op(")")
            for s in exponents:
                if s < 1:
                    raise DomainError(f"qzeta exponents must be >= 1, got {s}")
            return Call(func, (q, tuple(exponents)))

        args = [self._literal()]
        while self._accept_op(","):
            args.append(self._literal())
        self._expect_op(")")

        if func == "zeta":
            for a in args:
                if a.denominator != 1:
                    raise DomainError(f"zeta takes integer exponents, got {a}")
                if a == 0:
                    raise DomainError("zeta exponent must be nonzero")
            return Call(func, tuple(int(a) for a in args))
        if func == "li":
            if len(args) != 2:
                raise ArityError(f"li takes 2 arguments, got {len(args)}")
            s, x = args
            if s.denominator != 1 or s < 1:
                raise DomainError(f"li order must be a positive integer, got {s}")
            if abs(x) > 1:
                raise DomainError(f"li argument must have |x| <= 1, got {x}")
            return Call(func, (int(s), x))
        if func == "witten":
            if len(args) != 3:
                raise ArityError(f"witten takes 3 arguments, got {len(args)}")
            for a in args:
                if a.denominator != 1 or a < 0:
                    raise DomainError(
                        f"witten takes nonnegative integers, got {a}")
            return Call(func, tuple(int(a) for a in args))
        if func == "ramanujan":
            if len(args) != 1:
                raise ArityError(
                    f"ramanujan takes 1 argument, got {len(args)}")
            k = args[0]
            if k.denominator != 1 or k < 1:
                raise DomainError(f"ramanujan cutoff must be >= 1, got {k}")
            return Call(func, (int(k),))
        if func == "stirlingzeta":
            if len(args) != 2:
                raise ArityError(
                    f"stirlingzeta takes 2 arguments, got {len(args)}")
            m, n = args
            if m.denominator != 1 or n.denominator != 1 or m < 1 or n < m:
                raise DomainError(
                    f"stirlingzeta needs integers 1 <= m <= N, got {m}, {n}")
            return Call(func, (int(m), int(n)))
        raise ExpressionSyntaxError(f"unknown function {func!r}", name_off)


def parse(text: str):
    """Parse an expression; raises ExpressionSyntaxError with a byte offset."""
    if not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    return _Parser(text).parse()


# ----------------------------------------------------------------------
# rendering

def _decimal_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    k = max(twos, fives)
    digits = q.numerator * 10 ** k // q.denominator
    text = str(digits).rjust(k + 1, "0")
    return f"{text[:-k]}.{text[-k:]}"


def _arg_str(a) -> str:
    if isinstance(a, str):
        return a
    if isinstance(a, Fraction) and a.denominator != 1:
        return f"{a.numerator}/{a.denominator}"
    return str(int(a))


_LEVEL = {"+": 1, "-": 1, "*": 2, "/": 2}


def _render(e, min_level: int) -> str:
    if isinstance(e, Number):
        return _decimal_str(e.value)
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Call):
        if e.func == "qzeta":
            q, exponents = e.args
            inner = f"{_arg_str(q)}; " + ",".join(str(s) for s in exponents)
        else:
            inner = ",".join(_arg_str(a) for a in e.args)
        return f"{e.func}({inner})"
    if isinstance(e, Power):
        # the grammar powers only primaries, so non-atomic bases get parens
        text = f"{_render(e.base, 4)}^{e.exponent}"
        return f"({text})" if min_level > 3 else text
    level = _LEVEL[e.op]
    left = _render(e.left, level)
    right = _render(e.right, level + 1)
    text = f"{left} {e.op} {right}" if level == 1 else f"{left}{e.op}{right}"
    return f"({text})" if level < min_level else text


def render(e) -> str:
    """Canonical text form; parse(render(e)) reproduces e."""
    return _render(e, 0)


# ----------------------------------------------------------------------
# depth scan and default tolerances

def expression_depth(e) -> int:
    """Deepest nested-sum depth referenced anywhere in the expression."""
    if isinstance(e, Call):
        if e.func == "zeta":
            return len(e.args)
        if e.func == "qzeta":
            return len(e.args[1])
        if e.func in ("witten", "int"):
            return 2
        return 1
    if isinstance(e, BinOp):
        return max(expression_depth(e.left), expression_depth(e.right))
    if isinstance(e, Power):
        return expression_depth(e.base)
    return 0


def default_tolerance(e) -> mpf:
    """Checking tolerance by depth: 1e-10 through depth 2, then 1e-8, 1e-6."""
    d = expression_depth(e)
    if d <= 2:
        return mpf("1e-10")
    if d <= 4:
        return mpf("1e-8")
    return mpf("1e-6")


# ----------------------------------------------------------------------
# evaluation

def _pi_ball(ctx: PrecisionContext) -> Ball:
    with mp.workprec(ctx.working_prec_bits):
        value = +mp.pi
        return Ball(value, abs(value) * mpf(2) ** (-ctx.working_prec_bits + 2))


def eval_expr(e, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Ball:
    """Ball enclosure for the expression's value under ctx's budget."""
    with mp.workprec(ctx.working_prec_bits):
        return _eval(e, ctx)


def _eval(e, ctx: PrecisionContext) -> Ball:
    if isinstance(e, Number):
        return Ball.exact(e.value)
    if isinstance(e, Const):
        if e.name == "pi":
            return _pi_ball(ctx)
        return -eval_zeta(1, -1, ctx)
    if isinstance(e, Call):
        return _eval_call(e, ctx)
    if isinstance(e, Power):
        return _eval(e.base, ctx) ** e.exponent
    left = _eval(e.left, ctx)
    right = _eval(e.right, ctx)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    try:
        return left / right
    except ZeroDivisionError:
        raise DomainError("division by a quantity indistinguishable from zero")


def _eval_call(e: Call, ctx: PrecisionContext) -> Ball:
    if e.func == "zeta":
        return eval_mzv(SignedComposition(e.args), ctx)
    if e.func == "qzeta":
        q, exponents = e.args
        return eval_qmzv(q, SignedComposition(exponents), ctx)
    if e.func == "li":
        return eval_polylog(e.args[0], e.args[1], ctx)
    if e.func == "witten":
        return eval_witten(*e.args, ctx=ctx)
    if e.func == "int":
        return integrate(e.args[0], ctx=ctx)
    if e.func == "apery":
        return zeta3_apery(ctx)
    if e.func == "bbp":
        return zeta3_bbp(ctx)
    if e.func == "ramanujan":
        return zeta3_ramanujan(e.args[0], ctx)
    return eval_zeta_via_stirling(e.args[0], e.args[1], ctx)
