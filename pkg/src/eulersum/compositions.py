"""Signed compositions (index lists of nested sums) and their quasi-shuffle algebra.

A part (s, sigma) contributes sigma**k / k**s to the nested sum; sigma = -1 is
rendered as a negative exponent, so "(-2,1)" means the alternating-outer sum
of weight 3.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from .errors import OutOfRange


@total_ordering
class SignedComposition:
    """Immutable sequence of (exponent, sign) parts, outermost first."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        norm = []
        for p in parts:
            if isinstance(p, int):
                if p == 0:
                    raise OutOfRange("composition parts must be nonzero integers")
                norm.append((abs(p), 1 if p > 0 else -1))
            else:
                s, sigma = p
                if not isinstance(s, int) or s < 1 or sigma not in (1, -1):
                    raise OutOfRange(f"bad composition part {p!r}")
                norm.append((s, sigma))
        if not norm:
            raise OutOfRange("composition must be nonempty")
        object.__setattr__(self, "parts", tuple(norm))

    def __setattr__(self, *a):
        raise AttributeError("SignedComposition is immutable")

    # --- basic queries ---

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(s for s, _ in self.parts)

    def signed_parts(self) -> tuple:
        """Parts as signed integers, -s meaning sign -1."""
        return tuple(s * sigma for s, sigma in self.parts)

    def convergent(self) -> bool:
        """The nested sum converges unless it starts with an unsigned 1."""
        s, sigma = self.parts[0]
        return not (s == 1 and sigma == 1)

    def all_positive(self) -> bool:
        return all(sigma == 1 for _, sigma in self.parts)

    # --- structural helpers ---

    def head(self):
        return self.parts[0]

    def tail(self):
        return SignedComposition(self.parts[1:]) if len(self.parts) > 1 else None

    def cons(self, part) -> "SignedComposition":
        return SignedComposition((part,) + self.parts)

    def __eq__(self, other):
        return isinstance(other, SignedComposition) and self.parts == other.parts

    def __lt__(self, other):
        return self.parts < other.parts

    def __hash__(self):
        return hash(self.parts)

    def render(self) -> str:
        return "(" + ",".join(str(p) for p in self.signed_parts()) + ")"

    def __repr__(self):
        return f"SignedComposition{self.render()}"


def comp(*signed_parts) -> SignedComposition:
    """Shorthand: comp(2, 1) or comp(-2, 1)."""
    return SignedComposition(signed_parts)


def parse_composition(text: str) -> SignedComposition:
    """Inverse of SignedComposition.render: "(2,-1)" and friends."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        parts = [int(tok) for tok in body.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise OutOfRange(f"cannot parse composition {text!r}") from exc
    return SignedComposition(parts)


class CompositionPolynomial:
    """Formal rational combination of signed compositions."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for c, coeff in (terms.items() if isinstance(terms, dict) else terms):
                coeff = Fraction(coeff)
                if coeff:
                    data[c] = data.get(c, Fraction(0)) + coeff
                    if not data[c]:
                        del data[c]
        self.terms = data

    @staticmethod
    def single(c, coeff=1) -> "CompositionPolynomial":
        return CompositionPolynomial({c: Fraction(coeff)})

    def __add__(self, other):
        out = dict(self.terms)
        for c, coeff in other.terms.items():
            out[c] = out.get(c, Fraction(0)) + coeff
            if not out[c]:
                del out[c]
        return CompositionPolynomial(out)

    def __sub__(self, other):
        return self + (other * Fraction(-1))

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return CompositionPolynomial({c: coeff * scalar
                                      for c, coeff in self.terms.items()})

    __rmul__ = __mul__

    def prepend(self, part) -> "CompositionPolynomial":
        return CompositionPolynomial({c.cons(part): coeff
                                      for c, coeff in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, CompositionPolynomial) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def max_depth(self) -> int:
        return max((c.depth for c in self.terms), default=0)

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, (c, coeff) in enumerate(sorted(self.terms.items())):
            body = f"zeta{c.render()}"
            mag = abs(coeff)
            frag = body if mag == 1 else f"{_coeff_str(mag)}*{body}"
            if i == 0:
                out = frag if coeff > 0 else f"0 - {frag}"
            else:
                out += (" + " if coeff > 0 else " - ") + frag
        return out

    def __repr__(self):
        return f"CompositionPolynomial<{self.render()}>"

    def eval(self, ctx=None):
        """Evaluate numerically; imported lazily to keep this module exact."""
        from .mzv import eval_poly
        return eval_poly(self, ctx)


def _coeff_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def stuffle(u: SignedComposition, v: SignedComposition) -> CompositionPolynomial:
    """Quasi-shuffle product: interleave parts or merge two heads by adding
    exponents and multiplying signs."""
    out = CompositionPolynomial()
    for parts, coeff in _stuffle(u.parts, v.parts).items():
        out = out + CompositionPolynomial.single(SignedComposition(parts), coeff)
    return out


def _stuffle(u: tuple, v: tuple) -> dict:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    (s1, e1), (s2, e2) = u[0], v[0]
    out = {}
    for head, rest in (((s1, e1), _stuffle(u[1:], v)),
                       ((s2, e2), _stuffle(u, v[1:])),
                       ((s1 + s2, e1 * e2), _stuffle(u[1:], v[1:]))):
        for parts, coeff in rest.items():
            key = (head,) + parts
            out[key] = out.get(key, 0) + coeff
    return out
