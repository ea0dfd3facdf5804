"""Words over {a, b, c} for iterated-integral encodings of nested sums.

Letter a stands for the differential form dt/t, b for dt/(1-t), c for
-dt/(1+t).  comp_to_word encodes a convergent signed composition by emitting
a^(s_j - 1) followed by b or c according to the running sign product;
word_to_comp inverts this.  Duality reverses an all-positive word and swaps
a with b.
"""

from __future__ import annotations

from fractions import Fraction

from .compositions import CompositionPolynomial, SignedComposition
from .errors import (DivergentComposition, InadmissibleWord, NoSolution,
                     OutOfRange, UnderdeterminedSolution, UnsupportedAlphabet,
                     UnsupportedSigns)

LETTERS = ("a", "b", "c")


class Word:
    """Immutable word over the three-letter alphabet."""

    __slots__ = ("text",)

    def __init__(self, text):
        if isinstance(text, Word):
            text = text.text
        text = "".join(text)
        for ch in text:
            if ch not in LETTERS:
                raise OutOfRange(f"letter {ch!r} not in alphabet {LETTERS}")
        object.__setattr__(self, "text", text)

    def __setattr__(self, *a):
        raise AttributeError("Word is immutable")

    def __len__(self):
        return len(self.text)

    def __iter__(self):
        return iter(self.text)

    def __eq__(self, other):
        return isinstance(other, Word) and self.text == other.text

    def __lt__(self, other):
        return (len(self.text), self.text) < (len(other.text), other.text)

    def __hash__(self):
        return hash(self.text)

    def __add__(self, other):
        return Word(self.text + Word(other).text)

    def admissible(self) -> bool:
        """Nonempty, starts with a, ends with b or c."""
        t = self.text
        return bool(t) and t[0] == "a" and t[-1] in ("b", "c")

    def integrable(self) -> bool:
        """Readable as a convergent nested sum: starts a or c, ends b or c."""
        t = self.text
        return bool(t) and t[0] in ("a", "c") and t[-1] in ("b", "c")

    def uses_only_ab(self) -> bool:
        return "c" not in self.text

    def render(self) -> str:
        return self.text

    def __repr__(self):
        return f"Word({self.text!r})"


def comp_to_word(c: SignedComposition) -> Word:
    """Encode a convergent composition as a word."""
    if not c.convergent():
        raise DivergentComposition(f"{c.render()} starts with an unsigned 1")
    out = []
    cum = 1
    for s, sigma in c.parts:
        cum *= sigma
        out.append("a" * (s - 1))
        out.append("b" if cum == 1 else "c")
    return Word("".join(out))


def word_to_comp(w: Word) -> SignedComposition:
    """Decode a word back into the signed composition it encodes."""
    w = Word(w)
    if not w.integrable():
        raise InadmissibleWord(f"{w.render()!r} does not encode a convergent sum")
    parts = []
    prev_cum = 1
    run = 0
    for ch in w.text:
        if ch == "a":
            run += 1
        else:
            cum = 1 if ch == "b" else -1
            parts.append((run + 1, cum * prev_cum))
            prev_cum = cum
            run = 0
    # integrable() guarantees the word ends with b or c, so run == 0 here
    return SignedComposition(parts)


def dualize(c: SignedComposition) -> SignedComposition:
    """Reverse the encoding word and swap a <-> b (all-positive sums only)."""
    if not c.all_positive():
        raise UnsupportedSigns(f"{c.render()} has signed parts")
    w = comp_to_word(c)
    swapped = "".join("b" if ch == "a" else "a" for ch in reversed(w.text))
    return word_to_comp(Word(swapped))


class WordPolynomial:
    """Formal rational combination of words with concatenation product."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for w, coeff in (terms.items() if isinstance(terms, dict) else terms):
                w = Word(w)
                coeff = Fraction(coeff)
                if coeff:
                    data[w] = data.get(w, Fraction(0)) + coeff
                    if not data[w]:
                        del data[w]
        self.terms = data

    @staticmethod
    def single(w, coeff=1) -> "WordPolynomial":
        return WordPolynomial({Word(w): Fraction(coeff)})

    def __add__(self, other):
        out = dict(self.terms)
        for w, coeff in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + coeff
            if not out[w]:
                del out[w]
        return WordPolynomial(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, scalar) -> "WordPolynomial":
        scalar = Fraction(scalar)
        return WordPolynomial({w: c * scalar for w, c in self.terms.items()})

    def __mul__(self, other):
        """Concatenation product, bilinear in both arguments."""
        out = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                w = u + v
                out[w] = out.get(w, Fraction(0)) + cu * cv
        return WordPolynomial(out)

    def __pow__(self, n: int):
        result = WordPolynomial.single("")
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, WordPolynomial) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def to_compositions(self) -> CompositionPolynomial:
        return CompositionPolynomial({word_to_comp(w): c
                                      for w, c in self.terms.items()})

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, (w, coeff) in enumerate(sorted(self.terms.items())):
            body = w.render() or "1"
            mag = abs(coeff)
            frag = body if mag == 1 else f"{_frac_str(mag)}*{body}"
            if i == 0:
                out = frag if coeff > 0 else f"-{frag}"
            else:
                out += (" + " if coeff > 0 else " - ") + frag
        return out

    def __repr__(self):
        return f"WordPolynomial<{self.render()}>"


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def shuffle(u: Word, v: Word) -> WordPolynomial:
    """All interleavings of u and v preserving each word's internal order."""
    u, v = Word(u), Word(v)
    out = {}
    for text, coeff in _shuffle(u.text, v.text).items():
        out[Word(text)] = Fraction(coeff)
    return WordPolynomial(out)


def _shuffle(u: str, v: str) -> dict:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}
    for text, coeff in _shuffle(u[1:], v).items():
        key = u[0] + text
        out[key] = out.get(key, 0) + coeff
    for text, coeff in _shuffle(u, v[1:]).items():
        key = v[0] + text
        out[key] = out.get(key, 0) + coeff
    return out


# --- letter transforms -----------------------------------------------------

# Images of a and b under each supported change of variables; the transform of
# a word is the multilinear expansion of the concatenation of letter images.
_LETTER_IMAGES = {
    "identity": {"a": {"a": 1}, "b": {"b": 1}},
    "sumsigns": {"a": {"a": 2}, "b": {"b": 1, "c": 1}},
    "landen": {"a": {"a": 1, "c": 1}, "b": {"b": 1, "c": -1}},
    "quadlanden": {"a": {"a": 1, "c": 2}, "b": {"b": 2, "c": -2}},
}

TRANSFORMS = ("identity", "tau", "sumsigns", "landen", "quadlanden")


def apply_transform(name: str, w: Word) -> WordPolynomial:
    """Expand the image of an {a,b}-word under the named transform."""
    w = Word(w)
    if name not in TRANSFORMS:
        raise OutOfRange(f"unknown transform {name!r}")
    if not w.uses_only_ab():
        raise UnsupportedAlphabet(f"{w.render()!r} uses letter c")
    if name == "tau":
        flipped = "".join("b" if ch == "a" else "a" for ch in reversed(w.text))
        return WordPolynomial.single(flipped)
    images = _LETTER_IMAGES[name]
    result = WordPolynomial.single("")
    for ch in w.text:
        result = result * WordPolynomial(
            {Word(letter): Fraction(c) for letter, c in images[ch].items()})
    return result


# --- exact linear solving over word polynomials ----------------------------

def solve_transform_coeffs(target: WordPolynomial, basis: list) -> list:
    """Exact rational coefficients x with sum x_i * basis_i = target.

    Raises NoSolution if the system is inconsistent and
    UnderdeterminedSolution (carrying one particular solution and the
    nullity) if the solution is not unique.
    """
    monomials = sorted(set(target.terms)
                       | {w for p in basis for w in p.terms})
    rows = []
    for w in monomials:
        rows.append([p.terms.get(w, Fraction(0)) for p in basis]
                    + [target.terms.get(w, Fraction(0))])
    ncols = len(basis)
    pivot_cols = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][-1]:
            raise NoSolution("target is not in the span of the basis")
    solution = [Fraction(0)] * ncols
    for row_idx, col in enumerate(pivot_cols):
        solution[col] = rows[row_idx][-1]
    nullity = ncols - len(pivot_cols)
    if nullity:
        raise UnderdeterminedSolution(solution, nullity)
    return solution


# --- tiny parser for word-polynomial text ----------------------------------

def parse_word_poly(text: str) -> WordPolynomial:
    """Parse expressions like "abb - 8*acc" or "(a+2c)(2b-2c)^2".

    Juxtaposition is the (noncommutative) concatenation product; ^ repeats a
    factor; rational coefficients may be attached with or without '*'.
    """
    parser = _WordParser(text)
    result = parser.parse_sum()
    parser.skip_ws()
    if parser.pos != len(parser.text):
        raise OutOfRange(f"trailing input at offset {parser.pos} in {text!r}")
    return result


class _WordParser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_sum(self) -> WordPolynomial:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        elif self.peek() == "+":
            self.pos += 1
        result = self.parse_term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            term = self.parse_term()
            result = result + term.scale(-1 if op == "-" else 1)
        return result

    def parse_term(self) -> WordPolynomial:
        coeff = self.parse_coeff()
        result = WordPolynomial.single("", coeff)
        while True:
            ch = self.peek()
            if ch in LETTERS or ch == "(":
                result = result * self.parse_factor()
            else:
                break
        return result

    def parse_coeff(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            return Fraction(1)
        num = int(self.text[start:self.pos])
        den = 1
        if self.peek() == "/":
            self.pos += 1
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == dstart:
                raise OutOfRange(f"missing denominator at offset {self.pos}")
            den = int(self.text[dstart:self.pos])
        if self.peek() == "*":
            self.pos += 1
        return Fraction(num, den)

    def parse_factor(self) -> WordPolynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_sum()
            if self.peek() != ")":
                raise OutOfRange(f"expected ')' at offset {self.pos}")
            self.pos += 1
            result = inner
        elif ch in LETTERS:
            self.pos += 1
            result = WordPolynomial.single(ch)
        else:
            raise OutOfRange(f"expected letter or '(' at offset {self.pos}")
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == start:
                raise OutOfRange(f"expected exponent at offset {self.pos}")
            result = result ** int(self.text[start:self.pos])
        return result
