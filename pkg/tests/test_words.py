"""Word encoding, shuffle product, letter transforms, and coefficient solving."""

import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from eulersum.compositions import comp
from eulersum.errors import (DivergentComposition, InadmissibleWord,
                             NoSolution, OutOfRange, UnderdeterminedSolution,
                             UnsupportedAlphabet, UnsupportedSigns)
from eulersum.mzv import eval_mzv, eval_poly
from eulersum.precision import PrecisionContext
from eulersum.words import (TRANSFORMS, Word, WordPolynomial, apply_transform,
                            comp_to_word, dualize, parse_word_poly, shuffle,
                            solve_transform_coeffs, word_to_comp)

unsigned_compositions = st.lists(
    st.integers(min_value=1, max_value=5), min_size=1, max_size=6,
).map(lambda ps: [max(ps[0], 2)] + ps[1:]).map(lambda ps: comp(*ps))

signed_compositions = st.lists(
    st.integers(min_value=1, max_value=5).flatmap(
        lambda s: st.sampled_from([s, -s])),
    min_size=1, max_size=6,
).filter(lambda ps: not (ps[0] == 1)).map(lambda ps: comp(*ps))


def admissible_ab_words(max_len):
    """All words over {a, b} starting with a and ending with b."""
    out = []
    for length in range(2, max_len + 1):
        for middle in itertools.product("ab", repeat=length - 2):
            out.append(Word("a" + "".join(middle) + "b"))
    return out


def test_word_construction_and_identity():
    w = Word("abc")
    assert len(w) == 3
    assert w == Word("abc")
    assert w.render() == "abc"
    assert Word(w) == w
    assert Word("a") + Word("b") == Word("ab")


def test_word_rejects_foreign_letters():
    with pytest.raises((OutOfRange, UnsupportedAlphabet, ValueError)):
        Word("axb")


def test_admissibility_predicates():
    assert Word("ab").admissible()
    assert Word("ac").admissible()
    assert not Word("ba").admissible()
    assert not Word("ab").admissible() is False or True
    assert Word("cb").integrable() and not Word("cb").admissible()
    assert Word("ab").uses_only_ab() and not Word("ac").uses_only_ab()


def test_encoding_of_known_compositions():
    assert comp_to_word(comp(2, 1)) == Word("abb")
    assert comp_to_word(comp(3)) == Word("aab")
    assert comp_to_word(comp(-2, 1)) == Word("acc")
    assert word_to_comp(Word("acc")) == comp(-2, 1)


@given(signed_compositions)
def test_word_roundtrip(c):
    assert word_to_comp(comp_to_word(c)) == c


def test_leading_b_is_inadmissible():
    with pytest.raises(InadmissibleWord):
        word_to_comp(Word("bab"))


def test_divergent_composition_has_no_word():
    with pytest.raises(DivergentComposition):
        comp_to_word(comp(1, 2))


def test_dualize_known_pairs():
    assert dualize(comp(2, 1)) == comp(3)
    assert dualize(comp(3)) == comp(2, 1)
    assert dualize(comp(4, 1, 1)) == comp(4, 1, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dualize_two_one_blocks(n):
    assert dualize(comp(*([2, 1] * n))) == comp(*([3] * n))


@given(unsigned_compositions)
def test_dualize_is_weight_preserving_involution(c):
    d = dualize(c)
    assert d.weight == c.weight
    assert dualize(d) == c


def test_dualize_rejects_signed_input():
    with pytest.raises(UnsupportedSigns):
        dualize(comp(-2, 1))


def test_shuffle_examples():
    assert shuffle(Word("ab"), Word("b")).render() == "2*abb + bab"
    assert shuffle(Word("ac"), Word("c")).render() == "2*acc + cac"
    assert shuffle(Word("ab"), Word("c")).render() == "abc + acb + cab"


small_words = st.text(alphabet="abc", min_size=0, max_size=4).map(Word)


@given(small_words, small_words)
def test_shuffle_commutes_and_counts(u, v):
    left = shuffle(u, v)
    assert left == shuffle(v, u)
    assert left.coefficient_sum() == comb(len(u) + len(v), len(u))


@settings(max_examples=15)
@given(small_words, small_words, small_words)
def test_shuffle_associates(u, v, w):
    def extend(poly, word):
        out = WordPolynomial()
        for t, coeff in poly:
            out = out + shuffle(t, word).scale(coeff)
        return out

    assert extend(shuffle(u, v), w) == extend(shuffle(v, w), u)


def test_transform_catalog():
    assert TRANSFORMS == ("identity", "tau", "sumsigns", "landen",
                          "quadlanden")
    assert apply_transform("identity", Word("abb")) \
        == WordPolynomial.single(Word("abb"))
    assert apply_transform("tau", Word("abb")) \
        == WordPolynomial.single(Word("aab"))
    assert apply_transform("sumsigns", Word("ab")).render() == "2*ab + 2*ac"
    assert apply_transform("landen", Word("ab")).render() \
        == "ab - ac + cb - cc"
    assert apply_transform("quadlanden", Word("abb")).render() \
        == ("4*abb - 4*abc - 4*acb + 4*acc + 8*cbb - 8*cbc - 8*ccb "
            "+ 8*ccc")


def test_transforms_reject_c_words_and_unknown_names():
    with pytest.raises(UnsupportedAlphabet):
        apply_transform("tau", Word("ac"))
    with pytest.raises(OutOfRange):
        apply_transform("mystery", Word("ab"))


@pytest.mark.parametrize("name", TRANSFORMS)
def test_transforms_preserve_values(name):
    """Each transform rewrites a word into a polynomial with the same value."""
    ctx = PrecisionContext(target_digits=15)
    for w in admissible_ab_words(5):
        direct = eval_mzv(word_to_comp(w), ctx)
        image = eval_poly(apply_transform(name, w).to_compositions(), ctx)
        assert direct.widened("1e-20").overlaps(image), w.render()


def test_solve_transform_coeffs_recovers_alternating_identity():
    basis = [apply_transform(t, Word("abb"))
             for t in ("identity", "sumsigns", "landen", "quadlanden")]
    target = WordPolynomial.single(Word("acc"))
    coeffs = solve_transform_coeffs(target, basis)
    assert coeffs == [Fraction(-1), Fraction(1, 4), Fraction(1),
                      Fraction(-1, 8)]


def test_solve_transform_coeffs_bracket_combination():
    abb = WordPolynomial.single(Word("abb"))
    basis = [abb - apply_transform("sumsigns", Word("abb")),
             abb - apply_transform("landen", Word("abb")),
             apply_transform("quadlanden", Word("abb")) - abb]
    target = abb.scale(1) - WordPolynomial.single(Word("acc"), 8)
    coeffs = solve_transform_coeffs(target, basis)
    assert coeffs == [Fraction(2), Fraction(8), Fraction(1)]


def test_solve_transform_coeffs_identity_basis():
    target = WordPolynomial.single(Word("ab"))
    assert solve_transform_coeffs(target, [target]) == [Fraction(1)]


def test_solve_transform_coeffs_failure_modes():
    with pytest.raises(NoSolution):
        solve_transform_coeffs(WordPolynomial.single(Word("ab")),
                               [WordPolynomial.single(Word("acc"))])
    dependent = [WordPolynomial.single(Word("ab")),
                 WordPolynomial.single(Word("ab"), 2)]
    with pytest.raises(UnderdeterminedSolution):
        solve_transform_coeffs(WordPolynomial.single(Word("ab")), dependent)


def test_word_polynomial_algebra():
    p = WordPolynomial.single(Word("ab"), 2) - WordPolynomial.single(
        Word("acc"))
    assert p.render() == "2*ab - acc"
    assert p.scale(Fraction(1, 2)).render() == "ab - 1/2*acc"
    concat = WordPolynomial.single(Word("a")) * WordPolynomial.single(
        Word("b"))
    assert concat == WordPolynomial.single(Word("ab"))
    square = WordPolynomial.single(Word("ab")) ** 2
    assert square == WordPolynomial.single(Word("abab"))


@given(st.lists(st.tuples(small_words.filter(lambda w: len(w) > 0),
                          st.fractions(min_value=-5, max_value=5,
                                       max_denominator=8).filter(bool)),
                min_size=0, max_size=4))
def test_parse_word_poly_roundtrip(entries):
    p = WordPolynomial()
    for w, coeff in entries:
        p = p + WordPolynomial.single(w, coeff)
    assert parse_word_poly(p.render()) == p
