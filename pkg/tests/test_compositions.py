"""Signed compositions: construction, rendering, and the stuffle product."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpf

from eulersum.compositions import (CompositionPolynomial, SignedComposition,
                                   comp, parse_composition, stuffle)
from eulersum.errors import OutOfRange
from eulersum.mzv import eval_mzv, eval_poly
from eulersum.precision import PrecisionContext

signed_part = st.integers(min_value=1, max_value=6).flatmap(
    lambda s: st.sampled_from([s, -s]))
compositions = st.lists(signed_part, min_size=1, max_size=4).map(
    lambda ps: comp(*ps))
short_compositions = st.lists(signed_part, min_size=1, max_size=2).map(
    lambda ps: comp(*ps))


def delannoy(p, q):
    if p == 0 or q == 0:
        return 1
    return delannoy(p - 1, q) + delannoy(p, q - 1) + delannoy(p - 1, q - 1)


def test_constructor_accepts_ints_and_pairs():
    assert comp(-2, 1) == SignedComposition([(2, -1), (1, 1)])
    assert comp(3).signed_parts() == (3,)
    assert comp(-2, 1).signed_parts() == (-2, 1)


def test_constructor_rejects_zero_and_bad_pairs():
    with pytest.raises(OutOfRange):
        comp(0)
    with pytest.raises(OutOfRange):
        SignedComposition([(2, 2)])
    with pytest.raises(OutOfRange):
        SignedComposition([(0, 1)])


def test_depth_weight_and_positivity():
    c = comp(-2, 1, 3)
    assert c.depth == 3
    assert c.weight == 6
    assert not c.all_positive()
    assert comp(2, 1).all_positive()


def test_convergence_rule():
    assert comp(2, 1).convergent()
    assert comp(-1).convergent()
    assert comp(-1, 1).convergent()
    assert not comp(1).convergent()
    assert not comp(1, 2).convergent()


def test_render_matches_fixed_form():
    assert comp(-2, 1).render() == "(-2,1)"
    assert comp(3).render() == "(3)"


@given(compositions)
def test_parse_render_roundtrip(c):
    assert parse_composition(c.render()) == c
    assert parse_composition(c.render().strip("()")) == c


def test_parse_tolerates_spaces_and_parens():
    assert parse_composition("(-2, 1)") == comp(-2, 1)
    assert parse_composition("2,1") == comp(2, 1)


def test_stuffle_of_singletons():
    out = stuffle(comp(2), comp(1))
    expected = (CompositionPolynomial.single(comp(2, 1))
                + CompositionPolynomial.single(comp(1, 2))
                + CompositionPolynomial.single(comp(3)))
    assert out == expected


def test_stuffle_merges_signs_multiplicatively():
    assert stuffle(comp(-2), comp(-1)).render() \
        == "zeta(-1,-2) + zeta(-2,-1) + zeta(3)"
    assert stuffle(comp(2), comp(-1)).render() \
        == "zeta(-1,2) + zeta(2,-1) + zeta(-3)"


@given(compositions, compositions)
def test_stuffle_commutes(u, v):
    assert stuffle(u, v) == stuffle(v, u)


@settings(max_examples=15)
@given(short_compositions, short_compositions, short_compositions)
def test_stuffle_associates(u, v, w):
    left = sum((stuffle(parse_composition(t.render()), w) * coeff
                for t, coeff in stuffle(u, v)), CompositionPolynomial())
    right = sum((stuffle(u, parse_composition(t.render())) * coeff
                 for t, coeff in stuffle(v, w)), CompositionPolynomial())
    assert left == right


@pytest.mark.parametrize("p, q", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3),
                                  (3, 4), (4, 4)])
def test_stuffle_coefficient_sum_is_delannoy(p, q):
    u = comp(*([2] * p))
    v = comp(*([3] * q))
    out = stuffle(u, v)
    assert out.coefficient_sum() == delannoy(p, q)


def test_stuffle_reproduces_numeric_product():
    """zeta(2) * zeta(3) equals the stuffle expansion, numerically."""
    ctx = PrecisionContext(target_digits=15)
    product = eval_mzv(comp(2), ctx) * eval_mzv(comp(3), ctx)
    expansion = eval_poly(stuffle(comp(2), comp(3)), ctx)
    assert product.widened("1e-12").overlaps(expansion)


def test_stuffle_numeric_product_with_signs():
    ctx = PrecisionContext(target_digits=15)
    product = eval_mzv(comp(-2), ctx) * eval_mzv(comp(3), ctx)
    expansion = eval_poly(stuffle(comp(-2), comp(3)), ctx)
    assert product.widened("1e-12").overlaps(expansion)


def test_polynomial_algebra_and_render():
    p = CompositionPolynomial.single(comp(2, 1)) \
        - CompositionPolynomial.single(comp(3), Fraction(1, 2))
    assert p.render() == "zeta(2,1) - 1/2*zeta(3)"
    assert (CompositionPolynomial() - CompositionPolynomial.single(comp(3))
            ).render() == "0 - zeta(3)"
    assert CompositionPolynomial().render() == "0"
    assert len(p) == 2
    assert p.max_depth() == 2


def test_polynomial_cancellation():
    p = CompositionPolynomial.single(comp(2, 1))
    assert (p - p) == CompositionPolynomial()
    assert len(p - p) == 0


def test_polynomial_scalar_multiply():
    p = CompositionPolynomial.single(comp(3)) * Fraction(2, 3)
    assert p.render() == "2/3*zeta(3)"
    assert p.coefficient_sum() == Fraction(2, 3)
