"""Symbolic relation generators and the closed-form constant algebra."""

from fractions import Fraction

import pytest
from mpmath import mp, mpf

from eulersum.compositions import comp
from eulersum.errors import (DivergentComposition, NonConvergent, OutOfRange)
from eulersum.mzv import eval_mzv
from eulersum.precision import PrecisionContext
from eulersum.symbolic import (LOG2, Relation, ZetaPolynomial,
                               database_relations, dejavu_relation,
                               double_shuffle, drinfeld_expand,
                               drinfeld_relation, euler_decomposition,
                               euler_reduction, kummer_coefficient,
                               kummer_expand, kummer_gamma_coefficients,
                               parfrac_check, relation_residual, sum_formula,
                               witten_reduce, zeta_poly_eval, zeta_sym,
                               zetabar_sym)
from eulersum.witten import eval_witten, witten_convergent

from _oracles import ball_holds, log2, zeta

CTX = PrecisionContext()


def assert_tiny(ball, tol="1e-10"):
    assert ball.contains(0) or abs(ball.mid) <= mpf(tol), mp.nstr(ball.mid, 8)
    assert abs(ball.mid) + ball.rad <= mpf(tol)


# ---------------------------------------------------------------- polynomials

def test_polynomial_product_and_render():
    p = ZetaPolynomial.const(zeta_sym(2)) * ZetaPolynomial.const(zeta_sym(3))
    assert p.render() == "zeta(2)*zeta(3)"
    sq = ZetaPolynomial.const(zeta_sym(2)) * ZetaPolynomial.const(zeta_sym(2))
    assert sq.render() == "zeta(2)^2"


def test_polynomial_linear_algebra():
    p = ZetaPolynomial.const(zeta_sym(3), Fraction(2))
    q = ZetaPolynomial.const(zeta_sym(3))
    assert (p - q).render() == "zeta(3)"
    assert not (q - q)
    assert (q + q).coefficient((zeta_sym(3),)) == 2


def test_substitute_zetabar_closed_forms():
    q = ZetaPolynomial.const(zetabar_sym(3), Fraction(2)) \
        + ZetaPolynomial.const(LOG2)
    sub = q.substitute_zetabar()
    assert sub.render() == "0 - 3/2*zeta(3) + log2"
    with mp.workprec(420):
        before = zeta_poly_eval(q, CTX)
        after = zeta_poly_eval(sub, CTX)
    assert before.widened("1e-30").overlaps(after)


def test_substitute_zetabar_weight_one():
    p = ZetaPolynomial.const(zetabar_sym(1))
    sub = p.substitute_zetabar()
    ball = zeta_poly_eval(sub, CTX)
    assert ball_holds(ball, -log2())


def test_zeta_poly_eval_mixed_monomial():
    p = ZetaPolynomial.monomial((zeta_sym(2), LOG2), Fraction(3))
    ball = zeta_poly_eval(p, CTX)
    with mp.workprec(420):
        expected = 3 * zeta(2) * log2()
    assert ball_holds(ball, expected)


# ------------------------------------------------------------------ relations

@pytest.mark.parametrize("m", range(2, 9))
def test_euler_reduction_residuals(m):
    assert_tiny(relation_residual(euler_reduction(m), CTX))


def test_euler_reduction_rejects_weight_below_three():
    with pytest.raises(OutOfRange):
        euler_reduction(1)


def test_euler_reduction_weight_three_form():
    assert euler_reduction(2).render() == "2*zeta(2,1) == 2*zeta(3)"


@pytest.mark.parametrize("r, s", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2),
                                  (3, 1), (4, 1), (2, 3), (3, 2)])
def test_sum_formula_residuals(r, s):
    rel = sum_formula(r, s)
    ball = relation_residual(rel, PrecisionContext(target_digits=15))
    assert ball.widened("1e-8").contains(0)


def test_sum_formula_depth_two_lists_every_pair():
    assert sum_formula(2, 1).render() == "zeta(2,2) + zeta(3,1) == zeta(4)"
    assert sum_formula(2, 2).render() \
        == "zeta(2,3) + zeta(3,2) + zeta(4,1) == zeta(5)"


def test_sum_formula_depth_three_weight_five():
    assert sum_formula(3, 1).render() \
        == "zeta(2,1,2) + zeta(2,2,1) + zeta(3,1,1) == zeta(5)"


@pytest.mark.parametrize("s, t", [(1, 1), (2, 1), (2, 2), (3, 1)])
@pytest.mark.parametrize("alpha, x", [(Fraction(1, 3), Fraction(1, 2)),
                                      (Fraction(2), Fraction(5)),
                                      (Fraction(-1, 2), Fraction(1, 7))])
def test_parfrac_identity_is_exact(s, t, alpha, x):
    assert parfrac_check(s, t, alpha, x) is True


def test_parfrac_rejects_degenerate_inputs():
    with pytest.raises(OutOfRange):
        parfrac_check(0, 2, Fraction(1, 3), Fraction(1, 2))
    with pytest.raises(OutOfRange):
        parfrac_check(2, 2, Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(OutOfRange):
        parfrac_check(2, 2, Fraction(0), Fraction(1, 2))


@pytest.mark.parametrize("s, t", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
def test_euler_decomposition_residuals(s, t):
    assert_tiny(relation_residual(euler_decomposition(s, t), CTX), "1e-20")


def test_euler_decomposition_rejects_bad_orders():
    with pytest.raises(OutOfRange):
        euler_decomposition(1, 2)


# ------------------------------------------------------------------- drinfeld

def test_drinfeld_table_is_symmetric():
    table = drinfeld_expand(3, 3)
    for m in range(4):
        for n in range(4):
            assert table[(m, n)] == table[(n, m)]


def test_drinfeld_corner_value():
    rel = drinfeld_relation(1, 1)
    assert rel.render() == "zeta(3,1) == 3/2*zeta(4) - 1/2*zeta(2)^2"
    residual = relation_residual(rel, CTX)
    assert_tiny(residual, "1e-20")
    ball = eval_mzv(comp(3, 1), CTX)
    with mp.workprec(420):
        assert ball_holds(ball, mp.pi ** 4 / 360)


@pytest.mark.parametrize("m, n", [(0, 0), (1, 0), (2, 1), (2, 2), (3, 1)])
def test_drinfeld_relations_hold(m, n):
    deep = PrecisionContext(target_digits=15)
    ball = relation_residual(drinfeld_relation(m, n), deep)
    assert ball.widened("1e-8").contains(0)


def test_drinfeld_weight_six_closed_form():
    assert drinfeld_relation(2, 2).render() == \
        "zeta(4,1,1) == 10/3*zeta(6) - 3/2*zeta(2)*zeta(4) - zeta(3)^2 " \
        "+ 1/6*zeta(2)^3"


# --------------------------------------------------------------------- kummer

def test_kummer_gamma_coefficients_vanish():
    coeffs = kummer_gamma_coefficients()
    assert set(coeffs.values()) == {Fraction(0)}


def test_kummer_coefficient_relations_hold():
    for a, b in [(1, 1), (2, 1), (1, 2)]:
        assert_tiny(relation_residual(kummer_coefficient(a, b), CTX), "1e-20")


def test_kummer_expand_lands_on_the_eight_to_one_identity():
    rel = kummer_expand()
    assert rel.render() == "8*zeta(-2,1) == zeta(3)"
    assert_tiny(relation_residual(rel, CTX), "1e-20")


# -------------------------------------------------------------- double series

def test_double_shuffle_weight_four():
    rel = double_shuffle(comp(2), comp(2))
    assert rel.render() == "2*zeta(2,2) + zeta(4) == 2*zeta(2,2) + 4*zeta(3,1)"
    assert_tiny(relation_residual(rel, CTX), "1e-20")


@pytest.mark.parametrize("u, v", [((2,), (3,)), ((2,), (2, 1)), ((3,), (2,)),
                                  ((-2,), (2,)), ((2, 1), (2,))])
def test_double_shuffle_residuals(u, v):
    deep = PrecisionContext(target_digits=15)
    rel = double_shuffle(comp(*u), comp(*v))
    ball = relation_residual(rel, deep)
    assert ball.widened("1e-8").contains(0)


def test_double_shuffle_rejects_divergent_inputs():
    with pytest.raises(DivergentComposition):
        double_shuffle(comp(1), comp(2))


def test_dejavu_relation():
    rel = dejavu_relation()
    assert rel.render() == "2*zeta(-2,1) == zeta(3) + zeta(-3)"
    assert rel.provenance == "double_shuffle"
    assert_tiny(relation_residual(rel, CTX), "1e-20")


def test_dejavu_matches_kummer_after_zetabar_substitution():
    """Two independent derivations of the same alternating evaluation."""
    ctx = CTX
    lhs = eval_mzv(comp(-2, 1), ctx)
    with mp.workprec(420):
        assert ball_holds(lhs, zeta(3) / 8)


# --------------------------------------------------------------------- witten

def test_witten_reduce_matches_direct_sum():
    deep = PrecisionContext(target_digits=12)
    for r in range(3):
        for s in range(3):
            for t in range(3):
                if not witten_convergent(r, s, t):
                    continue
                if r + s + t > 6 or r + s + t == 0:
                    continue
                reduced = witten_reduce(r, s, t).eval(deep)
                direct = eval_witten(r, s, t, deep)
                assert reduced.widened("1e-8").overlaps(direct), (r, s, t)


def test_witten_reduce_known_case():
    assert witten_reduce(1, 1, 1).render() == "2*zeta(2,1)"


def test_witten_reduce_rejects_nonconvergent():
    with pytest.raises(NonConvergent):
        witten_reduce(0, 0, 1)


# ------------------------------------------------------------------- database

def test_database_relations_all_hold():
    rels = database_relations()
    assert len(rels) == 8
    for rel in rels:
        ball = relation_residual(rel, CTX)
        assert abs(ball.mid) + ball.rad <= mpf("1e-20"), rel.render()


def test_database_contains_the_core_pair():
    rendered = {rel.render() for rel in database_relations()}
    assert "zeta(2,1) == zeta(3)" in rendered
    assert "zeta(-2,1) == 1/8*zeta(3)" in rendered
