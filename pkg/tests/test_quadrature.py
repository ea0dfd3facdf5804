"""Adaptive Gauss quadrature for the integral catalog and Laplace moments."""

import pytest
from mpmath import mp, mpf

from eulersum.errors import OutOfRange, ToleranceNotMet, UnknownEntry
from eulersum.precision import PrecisionContext
from eulersum.quadrature import (CATALOG, catalog_ids, integrate,
                                 laplace_moment)
from eulersum.symbolic import zeta_poly_eval

from _oracles import ball_holds

CTX = PrecisionContext()
FOURIER_ENTRIES = ("clausen_pi", "parseval4")


def test_catalog_listing():
    assert sorted(catalog_ids()) == ["alt21", "clausen_pi", "logs21",
                                     "parseval4", "parts3", "triple57",
                                     "w111", "zeta_stirling_2",
                                     "zeta_stirling_3"]
    assert set(catalog_ids()) == set(CATALOG)


@pytest.mark.parametrize("entry_id", sorted(CATALOG))
def test_every_entry_reaches_its_claimed_value(entry_id):
    ball = integrate(entry_id, ctx=CTX)
    claimed = zeta_poly_eval(CATALOG[entry_id].claimed_value, CTX)
    assert ball.overlaps(claimed), entry_id
    assert ball.empirical
    tier = mpf("1e-11") if entry_id in FOURIER_ENTRIES else mpf("1e-14")
    assert ball.rad <= tier, (entry_id, float(ball.rad))


@pytest.mark.parametrize("entry_id", ["w111", "alt21"])
def test_raw_and_substituted_routes_agree(entry_id):
    substituted = integrate(entry_id, ctx=CTX)
    raw = integrate(entry_id, ctx=CTX, substitute=False, tol=mpf("1e-6"))
    assert substituted.widened("1e-6").overlaps(raw)


def test_integration_is_deterministic():
    a = integrate("parts3", ctx=CTX)
    b = integrate("parts3", ctx=CTX)
    assert a.mid == b.mid and a.rad == b.rad


@pytest.mark.parametrize("r, sigma", [(1, 0), (1, 1), (2, 1), (3, 2), (5, 4),
                                      (6, 3)])
def test_laplace_moment_closed_form(r, sigma):
    ball = laplace_moment(r, sigma, ctx=CTX)
    with mp.workprec(400):
        expected = mp.factorial(sigma) / mpf(r) ** (sigma + 1)
    assert ball_holds(ball, expected)
    assert ball.rad <= mpf("1e-19")


def test_unknown_entry_rejected():
    with pytest.raises(UnknownEntry):
        integrate("not_a_real_entry", ctx=CTX)


def test_tolerance_floor_rejected():
    with pytest.raises(OutOfRange):
        integrate("parts3", ctx=CTX, tol=mpf("1e-200"))


def test_budget_exhaustion_reported():
    with pytest.raises(ToleranceNotMet):
        integrate("logs21", ctx=CTX, budget=3)
