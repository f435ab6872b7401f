from __future__ import annotations

import warnings
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import positive_rationals, rationals
from kstab.charvec import CLIFFORD, CharVec, clifford_twist, delta_b0
from kstab.cubic4 import (
    FORG_B0,
    FORG_B1,
    bogomolov_predicate,
    catalog_rows,
    chain_threshold,
    chi_p2_diag,
    clifford_class,
    clifford_slope,
    forgetful_class,
    lambda1_sign_discrepancy,
    lambda_character,
    lambda_determinant,
    rank_admissible,
    verify_cubic4,
    z_alpha,
)
from kstab.stab import StabParams, rotate_charge, z_tilt


def cliff(e0, e1, e2, twisted=False):
    return CharVec(Fraction(e0), Fraction(e1), Fraction(e2), Fraction(1), CLIFFORD, twisted)


@pytest.mark.parametrize("j", range(-10, 11))
def test_clifford_classes(j):
    v = clifford_class(j)
    e = 2 * j - 5
    assert v.coords == (4, e, Fraction(e * e, 8))
    assert delta_b0(v) == 0
    assert clifford_twist(forgetful_class(j)) == v
    assert clifford_slope(j) == Fraction(e, 4)


def test_forgetful_constants():
    assert forgetful_class(0).coords == FORG_B0 == (4, -5, Fraction(9, 2))
    assert forgetful_class(1).coords == FORG_B1 == (4, -3, Fraction(5, 2))


def test_catalog_rows():
    rows = catalog_rows(-1, 1)
    assert [r["j"] for r in rows] == [-1, 0, 1]
    assert rows[1]["slope"] == "-5/4" and rows[1]["serre"] == "B_-3[3]"
    assert all(r["delta_b0"] == "0" for r in rows)


def test_chi_identity_symbolic():
    r, c, ch2 = sp.symbols("r c ch2")
    shift = sp.Rational(11, 32)
    tw2 = ch2 - shift * r
    delta = c**2 - 2 * r * tw2
    chi = -sp.Rational(7, 64) * r**2 - c**2 / 4 + r * ch2 / 2
    assert sp.Poly(sp.expand(delta + 4 * chi - r**2 / 4), r, c, ch2).is_zero


@given(rationals(-20, 20), rationals(-20, 20), rationals(-20, 20))
def test_chi_identity_numeric(r, c, ch2):
    v = cliff(r, c, ch2)
    assert delta_b0(clifford_twist(v)) + 4 * chi_p2_diag(v) - r * r / 4 == 0


def test_chi_of_b0_is_one():
    assert chi_p2_diag(forgetful_class(0)) == 1
    with pytest.raises(ValueError):
        chi_p2_diag(clifford_class(0))


def test_rank_and_bogomolov():
    assert rank_admissible(8) and rank_admissible(0) and not rank_admissible(2)
    assert bogomolov_predicate(clifford_class(3))
    assert bogomolov_predicate(forgetful_class(3))
    assert not bogomolov_predicate(cliff(2, 1, 0, True))  # rank not divisible by 4
    assert not bogomolov_predicate(cliff(4, 0, 1, True))  # negative discriminant
    assert bogomolov_predicate(cliff(0, 1, 5, True))
    with pytest.raises(ValueError):
        bogomolov_predicate(CharVec(Fraction(1), Fraction(0), Fraction(0)))


def test_z_alpha_lambda_values():
    t = sp.Symbol("t")
    for tv in (Fraction(1, 32), Fraction(1, 7), Fraction(3)):
        z1 = z_alpha(lambda_character(1), tv)
        z2 = z_alpha(lambda_character(2), tv)
        assert (z1.re, z1.im) == (3, -2 * tv - Fraction(7, 8))
        assert (z2.re, z2.im) == (0, 4 * tv + Fraction(7, 4))
        det = lambda_determinant(tv)
        assert det == 12 * tv + Fraction(21, 4)
    assert sp.expand(3 * (4 * t + sp.Rational(7, 4))) == 12 * t + sp.Rational(21, 4)
    with pytest.raises(ValueError):
        lambda_character(3)


@given(positive_rationals(Fraction(100)))
def test_lambda_determinant_positive(t):
    assert lambda_determinant(t) > 0


@given(rationals(-10, 10), rationals(-10, 10), rationals(-10, 10), positive_rationals(Fraction(10)))
def test_z_alpha_is_rotated_tilt_charge(e0, e1, e2, t):
    v = cliff(e0, e1, e2, True)
    z = z_tilt(v, StabParams(t, Fraction(-1)))
    za = z_alpha(v, t)
    # multiplication by -i
    assert (za.re, za.im) == (z.im, -z.re)
    assert rotate_charge(z, 0) == za


def test_sign_discrepancy_is_harmless():
    info = lambda1_sign_discrepancy(Fraction(1, 32))
    assert info["computed_real"] == "3" and info["stated_real"] == "-3"
    assert info["independent_with_computed"] and info["independent_with_stated"]


def test_chain_threshold():
    assert chain_threshold() == Fraction(1, 16)


def test_verify_cubic4_boundary():
    rep = verify_cubic4(Fraction(1, 32))
    assert rep.overall, rep.table()
    assert any("sign" in n for n in rep.notes)
    assert verify_cubic4(Fraction(1, 16) - Fraction(1, 10**6)).overall
    bad = verify_cubic4(Fraction(1, 16))
    assert not bad.overall and not bad.check("slope_chain").passed


@given(positive_rationals(Fraction(1, 16)))
def test_verify_cubic4_below_threshold(t):
    if t < Fraction(1, 16):
        assert verify_cubic4(t).check("slope_chain").passed


def test_other_beta_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        verify_cubic4(Fraction(1, 32), Fraction(-1, 2))
    assert any("beta = -1" in str(w.message) for w in caught)


def test_z_alpha_on_b1():
    for t in (Fraction(1, 32), Fraction(2)):
        z = z_alpha(clifford_class(1), t)
        assert (z.re, z.im) == (1, Fraction(1, 8) - 2 * t)
