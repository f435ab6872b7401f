from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from kstab.charvec import (
    CLIFFORD,
    SURFACE,
    CharVec,
    TangentSide,
    blowup_delta_pair,
    charvec,
    clifford_twist,
    clifford_untwist,
    delta_b0,
    delta_h,
    discriminant,
    integral_in,
    line_bundle_class,
    tangent_side,
    twist_beta,
    twist_line_bundle,
)

vectors = st.builds(charvec, rationals(), rationals(), rationals())


def test_line_bundle_class_and_twist():
    assert line_bundle_class(1, 3).coords == (3, 3, Fraction(3, 2))
    assert twist_line_bundle(line_bundle_class(0, 3), 1) == line_bundle_class(1, 3)
    assert twist_line_bundle(line_bundle_class(0, 2), -2) == line_bundle_class(-2, 2)


@given(vectors, rationals(), rationals())
def test_twist_is_additive(v, a, b):
    assert twist_beta(twist_beta(v, a), b) == twist_beta(v, a + b)


@given(vectors, rationals())
def test_delta_is_twist_invariant(v, b):
    assert delta_h(twist_beta(v, b)) == delta_h(v)


@given(vectors, st.integers(1, 5))
def test_delta_scales_quadratically(v, k):
    assert delta_h(v * k) == k * k * delta_h(v)


@given(st.integers(-5, 5), st.integers(1, 22))
def test_line_bundles_have_zero_delta(k, d):
    assert delta_h(line_bundle_class(k, d)) == 0


def test_e2_discriminant():
    assert delta_h(charvec(28, -14, 2, 14)) == 84


def test_mismatched_lattices_do_not_add():
    with pytest.raises(ValueError):
        charvec(1, 0, 0, 1) + charvec(1, 0, 0, 2)


def test_clifford_twist_examples():
    b0 = CharVec(4, -5, Fraction(9, 2), 1, CLIFFORD)
    b1 = CharVec(4, -3, Fraction(5, 2), 1, CLIFFORD)
    assert clifford_twist(b0).coords == (4, -5, Fraction(25, 8))
    assert clifford_twist(b1).coords == (4, -3, Fraction(9, 8))
    assert delta_b0(clifford_twist(b0)) == 0
    assert discriminant(b0) == 0
    assert clifford_untwist(clifford_twist(b0)) == b0


def test_clifford_guards():
    v = CharVec(4, -5, 0, 1, CLIFFORD)
    with pytest.raises(ValueError):
        delta_h(v)
    with pytest.raises(ValueError):
        delta_b0(v)
    with pytest.raises(ValueError):
        clifford_twist(clifford_twist(v))
    with pytest.raises(ValueError):
        clifford_twist(charvec(1, 0, 0))


@pytest.mark.parametrize("g,expected", [
    (4, TangentSide.BOUNDARY),
    (6, TangentSide.INTERIOR),
    (8, TangentSide.INTERIOR),
    (12, TangentSide.INTERIOR),
])
def test_tangent_side_of_e2(g, expected):
    s = g // 2
    d = 2 * g - 2
    e2 = charvec(2 * d, -d, s - 2, d)
    assert tangent_side(line_bundle_class(0, d), e2) is expected
    assert tangent_side(line_bundle_class(-1, d), e2) is expected


def test_tangent_side_exterior_and_errors():
    assert tangent_side(charvec(1, 0, 0), charvec(1, 0, -1)) is TangentSide.EXTERIOR
    with pytest.raises(ValueError):
        tangent_side(charvec(0, 0, 0), charvec(1, 0, 0))
    with pytest.raises(ValueError):
        tangent_side(charvec(1, 0, -1), charvec(1, 0, 0))


@given(rationals(1, 10), rationals(-10, 10), rationals(-10, 10), rationals(-10, 10))
def test_blowup_difference(rk, l_sq, a, ch2):
    up, down = blowup_delta_pair(rk, l_sq, a, ch2)
    assert up - down == a * (rk - a)


def test_json_roundtrip():
    for v in (charvec(28, -14, 2, 14), CharVec(4, -5, Fraction(25, 8), 1, CLIFFORD, True),
              CharVec(1, 2, 3, 1, SURFACE)):
        assert CharVec.from_json(v.to_json()) == v


def test_integral_in():
    steps = (Fraction(14), Fraction(14), Fraction(1, 2))
    assert integral_in(charvec(28, -14, 2, 14), steps)
    assert not integral_in(charvec(7, -14, 2, 14), steps)


def test_mu_h():
    assert charvec(28, -14, 2).mu_h() == Fraction(-1, 2)
    assert charvec(0, 1, 0).mu_h() is None
