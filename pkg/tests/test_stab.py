from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import positive_rationals, rationals
from kstab.charvec import CLIFFORD, CharVec, charvec, line_bundle_class
from kstab.stab import (
    INFINITY,
    Charge,
    CliffordP3,
    DeltaZeroStable,
    DoubleTilt,
    Fano,
    ObjectDescriptor,
    PlainCoh,
    Region,
    SlopeStable,
    StabParams,
    TiltedCoh,
    TiltStable,
    heart_member,
    mu_of,
    mu_tilt,
    rotate_charge,
    serre_image,
    slope_line,
    strict_threshold,
    z_slope,
    z_tilt,
)

vectors = st.builds(charvec, rationals(), rationals(), rationals())


def line(k, d=1, shift=0):
    return ObjectDescriptor(line_bundle_class(k, d), shift, DeltaZeroStable())


def test_params_reject_nonpositive_t():
    with pytest.raises(ValueError):
        StabParams(0, 0)


def test_z_slope():
    assert z_slope(charvec(2, -1, 0)) == Charge(1, 2)


@given(positive_rationals(hi=4), st.integers(1, 5))
def test_index2_slopes_at_minus_half(t, d):
    p = StabParams(t, Fraction(-1, 2))
    assert mu_tilt(line_bundle_class(0, d), p) == Fraction(1, 4) - t
    assert mu_tilt(line_bundle_class(1, d), p) == Fraction(3, 4) - t / 3
    assert mu_tilt(-line_bundle_class(-1, d), p) == t - Fraction(1, 4)
    assert mu_tilt(-line_bundle_class(-2, d), p) == t / 3 - Fraction(3, 4)


def test_mu_of_edge_cases():
    assert mu_of(Charge(-1, 0)) == INFINITY
    assert Fraction(10**9) < mu_of(Charge(-1, 0))
    with pytest.raises(ValueError):
        mu_of(Charge(0, -1))


@given(rationals(), positive_rationals(), rationals())
def test_rotation_imaginary_part(re, im, mu0):
    z = Charge(re, im)
    r = rotate_charge(z, mu0)
    assert r.im == im * (mu_of(z) - mu0)


@given(vectors, positive_rationals(), rationals(-3, 3))
def test_slope_line_matches_mu(v, t, beta):
    p = StabParams(t, beta)
    if z_tilt(v, p).im <= 0:
        with pytest.raises(ValueError):
            slope_line(v, beta)
        return
    a, b = slope_line(v, beta)
    assert a * t + b == mu_tilt(v, p)


def test_strict_threshold():
    assert strict_threshold([(Fraction(-1), Fraction(1, 4))]) == Fraction(1, 4)
    assert strict_threshold([(Fraction(-1), Fraction(1)), (Fraction(-2), Fraction(1))]) == Fraction(1, 2)
    assert strict_threshold([(Fraction(0), Fraction(1))]) is None
    assert strict_threshold([(Fraction(0), Fraction(0))]) == 0
    with pytest.raises(ValueError):
        strict_threshold([(Fraction(1), Fraction(-1))])


def test_descriptor_validation():
    with pytest.raises(ValueError):
        ObjectDescriptor(charvec(2, -1, 0), 0, SlopeStable(Fraction(1, 3)))
    with pytest.raises(ValueError):
        ObjectDescriptor(charvec(1, 0, -1), 0, DeltaZeroStable())
    with pytest.raises(ValueError):
        ObjectDescriptor(charvec(0, 1, 0), 0, DeltaZeroStable())
    assert line(0, shift=1).klass == -line_bundle_class(0)


def test_descriptor_json_roundtrip():
    objs = [
        line(-2, 3, 1),
        ObjectDescriptor(charvec(28, -14, 2, 14), 0, SlopeStable(Fraction(-1, 2)), "E2"),
        ObjectDescriptor(charvec(28, -14, 2, 14), 2,
                         TiltStable(Region.segment(Fraction(-9, 10), 0, None, closed_at_zero=True))),
    ]
    for o in objs:
        assert ObjectDescriptor.from_json(o.to_json()) == o


def test_tilted_heart_membership():
    beta = Fraction(-1, 2)
    assert heart_member(line(0), TiltedCoh(beta)).status == "yes"
    assert heart_member(line(-1, shift=1), TiltedCoh(beta)).status == "yes"
    m = heart_member(line(-1), TiltedCoh(beta))
    assert (m.status, m.shift) == ("needs_shift", 1)
    # mu_H = beta goes to the shifted side
    assert heart_member(line(-1), TiltedCoh(-1)).shift == 1
    assert heart_member(line(0), PlainCoh())
    assert not heart_member(line(0, shift=1), PlainCoh())


def test_unknown_without_certificate():
    region = Region.segment(0, 1, 2)
    obj = ObjectDescriptor(charvec(1, 0, -1), 0, TiltStable(region))
    assert heart_member(obj, TiltedCoh(0)).status == "unknown"
    assert heart_member(obj, DoubleTilt(Fraction(1, 2), 0, 0)).status == "unknown"


def test_double_tilt_membership():
    # index 2 at beta = -1/2, t = 1/8, mu0 = 0: O and O(-2H)[2]
    heart = DoubleTilt(Fraction(1, 8), Fraction(-1, 2), 0)
    assert heart_member(line(0), heart).status == "yes"
    assert heart_member(line(-2, shift=2), heart).status == "yes"
    m = heart_member(line(-2, shift=1), heart)
    assert (m.status, m.shift) == ("needs_shift", 1)
    # beyond the threshold O drops out of the second tilt
    late = DoubleTilt(Fraction(1, 2), Fraction(-1, 2), 0)
    assert heart_member(line(0), late).shift == 1


def test_tilt_certificate_region_is_respected():
    v = charvec(28, -14, 2, 14)
    obj = ObjectDescriptor(v, 0, TiltStable(Region.segment(Fraction(-9, 10), 0, None, closed_at_zero=True)))
    assert heart_member(obj, DoubleTilt(Fraction(1, 100), Fraction(-9, 10), Fraction(1, 100))).status == "yes"
    assert heart_member(obj, DoubleTilt(Fraction(1, 100), Fraction(-8, 10), 0)).status == "unknown"


def test_zero_class_is_not_a_member():
    obj = ObjectDescriptor(charvec(0, 0, 0), 0, SlopeStable(None))
    assert heart_member(obj, PlainCoh()).status == "no"


def test_serre_on_fano():
    img = serre_image(ObjectDescriptor(line_bundle_class(0, 3), 0, DeltaZeroStable(), "O"), Fano(2))
    assert img.v == line_bundle_class(-2, 3) and img.shift == 3
    e2 = ObjectDescriptor(charvec(28, -14, 2, 14), 0, SlopeStable(Fraction(-1, 2)), "E2")
    img = serre_image(e2, Fano(1))
    assert img.cert == SlopeStable(Fraction(-3, 2)) and img.v.mu_h() == Fraction(-3, 2)


@pytest.mark.parametrize("j", range(-4, 6))
def test_serre_on_clifford(j):
    e = 2 * j - 5
    b = ObjectDescriptor(CharVec(4, e, Fraction(e * e, 8), 1, CLIFFORD, True), 0, DeltaZeroStable())
    img = serre_image(b, CliffordP3())
    e3 = 2 * (j - 3) - 5
    assert img.v.coords == (4, e3, Fraction(e3 * e3, 8)) and img.shift == 3


def test_serre_on_clifford_rejects_other_classes():
    obj = ObjectDescriptor(CharVec(4, 0, 0, 1, CLIFFORD, True), 0, SlopeStable(0))
    with pytest.raises(ValueError):
        serre_image(obj, CliffordP3())


def test_region_contains_and_json():
    r = Region(-1, 0, Fraction(1, 4), 1)
    assert r.contains(StabParams(Fraction(1, 2), Fraction(-1, 2)))
    assert not r.contains(StabParams(2, Fraction(-1, 2)))
    assert Region.from_json(r.to_json()) == r
    with pytest.raises(ValueError):
        Region(0, 0, 0)
