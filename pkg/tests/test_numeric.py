from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import positive_rationals, rationals
from kstab.numeric import (
    DELTA_FORM,
    IntervalReal,
    QForm3,
    bilinear_eval,
    det,
    fmt,
    q,
    qform_eval,
    refine_compare,
    solve,
    sqrt_interval,
    sum_sqrt_intervals,
)


def test_q_parses_exact_strings():
    assert q("-7/8") == Fraction(-7, 8)
    assert q(" 3 ") == 3
    assert q(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", "inf", "nan", "", True])
def test_q_refuses_inexact_input(bad):
    with pytest.raises((TypeError, ValueError)):
        q(bad)


def test_fmt():
    assert fmt(Fraction(6, 4)) == "3/2"
    assert fmt(Fraction(-4, 2)) == "-2"
    assert fmt(0) == "0"


def test_delta_form_values():
    # ideal sheaf of a line on P^3: (1, 0, -1) -> 2; line bundles -> 0
    assert qform_eval(DELTA_FORM, (1, 0, -1)) == 2
    assert qform_eval(DELTA_FORM, (3, 3, Fraction(3, 2))) == 0


def test_qform_rejects_asymmetric():
    with pytest.raises(ValueError):
        QForm3(((0, 1, 0), (0, 0, 0), (0, 0, 0)))


@given(st.lists(rationals(), min_size=3, max_size=3), st.lists(rationals(), min_size=3, max_size=3))
def test_polarization(u, v):
    s = [a + b for a, b in zip(u, v)]
    lhs = qform_eval(DELTA_FORM, s) - qform_eval(DELTA_FORM, u) - qform_eval(DELTA_FORM, v)
    assert lhs == 2 * bilinear_eval(DELTA_FORM, u, v)


@pytest.mark.parametrize("x,root", [(0, 0), (4, 2), (Fraction(9, 16), Fraction(3, 4))])
def test_sqrt_interval_exact_for_squares(x, root):
    iv = sqrt_interval(x, Fraction(1, 10))
    assert iv.lo == iv.hi == root


@given(positive_rationals(hi=1000, max_den=97), st.integers(min_value=1, max_value=40))
def test_sqrt_interval_encloses(x, k):
    width = Fraction(1, 2**k)
    iv = sqrt_interval(x, width)
    assert iv.width <= width
    assert iv.lo >= 0 and iv.lo * iv.lo <= x <= iv.hi * iv.hi


def test_sqrt_interval_against_float_oracle():
    iv = sqrt_interval(2, Fraction(1, 10**12))
    assert float(iv.lo) <= math.sqrt(2) <= float(iv.hi)


def test_sum_sqrt_width_budget():
    iv = sum_sqrt_intervals([Fraction(2), Fraction(3), Fraction(5)], Fraction(1, 10**6))
    assert iv.width <= Fraction(1, 10**6)
    s = math.sqrt(2) + math.sqrt(3) + math.sqrt(5)
    assert float(iv.lo) - 1e-12 <= s <= float(iv.hi) + 1e-12


@given(rationals(), rationals(), rationals(), rationals(), rationals())
def test_interval_arithmetic_contains_results(a, b, c, d, x):
    i = IntervalReal(min(a, b), max(a, b))
    j = IntervalReal(min(c, d), max(c, d))
    assert (i + j).contains(a + c)
    assert (i * j).contains(b * d)


def test_interval_less_than_three_valued():
    assert IntervalReal(0, 1).less_than(IntervalReal(2, 3)) is True
    assert IntervalReal(2, 3).less_than(IntervalReal(0, 1)) is False
    assert IntervalReal(0, 2).less_than(IntervalReal(1, 3)) is None


def test_interval_json_roundtrip():
    iv = IntervalReal(Fraction(-1, 3), Fraction(5, 2))
    assert IntervalReal.from_json(iv.to_json()) == iv


def test_refine_compare():
    assert refine_compare(lambda w: sqrt_interval(2, w), lambda w: IntervalReal.point(Fraction(3, 2))) == "lt"
    assert refine_compare(lambda w: sqrt_interval(3, w), lambda w: sqrt_interval(2, w)) == "gt"
    assert refine_compare(lambda w: sqrt_interval(2, w), lambda w: sqrt_interval(2, w)) == "undecided"


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(m):
    assert det(m) == sympy.Matrix(m).det()


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solve_solves(m, rhs):
    if det(m) == 0:
        with pytest.raises(ZeroDivisionError):
            solve(m, rhs)
        return
    x = solve(m, rhs)
    assert [sum(m[i][j] * x[j] for j in range(3)) for i in range(3)] == rhs
