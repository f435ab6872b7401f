from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from kstab.numeric import DELTA_FORM, IntervalReal, QForm3, refine_compare, sqrt_interval
from kstab.stab import Charge, StabParams
from kstab.support import (
    Polygon,
    compare_mass,
    hn_polygon,
    mass,
    restriction_inequality,
    support_check,
    support_check_at,
    triangle_amplification,
    triangle_amplification_sq,
)


def _cross(o, a, b):
    return (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)


def hull_oracle(subs, total):
    """Andrew's monotone chain on {0, total} + points left of the chord, then
    the clockwise arc from 0 to total."""
    origin = Charge(0, 0)
    left = [z for z in subs if total.re * z.im - total.im * z.re > 0]
    pts = sorted(set([origin, total] + left), key=lambda z: (z.re, z.im))
    if len(pts) <= 2:
        return [origin, total]

    def half(points):
        chain = []
        for p in points:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(list(reversed(pts)))
    ccw = lower[:-1] + upper[:-1]
    cw = list(reversed(ccw))
    i = cw.index(origin)
    cw = cw[i:] + cw[:i]
    return cw[: cw.index(total) + 1]


GRID = [Charge(a, b) for a in (-1, 0, 1) for b in (0, 1, 2)]
TOTALS = [Charge(0, 2), Charge(1, 2), Charge(-1, 3), Charge(2, 1)]


def test_hn_polygon_matches_hull_oracle_exhaustively():
    n = 0
    for total in TOTALS:
        for k in range(0, 7):
            for subs in itertools.combinations(GRID, k):
                assert list(hn_polygon(subs, total).vertices) == hull_oracle(subs, total)
                n += 1
    assert n == 4 * 466


def test_hn_polygon_random_against_oracle():
    rng = random.Random(3)
    for _ in range(300):
        subs = [Charge(Fraction(rng.randint(-8, 8), rng.randint(1, 3)), Fraction(rng.randint(0, 8), rng.randint(1, 3)))
                for _ in range(rng.randint(0, 6))]
        total = Charge(rng.randint(-5, 5), rng.randint(1, 6))
        assert list(hn_polygon(subs, total).vertices) == hull_oracle(subs, total)


def test_hn_polygon_edge_cases():
    assert hn_polygon([], Charge(0, 0)).vertices == (Charge(0, 0),)
    assert hn_polygon([Charge(1, 1)], Charge(0, 2)).vertices == (Charge(0, 0), Charge(0, 2))
    with pytest.raises(ValueError):
        hn_polygon([Charge(0, -1)], Charge(0, 1))


def test_hn_edges_have_decreasing_slope():
    poly = hn_polygon([Charge(-2, 1), Charge(-1, 3), Charge(1, 1)], Charge(1, 4))
    slopes = [-e.re / e.im for e in poly.edges()]
    assert slopes == sorted(slopes, reverse=True)


def test_mass():
    poly = Polygon((Charge(0, 0), Charge(-3, 4), Charge(0, 8)))
    m = mass(poly)
    assert m.lo == m.hi == 10
    assert compare_mass(poly, Polygon((Charge(0, 0), Charge(0, 8)))) == "gt"
    assert compare_mass(poly, poly) == "undecided"
    m = mass(Polygon((Charge(0, 0), Charge(1, 1))), Fraction(1, 10**6))
    assert m.width <= Fraction(1, 10**6) and m.contains(Fraction(14142136, 10**7))


def test_support_check_delta_on_grid():
    ts = [Fraction(1, 64), Fraction(1, 16), Fraction(1, 4), Fraction(1), Fraction(4), Fraction(16)]
    betas = [Fraction(k, 4) for k in range(-12, 13)]
    assert all(support_check(DELTA_FORM, StabParams(t, b)) for t in ts for b in betas)


def test_support_check_boundary_and_rank_two():
    assert not support_check_at(DELTA_FORM, 0, -1)
    assert support_check(None, StabParams(1, 0), lattice_rank=2)
    assert not support_check(None, StabParams(1, 0), lattice_rank=2, z_injective=False)
    assert not support_check(QForm3.diagonal(1, 1, 1), StabParams(1, 0))
    with pytest.raises(ValueError):
        support_check(None, StabParams(1, 0))


def _norm_iv(z: Charge, w: Fraction) -> IntervalReal:
    return sqrt_interval(z.norm_sq(), w)


def test_triangle_amplification_on_random_triangles():
    rng = random.Random(8)
    done = 0
    while done < 100:
        a1 = Charge(Fraction(rng.randint(-20, 20), rng.randint(1, 5)), Fraction(rng.randint(1, 20), rng.randint(1, 5)))
        a2 = Charge(Fraction(rng.randint(-20, 20), rng.randint(1, 5)), Fraction(rng.randint(1, 20), rng.randint(1, 5)))
        dot = a1.re * a2.re + a1.im * a2.im
        prod = sqrt_interval(a1.norm_sq() * a2.norm_sq(), Fraction(1, 10**9))
        cos_lo = dot / prod.hi if dot >= 0 else dot / prod.lo
        cos_phi = min(cos_lo, Fraction(999, 1000))
        if cos_phi <= -1:
            continue
        b = a1 + a2
        width = Fraction(1, 10**6)
        amp = triangle_amplification(cos_phi, width)
        assert amp.width <= width
        verdict = refine_compare(lambda w: _norm_iv(a1, w / 2) + _norm_iv(a2, w / 2),
                                 lambda w: triangle_amplification(cos_phi, w) * _norm_iv(b, w))
        assert verdict in ("lt", "undecided")
        done += 1


def test_triangle_constant_right_angle():
    # |a1| + |a2| = 2 and |a1 + a2| = sqrt 2 for orthogonal unit vectors
    assert triangle_amplification_sq(0) == 2
    wrong_sq = Fraction(1, 2)  # (1 + cos)/2, too small
    assert 4 > wrong_sq * 2
    assert 4 <= triangle_amplification_sq(0) * 2
    with pytest.raises(ValueError):
        triangle_amplification(1)


def test_restriction_inequality():
    assert restriction_inequality(4, [(1, 0), (1, 2)])
    assert not restriction_inequality(3, [(1, 0), (1, 2)])
    assert restriction_inequality(0, [(2, Fraction(1, 2))])
    with pytest.raises(ValueError):
        restriction_inequality(1, [(0, 1)])
