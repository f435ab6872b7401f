"""HN polygons, masses and support-property checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numeric import (
    IntervalReal,
    QForm3,
    RationalLike,
    q,
    qform_eval,
    refine_compare,
    sqrt_interval,
    sum_sqrt_intervals,
)
from .stab import Charge, StabParams
from .walls import kernel_vector


def _cross(a: Charge, b: Charge) -> Fraction:
    return a.re * b.im - a.im * b.re


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[Charge, ...]

    def edges(self) -> list[Charge]:
        return [b - a for a, b in zip(self.vertices, self.vertices[1:])]


def hn_polygon(sub_charges: Sequence[Charge], total: Charge) -> Polygon:
    """Left boundary of conv({0, total} u sub_charges), walked from 0 to total.

    Gift wrapping in clockwise order: from the current vertex, take the point
    that leaves every other point weakly to the right, farthest along ties.
    """
    origin = Charge(0, 0)
    if any(z.im < 0 for z in sub_charges) or total.im < 0:
        raise ValueError("charges of subobjects lie in the closed upper half plane")
    if total.is_zero():
        return Polygon((origin,))
    pts = {origin, total}
    pts.update(z for z in sub_charges if _cross(total, z) > 0)
    pts = sorted(pts, key=lambda z: (z.im, z.re))
    chain = [origin]
    cur = origin
    while cur != total:
        best = None
        for cand in pts:
            if cand == cur:
                continue
            if best is None:
                best = cand
                continue
            c = _cross(best - cur, cand - cur)
            if c > 0 or (c == 0 and (cand - cur).norm_sq() > (best - cur).norm_sq()):
                best = cand
        chain.append(best)
        cur = best
    return Polygon(tuple(chain))


def mass(poly: Polygon, width: RationalLike = Fraction(1, 10**6)) -> IntervalReal:
    """Length of the polygon's boundary as an interval of width <= ``width``."""
    return sum_sqrt_intervals([e.norm_sq() for e in poly.edges()], width)


def compare_mass(a: Polygon, b: Polygon) -> str:
    """"lt", "gt" or "undecided" (enclosures still overlap at width 2^-64)."""
    return refine_compare(lambda w: mass(a, w), lambda w: mass(b, w))


def support_check(form: QForm3 | None, p: StabParams, lattice_rank: int = 3,
                  z_injective: bool = True) -> bool:
    """Negative definiteness of the form on ker Z.

    On a rank-2 lattice with injective Z the kernel is trivial and the
    condition holds with the zero form.
    """
    if lattice_rank == 2:
        return z_injective
    if lattice_rank != 3 or form is None:
        raise ValueError("support_check handles rank-3 lattices with a form, or rank 2")
    return qform_eval(form, kernel_vector(p.t, p.beta)) < 0


def support_check_at(form: QForm3, t: RationalLike, beta: RationalLike) -> bool:
    """Same as support_check but allows the boundary t = 0."""
    return qform_eval(form, kernel_vector(q(t), q(beta))) < 0


def triangle_amplification(cos_phi: RationalLike, width: RationalLike = Fraction(1, 10**6)) -> IntervalReal:
    """Enclosure of D = sqrt(2 / (1 + cos phi)), so that a1 + a2 <= D * b.

    From b^2 = (1+cos)/2 (a1+a2)^2 + (1-cos)/2 (a1-a2)^2 >= (1+cos)/2 (a1+a2)^2.
    """
    c = q(cos_phi)
    if not -1 < c < 1:
        raise ValueError("cos_phi must lie strictly between -1 and 1")
    return sqrt_interval(2 / (1 + c), width)


def triangle_amplification_sq(cos_phi: RationalLike) -> Fraction:
    c = q(cos_phi)
    if not -1 < c < 1:
        raise ValueError("cos_phi must lie strictly between -1 and 1")
    return 2 / (1 + c)


def restriction_inequality(delta: RationalLike, factors: Sequence[tuple[RationalLike, RationalLike]]) -> bool:
    """sum_{i<j} r_i r_j (mu_i - mu_j)^2 <= delta."""
    if not factors:
        raise ValueError("need at least one factor")
    fs = [(q(r), q(m)) for r, m in factors]
    if any(r <= 0 for r, _ in fs):
        raise ValueError("ranks must be positive")
    lhs = sum(
        (fs[i][0] * fs[j][0] * (fs[i][1] - fs[j][1]) ** 2
         for i in range(len(fs)) for j in range(i + 1, len(fs))),
        Fraction(0),
    )
    return lhs <= q(delta)
