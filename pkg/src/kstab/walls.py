"""Walls for tilt stability in the (beta, t) half plane.

The kernel of Z_{t,beta} is spanned by (1, beta, beta^2/2 + t/2).  Two classes
v, w have aligned charges exactly when that kernel lies in span(v, w), i.e.

    M12 - beta*M02 + (beta^2 + t)/2 * M01 = 0,

with M_ij the 2x2 minors of the matrix with rows v, w.  This is a semicircle
(beta - c)^2 + t = r^2 centred on the beta axis, a vertical line, or nothing.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from .charvec import CLIFFORD, CharVec, clifford_twist, discriminant, twist_beta
from .numeric import RationalLike, fmt, q, sign
from .stab import ObjectDescriptor, Region, StabParams

NONE = "none"
VERTICAL = "vertical"
SEMICIRCLE = "semicircle"
EMPTY = "empty"

DEFAULT_MAX_CANDIDATES = 10**6


def kernel_vector(t: RationalLike, beta: RationalLike) -> tuple[Fraction, Fraction, Fraction]:
    t, b = q(t), q(beta)
    if t < 0:
        raise ValueError("t must be non-negative")
    return (Fraction(1), b, b * b / 2 + t / 2)


def _minors(v: CharVec, w: CharVec) -> tuple[Fraction, Fraction, Fraction]:
    m01 = v.e0 * w.e1 - v.e1 * w.e0
    m02 = v.e0 * w.e2 - v.e2 * w.e0
    m12 = v.e1 * w.e2 - v.e2 * w.e1
    return m01, m02, m12


@dataclass(frozen=True)
class WallDescriptor:
    kind: str
    v: CharVec
    w: CharVec
    beta0: Optional[Fraction] = None
    center: Optional[Fraction] = None
    radius_sq: Optional[Fraction] = None

    def to_json(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.kind == VERTICAL:
            data["beta0"] = fmt(self.beta0)
        if self.kind == SEMICIRCLE:
            data["center"] = fmt(self.center)
            data["radius_sq"] = fmt(self.radius_sq)
        data["v"] = self.v.to_json()
        data["w"] = self.w.to_json()
        return data

    @classmethod
    def from_json(cls, data: dict) -> "WallDescriptor":
        def opt(key):
            return q(data[key]) if key in data else None

        return cls(data["kind"], CharVec.from_json(data["v"]), CharVec.from_json(data["w"]),
                   opt("beta0"), opt("center"), opt("radius_sq"))


def _prepared(v: CharVec) -> CharVec:
    if v.ambient == CLIFFORD and not v.twisted:
        return clifford_twist(v)
    return v


def wall_curve(v: CharVec, w: CharVec) -> WallDescriptor:
    v, w = _prepared(v), _prepared(w)
    m01, m02, m12 = _minors(v, w)
    if m01 == 0:
        if m02 == 0:
            return WallDescriptor(NONE if m12 == 0 else EMPTY, v, w)
        return WallDescriptor(VERTICAL, v, w, beta0=m12 / m02)
    c = m02 / m01
    r2 = c * c - 2 * m12 / m01
    if r2 <= 0:
        return WallDescriptor(EMPTY, v, w)
    return WallDescriptor(SEMICIRCLE, v, w, center=c, radius_sq=r2)


def on_wall(wd: WallDescriptor, p: StabParams) -> bool:
    if wd.kind == VERTICAL:
        return p.beta == wd.beta0
    if wd.kind == SEMICIRCLE:
        return (p.beta - wd.center) ** 2 + p.t == wd.radius_sq
    return False


# ---------------------------------------------------------------- exact beta-interval logic


@dataclass(frozen=True)
class _Interval:
    """Rational interval on the beta axis; None endpoints are infinite."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_open: bool = False
    hi_open: bool = False

    def empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    def cut(self, a: Fraction, b: Fraction, strict: bool) -> "_Interval":
        """Intersect with {beta : a*beta + b > 0} (or >= 0 when not strict)."""
        if a == 0:
            ok = b > 0 if strict else b >= 0
            return self if ok else _Interval(Fraction(1), Fraction(0))
        x = -b / a
        lo, hi, lo_open, hi_open = self.lo, self.hi, self.lo_open, self.hi_open
        if a > 0:
            if lo is None or x > lo or (x == lo and strict):
                lo, lo_open = x, strict if (lo is None or x > lo) else (lo_open or strict)
        else:
            if hi is None or x < hi or (x == hi and strict):
                hi, hi_open = x, strict if (hi is None or x < hi) else (hi_open or strict)
        return _Interval(lo, hi, lo_open, hi_open)


def _cmp_root(y: Fraction, sgn: int, s: Fraction) -> int:
    """Sign of y - sgn*sqrt(s), exactly (s >= 0)."""
    root_sign = sgn if s > 0 else 0
    ys = sign(y)
    if root_sign == 0:
        return ys
    if ys != root_sign:
        return ys if ys != 0 else -root_sign
    d = sign(y * y - s)
    return d if ys > 0 else -d


def _piece_meets(J: _Interval, c: Fraction, lo: tuple[int, Fraction], lo_open: bool,
                 hi: tuple[int, Fraction], hi_open: bool) -> bool:
    """Does J meet the interval from c + lo to c + hi?  Ends are (sign, s) for sign*sqrt(s)."""
    if J.lo is not None:
        s = _cmp_root(J.lo - c, *hi)
        if s > 0 or (s == 0 and (J.lo_open or hi_open)):
            return False
    if J.hi is not None:
        s = _cmp_root(J.hi - c, *lo)
        if s < 0 or (s == 0 and (J.hi_open or lo_open)):
            return False
    return True


def wall_meets(wd: WallDescriptor, region: Region, v: CharVec, w: CharVec) -> bool:
    """Is there a point of ``region`` on the wall where 0 < im Z(w) <= im Z(v)?"""
    J = _Interval(region.beta_lo, region.beta_hi)
    J = J.cut(-w.e0, w.e1, strict=True)
    u = v - w
    J = J.cut(-u.e0, u.e1, strict=False)
    if J.empty():
        return False
    t_lo, t_hi = region.t_lo, region.t_hi
    if wd.kind == NONE:
        # proportional classes: equal slopes everywhere
        return t_hi is None or t_hi > 0
    if wd.kind == VERTICAL:
        b = wd.beta0
        above = J.lo is None or b > J.lo or (b == J.lo and not J.lo_open)
        below = J.hi is None or b < J.hi or (b == J.hi and not J.hi_open)
        return above and below and (t_hi is None or t_hi > 0)
    if wd.kind != SEMICIRCLE:
        return False
    c, r2 = wd.center, wd.radius_sq
    # t(beta) = r2 - (beta - c)^2 in [t_lo, t_hi] and > 0:
    #   sqrt(inner) <= |beta - c| <= sqrt(outer), strict on the outside when t_lo = 0
    if r2 < t_lo:
        return False
    outer = r2 - t_lo
    inner = Fraction(0) if t_hi is None or t_hi >= r2 else r2 - t_hi
    open_out = t_lo == 0
    if open_out and inner == outer:
        return False
    right = _piece_meets(J, c, (1, inner), False, (1, outer), open_out)
    left = _piece_meets(J, c, (-1, outer), open_out, (-1, inner), False)
    return right or left


# ---------------------------------------------------------------- enumeration


@dataclass(frozen=True)
class Bounds:
    """Search box for candidate subobject classes.

    Candidate w has coordinates w_i = n_i * steps[i] with |w_i| <= caps[i].
    """

    caps: tuple[Fraction, Fraction, Fraction]
    steps: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        caps = tuple(q(x) for x in self.caps)
        steps = tuple(q(x) for x in self.steps)
        if len(caps) != 3 or len(steps) != 3:
            raise ValueError("caps and steps need three entries")
        if any(s <= 0 for s in steps) or any(c < 0 for c in caps):
            raise ValueError("steps must be positive and caps non-negative")
        object.__setattr__(self, "caps", caps)
        object.__setattr__(self, "steps", steps)

    def ranges(self) -> list[range]:
        out = []
        for c, s in zip(self.caps, self.steps):
            n = int(c / s)
            out.append(range(-n, n + 1))
        return out

    def size(self) -> int:
        n = 1
        for r in self.ranges():
            n *= len(r)
        return n

    def to_json(self) -> dict:
        return {"caps": [fmt(x) for x in self.caps], "steps": [fmt(x) for x in self.steps]}


def threefold_bounds(d: RationalLike, caps: Sequence[RationalLike]) -> Bounds:
    """Lattice steps (d, d, 1/2) for a Picard-rank-one threefold with H^3 = d."""
    d = q(d)
    return Bounds(tuple(q(c) for c in caps), (d, d, Fraction(1, 2)))


def clifford_bounds(caps: Sequence[RationalLike]) -> Bounds:
    """Twisted Clifford lattice: rank in 4Z, ch1 in Z, twisted ch2 in Z/8."""
    return Bounds(tuple(q(c) for c in caps), (Fraction(4), Fraction(1), Fraction(1, 8)))


def max_candidates() -> int:
    raw = os.environ.get("KSTAB_MAX_CANDIDATES")
    if raw is None:
        return DEFAULT_MAX_CANDIDATES
    return int(raw)


def _region_of(where: Region | StabParams) -> Region:
    return Region.point(where) if isinstance(where, StabParams) else where


def _scan(v: CharVec, region: Region, bounds: Bounds, first: Iterable[int]) -> list:
    r0, r1, r2 = bounds.ranges()
    s0, s1, s2 = bounds.steps
    found = []
    for i in first:
        for j, k in product(r1, r2):
            if i == 0 and j == 0 and k == 0:
                continue
            w = CharVec(i * s0, j * s1, k * s2, v.d, v.ambient, v.twisted)
            if w == v:
                continue
            wd = wall_curve(v, w)
            if wd.kind == EMPTY:
                continue
            if discriminant(w) < 0 or discriminant(v - w) < 0:
                continue
            if not wall_meets(wd, region, v, w):
                continue
            found.append((w, wd))
    return found


def enumerate_destabilizers(v: CharVec | ObjectDescriptor, where: Region | StabParams,
                            bounds: Bounds, partitions: int = 1,
                            workers: int | None = None) -> list[tuple[CharVec, WallDescriptor]]:
    """All lattice classes w in ``bounds`` that could destabilize v somewhere in ``where``.

    Filters: the wall of (v, w) meets the region at a point where
    0 < im Z(w) <= im Z(v), and both w and v - w satisfy the Bogomolov-type
    inequality.  Classes proportional to v (kind "none") share its slope
    everywhere and are kept; v itself is not.  Closed-box reasoning is exact (square-root endpoints are
    compared symbolically).  The result is sorted lexicographically and does
    not depend on ``partitions``/``workers``.
    """
    if isinstance(v, ObjectDescriptor):
        v = v.klass
    v = _prepared(v)
    if v.e0 == 0 and discriminant(v) < 0:
        raise ValueError("degenerate class: rank zero with negative discriminant")
    region = _region_of(where)
    total = bounds.size()
    if total > max_candidates():
        raise ValueError(f"{total} candidates exceed KSTAB_MAX_CANDIDATES={max_candidates()}")
    if all(c == 0 for c in bounds.caps):
        return []
    r0 = list(bounds.ranges()[0])
    partitions = max(1, min(partitions, len(r0)))
    chunks = [r0[i::partitions] for i in range(partitions)]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ch: _scan(v, region, bounds, ch), chunks))
    else:
        parts = [_scan(v, region, bounds, ch) for ch in chunks]
    merged = [item for part in parts for item in part]
    merged.sort(key=lambda item: item[0].coords)
    return merged


def integrality_exclusion(v: CharVec | ObjectDescriptor, beta0: RationalLike,
                          quantum: RationalLike) -> bool:
    """True when im Z_{t,beta0} of the object equals the smallest positive value.

    Then no proper subobject in the tilted heart can share its phase along the
    whole ray beta = beta0, so it cannot be strictly semistable there.
    """
    if isinstance(v, ObjectDescriptor):
        v = v.klass
    v = _prepared(v)
    b, quantum = q(beta0), q(quantum)
    if quantum <= 0:
        raise ValueError("quantum must be positive")
    im = twist_beta(v, b).e1
    ratio = im / quantum
    if im < 0 or ratio.denominator != 1:
        raise ValueError(f"im Z = {im} is not a non-negative multiple of {quantum}")
    return im == quantum


def kernel_classes_proportional(target: CharVec, t: RationalLike, beta: RationalLike) -> bool:
    """Whether the kernel line of Z_{t,beta} is spanned by ``target`` (t = 0 allowed)."""
    k = kernel_vector(t, beta)
    x = target.coords
    return all(k[i] * x[j] == k[j] * x[i] for i in range(3) for j in range(3))
