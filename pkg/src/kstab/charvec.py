"""Truncated Chern characters (ch0, ch1, ch2) contracted against a polarization.

A :class:`CharVec` stores the numbers H^n ch0, H^(n-1) ch1, H^(n-2) ch2.  The
same type serves threefolds, surfaces and the Clifford-twisted lattice on P^N;
the ``ambient`` tag only records which discriminant is meaningful.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .numeric import DELTA_FORM, RationalLike, bilinear_eval, fmt, q, qform_eval, sign

THREEFOLD = "threefold"
SURFACE = "surface"
CLIFFORD = "clifford"
AMBIENTS = (THREEFOLD, SURFACE, CLIFFORD)

# ch_{B0} = ch(Forg(E)) (1 - 11/32 l): only the ch2 coordinate moves.
CLIFFORD_CH2_SHIFT = Fraction(11, 32)


@dataclass(frozen=True)
class CharVec:
    e0: Fraction
    e1: Fraction
    e2: Fraction
    d: Fraction = Fraction(1)
    ambient: str = THREEFOLD
    # Clifford vectors remember whether the 11/32 twist has been applied.
    twisted: bool = field(default=False, compare=True)

    def __post_init__(self) -> None:
        for name in ("e0", "e1", "e2", "d"):
            object.__setattr__(self, name, q(getattr(self, name)))
        if self.ambient not in AMBIENTS:
            raise ValueError(f"unknown ambient {self.ambient!r}")
        if self.d <= 0:
            raise ValueError("polarization degree d must be positive")

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.e0, self.e1, self.e2)

    def _like(self, e0, e1, e2) -> "CharVec":
        return CharVec(e0, e1, e2, self.d, self.ambient, self.twisted)

    def _check(self, other: "CharVec") -> None:
        if (self.d, self.ambient, self.twisted) != (other.d, other.ambient, other.twisted):
            raise ValueError("CharVec operands live in different lattices")

    def __add__(self, other: "CharVec") -> "CharVec":
        self._check(other)
        return self._like(self.e0 + other.e0, self.e1 + other.e1, self.e2 + other.e2)

    def __sub__(self, other: "CharVec") -> "CharVec":
        self._check(other)
        return self._like(self.e0 - other.e0, self.e1 - other.e1, self.e2 - other.e2)

    def __neg__(self) -> "CharVec":
        return self._like(-self.e0, -self.e1, -self.e2)

    def __mul__(self, c: RationalLike) -> "CharVec":
        c = q(c)
        return self._like(c * self.e0, c * self.e1, c * self.e2)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.e0 == self.e1 == self.e2 == 0

    def mu_h(self) -> Fraction | None:
        """Slope e1/e0, or None for rank zero (slope +infinity)."""
        if self.e0 == 0:
            return None
        return self.e1 / self.e0

    def to_json(self) -> dict:
        data = {"ambient": self.ambient, "d": fmt(self.d), "e": [fmt(x) for x in self.coords]}
        if self.ambient == CLIFFORD:
            data["twisted"] = self.twisted
        return data

    @classmethod
    def from_json(cls, data: dict) -> "CharVec":
        e0, e1, e2 = (q(x) for x in data["e"])
        return cls(e0, e1, e2, q(data.get("d", "1")), data.get("ambient", THREEFOLD),
                   bool(data.get("twisted", False)))


def charvec(e0: RationalLike, e1: RationalLike, e2: RationalLike, d: RationalLike = 1,
            ambient: str = THREEFOLD, twisted: bool = False) -> CharVec:
    return CharVec(q(e0), q(e1), q(e2), q(d), ambient, twisted)


def twist_beta(v: CharVec, beta: RationalLike) -> CharVec:
    """Character of e^(-beta H) ch(v)."""
    b = q(beta)
    return v._like(v.e0, v.e1 - b * v.e0, v.e2 - b * v.e1 + b * b / 2 * v.e0)


def twist_line_bundle(v: CharVec, k: RationalLike) -> CharVec:
    """Character of v tensored with O(kH)."""
    return twist_beta(v, -q(k))


def delta_h(v: CharVec) -> Fraction:
    if v.ambient == CLIFFORD:
        raise ValueError("delta_h is the threefold/surface discriminant; use delta_b0")
    return qform_eval(DELTA_FORM, v.coords)


def line_bundle_class(k: RationalLike, d: RationalLike = 1, ambient: str = THREEFOLD) -> CharVec:
    k, d = q(k), q(d)
    return CharVec(d, k * d, k * k * d / 2, d, ambient)


def clifford_twist(v: CharVec) -> CharVec:
    if v.ambient != CLIFFORD:
        raise ValueError("clifford_twist needs a Clifford-lattice vector")
    if v.twisted:
        raise ValueError("vector is already twisted")
    return CharVec(v.e0, v.e1, v.e2 - CLIFFORD_CH2_SHIFT * v.e0, v.d, CLIFFORD, True)


def clifford_untwist(v: CharVec) -> CharVec:
    if v.ambient != CLIFFORD or not v.twisted:
        raise ValueError("clifford_untwist needs a twisted Clifford vector")
    return CharVec(v.e0, v.e1, v.e2 + CLIFFORD_CH2_SHIFT * v.e0, v.d, CLIFFORD, False)


def delta_b0(v: CharVec) -> Fraction:
    if v.ambient != CLIFFORD or not v.twisted:
        raise ValueError("delta_b0 needs a twisted Clifford vector")
    return qform_eval(DELTA_FORM, v.coords)


def discriminant(v: CharVec) -> Fraction:
    """The discriminant appropriate to the vector's ambient lattice."""
    if v.ambient == CLIFFORD:
        if not v.twisted:
            v = clifford_twist(v)
        return delta_b0(v)
    return delta_h(v)


class TangentSide(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


# Positive rank, discriminant -1: a point of the positive-rank negative cone.
INTERIOR_REFERENCE = (Fraction(1), Fraction(0), Fraction(1, 2))


def tangent_side(p: CharVec, x: CharVec) -> TangentSide:
    """Which side of the tangent plane to {discriminant = 0} at ``p`` holds ``x``."""
    if p.is_zero():
        raise ValueError("tangent point must be nonzero")
    if qform_eval(DELTA_FORM, p.coords) != 0:
        raise ValueError("tangent point is not on the quadric")
    ref = sign(bilinear_eval(DELTA_FORM, p.coords, INTERIOR_REFERENCE))
    s = sign(bilinear_eval(DELTA_FORM, p.coords, x.coords))
    if s == 0:
        return TangentSide.BOUNDARY
    return TangentSide.INTERIOR if s == ref else TangentSide.EXTERIOR


def blowup_delta_pair(rk: RationalLike, l_sq: RationalLike, a: RationalLike,
                      ch2: RationalLike) -> tuple[Fraction, Fraction]:
    """Twisted discriminants upstairs and after pushforward for a point blow-up.

    ``a`` is the exceptional-divisor coefficient of ch1, ``l_sq`` the square
    of the pulled-back part.  Returns (delta_up, delta_down).
    """
    rk, l_sq, a, ch2 = q(rk), q(l_sq), q(a), q(ch2)
    up = l_sq - a * a - 2 * rk * (ch2 - CLIFFORD_CH2_SHIFT * rk)
    down = l_sq - 2 * rk * (ch2 + a / 2 - CLIFFORD_CH2_SHIFT * rk)
    return up, down


def integral_in(v: CharVec, steps: tuple[Fraction, Fraction, Fraction]) -> bool:
    """Whether each coordinate is an integer multiple of the matching step."""
    return all((x / s).denominator == 1 for x, s in zip(v.coords, steps))
