"""Central charges, slopes and heart membership for slope, tilt and double-tilt stability.

All parameters use t = alpha^2, so every charge is rational.  Objects are
described numerically and carry a *certificate* saying what kind of
stability is known for them; membership questions that a certificate cannot
settle come back as ``unknown``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .charvec import (
    CLIFFORD,
    CharVec,
    clifford_twist,
    discriminant,
    twist_beta,
    twist_line_bundle,
)
from .numeric import RationalLike, fmt, q

INFINITY = math.inf  # slope of a charge on the negative real axis


@dataclass(frozen=True)
class StabParams:
    t: Fraction
    beta: Fraction
    mu0: Optional[Fraction] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", q(self.t))
        object.__setattr__(self, "beta", q(self.beta))
        if self.mu0 is not None:
            object.__setattr__(self, "mu0", q(self.mu0))
        if self.t <= 0:
            raise ValueError("t = alpha^2 must be positive")


def params(t: RationalLike, beta: RationalLike, mu0: RationalLike | None = None) -> StabParams:
    return StabParams(q(t), q(beta), None if mu0 is None else q(mu0))


@dataclass(frozen=True)
class Charge:
    re: Fraction
    im: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", q(self.re))
        object.__setattr__(self, "im", q(self.im))

    def __add__(self, other: "Charge") -> "Charge":
        return Charge(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Charge") -> "Charge":
        return Charge(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Charge":
        return Charge(-self.re, -self.im)

    def __mul__(self, c: RationalLike) -> "Charge":
        c = q(c)
        return Charge(c * self.re, c * self.im)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def in_half_plane(self) -> bool:
        """im > 0, or im == 0 and re < 0: where charges of heart objects land."""
        return self.im > 0 or (self.im == 0 and self.re < 0)

    def to_json(self) -> list[str]:
        return [fmt(self.re), fmt(self.im)]

    @classmethod
    def from_json(cls, data) -> "Charge":
        return cls(q(data[0]), q(data[1]))


def _twisted(v: CharVec) -> CharVec:
    if v.ambient == CLIFFORD and not v.twisted:
        return clifford_twist(v)
    return v


def z_slope(v: CharVec) -> Charge:
    return Charge(-v.e1, v.e0)


def z_tilt(v: CharVec, p: StabParams) -> Charge:
    w = twist_beta(_twisted(v), p.beta)
    return Charge(p.t / 2 * w.e0 - w.e2, w.e1)


def mu_of(z: Charge) -> Fraction | float:
    if z.im < 0:
        raise ValueError("charge has negative imaginary part: object not in the heart")
    if z.im == 0:
        return INFINITY
    return -z.re / z.im


def mu_tilt(v: CharVec, p: StabParams) -> Fraction | float:
    return mu_of(z_tilt(v, p))


def mu_tilt_or_none(v: CharVec, p: StabParams) -> Fraction | float | None:
    """Like :func:`mu_tilt`, but None when the charge points into the lower half-plane."""
    z = z_tilt(v, p)
    return None if z.im < 0 else mu_of(z)


def rotate_charge(z: Charge, mu0: RationalLike) -> Charge:
    """z / u' with u' = -mu0 + i, up to the positive factor |u'|^2.

    The imaginary part of the result is im(z) * (mu(z) - mu0), so objects of
    slope above mu0 keep a charge in the upper half plane.
    """
    m = q(mu0)
    # z * conj(u') = (re + i im)(-m - i)
    return Charge(-m * z.re + z.im, -z.re - m * z.im)


def slope_line(v: CharVec, beta: RationalLike) -> tuple[Fraction, Fraction]:
    """(a, b) with mu_{t,beta}(v) = a*t + b for all t > 0; needs im Z > 0."""
    p = StabParams(Fraction(1), q(beta))
    z1 = z_tilt(v, p)
    if z1.im <= 0:
        raise ValueError("slope is linear in t only for classes with im Z > 0")
    z0_re = z1.re - v.e0 / 2  # re Z at t = 0
    return -v.e0 / (2 * z1.im), -z0_re / z1.im


def strict_threshold(conditions: Sequence[tuple[Fraction, Fraction]]) -> Optional[Fraction]:
    """Supremum T with a*t + b > 0 for every (a, b) and every t in (0, T).

    Returns None when all t > 0 work, Fraction(0) when none does.
    """
    upper: Optional[Fraction] = None
    for a, b in conditions:
        if a == 0:
            if b <= 0:
                return Fraction(0)
        elif a < 0:
            r = -b / a
            upper = r if upper is None else min(upper, r)
        elif -b / a > 0:
            raise ValueError("condition fails for small t; no threshold of the form (0, T)")
    if upper is not None and upper < 0:
        return Fraction(0)
    return upper


# ---------------------------------------------------------------- certificates


@dataclass(frozen=True)
class SlopeStable:
    mu_h: Optional[Fraction]  # None stands for +infinity (rank zero)
    kind: str = field(default="slope_stable", init=False)


@dataclass(frozen=True)
class SlopeSemistable:
    mu_h: Optional[Fraction]
    kind: str = field(default="slope_semistable", init=False)


@dataclass(frozen=True)
class Region:
    """Closed box beta in [beta_lo, beta_hi], t in [t_lo, t_hi] of the (beta, t) half plane.

    ``t_hi = None`` means unbounded above.  ``t_lo`` may be 0 only when
    ``closed_at_zero`` is set, which is how endpoint arguments at t = 0 are
    expressed; otherwise t-bounds are positive.
    """

    beta_lo: Fraction
    beta_hi: Fraction
    t_lo: Fraction
    t_hi: Optional[Fraction] = None
    closed_at_zero: bool = False

    def __post_init__(self) -> None:
        for name in ("beta_lo", "beta_hi", "t_lo"):
            object.__setattr__(self, name, q(getattr(self, name)))
        if self.t_hi is not None:
            object.__setattr__(self, "t_hi", q(self.t_hi))
        if self.beta_lo > self.beta_hi:
            raise ValueError("empty beta range")
        if self.t_lo < 0 or (self.t_lo == 0 and not self.closed_at_zero):
            raise ValueError("t bounds must be positive unless closed_at_zero is set")
        if self.t_hi is not None and self.t_hi < self.t_lo:
            raise ValueError("empty t range")

    @classmethod
    def segment(cls, beta: RationalLike, t_lo: RationalLike, t_hi: RationalLike | None,
                closed_at_zero: bool = False) -> "Region":
        b = q(beta)
        return cls(b, b, q(t_lo), None if t_hi is None else q(t_hi), closed_at_zero)

    @classmethod
    def point(cls, p: StabParams) -> "Region":
        return cls(p.beta, p.beta, p.t, p.t)

    def contains(self, p: StabParams) -> bool:
        if not self.beta_lo <= p.beta <= self.beta_hi:
            return False
        if p.t < self.t_lo:
            return False
        return self.t_hi is None or p.t <= self.t_hi

    def to_json(self) -> dict:
        return {
            "beta": [fmt(self.beta_lo), fmt(self.beta_hi)],
            "t": [fmt(self.t_lo), None if self.t_hi is None else fmt(self.t_hi)],
            "closed_at_zero": self.closed_at_zero,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Region":
        t_hi = data["t"][1]
        return cls(q(data["beta"][0]), q(data["beta"][1]), q(data["t"][0]),
                   None if t_hi is None else q(t_hi), bool(data.get("closed_at_zero", False)))


@dataclass(frozen=True)
class TiltStable:
    region: Region
    kind: str = field(default="tilt_stable", init=False)


@dataclass(frozen=True)
class DeltaZeroStable:
    """Slope-stable bundle with vanishing discriminant: tilt-stable everywhere."""

    kind: str = field(default="delta_zero_stable", init=False)


Certificate = Union[SlopeStable, SlopeSemistable, TiltStable, DeltaZeroStable]


def _cert_to_json(c: Certificate) -> dict:
    if isinstance(c, (SlopeStable, SlopeSemistable)):
        return {"kind": c.kind, "mu_h": None if c.mu_h is None else fmt(c.mu_h)}
    if isinstance(c, TiltStable):
        return {"kind": c.kind, "region": c.region.to_json()}
    return {"kind": c.kind}


def _cert_from_json(data: dict) -> Certificate:
    kind = data["kind"]
    if kind in ("slope_stable", "slope_semistable"):
        mu = None if data.get("mu_h") is None else q(data["mu_h"])
        return SlopeStable(mu) if kind == "slope_stable" else SlopeSemistable(mu)
    if kind == "tilt_stable":
        return TiltStable(Region.from_json(data["region"]))
    if kind == "delta_zero_stable":
        return DeltaZeroStable()
    raise ValueError(f"unknown certificate kind {kind!r}")


@dataclass(frozen=True)
class ObjectDescriptor:
    """A numerical object F[shift]; ``v`` is the class of F itself."""

    v: CharVec
    shift: int = 0
    cert: Certificate = field(default_factory=DeltaZeroStable)
    name: str = ""

    def __post_init__(self) -> None:
        c = self.cert
        if isinstance(c, (SlopeStable, SlopeSemistable)):
            if c.mu_h is not None:
                object.__setattr__(self, "cert", type(c)(q(c.mu_h)))
            expected = self.v.mu_h()
            if self.v.e0 != 0 and c.mu_h != expected:
                raise ValueError(f"declared slope {c.mu_h} differs from e1/e0 = {expected}")
            if self.v.e0 == 0 and c.mu_h is not None:
                raise ValueError("rank-zero object must declare slope +infinity (None)")
        if isinstance(c, DeltaZeroStable):
            if self.v.e0 == 0:
                raise ValueError("delta-zero certificate needs positive rank")
            if discriminant(self.v) != 0:
                raise ValueError("delta-zero certificate on a class with nonzero discriminant")

    @property
    def klass(self) -> CharVec:
        """Class of the shifted object F[shift]."""
        return self.v if self.shift % 2 == 0 else -self.v

    def slope_h(self) -> Optional[Fraction]:
        if isinstance(self.cert, (SlopeStable, SlopeSemistable)):
            return self.cert.mu_h
        return self.v.mu_h()

    def shifted(self, k: int) -> "ObjectDescriptor":
        return ObjectDescriptor(self.v, self.shift + k, self.cert, self.name)

    def to_json(self) -> dict:
        data = {"class": self.v.to_json(), "shift": self.shift, "cert": _cert_to_json(self.cert)}
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_json(cls, data: dict) -> "ObjectDescriptor":
        return cls(CharVec.from_json(data["class"]), int(data["shift"]),
                   _cert_from_json(data["cert"]), data.get("name", ""))


# ---------------------------------------------------------------- hearts


@dataclass(frozen=True)
class PlainCoh:
    pass


@dataclass(frozen=True)
class TiltedCoh:
    beta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", q(self.beta))


@dataclass(frozen=True)
class DoubleTilt:
    t: Fraction
    beta: Fraction
    mu0: Fraction

    def __post_init__(self) -> None:
        for name in ("t", "beta", "mu0"):
            object.__setattr__(self, name, q(getattr(self, name)))
        if self.t <= 0:
            raise ValueError("t must be positive")

    @property
    def params(self) -> StabParams:
        return StabParams(self.t, self.beta, self.mu0)


HeartSpec = Union[PlainCoh, TiltedCoh, DoubleTilt]


@dataclass(frozen=True)
class Membership:
    status: str  # "yes" | "no" | "needs_shift" | "unknown"
    shift: int = 0  # for needs_shift: obj[shift] lies in the heart

    def __bool__(self) -> bool:
        return self.status == "yes"


def _has_slope_info(obj: ObjectDescriptor) -> bool:
    return isinstance(obj.cert, (SlopeStable, SlopeSemistable, DeltaZeroStable))


def _tilt_shift(obj: ObjectDescriptor, beta: Fraction) -> int:
    """Shift k with F[k] in Coh^beta, F slope-semistable."""
    v = obj.v
    if v.e0 == 0:
        if v.e1 < 0:
            raise ValueError("rank-zero sheaf with negative ch1")
        return 0
    mu = obj.slope_h()
    return 0 if mu > beta else 1


def _answer(required: int, obj: ObjectDescriptor) -> Membership:
    if required == obj.shift:
        return Membership("yes")
    return Membership("needs_shift", required - obj.shift)


def heart_member(obj: ObjectDescriptor, heart: HeartSpec) -> Membership:
    """Decide whether the object lies in the heart, using only its certificate."""
    if obj.v.is_zero():
        return Membership("no")
    if isinstance(heart, PlainCoh):
        if not _has_slope_info(obj):
            return Membership("unknown")
        return _answer(0, obj)
    if isinstance(heart, TiltedCoh):
        if not _has_slope_info(obj):
            return Membership("unknown")
        return _answer(_tilt_shift(obj, heart.beta), obj)
    if isinstance(heart, DoubleTilt):
        p = heart.params
        cert = obj.cert
        if isinstance(cert, DeltaZeroStable):
            k0 = _tilt_shift(obj, p.beta)
        elif isinstance(cert, TiltStable) and cert.region.contains(p):
            z = z_tilt(obj.v, p)
            if z.is_zero():
                return Membership("unknown")
            k0 = 0 if z.in_half_plane() else 1
        else:
            return Membership("unknown")
        z = z_tilt(obj.v, p) * (-1) ** k0
        k = k0 if rotate_charge(z, p.mu0).in_half_plane() else k0 + 1
        return _answer(k, obj)
    raise TypeError(f"unknown heart {heart!r}")


# ---------------------------------------------------------------- Serre functor


@dataclass(frozen=True)
class Fano:
    index: int
    dim: int = 3


@dataclass(frozen=True)
class CliffordP3:
    pass


def serre_image(obj: ObjectDescriptor, geometry: Fano | CliffordP3) -> ObjectDescriptor:
    if isinstance(geometry, Fano):
        # S = (- tensor O(K_X))[dim], K_X = -index * H
        v = twist_line_bundle(obj.v, -geometry.index)
        cert = obj.cert
        if isinstance(cert, (SlopeStable, SlopeSemistable)) and cert.mu_h is not None:
            cert = type(cert)(cert.mu_h - geometry.index)
        elif isinstance(cert, TiltStable):
            # tensoring by O(kH) carries sigma_{t,beta} to sigma_{t,beta+k}
            r = cert.region
            cert = TiltStable(Region(r.beta_lo - geometry.index, r.beta_hi - geometry.index,
                                     r.t_lo, r.t_hi, r.closed_at_zero))
        name = f"{obj.name}(K)" if obj.name else ""
        return ObjectDescriptor(v, obj.shift + geometry.dim, cert, name)
    if isinstance(geometry, CliffordP3):
        v = _twisted(obj.v)
        j = (v.e1 + 5) / 2
        if v.ambient != CLIFFORD or j.denominator != 1:
            raise ValueError("Serre image on (P^3, B0) is only known for the B_j")
        j = int(j)
        e = 2 * j - 5
        if (v.e0, v.e2, v.d) != (4, Fraction(e * e, 8), 1):
            raise ValueError("Serre image on (P^3, B0) is only known for the B_j")
        e = 2 * (j - 3) - 5
        image = CharVec(4, e, Fraction(e * e, 8), 1, CLIFFORD, True)
        return ObjectDescriptor(image, obj.shift + 3, obj.cert, f"B_{j - 3}")
    raise TypeError(f"unknown geometry {geometry!r}")
