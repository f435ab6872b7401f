"""Exact rational scalars, 3x3 quadratic forms and rational-endpoint intervals.

Everything here works over :class:`fractions.Fraction`.  The only quantities
that leave the rationals (masses, amplification constants, moduli of charges)
are square roots, and those are carried as :class:`IntervalReal` enclosures
that can be refined to any width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

RationalLike = Union[int, str, Fraction]

# Comparisons of two interval-valued quantities give up below this width.
UNDECIDABLE_WIDTH = Fraction(1, 2**64)


def q(x: RationalLike) -> Fraction:
    """Coerce ``x`` to an exact Fraction.

    Accepts ints, Fractions and strings like ``"3"``, ``"-7/8"``.  Floats are
    refused on purpose: a float has already lost the exact value.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE") or s.lower() in {"inf", "nan"}:
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def fmt(x: Fraction | int) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when q == 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse(s: str) -> Fraction:
    return q(s)


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


Vec3 = Sequence[Fraction]


@dataclass(frozen=True)
class QForm3:
    """Symmetric 3x3 rational matrix, read as the quadratic form v^T M v."""

    m: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(q(x) for x in row) for row in self.m)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("QForm3 needs a 3x3 matrix")
        for i in range(3):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("QForm3 matrix must be symmetric")
        object.__setattr__(self, "m", rows)

    @classmethod
    def diagonal(cls, a: RationalLike, b: RationalLike, c: RationalLike) -> "QForm3":
        z = Fraction(0)
        return cls(((q(a), z, z), (z, q(b), z), (z, z, q(c))))


# The discriminant e1^2 - 2 e0 e2 on (ch0, ch1, ch2) coordinates.
DELTA_FORM = QForm3(((0, 0, -1), (0, 1, 0), (-1, 0, 0)))


def qform_eval(form: QForm3, v: Vec3) -> Fraction:
    v = [q(x) for x in v]
    return sum(
        (form.m[i][j] * v[i] * v[j] for i in range(3) for j in range(3)),
        Fraction(0),
    )


def bilinear_eval(form: QForm3, u: Vec3, v: Vec3) -> Fraction:
    u = [q(x) for x in u]
    v = [q(x) for x in v]
    return sum(
        (form.m[i][j] * u[i] * v[j] for i in range(3) for j in range(3)),
        Fraction(0),
    )


@dataclass(frozen=True)
class IntervalReal:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        lo, hi = q(self.lo), q(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: RationalLike) -> "IntervalReal":
        x = q(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RationalLike) -> bool:
        x = q(x)
        return self.lo <= x <= self.hi

    def __add__(self, other: "IntervalReal | RationalLike") -> "IntervalReal":
        if not isinstance(other, IntervalReal):
            other = IntervalReal.point(other)
        return IntervalReal(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __mul__(self, other: "IntervalReal | RationalLike") -> "IntervalReal":
        if not isinstance(other, IntervalReal):
            other = IntervalReal.point(other)
        products = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return IntervalReal(min(products), max(products))

    __rmul__ = __mul__

    def less_than(self, other: "IntervalReal") -> bool | None:
        """True/False when the intervals are separated, None otherwise."""
        if self.hi < other.lo:
            return True
        if self.lo >= other.hi:
            return False
        return None

    def to_json(self) -> dict:
        return {"lo": fmt(self.lo), "hi": fmt(self.hi)}

    @classmethod
    def from_json(cls, data: dict) -> "IntervalReal":
        return cls(q(data["lo"]), q(data["hi"]))


def _exact_sqrt(x: Fraction) -> Fraction | None:
    p, d = x.numerator, x.denominator
    rp, rd = math.isqrt(p), math.isqrt(d)
    if rp * rp == p and rd * rd == d:
        return Fraction(rp, rd)
    return None


def sqrt_interval(x: RationalLike, width: RationalLike) -> IntervalReal:
    """Enclosure of sqrt(x) of width at most ``width``."""
    x, width = q(x), q(width)
    if x < 0:
        raise ValueError("sqrt_interval of a negative number")
    if width <= 0:
        raise ValueError("width must be positive")
    exact = _exact_sqrt(x)
    if exact is not None:
        return IntervalReal(exact, exact)
    # Grid 1/n with n >= 1/width; floor(sqrt(x) * n) via isqrt on integers.
    n = ceil_fraction(1 / width)
    k = math.isqrt(floor_fraction(x * n * n))
    lo = Fraction(k, n)
    return IntervalReal(lo, lo + Fraction(1, n))


def sum_sqrt_intervals(values: Iterable[Fraction], width: RationalLike) -> IntervalReal:
    """Enclosure of sum(sqrt(v)) with total width at most ``width``."""
    values = list(values)
    width = q(width)
    total = IntervalReal.point(0)
    if not values:
        return total
    each = width / len(values)
    for v in values:
        total = total + sqrt_interval(v, each)
    return total


def refine_compare(
    left: Callable[[Fraction], IntervalReal],
    right: Callable[[Fraction], IntervalReal],
    start: RationalLike = Fraction(1, 16),
    floor: Fraction = UNDECIDABLE_WIDTH,
) -> str:
    """Decide left < right, left > right by shrinking both enclosures.

    ``left`` and ``right`` map a width to an enclosure of that width.
    Returns ``"lt"``, ``"gt"`` or ``"undecided"`` once the width drops below
    ``floor`` without separation (which covers genuine equality).
    """
    w = q(start)
    while w >= floor:
        a, b = left(w), right(w)
        if a.hi < b.lo:
            return "lt"
        if b.hi < a.lo:
            return "gt"
        w /= 16
    return "undecided"


def det(matrix: Sequence[Sequence[RationalLike]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[q(x) for x in row] for row in matrix]
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        result *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return result


def solve(matrix: Sequence[Sequence[RationalLike]], rhs: Sequence[RationalLike]) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    a = [[q(x) for x in row] + [q(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        a[col], a[pivot] = a[pivot], a[col]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col] / a[col][col]
                for c in range(col, n + 1):
                    a[r][c] -= f * a[col][c]
    return [a[i][n] / a[i][i] for i in range(n)]
