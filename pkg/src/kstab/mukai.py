"""Arithmetic in the numerical Mukai lattice of a Kuznetsov component.

Vectors are integer coordinate tuples against a :class:`LatticeSpec`.  The
pairing is x^T G y and the Euler form is its negative.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .numeric import RationalLike, det, fmt, q, solve
from .stab import Charge

MukaiVector = tuple[int, ...]
A2_GRAM = ((2, -1), (-1, 2))
DEFAULT_MAX_BOX = 10**6


@dataclass(frozen=True)
class LatticeSpec:
    gram: tuple[tuple[int, ...], ...]
    lambda1: Optional[MukaiVector] = None
    lambda2: Optional[MukaiVector] = None
    name: str = ""

    def __post_init__(self) -> None:
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square and non-empty")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        if any(g[i][i] % 2 for i in range(n)):
            raise ValueError("lattice must be even")
        if (self.lambda1 is None) != (self.lambda2 is None):
            raise ValueError("give both lambda1 and lambda2 or neither")
        if self.lambda1 is not None:
            l1, l2 = self._vec(self.lambda1), self._vec(self.lambda2)
            object.__setattr__(self, "lambda1", l1)
            object.__setattr__(self, "lambda2", l2)
            block = ((self.pair(l1, l1), self.pair(l1, l2)), (self.pair(l2, l1), self.pair(l2, l2)))
            if block != A2_GRAM:
                raise ValueError(f"lambda1, lambda2 must span A2, got Gram {block}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def _vec(self, x: Sequence[int]) -> MukaiVector:
        v = tuple(int(c) for c in x)
        if len(v) != self.rank:
            raise ValueError(f"vector of length {len(v)} in a rank-{self.rank} lattice")
        return v

    def pair(self, x: Sequence[RationalLike], y: Sequence[RationalLike]):
        if len(x) != self.rank or len(y) != self.rank:
            raise ValueError("dimension mismatch")
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(self.rank) for j in range(self.rank)
                   if g[i][j] and x[i] and y[j])

    def has_lambdas(self) -> bool:
        return self.lambda1 is not None

    def to_json(self) -> dict:
        data: dict = {"gram": [list(r) for r in self.gram]}
        if self.lambda1 is not None:
            data["lambda1"] = list(self.lambda1)
            data["lambda2"] = list(self.lambda2)
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_json(cls, data: dict) -> "LatticeSpec":
        l1, l2 = data.get("lambda1"), data.get("lambda2")
        return cls(tuple(tuple(r) for r in data["gram"]),
                   None if l1 is None else tuple(l1), None if l2 is None else tuple(l2),
                   data.get("name", ""))


def _block_sum(*blocks: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return tuple(tuple(r) for r in out)


U_GRAM = ((0, 1), (1, 0))
# Cartan matrix of E8 (Bourbaki labelling), positive definite.
E8_GRAM = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, -1),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 0, 0, 2),
)
E8_MINUS = tuple(tuple(-x for x in row) for row in E8_GRAM)

A2 = LatticeSpec(A2_GRAM, (1, 0), (0, 1), "a2")
U = LatticeSpec(U_GRAM, name="u")
# U^4 + E8(-1)^2 with A2 embedded as e1 + f1, -f1 + e2 + f2.
K3 = LatticeSpec(_block_sum(U_GRAM, U_GRAM, U_GRAM, U_GRAM, E8_MINUS, E8_MINUS),
                 (1, 1) + (0,) * 22, (0, -1, 1, 1) + (0,) * 20, "k3")
BUILTINS = {"a2": A2, "u": U, "k3": K3}


def builtin(name: str) -> LatticeSpec:
    try:
        return BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown builtin lattice {name!r}; choose from {sorted(BUILTINS)}") from None


def pairing(x: Sequence[int], y: Sequence[int], lat: LatticeSpec) -> int:
    return lat.pair(x, y)


def euler(x: Sequence[int], y: Sequence[int], lat: LatticeSpec) -> int:
    return -lat.pair(x, y)


# ---------------------------------------------------------------- definiteness and short vectors


def definiteness(gram: Sequence[Sequence[RationalLike]]) -> str:
    """"positive", "negative" or "indefinite" (semidefinite counts as indefinite)."""
    n = len(gram)
    minors = [det([row[:k] for row in gram[:k]]) for k in range(1, n + 1)]
    if all(m > 0 for m in minors):
        return "positive"
    if all((m > 0) if k % 2 == 0 else (m < 0) for k, m in enumerate(minors, start=1)):
        return "negative"
    return "indefinite"


def short_vectors(gram: Sequence[Sequence[RationalLike]], bound: RationalLike) -> list[MukaiVector]:
    """All nonzero integer x with x^T Q x <= bound for positive definite Q (Fincke-Pohst)."""
    n = len(gram)
    qm = [[q(x) for x in row] for row in gram]
    # Q(x) = sum_i qm[i][i] * (x_i + sum_{j>i} qm[i][j] x_j)^2 after this reduction
    for i in range(n):
        if qm[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            qm[j][i] = qm[i][j]
            qm[i][j] = qm[i][j] / qm[i][i]
        for k in range(i + 1, n):
            for m in range(k, n):
                qm[k][m] -= qm[k][i] * qm[i][m]
    bound = q(bound)
    out: list[MukaiVector] = []
    x = [0] * n

    def rec(i: int, budget: Fraction) -> None:
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        c = -sum((qm[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        reach = math.isqrt(math.floor(budget / qm[i][i])) + 1
        for xi in range(math.floor(c) - reach, math.ceil(c) + reach + 1):
            used = qm[i][i] * (xi - c) ** 2
            if used <= budget:
                x[i] = xi
                rec(i - 1, budget - used)
        x[i] = 0

    rec(n - 1, bound)
    out.sort()
    return out


@dataclass(frozen=True)
class SearchResult:
    vectors: tuple[MukaiVector, ...]
    complete: bool
    method: str

    def to_json(self) -> dict:
        return {"vectors": [list(v) for v in self.vectors], "complete": self.complete,
                "method": self.method}


def minus_two_search(lat: LatticeSpec, bound: int, max_box: int = DEFAULT_MAX_BOX) -> SearchResult:
    """Vectors with square -2.

    Definite forms give an exhaustive answer independent of ``bound``; for
    indefinite ones the box |x_i| <= bound is scanned and the answer is
    marked incomplete.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    kind = definiteness(lat.gram)
    if kind == "positive":
        return SearchResult((), True, "positive definite: no negative squares")
    if kind == "negative":
        neg = [[-x for x in row] for row in lat.gram]
        found = [v for v in short_vectors(neg, 2) if lat.pair(v, v) == -2]
        return SearchResult(tuple(found), True, "negative definite: Fincke-Pohst")
    size = (2 * bound + 1) ** lat.rank
    if size > max_box:
        raise ValueError(f"box of {size} vectors exceeds the limit {max_box}")
    found = [v for v in itertools.product(range(-bound, bound + 1), repeat=lat.rank)
             if lat.pair(v, v) == -2]
    return SearchResult(tuple(found), False, f"box |x_i| <= {bound}")


# ---------------------------------------------------------------- P and P0


@dataclass(frozen=True)
class ComplexEta:
    re: tuple[Fraction, ...]
    im: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", tuple(q(x) for x in self.re))
        object.__setattr__(self, "im", tuple(q(x) for x in self.im))
        if len(self.re) != len(self.im):
            raise ValueError("real and imaginary parts differ in length")

    def to_json(self) -> dict:
        return {"re": [fmt(x) for x in self.re], "im": [fmt(x) for x in self.im]}


def plane_gram(eta: ComplexEta, lat: LatticeSpec) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    r, i = eta.re, eta.im
    ri = lat.pair(r, i)
    return ((lat.pair(r, r), ri), (ri, lat.pair(i, i)))


def in_P(eta: ComplexEta, lat: LatticeSpec) -> bool:
    """Re and Im span a positive definite two-plane."""
    (a, b), (_, c) = plane_gram(eta, lat)
    return a > 0 and a * c - b * b > 0


def in_P0(eta: ComplexEta, lat: LatticeSpec, bound: int = 2) -> str:
    """"yes", "no" or "yes_up_to_bound" (no (-2)-class found orthogonal, search incomplete)."""
    if not in_P(eta, lat):
        return "no"
    res = minus_two_search(lat, bound)
    for d in res.vectors:
        if lat.pair(d, eta.re) == 0 and lat.pair(d, eta.im) == 0:
            return "no"
    return "yes" if res.complete else "yes_up_to_bound"


def eta_from_charge(z1: Charge, z2: Charge) -> ComplexEta:
    """eta in A2 (lambda coordinates) with (eta, lambda_i) = z_i."""
    g = [list(r) for r in A2_GRAM]
    re = solve(g, [z1.re, z2.re])
    im = solve(g, [z1.im, z2.im])
    return ComplexEta(tuple(re), tuple(im))


def embed_eta(eta: ComplexEta, lat: LatticeSpec) -> ComplexEta:
    """Push an eta in lambda coordinates into the ambient lattice."""
    if not lat.has_lambdas():
        raise ValueError("lattice has no distinguished lambda classes")
    l1, l2 = lat.lambda1, lat.lambda2

    def push(c):
        return tuple(c[0] * a + c[1] * b for a, b in zip(l1, l2))

    return ComplexEta(push(eta.re), push(eta.im))


# ---------------------------------------------------------------- A2 symmetries and mutations


def degree_shift_matrix() -> tuple[tuple[int, int], tuple[int, int]]:
    """Columns are the images of lambda_1 and lambda_2: lambda_2 and -lambda_1 - lambda_2."""
    return ((0, -1), (1, -1))


def apply_matrix(m: Sequence[Sequence[int]], v: Sequence[int]) -> MukaiVector:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


EulerForm = Union[Sequence[Sequence[RationalLike]], Callable[[Sequence, Sequence], RationalLike]]


def _chi(form: EulerForm, x: Sequence, y: Sequence) -> Fraction:
    if callable(form):
        return q(form(x, y))
    n = len(x)
    return sum((q(form[i][j]) * x[i] * y[j] for i in range(n) for j in range(n)), Fraction(0))


def numerical_mutation(side: str, e: Sequence[RationalLike], g: Sequence[RationalLike],
                       euler_form: EulerForm) -> tuple[Fraction, ...]:
    """Class of L_E(G) = G - chi(E,G) E or R_E(G) = G - chi(G,E) E."""
    e = tuple(q(x) for x in e)
    g = tuple(q(x) for x in g)
    if len(e) != len(g):
        raise ValueError("dimension mismatch")
    if _chi(euler_form, e, e) != 1:
        raise ValueError("E is not numerically exceptional: chi(E, E) != 1")
    if side == "left":
        c = _chi(euler_form, e, g)
    elif side == "right":
        c = _chi(euler_form, g, e)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return tuple(gi - c * ei for gi, ei in zip(g, e))


# ---------------------------------------------------------------- ext^1 bookkeeping


def stable_ext1(v: Sequence[int], lat: LatticeSpec) -> int:
    """dim Ext^1(E, E) = v^2 + 2 for a stable E of class v (hom = ext^2 = 1)."""
    v = lat._vec(v)
    if not any(v):
        raise ValueError("class must be nonzero")
    s = lat.pair(v, v)
    if s < -2:
        raise ValueError(f"v^2 = {s} < -2 cannot be the class of a stable object")
    return s + 2


@dataclass
class DecompositionReport:
    v: MukaiVector
    splittings: list[dict] = field(default_factory=list)
    identity: dict = field(default_factory=dict)
    complete: bool = False

    @property
    def certified(self) -> bool:
        return self.identity.get("holds", False) and all(s["square"] == -2 for s in self.splittings)

    def to_json(self) -> dict:
        return {"v": list(self.v), "splittings": self.splittings, "identity": self.identity,
                "complete": self.complete, "certified": self.certified}


def _parallelogram_holds(lat: LatticeSpec) -> bool:
    """(a-b)^2 - 2a^2 - 2b^2 + (a+b)^2 vanishes identically on lat + lat.

    The expression is a quadratic form in (a, b); it vanishes identically iff
    it vanishes on every basis vector and every sum of two basis vectors.
    """
    n = lat.rank

    def expr(w: Sequence[int]) -> int:
        a, b = w[:n], w[n:]
        diff = [x - y for x, y in zip(a, b)]
        tot = [x + y for x, y in zip(a, b)]
        return lat.pair(diff, diff) - 2 * lat.pair(a, a) - 2 * lat.pair(b, b) + lat.pair(tot, tot)

    basis = [tuple(int(i == k) for i in range(2 * n)) for k in range(2 * n)]
    if any(expr(u) for u in basis):
        return False
    return all(expr(tuple(x + y for x, y in zip(u, w))) == 0
               for u, w in itertools.combinations(basis, 2))


def decomposition_obstruction(v: Sequence[int], lat: LatticeSpec, bound: int,
                              max_box: int = DEFAULT_MAX_BOX) -> DecompositionReport:
    """Splittings v = a + b with a^2 = b^2 = 0, each shown to have (a - b)^2 = -2."""
    v = lat._vec(v)
    if lat.pair(v, v) != 2:
        raise ValueError("decomposition_obstruction needs v^2 = 2")
    rep = DecompositionReport(v)
    rep.identity = {
        "statement": "a^2 = b^2 = 0 and (a+b)^2 = 2 imply (a, b) = 1 and (a-b)^2 = 2a^2 + 2b^2 - (a+b)^2 = -2",
        "holds": _parallelogram_holds(lat),
    }
    kind = definiteness(lat.gram)
    if kind != "indefinite":
        rep.complete = True  # definite lattices have no nonzero isotropic vectors
        return rep
    size = (2 * bound + 1) ** lat.rank
    if size > max_box:
        raise ValueError(f"box of {size} vectors exceeds the limit {max_box}")
    for a in itertools.product(range(-bound, bound + 1), repeat=lat.rank):
        if not any(a) or lat.pair(a, a) != 0:
            continue
        b = tuple(x - y for x, y in zip(v, a))
        if not any(b) or lat.pair(b, b) != 0:
            continue
        d = tuple(x - y for x, y in zip(a, b))
        rep.splittings.append({"a": list(a), "b": list(b), "pairing": lat.pair(a, b),
                               "square": lat.pair(d, d)})
    return rep


def distinguished_classes(lat: LatticeSpec) -> dict[str, MukaiVector]:
    if not lat.has_lambdas():
        raise ValueError("lattice has no distinguished lambda classes")
    l1, l2 = lat.lambda1, lat.lambda2
    return {"lambda1": l1, "lambda2": l2, "fano_lines": l1,
            "plucker": tuple(a + 2 * b for a, b in zip(l1, l2))}
