"""The Clifford side of a cubic fourfold: the sheaves B_j of the even Clifford
algebra on P^3, their twisted characters, and the numerical hypotheses behind
the stability condition on the Kuznetsov component.

Characters live in the Clifford lattice with d = 1.  ``twisted`` vectors have
had the 11/32 correction applied to ch2 (see :func:`kstab.charvec.clifford_twist`).
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Optional

from .charvec import CLIFFORD, SURFACE, CharVec, clifford_twist, delta_b0
from .numeric import RationalLike, fmt, q
from .report import VerificationReport
from .stab import (
    Charge,
    CliffordP3,
    DeltaZeroStable,
    DoubleTilt,
    ObjectDescriptor,
    StabParams,
    TiltedCoh,
    heart_member,
    mu_tilt_or_none,
    serre_image,
    slope_line,
    strict_threshold,
    z_tilt,
)

BETA = Fraction(-1)

# Untwisted characters of Forg(B0) = O + O(-h) + O(-2h)^2 and of Forg(B1).
FORG_B0 = (Fraction(4), Fraction(-5), Fraction(9, 2))
FORG_B1 = (Fraction(4), Fraction(-3), Fraction(5, 2))

# Real part of Z_alpha on the lambda_1 object as it appears in the literature;
# the formula itself evaluates to +3 (see lambda1_sign_discrepancy).
STATED_LAMBDA1_REAL = Fraction(-3)


def _clifford(e0, e1, e2, twisted: bool) -> CharVec:
    return CharVec(q(e0), q(e1), q(e2), Fraction(1), CLIFFORD, twisted)


def forgetful_class(j: int) -> CharVec:
    """Untwisted character of Forg(B_j); B_{j+2} = B_j (x) O(h)."""
    e = Fraction(2 * j - 5)
    return _clifford(4, e, e * e / 8 + Fraction(11, 8), False)


def clifford_class(j: int) -> CharVec:
    """Twisted character (4, 2j-5, (2j-5)^2/8) of B_j."""
    e = Fraction(2 * j - 5)
    return _clifford(4, e, e * e / 8, True)


def clifford_slope(j: int) -> Fraction:
    return Fraction(2 * j - 5, 4)


def clifford_object(j: int, shift: int = 0) -> ObjectDescriptor:
    return ObjectDescriptor(clifford_class(j), shift, DeltaZeroStable(), f"B_{j}")


def catalog_rows(j_lo: int, j_hi: int) -> list[dict]:
    rows = []
    for j in range(j_lo, j_hi + 1):
        v = clifford_class(j)
        rows.append({"j": j, "class": v.to_json(), "slope": fmt(clifford_slope(j)),
                     "delta_b0": fmt(delta_b0(v)), "serre": f"B_{j - 3}[3]"})
    return rows


def chi_p2_diag(v: CharVec) -> Fraction:
    """chi(E, E) on (P^2, B0|P^2) from an untwisted character."""
    if v.twisted:
        raise ValueError("chi_p2_diag takes an untwisted character")
    if v.ambient not in (CLIFFORD, SURFACE):
        raise ValueError("chi_p2_diag needs a P^2 (surface or Clifford) character")
    r, c, ch2 = v.coords
    return Fraction(-7, 64) * r * r - c * c / 4 + r * ch2 / 2


def rank_admissible(e0: RationalLike) -> bool:
    return (q(e0) / 4).denominator == 1


def bogomolov_predicate(v: CharVec) -> bool:
    """Divisible rank and Delta_B0 >= 0; rank-zero classes count as admissible."""
    if v.ambient != CLIFFORD:
        raise ValueError("bogomolov_predicate needs a Clifford character")
    if not v.twisted:
        v = clifford_twist(v)
    return rank_admissible(v.e0) and delta_b0(v) >= 0


def z_alpha(v: CharVec, t: RationalLike) -> Charge:
    """Z_t(v) = ch^{-1}_1 + i(-t/2 ch^{-1}_0 + ch^{-1}_2)."""
    z = z_tilt(v, StabParams(q(t), BETA))
    return Charge(z.im, -z.re)


def lambda_character(i: int) -> CharVec:
    if i == 1:
        return _clifford(4, -1, Fraction(-15, 8), True)
    if i == 2:
        return _clifford(-8, 8, Fraction(-18, 8), True)
    raise ValueError("lambda index is 1 or 2")


def lambda_determinant(t: RationalLike) -> Fraction:
    """det of the 2x2 real matrix with columns z_alpha(lambda_1), z_alpha(lambda_2)."""
    z1, z2 = z_alpha(lambda_character(1), t), z_alpha(lambda_character(2), t)
    return z1.re * z2.im - z1.im * z2.re


def lambda1_sign_discrepancy(t: RationalLike) -> dict:
    z = z_alpha(lambda_character(1), t)
    stated = Charge(STATED_LAMBDA1_REAL, z.im)
    z2 = z_alpha(lambda_character(2), t)
    return {
        "computed_real": fmt(z.re),
        "stated_real": fmt(STATED_LAMBDA1_REAL),
        "imaginary": fmt(z.im),
        "independent_with_computed": lambda_determinant(t) != 0,
        "independent_with_stated": stated.re * z2.im - stated.im * z2.re != 0,
    }


def chain_objects() -> list[ObjectDescriptor]:
    """B_{-2}[1], B_{-1}[1], B_0[1], B_1, B_2, B_3 in claimed increasing slope order."""
    return [clifford_object(j, 1) for j in (-2, -1, 0)] + [clifford_object(j) for j in (1, 2, 3)]


def chain_threshold(beta: RationalLike = BETA) -> Optional[Fraction]:
    """Supremum t for which the six-term chain with 0 inserted is strict."""
    objs = chain_objects()
    try:
        lines = [slope_line(o.klass, beta) for o in objs]
    except ValueError:
        return Fraction(0)  # some object has left the heart at this beta
    lines.insert(3, (Fraction(0), Fraction(0)))
    return strict_threshold([(a2 - a1, b2 - b1) for (a1, b1), (a2, b2) in zip(lines, lines[1:])])


def _mu_str(x) -> str:
    if x is None:
        return "undefined"
    return fmt(x) if isinstance(x, Fraction) else "+inf"


def verify_cubic4(t: RationalLike, beta: RationalLike = BETA) -> VerificationReport:
    t, beta = q(t), q(beta)
    if beta != BETA:
        warnings.warn("the construction is designed for beta = -1", stacklevel=2)
    p = StabParams(t, beta)
    rep = VerificationReport("cubic4", {"t": fmt(t), "beta": fmt(beta)})
    objs = chain_objects()
    tilted = TiltedCoh(beta)
    rep.add("tilted_heart", all(heart_member(o, tilted).status == "yes" for o in objs),
            "B_1, B_2, B_3 and B_{-2}[1], B_{-1}[1], B_0[1] lie in Coh^beta(P^3, B_0)",
            delta_b0={o.name: fmt(delta_b0(o.v)) for o in objs})
    mus = [mu_tilt_or_none(o.klass, p) for o in objs]
    chain = mus[:3] + [Fraction(0)] + mus[3:]
    threshold = chain_threshold(beta)
    rep.add("slope_chain", None not in chain and all(a < b for a, b in zip(chain, chain[1:])),
            "mu(B_-2[1]) < mu(B_-1[1]) < mu(B_0[1]) < 0 < mu(B_1) < mu(B_2) < mu(B_3)",
            slopes={o.name + ("[1]" if o.shift else ""): _mu_str(m) for o, m in zip(objs, mus)},
            threshold=None if threshold is None else fmt(threshold))
    serre_ok = True
    for j, target in zip((1, 2, 3), objs[:3]):
        img = serre_image(clifford_object(j), CliffordP3())
        serre_ok = serre_ok and img.v == target.v and img.shift == target.shift + 2
    rep.add("serre", serre_ok, "S(B_j) = B_{j-3}[3] carries B_1, B_2, B_3 to B_{-2}[3], B_{-1}[3], B_0[3]")
    heart = DoubleTilt(t, beta, 0)
    members = objs[3:] + [o.shifted(1) for o in objs[:3]]
    answers = {o.name + (f"[{o.shift}]" if o.shift else ""): heart_member(o, heart).status for o in members}
    rep.add("second_tilt_heart", all(a == "yes" for a in answers.values()),
            "second tilt at mu0 = 0 contains B_1, B_2, B_3, B_-2[2], B_-1[2], B_0[2]",
            membership=answers)
    rep.add("charge_nonzero", all(not z_tilt(o.v, p).is_zero() for o in objs[3:]),
            "Z(B_j) != 0 for j = 1, 2, 3")
    rep.add("a2_independence", lambda_determinant(t) != 0,
            "z_alpha(lambda_1), z_alpha(lambda_2) are linearly independent over R",
            determinant=fmt(lambda_determinant(t)))
    disc = lambda1_sign_discrepancy(t)
    rep.notes.append(f"z_alpha(lambda_1) has real part {disc['computed_real']}; the literature value "
                     f"{disc['stated_real']} is a sign slip that does not affect independence")
    return rep
