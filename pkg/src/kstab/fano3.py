"""Fano threefolds of Picard rank one: exceptional collections and the numerical
hypotheses behind stability conditions on their Kuznetsov components.

Classes are (H^3 ch0, H^2 ch1, H ch2) with d = H^3.  For index one and even
genus g = 2s the Mukai bundle E2 has rank 2, c1 = -H, ch2 = (s-2)L with
H.L = 1, i.e. class (2d, -d, s-2) where d = 2g - 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .charvec import (
    CharVec,
    TangentSide,
    charvec,
    delta_h,
    line_bundle_class,
    tangent_side,
    twist_line_bundle,
)
from .numeric import RationalLike, fmt, q
from .report import VerificationReport
from .stab import (
    DeltaZeroStable,
    DoubleTilt,
    ObjectDescriptor,
    Region,
    SlopeStable,
    StabParams,
    TiltStable,
    TiltedCoh,
    heart_member,
    mu_tilt,
    mu_tilt_or_none,
    slope_line,
    strict_threshold,
    z_tilt,
)
from .walls import integrality_exclusion, kernel_classes_proportional

DEFAULT_EPS = Fraction(1, 10)
DEFAULT_T = Fraction(1, 100)


class NotCovered(ValueError):
    """The requested threefold is outside what these verifiers handle."""


@dataclass(frozen=True)
class FanoEntry:
    index: int
    d: Fraction  # H^3
    genus: Optional[int]
    collection: tuple[ObjectDescriptor, ...]
    route: str  # "1object" | "index2" | "index1" | "explicit"
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def canonical_multiple(self) -> int:
        return -self.index

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "d": fmt(self.d),
            "genus": self.genus,
            "route": self.route,
            "collection": [o.to_json() for o in self.collection],
            "notes": list(self.notes),
        }


def _line_name(k) -> str:
    if k == 0:
        return "O"
    return "O(H)" if k == 1 else "O(-H)" if k == -1 else f"O({fmt(k)}H)"


def _line(k: int, d: Fraction, shift: int = 0, name: str = "") -> ObjectDescriptor:
    return ObjectDescriptor(line_bundle_class(k, d), shift, DeltaZeroStable(), name or _line_name(k))


def e2_class(g: int) -> CharVec:
    if g % 2 or g <= 2:
        raise ValueError("E2 exists for even genus g > 2")
    s = g // 2
    d = Fraction(2 * g - 2)
    return charvec(2 * d, -d, s - 2, d)


def e2_object(g: int) -> ObjectDescriptor:
    return ObjectDescriptor(e2_class(g), 0, SlopeStable(Fraction(-1, 2)), "E2")


_INDEX1_EXTRA = {
    7: "collection (E5, O): rank-5 bundle, no ch2 data; stability via the explicit description",
    9: "collection (E3, O): rank-3 bundle, no ch2 data; stability via the explicit description",
    10: "Ku(X) = D^b(C_2); also covered by the explicit description",
    12: "full collection (E4, E3, E2, O); also covered by the explicit description",
}


def catalog(index: int, n: int) -> FanoEntry:
    """Entry for index 2 and degree n, or index 1 and genus n."""
    if index == 2:
        if n not in range(1, 6):
            raise NotCovered(f"index-2 Picard-rank-one threefolds have degree 1..5, got {n}")
        d = Fraction(n)
        return FanoEntry(2, d, None, (_line(0, d, name="O"), _line(1, d, name="O(H)")), "index2")
    if index == 1:
        g = n
        d = Fraction(2 * g - 2)
        if g in (2, 3, 5):
            return FanoEntry(1, d, g, (_line(0, d, name="O"),), "1object")
        if g == 4:
            raise NotCovered(
                "genus 4 is not covered: v(E2) lies exactly on the intersection of the "
                "tangent planes at v(O) and v(O(-H))")
        if g in (7, 9):
            return FanoEntry(1, d, g, (_line(0, d, name="O"),), "explicit", (_INDEX1_EXTRA[g],))
        if g in (6, 8, 10, 12):
            notes = (_INDEX1_EXTRA[g],) if g in _INDEX1_EXTRA else ()
            return FanoEntry(1, d, g, (e2_object(g), _line(0, d, name="O")), "index1", notes)
        raise NotCovered(f"no index-1 Picard-rank-one Fano threefold of genus {g}")
    raise NotCovered(f"index must be 1 or 2, got {index}")


# ---------------------------------------------------------------- linear slope algebra


_NEVER = (Fraction(0), Fraction(-1))  # a condition that fails for every t


def _obj_slope_line(obj: ObjectDescriptor, beta: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    try:
        return slope_line(obj.klass, beta)
    except ValueError:
        return None  # not of positive imaginary part: the setting breaks at this beta


def _sign_conditions(objs_pos: Sequence[ObjectDescriptor], objs_neg: Sequence[ObjectDescriptor],
                     beta: Fraction) -> list[tuple[Fraction, Fraction]]:
    conds = []
    for sgn, objs in ((1, objs_pos), (-1, objs_neg)):
        for o in objs:
            line = _obj_slope_line(o, beta)
            conds.append(_NEVER if line is None else (sgn * line[0], sgn * line[1]))
    return conds


def _chain_conditions(chain: Sequence[ObjectDescriptor], beta: Fraction) -> list[tuple[Fraction, Fraction]]:
    lines = [_obj_slope_line(o, beta) for o in chain]
    if any(x is None for x in lines):
        return [_NEVER]
    return [(a2 - a1, b2 - b1) for (a1, b1), (a2, b2) in zip(lines, lines[1:])]


def _canonical(obj: ObjectDescriptor, index: int, shift: int) -> ObjectDescriptor:
    v = twist_line_bundle(obj.v, -index)
    cert = obj.cert
    if isinstance(cert, SlopeStable):
        cert = SlopeStable(cert.mu_h - index)
    if isinstance(obj.cert, DeltaZeroStable) and v.e0 > 0:
        name = _line_name(v.e1 / v.e0)
    else:
        name = obj.name + ("(-H)" if index == 1 else f"(-{index}H)") if obj.name else ""
    return ObjectDescriptor(v, shift, cert, name)


def one_object_setting(entry: FanoEntry) -> tuple[Fraction, ObjectDescriptor, ObjectDescriptor]:
    """(beta, O, O(K)[1]) with beta = -index/2."""
    o = _line(0, entry.d, name="O")
    return Fraction(-entry.index, 2), o, _canonical(o, entry.index, 1)


def index2_setting(d: RationalLike) -> tuple[Fraction, list[ObjectDescriptor], list[ObjectDescriptor]]:
    d = q(d)
    gs = [_line(0, d, name="O"), _line(1, d, name="O(H)")]
    return Fraction(-1, 2), gs, [_canonical(g, 2, 1) for g in gs]


def index1_chain(g: int, eps: RationalLike) -> tuple[Fraction, list[ObjectDescriptor]]:
    """beta = -1 + eps and [E2(-H)[1], O(-H)[1], E2, O] in claimed increasing slope order."""
    beta = -1 + q(eps)
    e2 = e2_object(g)
    d = e2.v.d
    o = _line(0, d, name="O")
    return beta, [_canonical(e2, 1, 1), _canonical(o, 1, 1), e2, o]


def alpha_threshold(entry: FanoEntry, beta: RationalLike) -> Optional[Fraction]:
    """Supremum of t below which the strict slope conditions hold at ``beta``.

    At beta = -index/2 these are the one-object conditions for O_X; otherwise
    the conditions of the entry's route.  None means no upper bound, and 0
    means the conditions fail for every t (for instance when an object leaves
    the tilted heart at this beta).
    """
    beta = q(beta)
    if beta == Fraction(-entry.index, 2) and entry.route != "index1":
        _, o, ok = one_object_setting(entry)
        return strict_threshold(_sign_conditions([o], [ok], beta))
    if entry.route == "index2":
        _, gs, gks = index2_setting(entry.d)
        return strict_threshold(_sign_conditions(gs, gks, beta))
    if entry.route == "index1":
        _, chain = index1_chain(entry.genus, beta + 1)
        return strict_threshold(_chain_conditions(chain, beta))
    if entry.route == "1object":
        _, o, ok = one_object_setting(entry)
        return strict_threshold(_sign_conditions([o], [ok], beta))
    raise NotCovered(f"no threshold for route {entry.route!r}")


def one_object_threshold(index: int, d: RationalLike, beta: RationalLike) -> Optional[Fraction]:
    entry = FanoEntry(index, q(d), None, (), "1object")
    return alpha_threshold(entry, beta)


# ---------------------------------------------------------------- verifiers


def _mu_str(x) -> str:
    if x is None:
        return "undefined"
    return "+inf" if not isinstance(x, Fraction) else fmt(x)


def _strict_chain(mus: Sequence) -> bool:
    return None not in mus and all(a < b for a, b in zip(mus, mus[1:]))


def _double_tilt_checks(rep: VerificationReport, objs: Sequence[ObjectDescriptor],
                        heart: DoubleTilt, label: str) -> None:
    answers = {o.name: heart_member(o, heart) for o in objs}
    rep.add(label, all(a.status == "yes" for a in answers.values()),
            "second tilt at mu0 contains " + ", ".join(o.name + (f"[{o.shift}]" if o.shift else "")
                                                     for o in objs),
            mu0=fmt(heart.mu0),
            membership={k: (a.status if a.status != "needs_shift" else f"needs_shift({a.shift})")
                        for k, a in answers.items()})


def verify_1object(entry: FanoEntry, t: RationalLike) -> VerificationReport:
    t = q(t)
    beta, o, ok1 = one_object_setting(entry)
    p = StabParams(t, beta)
    rep = VerificationReport("1object", {"index": entry.index, "d": fmt(entry.d), "t": fmt(t),
                                         "beta": fmt(beta)})
    heart = TiltedCoh(beta)
    rep.add("tilted_heart", heart_member(o, heart).status == "yes"
            and heart_member(ok1, heart).status == "yes",
            "O and O(K)[1] lie in Coh^beta")
    rep.add("delta_zero", delta_h(o.v) == 0 and delta_h(ok1.v) == 0,
            "O and O(K) are slope-stable with discriminant 0, hence tilt-stable")
    mu_o, mu_k = mu_tilt(o.klass, p), mu_tilt(ok1.klass, p)
    threshold = alpha_threshold(entry, beta)
    rep.add("sign", mu_k < 0 < mu_o, "mu(O(K)[1]) < 0 < mu(O)",
            mu_O=_mu_str(mu_o), mu_OK1=_mu_str(mu_k),
            threshold=None if threshold is None else fmt(threshold))
    _double_tilt_checks(rep, [o, ok1.shifted(1)], DoubleTilt(t, beta, 0), "second_tilt_heart")
    rep.add("charge_nonzero", not z_tilt(o.v, p).is_zero(), "Z(O) != 0")
    return rep


def verify_index2(d: RationalLike, t: RationalLike) -> VerificationReport:
    d, t = q(d), q(t)
    if d <= 0:
        raise ValueError("degree must be positive")
    beta, gs, gks = index2_setting(d)
    p = StabParams(t, beta)
    rep = VerificationReport("index2", {"d": fmt(d), "t": fmt(t), "beta": fmt(beta)})
    heart = TiltedCoh(beta)
    rep.add("tilted_heart", all(heart_member(x, heart).status == "yes" for x in gs + gks),
            "G and G(K)[1] lie in Coh^beta for G in {O, O(H)}")
    rep.add("delta_zero", all(delta_h(x.v) == 0 for x in gs + gks),
            "all four objects are line bundles up to shift, discriminant 0")
    slopes = {}
    ok = True
    for g, gk in zip(gs, gks):
        mg, mk = mu_tilt(g.klass, p), mu_tilt(gk.klass, p)
        slopes[g.name] = _mu_str(mg)
        slopes[gk.name + "[1]"] = _mu_str(mk)
        ok = ok and (mk < 0 < mg)
    threshold = strict_threshold(_sign_conditions(gs, gks, beta))
    rep.add("sign", ok, "mu(G(K)[1]) < 0 < mu(G) for G in {O, O(H)}", slopes=slopes,
            threshold=None if threshold is None else fmt(threshold))
    rep.add("below_threshold", threshold is None or t < threshold, "t below the exact threshold",
            threshold=None if threshold is None else fmt(threshold))
    _double_tilt_checks(rep, gs + [x.shifted(1) for x in gks], DoubleTilt(t, beta, 0),
                        "second_tilt_heart")
    rep.add("charge_nonzero", all(not z_tilt(g.v, p).is_zero() for g in gs), "Z(G) != 0")
    return rep


def verify_index1(g: int, eps: RationalLike = DEFAULT_EPS, t: RationalLike = DEFAULT_T) -> VerificationReport:
    if g % 2 or g < 4:
        raise ValueError("verify_index1 needs an even genus g >= 4")
    eps, t = q(eps), q(t)
    if eps <= 0:
        raise ValueError("eps must be positive")
    beta, chain = index1_chain(g, eps)
    e2k1, ok1, e2, o = chain
    d = e2.v.d
    rep = VerificationReport("index1", {"genus": g, "d": fmt(d), "eps": fmt(eps), "t": fmt(t),
                                        "beta": fmt(beta)})
    if g == 4:
        rep.notes.append("genus 4 is not covered: the tangent-plane condition degenerates")

    # (a) position of v(E2) relative to the tangent planes
    side_o = tangent_side(o.v, e2.v)
    side_oh = tangent_side(line_bundle_class(-1, d), e2.v)
    rep.add("tangent_planes", side_o is TangentSide.INTERIOR and side_oh is TangentSide.INTERIOR,
            "v(E2) lies strictly inside the tangent planes at v(O) and v(O(-H))",
            at_O=side_o.value, at_O_minus_H=side_oh.value, H_ch2_E2=fmt(e2.v.e2))
    # (b) integrality along beta = -1
    try:
        excl = integrality_exclusion(e2, -1, d) and integrality_exclusion(e2k1, -1, d)
    except ValueError:
        excl = False
    rep.add("integrality", excl, "im Z_{t,-1}(E2) = im Z_{t,-1}(E2(-H)[1]) = H^3", quantum=fmt(d))
    # (c) endpoint of the would-be wall between v(E2) and v(O(-H))
    rep.add("kernel_endpoint", kernel_classes_proportional(line_bundle_class(-1, d), 0, -1),
            "ker Z_{0,-1} is spanned by v(O(-H))")
    # (d) the slope chain
    p = StabParams(t, beta)
    mus = [mu_tilt_or_none(x.klass, p) for x in chain]
    rep.add("slope_chain", _strict_chain(mus),
            "mu(E2(-H)[1]) < mu(O(-H)[1]) < mu(E2) < mu(O)",
            slopes=[_mu_str(m) for m in mus],
            threshold=_fmt_opt(strict_threshold(_chain_conditions(chain, beta))))
    # (e) the second tilt between slopes 2 and 3
    heart = TiltedCoh(beta)
    rep.add("tilted_heart", all(heart_member(x, heart).status == "yes" for x in chain),
            "Coh^beta contains O, E2, O(-H)[1], E2(-H)[1]")
    mid_ok = all(isinstance(m, Fraction) for m in mus[1:3]) and mus[1] < mus[2]
    mu0 = (mus[1] + mus[2]) / 2 if mid_ok else Fraction(0)
    region = Region.segment(beta, 0, None, closed_at_zero=True)
    tilt_e2 = ObjectDescriptor(e2.v, 0, TiltStable(region), "E2")
    tilt_e2k = ObjectDescriptor(e2k1.v, 2, TiltStable(region), e2k1.name)
    objs = [o, tilt_e2, ok1.shifted(1), tilt_e2k]
    if mid_ok:
        _double_tilt_checks(rep, objs, DoubleTilt(t, beta, mu0), "second_tilt_heart")
    else:
        rep.add("second_tilt_heart", False, "no mu0 strictly between slopes 2 and 3")
    rep.notes.append("tilt-stability of E2 and E2(-H)[1] along beta = -1 + eps is a recorded fact; "
                     "numerically only the integrality and endpoint steps are checked")
    return rep


def _fmt_opt(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else fmt(x)


def verify_entry(entry: FanoEntry, t: RationalLike, eps: RationalLike = DEFAULT_EPS) -> VerificationReport:
    if entry.route == "1object":
        return verify_1object(entry, t)
    if entry.route == "index2":
        return verify_index2(entry.d, t)
    if entry.route == "index1":
        return verify_index1(entry.genus, eps, t)
    raise NotCovered(f"genus {entry.genus}: " + "; ".join(entry.notes))
