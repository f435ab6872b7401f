"""Command-line front end.

Exit codes: 0 computed or verified, 1 verification failed (the report is
still printed), 2 usage error.  Numeric flags take exact rationals "p/q".
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import cubic4, fano3, mukai, plot
from .charvec import AMBIENTS, CLIFFORD, THREEFOLD, CharVec, discriminant
from .numeric import fmt, q
from .report import VerificationReport
from .stab import (
    DeltaZeroStable,
    DoubleTilt,
    ObjectDescriptor,
    PlainCoh,
    Region,
    SlopeSemistable,
    SlopeStable,
    StabParams,
    TiltedCoh,
    TiltStable,
    heart_member,
    mu_tilt,
    rotate_charge,
    z_slope,
    z_tilt,
)
from .walls import (
    clifford_bounds,
    enumerate_destabilizers,
    threefold_bounds,
    wall_curve,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        # let values such as -1/2, -1..0 and -2,1,0 through as arguments
        self._negative_number_matcher = re.compile(r"^-\d[\d/,.\-]*$")

    def error(self, message: str) -> None:
        raise UsageError(message)


def rational(s: str) -> Fraction:
    try:
        return q(s)
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {s!r}") from None


def rational_list(s: str) -> list[Fraction]:
    return [rational(x) for x in s.split(",")]


def int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {s!r}") from None


def rational_range(s: str) -> tuple[Fraction, Fraction]:
    if ".." not in s:
        raise argparse.ArgumentTypeError(f"expected a..b, got {s!r}")
    a, b = s.split("..", 1)
    lo, hi = rational(a), rational(b)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {s!r}")
    return lo, hi


def int_range(s: str) -> tuple[int, int]:
    lo, hi = rational_range(s)
    if lo.denominator != 1 or hi.denominator != 1:
        raise argparse.ArgumentTypeError(f"expected an integer range, got {s!r}")
    return int(lo), int(hi)


def _emit(doc, as_json: bool, text: Optional[str] = None) -> None:
    if as_json or text is None:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")


def _mu(x) -> str:
    return fmt(x) if isinstance(x, Fraction) else "+inf"


def _class_of(args, flag: str = "cls") -> CharVec:
    e = getattr(args, flag)
    if len(e) != 3:
        raise UsageError("a class has three coordinates e0,e1,e2")
    twisted = args.ambient == CLIFFORD and args.twisted
    return CharVec(e[0], e[1], e[2], args.d, args.ambient, twisted)


def _add_class_flags(p: argparse.ArgumentParser, name: str = "--class", dest: str = "cls") -> None:
    p.add_argument(name, dest=dest, type=rational_list, required=True,
                   help="e0,e1,e2 = H^n ch0, H^(n-1) ch1, H^(n-2) ch2")


def _add_lattice_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=rational, default=Fraction(1), help="H^3 (default 1)")
    p.add_argument("--ambient", choices=AMBIENTS, default=THREEFOLD)
    p.add_argument("--twisted", action="store_true", help="Clifford class already twisted")


# ---------------------------------------------------------------- subcommands


def cmd_slope(args) -> int:
    v = _class_of(args)
    p = StabParams(args.t, args.beta)
    doc = {"class": v.to_json(), "params": {"t": fmt(p.t), "beta": fmt(p.beta)},
           "discriminant": fmt(discriminant(v)), "z_slope": z_slope(v).to_json(),
           "z_tilt": z_tilt(v, p).to_json()}
    z = z_tilt(v, p)
    doc["mu_tilt"] = _mu(mu_tilt(v, p)) if z.im >= 0 else None
    if args.mu0 is not None:
        doc["params"]["mu0"] = fmt(args.mu0)
        doc["z_rotated"] = rotate_charge(z, args.mu0).to_json()
    text = "\n".join(f"{k}: {v_}" for k, v_ in doc.items() if k != "class")
    _emit(doc, args.json, text)
    return 0


def _cert_from_args(args, v: CharVec):
    kind = args.cert
    if kind == "delta0":
        return DeltaZeroStable()
    if kind in ("slope", "slope-semi"):
        mu = v.mu_h()
        return SlopeStable(mu) if kind == "slope" else SlopeSemistable(mu)
    if args.tilt_region is None:
        raise UsageError("--cert tilt needs --tilt-region beta_lo,beta_hi,t_lo[,t_hi]")
    r = args.tilt_region
    if len(r) not in (3, 4):
        raise UsageError("--tilt-region takes 3 or 4 rationals")
    return TiltStable(Region(r[0], r[1], r[2], r[3] if len(r) == 4 else None, r[2] == 0))


def cmd_heart(args) -> int:
    v = _class_of(args)
    try:
        obj = ObjectDescriptor(v, args.shift, _cert_from_args(args, v), args.name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.heart == "coh":
        heart, params = PlainCoh(), {}
    elif args.heart == "tilt":
        if args.beta is None:
            raise UsageError("--heart tilt needs --beta")
        heart, params = TiltedCoh(args.beta), {"beta": fmt(args.beta)}
    else:
        if None in (args.beta, args.t, args.mu0):
            raise UsageError("--heart double needs --t, --beta and --mu0")
        heart = DoubleTilt(args.t, args.beta, args.mu0)
        params = {"t": fmt(args.t), "beta": fmt(args.beta), "mu0": fmt(args.mu0)}
    m = heart_member(obj, heart)
    doc = {"object": obj.to_json(), "heart": args.heart, "params": params, "status": m.status}
    if m.status == "needs_shift":
        doc["shift"] = m.shift
    _emit(doc, args.json, m.status + (f" (shift by {m.shift})" if m.status == "needs_shift" else ""))
    return 0


def cmd_walls(args) -> int:
    v = _class_of(args, "v")
    if args.mode == "pair":
        if args.w is None:
            raise UsageError("walls pair needs --w")
        w = CharVec(args.w[0], args.w[1], args.w[2], v.d, v.ambient, v.twisted)
        wd = wall_curve(v, w)
        _emit(wd.to_json(), args.json, _wall_line(wd))
        return 0
    walls = _enumerate(args, v)
    doc = {"class": v.to_json(), "region": _region(args).to_json(), "bounds": _bounds(args, v).to_json(),
           "destabilizers": [{"w": w.to_json(), "wall": wd.to_json()} for w, wd in walls]}
    text = "\n".join(f"w = {','.join(fmt(x) for x in w.coords)}: {_wall_line(wd)}" for w, wd in walls)
    _emit(doc, args.json, text or "no candidate walls")
    return 0


def _wall_line(wd) -> str:
    if wd.kind == "semicircle":
        return f"semicircle center={fmt(wd.center)} radius_sq={fmt(wd.radius_sq)}"
    if wd.kind == "vertical":
        return f"vertical beta={fmt(wd.beta0)}"
    return wd.kind


def _region(args) -> Region:
    b_lo, b_hi = args.beta_range
    t_lo, t_hi = args.t_range if args.t_range is not None else (Fraction(0), None)
    return Region(b_lo, b_hi, t_lo, t_hi, closed_at_zero=t_lo == 0)


def _bounds(args, v: CharVec):
    if args.caps is None or len(args.caps) != 3:
        raise UsageError("--caps needs three rationals")
    if v.ambient == CLIFFORD:
        return clifford_bounds(args.caps)
    return threefold_bounds(v.d, args.caps)


def _enumerate(args, v: CharVec):
    if args.beta_range is None:
        raise UsageError("enumeration needs --beta-range")
    try:
        return enumerate_destabilizers(v, _region(args), _bounds(args, v), workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_plot(args) -> int:
    v = _class_of(args, "v")
    walls = [wd for _, wd in _enumerate(args, v)]
    b_lo, b_hi = args.beta_range
    t_hi = args.t_range[1] if args.t_range is not None and args.t_range[1] is not None else None
    region = Region(b_lo, b_hi, Fraction(0), t_hi, closed_at_zero=True)
    out = plot.emit_plot(walls, region, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_clifford(args) -> int:
    lo, hi = args.j_range
    rows = cubic4.catalog_rows(lo, hi)
    text = "\n".join(f"B_{r['j']}: ch_B0 = ({', '.join(r['class']['e'])})  mu = {r['slope']}  "
                     f"delta = {r['delta_b0']}  S(B_{r['j']}) = {r['serre']}" for r in rows)
    _emit({"rows": rows}, args.json, text)
    return 0


def _report(rep: VerificationReport, as_json: bool) -> int:
    _emit(rep.to_json(), as_json, rep.table())
    return 0 if rep.overall else 1


def cmd_verify(args) -> int:
    if args.target == "cubic4":
        if args.t is None:
            raise UsageError("verify cubic4 needs --t")
        return _report(cubic4.verify_cubic4(args.t, args.beta if args.beta is not None else -1), args.json)
    if args.index is None or args.deg_or_genus is None or args.t is None:
        raise UsageError(f"verify {args.target} needs --index, --deg-or-genus and --t")
    try:
        entry = fano3.catalog(args.index, args.deg_or_genus)
    except fano3.NotCovered as exc:
        if args.index == 1 and args.deg_or_genus == 4 and args.target == "fano":
            rep = fano3.verify_index1(4, args.eps, args.t)
            rep.notes.append(str(exc))
            return _report(rep, args.json)
        raise UsageError(str(exc)) from None
    if args.target == "1object":
        return _report(fano3.verify_1object(entry, args.t), args.json)
    try:
        return _report(fano3.verify_entry(entry, args.t, args.eps), args.json)
    except fano3.NotCovered as exc:
        raise UsageError(str(exc)) from None


def _lattice(args) -> mukai.LatticeSpec:
    if args.lattice:
        with open(args.lattice, encoding="utf-8") as fh:
            try:
                return mukai.LatticeSpec.from_json(json.load(fh))
            except (ValueError, KeyError, TypeError) as exc:
                raise UsageError(f"bad lattice file: {exc}") from None
    return mukai.builtin(args.builtin)


def cmd_mukai(args) -> int:
    lat = _lattice(args)
    doc: dict = {"lattice": args.lattice or args.builtin, "rank": lat.rank}
    if args.minus_two:
        try:
            doc["minus_two"] = mukai.minus_two_search(lat, args.bound).to_json()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.pair is not None:
        x, y = args.pair
        doc["pairing"] = lat.pair(x, y)
        doc["euler"] = -lat.pair(x, y)
    if args.ext1 is not None:
        doc["ext1"] = mukai.stable_ext1(args.ext1, lat)
    if args.decompose is not None:
        doc["decomposition"] = mukai.decomposition_obstruction(args.decompose, lat, args.bound).to_json()
    if args.distinguished:
        doc["distinguished"] = {k: list(v) for k, v in mukai.distinguished_classes(lat).items()}
    if args.shift_orbit:
        m = mukai.degree_shift_matrix()
        orbit, v = [], (1, 0)
        for _ in range(3):
            orbit.append(list(v))
            v = mukai.apply_matrix(m, v)
        doc["degree_shift"] = {"matrix": [list(r) for r in m], "orbit_of_lambda1": orbit}
    if args.eta_t is not None:
        z1 = cubic4.z_alpha(cubic4.lambda_character(1), args.eta_t)
        z2 = cubic4.z_alpha(cubic4.lambda_character(2), args.eta_t)
        eta = mukai.eta_from_charge(z1, z2)
        doc["eta"] = {"t": fmt(args.eta_t), "lambda_coords": eta.to_json(),
                      "in_P": mukai.in_P(eta, mukai.A2), "in_P0": mukai.in_P0(eta, mukai.A2)}
    _emit(doc, True)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kstab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("slope", help="charges and tilt slope of a class")
    _add_class_flags(p)
    _add_lattice_flags(p)
    p.add_argument("--t", type=rational, required=True, help="t = alpha^2 > 0")
    p.add_argument("--beta", type=rational, required=True)
    p.add_argument("--mu0", type=rational)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("heart", help="heart membership from a stability certificate")
    _add_class_flags(p)
    _add_lattice_flags(p)
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--name", default="")
    p.add_argument("--cert", choices=["delta0", "slope", "slope-semi", "tilt"], default="slope")
    p.add_argument("--tilt-region", type=rational_list)
    p.add_argument("--heart", choices=["coh", "tilt", "double"], required=True)
    p.add_argument("--t", type=rational)
    p.add_argument("--beta", type=rational)
    p.add_argument("--mu0", type=rational)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_heart)

    for name, helptext in (("walls", "numerical walls of a class"), ("plot", "wall diagram")):
        p = sub.add_parser(name, help=helptext)
        if name == "walls":
            p.add_argument("mode", choices=["pair", "enumerate"])
            p.add_argument("--w", type=rational_list)
            p.add_argument("--json", action="store_true")
        else:
            p.add_argument("--format", choices=["svg", "json"], default="svg")
            p.add_argument("--out")
        _add_class_flags(p, "--v", "v")
        _add_lattice_flags(p)
        p.add_argument("--beta-range", type=rational_range)
        p.add_argument("--t-range", type=rational_range)
        p.add_argument("--caps", type=rational_list)
        p.add_argument("--workers", type=int)
        p.set_defaults(func=cmd_walls if name == "walls" else cmd_plot)

    p = sub.add_parser("clifford", help="twisted characters of the B_j")
    p.add_argument("--j-range", type=int_range, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_clifford)

    p = sub.add_parser("verify", help="check the numerical hypotheses of a construction")
    p.add_argument("target", choices=["fano", "cubic4", "1object"])
    p.add_argument("--index", type=int)
    p.add_argument("--deg-or-genus", "--deg", "--genus", dest="deg_or_genus", type=int)
    p.add_argument("--t", type=rational)
    p.add_argument("--eps", type=rational, default=fano3.DEFAULT_EPS)
    p.add_argument("--beta", type=rational, help="cubic4 only; the construction uses -1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mukai", help="Mukai lattice queries (JSON output)")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--builtin", choices=sorted(mukai.BUILTINS), default="a2")
    src.add_argument("--lattice", help="LatticeSpec JSON file")
    p.add_argument("--minus-two", action="store_true")
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--pair", type=int_list, nargs=2)
    p.add_argument("--ext1", type=int_list)
    p.add_argument("--decompose", type=int_list)
    p.add_argument("--distinguished", action="store_true")
    p.add_argument("--shift-orbit", action="store_true")
    p.add_argument("--eta-t", type=rational, help="eta from z_alpha at this t")
    p.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    p.set_defaults(func=cmd_mukai)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"kstab: error: {exc}\n")
        return 2
    except (ValueError, TypeError) as exc:
        sys.stderr.write(f"kstab: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
