"""Draw the walls met by a class inside a box of the (beta, alpha) half-plane.

By default this draws the ideal sheaf of a line on a degree-one threefold
(a single semicircular wall, centre -3/2) next to the rank-2 bundle E2 of a
genus-8 threefold, whose enumeration along beta = -1 comes back empty.

    python scripts/plot_e2_walls.py --out-dir plots
"""

from __future__ import annotations

import argparse
import pathlib

from kstab.charvec import charvec
from kstab.fano3 import e2_class
from kstab.plot import emit_plot, region_box
from kstab.stab import Region
from kstab.walls import enumerate_destabilizers, threefold_bounds


def draw(name, v, region, bounds, out_dir: pathlib.Path) -> None:
    found = enumerate_destabilizers(v, region, bounds)
    # several classes can share one wall; draw each curve once
    curves = {}
    for _, wd in found:
        doc = wd.to_json()
        curves.setdefault((doc["kind"], doc.get("center"), doc.get("radius_sq"), doc.get("beta0")), wd)
    walls = [curves[k] for k in sorted(curves, key=str)]
    path = out_dir / f"{name}.svg"
    path.write_text(emit_plot(walls, region))
    print(f"{name}: {len(found)} destabilizing classes on {len(walls)} walls -> {path}")


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="plots")
    ap.add_argument("--genus", type=int, default=8)
    args = ap.parse_args(argv)
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    draw("ideal_sheaf_of_line", charvec(1, 0, -1), region_box(-3, 0, 4),
         threefold_bounds(1, (2, 2, 2)), out)
    e2 = e2_class(args.genus)
    d = e2.d
    draw(f"e2_genus{args.genus}_beta_minus_one", e2, Region.segment(-1, 0, None, closed_at_zero=True),
         threefold_bounds(d, (2 * d, 2 * d, d)), out)


if __name__ == "__main__":
    main()
