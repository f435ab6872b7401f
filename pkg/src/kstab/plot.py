"""Wall diagrams in the (beta, alpha) plane as SVG or JSON.

Walls are semicircles in (beta, alpha) coordinates since t = alpha^2.  Arc
points are computed from rational beta samples; alpha = sqrt(t) comes from a
narrow rational enclosure.  Floats appear only in the rendered coordinates.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .numeric import fmt, q, sqrt_interval
from .stab import Region
from .walls import SEMICIRCLE, VERTICAL, WallDescriptor

SAMPLES = 64
WIDTH_PX = 640
HEIGHT_PX = 400
MARGIN_PX = 40
_SQRT_WIDTH = Fraction(1, 10**9)


def _alpha(t: Fraction) -> Fraction:
    return sqrt_interval(max(t, Fraction(0)), _SQRT_WIDTH).mid


def _alpha_max(walls: Sequence[WallDescriptor], region: Region) -> Fraction:
    if region.t_hi is not None:
        return _alpha(region.t_hi)
    radii = [w.radius_sq for w in walls if w.kind == SEMICIRCLE]
    return _alpha(max(radii)) * Fraction(6, 5) if radii else Fraction(2)


def wall_polylines(walls: Sequence[WallDescriptor], region: Region) -> list[list[tuple[Fraction, Fraction]]]:
    """Polylines in (beta, alpha) data coordinates, clipped to the region's box."""
    a_max = _alpha_max(walls, region)
    b_lo, b_hi = region.beta_lo, region.beta_hi
    lines: list[list[tuple[Fraction, Fraction]]] = []
    for wd in walls:
        if wd.kind == VERTICAL:
            if b_lo <= wd.beta0 <= b_hi:
                lines.append([(wd.beta0, Fraction(0)), (wd.beta0, a_max)])
        elif wd.kind == SEMICIRCLE:
            c, r2 = wd.center, wd.radius_sq
            r = sqrt_interval(r2, _SQRT_WIDTH)
            left, right = c - r.mid, c + r.mid
            pts = [(left, Fraction(0))]
            for i in range(1, SAMPLES):
                b = left + (right - left) * Fraction(i, SAMPLES)
                pts.append((b, _alpha(r2 - (b - c) ** 2)))
            pts.append((right, Fraction(0)))
            run: list[tuple[Fraction, Fraction]] = []
            for b, a in pts:
                if b_lo <= b <= b_hi and a <= a_max:
                    run.append((b, a))
                elif run:
                    lines.append(run)
                    run = []
            if run:
                lines.append(run)
    return lines


def _svg(walls: Sequence[WallDescriptor], region: Region) -> str:
    a_max = _alpha_max(walls, region)
    b_lo, b_hi = region.beta_lo, region.beta_hi
    span = b_hi - b_lo if b_hi > b_lo else Fraction(1)
    sx = (WIDTH_PX - 2 * MARGIN_PX) / span
    sy = (HEIGHT_PX - 2 * MARGIN_PX) / (a_max if a_max > 0 else Fraction(1))

    def xy(b: Fraction, a: Fraction) -> tuple[str, str]:
        x = MARGIN_PX + (b - b_lo) * sx
        y = HEIGHT_PX - MARGIN_PX - a * sy
        return f"{float(x):.3f}", f"{float(y):.3f}"

    def px(b: Fraction, a: Fraction) -> str:
        return ",".join(xy(b, a))

    def line(p0, p1) -> str:
        (x0, y0), (x1, y1) = xy(*p0), xy(*p1)
        return f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>'

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" '
        '"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH_PX}" '
        f'height="{HEIGHT_PX}" viewBox="0 0 {WIDTH_PX} {HEIGHT_PX}">',
        f'<rect x="0" y="0" width="{WIDTH_PX}" height="{HEIGHT_PX}" fill="#ffffff"/>',
        f'<g class="axes" stroke="#000000" stroke-width="1">',
        line((b_lo, Fraction(0)), (b_hi, Fraction(0))),
    ]
    if b_lo <= 0 <= b_hi:
        out.append(line((Fraction(0), Fraction(0)), (Fraction(0), a_max)))
    out.append("</g>")
    out.append(f'<text x="{WIDTH_PX - MARGIN_PX}" y="{HEIGHT_PX - MARGIN_PX / 2}" '
               f'font-size="12">beta</text>')
    out.append(f'<text x="{MARGIN_PX / 2}" y="{MARGIN_PX / 2}" font-size="12">alpha</text>')
    for wd in walls:
        for poly in wall_polylines([wd], region):
            attrs = f'class="wall {wd.kind}"'
            if wd.kind == SEMICIRCLE:
                attrs += f' data-center="{fmt(wd.center)}" data-radius-sq="{fmt(wd.radius_sq)}"'
            else:
                attrs += f' data-beta0="{fmt(wd.beta0)}"'
            d = "M " + " L ".join(px(b, a) for b, a in poly)
            out.append(f'<path {attrs} fill="none" stroke="#c00000" stroke-width="1.5" '
                       f'd="{escape(d)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(walls: Sequence[WallDescriptor], region: Region, format: str = "svg") -> str:
    if format == "svg":
        return _svg(walls, region)
    if format == "json":
        doc = {
            "region": region.to_json(),
            "walls": [w.to_json() for w in walls],
            "polylines": [[[round(float(b), 6), round(float(a), 6)] for b, a in poly]
                          for poly in wall_polylines(walls, region)],
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown plot format {format!r}")


def region_box(beta_lo, beta_hi, t_hi) -> Region:
    """Plot window: beta in [beta_lo, beta_hi], 0 < t <= t_hi."""
    return Region(q(beta_lo), q(beta_hi), Fraction(0), q(t_hi), closed_at_zero=True)
