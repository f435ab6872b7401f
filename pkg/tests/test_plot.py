from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from kstab.charvec import charvec, line_bundle_class
from kstab.plot import emit_plot, region_box, wall_polylines
from kstab.walls import wall_curve

SVG = "{http://www.w3.org/2000/svg}"


def semicircle():
    return wall_curve(charvec(1, 0, 0), charvec(1, 1, Fraction(1, 2)))


def vertical():
    return wall_curve(charvec(0, 0, 1), charvec(1, 0, 0))


def paths(doc: str):
    return ET.fromstring(doc.split("\n", 2)[2]).findall(f"{SVG}path")


def test_empty_plot_is_valid_svg_with_axes():
    doc = emit_plot([], region_box(-2, 2, 4))
    root = ET.fromstring(doc.split("\n", 2)[2])
    assert root.tag == f"{SVG}svg" and root.get("version") == "1.1"
    assert root.findall(f"{SVG}g") and not paths(doc)


def test_semicircle_arc_endpoints():
    region = region_box(-1, 2, 1)
    (poly,) = wall_polylines([semicircle()], region)
    assert poly[0] == (0, 0) and poly[-1] == (1, 0)
    top = max(a for _, a in poly)
    assert abs(float(top) - 0.5) < 1e-3
    (p,) = paths(emit_plot([semicircle()], region))
    assert p.get("data-center") == "1/2" and p.get("data-radius-sq") == "1/4"


def test_vertical_wall_is_clipped():
    region = region_box(-1, 1, 4)
    (poly,) = wall_polylines([vertical()], region)
    assert poly == [(0, 0), (0, 2)]
    assert wall_polylines([vertical()], region_box(1, 2, 4)) == []


def test_arc_clipped_by_region():
    lines = wall_polylines([semicircle()], region_box(Fraction(1, 2), 2, 1))
    assert all(b >= Fraction(1, 2) for poly in lines for b, _ in poly)


def test_json_plot_and_determinism():
    walls = [semicircle(), vertical(), wall_curve(charvec(1, 0, -1), line_bundle_class(-1))]
    region = region_box(-2, 2, 1)
    doc = emit_plot(walls, region, "json")
    assert doc == emit_plot(walls, region, "json")
    data = json.loads(doc)
    assert len(data["walls"]) == 3 and len(data["polylines"]) == 3
    assert emit_plot(walls, region) == emit_plot(walls, region)


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_plot([], region_box(0, 1, 1), "png")
