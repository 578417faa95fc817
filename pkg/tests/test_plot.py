import math
import xml.etree.ElementTree as ET

from luroth import fixtures
from luroth.plot import clip_line, contour_segments, render_svg
from luroth.ring import QQ, TernaryForm

X, Y, Z = fixtures.coordinates()


def test_unit_circle_contour_lies_on_circle():
    circle = X * X + Y * Y - Z * Z
    segs = contour_segments(circle, (-2, 2, -2, 2), 80)
    assert len(segs) > 40
    for a, b in segs:
        for px, py in (a, b):
            assert abs(math.hypot(px, py) - 1) < 0.05


def test_chart_choice():
    # two real lines through the origin; the Fermat quartic has no real points in any chart
    f = (X - Y.scale(2)) * (X + Y) * Z * Z
    assert contour_segments(f, (-1, 1, -1, 1), 40, chart="z")
    assert contour_segments(Z**4 + X**4 + Y**4, (-3, 3, -3, 3), 40, chart="y") == []


def test_clip_line():
    seg = clip_line(TernaryForm.linear(QQ, 1, -1, 0), (-1, 1, -1, 1))
    assert seg == ((-1.0, -1.0), (1.0, 1.0))
    assert clip_line(TernaryForm.linear(QQ, 1, 0, -5), (-1, 1, -1, 1)) is None


def test_svg_is_well_formed_and_deterministic():
    f = fixtures.luroth_example()
    lines = [TernaryForm(QQ, 1, l) for l in fixtures.PENTALATERAL_LINES]
    a = render_svg(f, lines, resolution=60, title="a < b")
    b = render_svg(f, lines, resolution=60, title="a < b")
    assert a == b
    root = ET.fromstring(a)
    classes = [el.get("class") for el in root.iter() if el.get("class")]
    assert "curve" in classes and classes.count("line") >= 3
