"""SVG rendering of the real points of a plane curve.

The form is dehomogenised in one chart (z = 1 by default), sampled on a
grid, and traced by marching squares with linear interpolation on cell
edges.  Lines are clipped to the window.  Floats are used only here.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .ring import TernaryForm, plain_basis

DEFAULT_WINDOW = (-3.0, 3.0, -3.0, 3.0)
DEFAULT_RESOLUTION = 240
SIZE = 480

# corner bits: 1 = (0,0), 2 = (1,0), 4 = (1,1), 8 = (0,1); edges: 0 bottom, 1 right, 2 top, 3 left
_SEGMENTS = {
    0: (), 15: (),
    1: ((3, 0),), 14: ((3, 0),),
    2: ((0, 1),), 13: ((0, 1),),
    3: ((3, 1),), 12: ((3, 1),),
    4: ((1, 2),), 11: ((1, 2),),
    6: ((0, 2),), 9: ((0, 2),),
    7: ((3, 2),), 8: ((3, 2),),
    5: ((3, 0), (1, 2)),  # saddles resolved by the centre value below
    10: ((0, 1), (2, 3)),
}

_CHARTS = {"z": (0, 1, 2), "y": (0, 2, 1), "x": (1, 2, 0)}


def _chart_values(f: TernaryForm, chart: str, X, Y):
    """f evaluated with the chart coordinate set to 1."""
    i, j, k = _CHARTS[chart]
    out = np.zeros_like(X)
    for e, c in zip(plain_basis(f.degree), f.coeffs):
        if c == 0:
            continue
        out = out + float(Fraction(c)) * X ** e[i] * Y ** e[j]
    return out


def contour_segments(f: TernaryForm, window=DEFAULT_WINDOW, resolution: int = DEFAULT_RESOLUTION, chart: str = "z"):
    """Zero-level segments ``((x0, y0), (x1, y1))`` in chart coordinates."""
    xmin, xmax, ymin, ymax = window
    xs = np.linspace(xmin, xmax, resolution + 1)
    ys = np.linspace(ymin, ymax, resolution + 1)
    X, Y = np.meshgrid(xs, ys, indexing="xy")
    V = _chart_values(f, chart, X, Y)
    segs = []
    for r in range(resolution):
        for c in range(resolution):
            v = (V[r, c], V[r, c + 1], V[r + 1, c + 1], V[r + 1, c])
            idx = sum(1 << b for b in range(4) if v[b] > 0)
            cases = _SEGMENTS[idx]
            if not cases:
                continue
            if idx in (5, 10):
                centre = sum(v) / 4
                if centre > 0:
                    cases = ((0, 1), (2, 3)) if idx == 5 else ((3, 0), (1, 2))
            x0, x1, y0, y1 = xs[c], xs[c + 1], ys[r], ys[r + 1]
            corners = ((x0, y0), (x1, y0), (x1, y1), (x0, y1))
            for a, b in cases:
                segs.append((_edge_point(corners, v, a), _edge_point(corners, v, b)))
    return segs


def _edge_point(corners, v, edge):
    i, j = edge, (edge + 1) % 4
    vi, vj = v[i], v[j]
    t = 0.5 if vi == vj else min(max(vi / (vi - vj), 0.0), 1.0)
    (ax, ay), (bx, by) = corners[i], corners[j]
    return (ax + t * (bx - ax), ay + t * (by - ay))


def clip_line(l: TernaryForm, window=DEFAULT_WINDOW, chart: str = "z"):
    """Segment of the line ``l = 0`` inside the window, or None."""
    i, j, k = _CHARTS[chart]
    a, b, c = (float(Fraction(l.coeffs[t])) for t in (i, j, k))
    xmin, xmax, ymin, ymax = window
    pts = []
    if b != 0:
        for x in (xmin, xmax):
            y = -(a * x + c) / b
            if ymin <= y <= ymax:
                pts.append((x, y))
    if a != 0:
        for y in (ymin, ymax):
            x = -(b * y + c) / a
            if xmin <= x <= xmax:
                pts.append((x, y))
    pts = sorted(set((round(x, 9), round(y, 9)) for x, y in pts))
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def render_svg(
    f: TernaryForm,
    lines=(),
    conics=(),
    window=DEFAULT_WINDOW,
    resolution: int = DEFAULT_RESOLUTION,
    chart: str = "z",
    title: str = "",
) -> str:
    """SVG text with the curve, optional lines and conics (point conics)."""
    xmin, xmax, ymin, ymax = window
    sx = SIZE / (xmax - xmin)
    sy = SIZE / (ymax - ymin)

    def px(p):
        return _fmt((p[0] - xmin) * sx), _fmt((ymax - p[1]) * sy)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{_escape(title)}</title>" if title else "",
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white" stroke="#999"/>',
    ]

    def path(segs, cls, colour, width):
        if not segs:
            return
        d = " ".join("M{} {} L{} {}".format(*px(a), *px(b)) for a, b in segs)
        out.append(f'<path class="{cls}" d="{d}" stroke="{colour}" stroke-width="{width}" fill="none"/>')

    path(contour_segments(f, window, resolution, chart), "curve", "#1f3a93", "1.6")
    for q in conics:
        path(contour_segments(q, window, resolution, chart), "conic", "#2e8b57", "1.0")
    for l in lines:
        seg = clip_line(l, window, chart)
        if seg:
            path([seg], "line", "#c0392b", "1.0")
    out.append("</svg>")
    return "\n".join(s for s in out if s) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
