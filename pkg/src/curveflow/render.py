"""SVG figures of curves drawn on the unfolded polygon.

The figure shows the fundamental polygon with glued edges dashed and
labelled in matching pairs, true boundary edges solid, holes shaded, and
each curve as a colored polyline broken at junction transits.  Meeting
points between distinct curves are marked: crossings as filled dots,
touchings as open circles, and shared sub-polylines as a translucent
overlay.

All geometry stays in exact rationals; decimal coordinates appear only
in the serialized SVG text and are display-only.  Output is a pure
function of the inputs, byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .curves import CHORD, JUNCTION, PolyCurve, Pt
from .errors import ContractError
from .geom import lerp
from .intersect import intersect_curves
from .surface import Surface

F = Fraction

# Figure geometry in SVG user units.
_SIDE = 600          # target size of the polygon's long side
_PAD = 30            # blank border around the polygon
_LEGEND_W = 150      # column to the right of the figure
_LEGEND_STEP = 22

_PALETTE = (
    "#c0392b", "#2458b3", "#1e8a43", "#b3641f",
    "#7a35a8", "#12888a", "#ad2a6f", "#636b14",
)

_STYLE = """\
  <style>
    .rim { fill: none; stroke: #1a1a1a; stroke-width: 3 }
    .glued { fill: none; stroke: #8a8a8a; stroke-width: 2; stroke-dasharray: 7 5 }
    .hole { fill: #e4e4e4; stroke: #8a8a8a; stroke-width: 1.5 }
    .curve { fill: none; stroke-width: 2.5; stroke-linejoin: round; stroke-linecap: round }
    .overlap { fill: none; stroke: #111; stroke-width: 7; stroke-opacity: 0.25; stroke-linecap: round }
    .crossing { fill: #111; stroke: none }
    .touching { fill: #fff; stroke: #111; stroke-width: 1.8 }
    .label { font: 13px sans-serif; fill: #333 }
    .legend { font: 13px sans-serif; fill: #1a1a1a }
  </style>
"""

_EDGE_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _fmt(v: Fraction) -> str:
    """Decimal form of an exact coordinate, quantized to 1/1000 of an SVG
    unit.  Display-only: nothing downstream ever parses it back."""
    n = round(v * 1000)
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 1000)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{str(frac).rjust(3, '0').rstrip('0')}"


class _Frame:
    """Affine map from surface coordinates to SVG user units (y flipped)."""

    def __init__(self, s: Surface):
        xs = [p[0] for p in s.polygon]
        ys = [p[1] for p in s.polygon]
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        extent = max(self.x1 - self.x0, self.y1 - self.y0)
        self.scale = F(_SIDE) / extent
        self.width = 2 * _PAD + (self.x1 - self.x0) * self.scale + _LEGEND_W
        self.height = 2 * _PAD + (self.y1 - self.y0) * self.scale

    def map(self, p: Pt) -> tuple[Fraction, Fraction]:
        return (_PAD + (p[0] - self.x0) * self.scale,
                _PAD + (self.y1 - p[1]) * self.scale)

    def pt(self, p: Pt) -> str:
        x, y = self.map(p)
        return f"{_fmt(x)},{_fmt(y)}"


def _chord_runs(c: PolyCurve) -> list[tuple[list[Pt], bool]]:
    """Maximal chord runs of a curve as waypoint lists; the flag marks a
    run that closes on itself (a junction-free closed curve)."""
    n = c.seg_count
    if c.kind == "closed" and all(k == CHORD for k in c.seg_kinds):
        return [(list(c.waypoints), True)]
    order = list(range(n))
    if c.kind == "closed":
        j = next(i for i in range(n) if c.seg_kinds[i] == JUNCTION)
        order = [(j + 1 + t) % n for t in range(n)]
    runs: list[tuple[list[Pt], bool]] = []
    cur: list[Pt] = []
    for i in order:
        if c.seg_kinds[i] == JUNCTION:
            if cur:
                runs.append((cur, False))
                cur = []
            continue
        a, b = c.segment_endpoints(i)
        if not cur:
            cur = [a, b]
        else:
            cur.append(b)
    if cur:
        runs.append((cur, False))
    return runs


def _polyline(frame: _Frame, pts: list[Pt], closed: bool,
              cls: str, extra: str = "") -> str:
    tag = "polygon" if closed else "polyline"
    body = " ".join(frame.pt(p) for p in pts)
    return f'  <{tag} class="{cls}"{extra} points="{body}"/>\n'


def _edge_lines(s: Surface, frame: _Frame) -> list[str]:
    out = []
    n = len(s.polygon)
    for e in range(n):
        a, b = s.edge_endpoints(e)
        cls = "glued" if e in s.partner else "rim"
        out.append(f'  <line class="{cls}" x1="{_fmt(frame.map(a)[0])}"'
                   f' y1="{_fmt(frame.map(a)[1])}" x2="{_fmt(frame.map(b)[0])}"'
                   f' y2="{_fmt(frame.map(b)[1])}"/>\n')
    return out


def _edge_labels(s: Surface, frame: _Frame) -> list[str]:
    if not s.gluings:
        return []
    n = len(s.polygon)
    cx = sum((p[0] for p in s.polygon), F(0)) / n
    cy = sum((p[1] for p in s.polygon), F(0)) / n
    names: dict[int, str] = {}
    for e in sorted(s.gluings):
        g = s.gluings[e]
        if g.low not in names:
            names[g.low] = _EDGE_LETTERS[len(names) % len(_EDGE_LETTERS)]
        names[g.high] = names[g.low]
    out = []
    for e in sorted(names):
        a, b = s.edge_endpoints(e)
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        # nudge the label a twelfth of the way toward the centroid
        pos = (mid[0] + (cx - mid[0]) / 12, mid[1] + (cy - mid[1]) / 12)
        x, y = frame.map(pos)
        out.append(f'  <text class="label" text-anchor="middle"'
                   f' dominant-baseline="middle" x="{_fmt(x)}"'
                   f' y="{_fmt(y)}">{names[e]}</text>\n')
    return out


def _holes(s: Surface, frame: _Frame) -> list[str]:
    return [_polyline(frame, list(hole), True, "hole") for hole in s.holes]


def _interval_path(c: PolyCurve,
                   fragments: tuple[tuple[int, Fraction, Fraction], ...]) -> list[Pt]:
    pts: list[Pt] = []
    for seg, t0, t1 in fragments:
        a, b = c.segment_endpoints(seg)
        for t in (t0, t1):
            p = lerp(a, b, t)
            if not pts or pts[-1] != p:
                pts.append(p)
    return pts


def _marks(frame: _Frame,
           curves: list[tuple[str, PolyCurve]]) -> list[str]:
    out = []
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            inter = intersect_curves(curves[i][1], curves[j][1])
            if inter.identical:
                continue
            for atom in inter.intervals:
                pts = _interval_path(curves[i][1], atom.fragments_a)
                if len(pts) >= 2:
                    out.append(_polyline(frame, pts, False, "overlap"))
            for atom in inter.points:
                x, y = frame.map(atom.point)
                cls = "crossing" if atom.crossing else "touching"
                r = "4" if atom.crossing else "4.5"
                out.append(f'  <circle class="{cls}" cx="{_fmt(x)}"'
                           f' cy="{_fmt(y)}" r="{r}"/>\n')
    return out


def _legend(frame: _Frame, curves: list[tuple[str, PolyCurve]]) -> list[str]:
    x0 = frame.width - _LEGEND_W + 10
    out = []
    for row, (handle, c) in enumerate(curves):
        y = _PAD + row * _LEGEND_STEP
        color = _PALETTE[row % len(_PALETTE)]
        out.append(f'  <line class="curve" stroke="{color}" x1="{_fmt(x0)}"'
                   f' y1="{_fmt(y)}" x2="{_fmt(x0 + 26)}" y2="{_fmt(y)}"/>\n')
        out.append(f'  <text class="legend" x="{_fmt(x0 + 34)}"'
                   f' y="{_fmt(y + 4)}">{_escape(handle)} ({c.kind})</text>\n')
    return out


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;"))


def render_svg(s: Surface, curves: Mapping[str, PolyCurve]) -> str:
    """Serialize the surface and the given curves (keyed by display
    handle) as a standalone SVG document."""
    for handle, c in curves.items():
        if c.surface is not s:
            raise ContractError(f"curve {handle!r} drawn on a different surface")
    ordered = sorted(curves.items())
    frame = _Frame(s)

    parts: list[str] = []
    parts.append(f'<svg xmlns="http://www.w3.org/2000/svg"'
                 f' viewBox="0 0 {_fmt(frame.width)} {_fmt(frame.height)}"'
                 f' width="{_fmt(frame.width)}" height="{_fmt(frame.height)}">\n')
    parts.append("  <title>curves on the unfolded polygon</title>\n")
    parts.append(_STYLE)
    parts.append(f'  <rect fill="#ffffff" x="0" y="0" width="{_fmt(frame.width)}"'
                 f' height="{_fmt(frame.height)}"/>\n')
    parts.extend(_holes(s, frame))
    parts.extend(_edge_lines(s, frame))
    parts.extend(_edge_labels(s, frame))
    for row, (handle, c) in enumerate(ordered):
        color = _PALETTE[row % len(_PALETTE)]
        extra = f' stroke="{color}"'
        for pts, closed in _chord_runs(c):
            parts.append(_polyline(frame, pts, closed, "curve", extra))
    parts.extend(_marks(frame, ordered))
    parts.extend(_legend(frame, ordered))
    parts.append("</svg>\n")
    return "".join(parts)
