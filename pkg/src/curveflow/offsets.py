"""Parallel offsets and embedded tubular regions around concrete curves.

The construction works in the developed picture: walking along the curve,
each gluing-locus transit composes the inverse gluing isometry onto the
running frame, so the whole curve becomes a single straight-chord chain in
the plane (gluing rotations are rational because identified edges must
have equal length).  The chain is offset chord-by-chord with mitered
joints, the offset chain's crossings with the developed gluing loci become
the new junction waypoints, and every piece is folded back into the chart
through the inverse frames.  All arithmetic is exact.

Chord offset vectors use a rational underestimate of the unit normal, so
a realized offset sits at distance at most (and usually slightly below)
the requested one; every claimed property is then re-verified exactly, and
radii shrink by halving until verification passes.

Embeddedness of a tubular region follows the exhaustive pairwise
segment-distance discipline: every pair of non-adjacent core chords --
including copies transported through gluing compositions that could bring
distant chords close on the surface -- must stay at least a tube diameter
apart, and chords must clear the boundary by the tube radius.  On top of
the screen both boundary offsets must construct, validate, and verify
disjoint from the core and from each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .curves import CHORD, JUNCTION, PolyCurve
from .errors import ContractError, GeometryError
from .geom import (F0, F1, Pt, Vec, add, bbox_of, bbox_overlap, cross,
                   neg, norm2, perp, point_segment_dist2, segment_dist2,
                   segment_intersection, smul, sub, sqrt_lower, sqrt_upper)
from .intersect import disjoint
from .surface import Gluing, Surface

MAX_SHRINKS = 64
MAX_TRANSPORTS = 4096


# ---------------------------------------------------------------------------
# rational plane isometries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Xform:
    """Orientation-preserving isometry x |-> R x + t with rational rotation
    R = (c, -s; s, c)."""

    c: Fraction
    s: Fraction
    tx: Fraction
    ty: Fraction

    def apply(self, p: Pt) -> Pt:
        x, y = p
        return (self.c * x - self.s * y + self.tx,
                self.s * x + self.c * y + self.ty)

    def apply_dir(self, v: Vec) -> Vec:
        x, y = v
        return (self.c * x - self.s * y, self.s * x + self.c * y)

    def apply_seg(self, seg: tuple[Pt, Pt]) -> tuple[Pt, Pt]:
        return (self.apply(seg[0]), self.apply(seg[1]))

    def compose(self, other: "Xform") -> "Xform":
        """self after other: x |-> self(other(x))."""
        c = self.c * other.c - self.s * other.s
        s = self.s * other.c + self.c * other.s
        t = self.apply((other.tx, other.ty))
        return Xform(c, s, t[0], t[1])

    def inverse(self) -> "Xform":
        # R^T (x - t)
        tx = -(self.c * self.tx + self.s * self.ty)
        ty = -(-self.s * self.tx + self.c * self.ty)
        return Xform(self.c, -self.s, tx, ty)

    @property
    def is_identity(self) -> bool:
        return (self.c, self.s, self.tx, self.ty) == (F1, F0, F0, F0)


IDENTITY = Xform(F1, F0, F0, F0)


def gluing_xform(g: Gluing, from_edge: int) -> Xform:
    """The chart isometry carrying points on edge ``from_edge`` onto its
    partner (continuing a transit that exits through ``from_edge``)."""
    if from_edge == g.low:
        t = (g.b[0] - (g.c * g.a[0] - g.s * g.a[1]),
             g.b[1] - (g.s * g.a[0] + g.c * g.a[1]))
        return Xform(g.c, g.s, t[0], t[1])
    t = (g.a[0] - (g.c * g.b[0] + g.s * g.b[1]),
         g.a[1] - (-g.s * g.b[0] + g.c * g.b[1]))
    return Xform(g.c, -g.s, t[0], t[1])


# ---------------------------------------------------------------------------
# developed form of a curve
# ---------------------------------------------------------------------------

@dataclass
class _Developed:
    chords: list[tuple[Pt, Pt]]          # developed chord endpoints
    frames: list[Xform]                  # frame per chord (chart -> developed)
    # per chord: junction transit after it, as (developed edge segment,
    # pre frame, post frame), or None for a plain shared waypoint / arc end
    transits: list[Optional[tuple[tuple[Pt, Pt], Xform, Xform]]]
    holonomy: Xform                      # closed curves: full-cycle frame


def _develop(s: Surface, c: PolyCurve) -> _Developed:
    chord_ids = [i for i in range(c.seg_count) if c.seg_kinds[i] == CHORD]
    if not chord_ids:
        raise GeometryError("curve has no chord segments")
    chords: list[tuple[Pt, Pt]] = []
    frames: list[Xform] = []
    transits: list[Optional[tuple[tuple[Pt, Pt], Xform, Xform]]] = []
    frame = IDENTITY
    n_seg = c.seg_count
    for k, seg in enumerate(chord_ids):
        a, b = c.segment_endpoints(seg)
        frames.append(frame)
        chords.append((frame.apply(a), frame.apply(b)))
        nxt = (seg + 1) % n_seg
        if c.kind == "arc" and seg == c.seg_count - 1:
            transits.append(None)
            continue
        if c.seg_kinds[nxt] == JUNCTION:
            exit_wp = nxt  # junction segment nxt runs waypoint nxt -> nxt+1
            locus = c.loci[exit_wp]
            edge = locus[1]
            g = gluing_xform(s.gluings[edge], edge)
            edge_dev = (frame.apply(s.edge_endpoints(edge)[0]),
                        frame.apply(s.edge_endpoints(edge)[1]))
            post = frame.compose(g.inverse())
            transits.append((edge_dev, frame, post))
            frame = post
        else:
            transits.append(None)
    return _Developed(chords, frames, transits, frame)


# ---------------------------------------------------------------------------
# the offset chain
# ---------------------------------------------------------------------------

def _line_meet(p: Pt, u: Vec, q: Pt, v: Vec) -> Optional[Pt]:
    den = cross(u, v)
    if den == 0:
        return None
    t = cross(sub(q, p), v) / den
    return add(p, smul(t, u))


def _primitive_dir(u: Vec) -> Vec:
    """The shortest integer vector with u's direction.  Normalizing shifts
    through it keeps parallel chords' offsets exactly collinear even though
    the unit length below is only a rational square-root bound."""
    k = (u[0].denominator * u[1].denominator
         // gcd(u[0].denominator, u[1].denominator))
    a, b = u[0] * k, u[1] * k
    g = gcd(int(a), int(b))
    return (a / g, b / g)


def _offset_shift(seg: tuple[Pt, Pt], d: Fraction, side: str) -> Vec:
    u = _primitive_dir(sub(seg[1], seg[0]))
    scale = d / sqrt_upper(norm2(u))
    v = smul(scale, perp(u))
    return v if side == "left" else neg(v)


def _boundary_line(s: Surface, locus) -> tuple[Pt, Pt]:
    if locus[0] == "edge":
        return s.edge_endpoints(locus[1])
    if locus[0] == "hole":
        return s.hole_edge_endpoints(locus[1], locus[2])
    raise GeometryError("arc endpoint is not on a boundary edge")


def offset_curve(s: Surface, c: PolyCurve, side: str, d: Fraction) -> PolyCurve:
    """Parallel copy of ``c`` shifted distance (at most) ``d`` to the given
    side, built in the developed picture.  Raises when the construction
    degenerates at this distance; callers shrink and retry."""
    return _offset_with_deviation(s, c, side, d)[0]


def offset_deviation2(s: Surface, c: PolyCurve, side: str,
                      d: Fraction) -> tuple[PolyCurve, Fraction]:
    """Offset copy together with the exact squared maximum distance from its
    waypoints to the core polyline, both measured in the developed picture
    (the straightened chart chain the core unfolds into)."""
    return _offset_with_deviation(s, c, side, d)


def _offset_with_deviation(s: Surface, c: PolyCurve, side: str,
                           d: Fraction) -> tuple[PolyCurve, Fraction]:
    if side not in ("left", "right"):
        raise ContractError(f"side must be 'left' or 'right', not {side!r}")
    if d <= 0:
        raise ContractError("offset distance must be positive")
    dev = _develop(s, c)
    m = len(dev.chords)
    closed = c.kind == "closed"

    shifts = [_offset_shift(seg, d, side) for seg in dev.chords]
    lines = [(add(seg[0], shifts[k]), sub(seg[1], seg[0]))
             for k, seg in enumerate(dev.chords)]

    def miter(i: int, j: int, ext_j: Optional[Xform] = None) -> Pt:
        pi, ui = lines[i]
        pj, uj = lines[j] if ext_j is None else (
            ext_j.apply(lines[j][0]), ext_j.apply_dir(lines[j][1]))
        hit = _line_meet(pi, ui, pj, uj)
        if hit is not None:
            return hit
        # Parallel: require the two offset lines to be collinear, then the
        # shared developed waypoint shifted by either offset works.
        if cross(uj, sub(pj, pi)) != 0:
            raise GeometryError("parallel offset lines fail to meet")
        return add(dev.chords[i][1], shifts[i])

    # Joints y_0 .. y_m: y_k precedes chord k; y_m closes the chain.
    joints: list[Pt] = [None] * (m + 1)  # type: ignore[list-item]
    for k in range(1, m):
        joints[k] = miter(k - 1, k)
    if closed:
        joints[m] = miter(m - 1, 0, ext_j=dev.holonomy)
        joints[0] = dev.holonomy.inverse().apply(joints[m])
    else:
        start_line = _boundary_line(s, c.loci[0])
        end_line = _boundary_line(s, c.loci[-1])
        end_dev = dev.frames[m - 1].apply_seg(end_line)
        y0 = _line_meet(lines[0][0], lines[0][1],
                        start_line[0], sub(start_line[1], start_line[0]))
        ym = _line_meet(lines[m - 1][0], lines[m - 1][1],
                        end_dev[0], sub(end_dev[1], end_dev[0]))
        if y0 is None or ym is None:
            raise GeometryError("offset arc end parallel to its boundary edge")
        joints[0], joints[m] = y0, ym

    def portion(k: int) -> tuple[Pt, Pt]:
        return joints[k], joints[k + 1]

    # Events along the chain: plain joints plus one locus crossing per
    # junction transit, both keyed by (portion index, parameter).
    events: list[tuple[tuple[int, Fraction], str, object]] = []
    for k in range(1, m):
        events.append(((k, F0), "joint", joints[k]))
    if closed:
        # Wrap joint between the last chord and the (holonomy image of the)
        # first, emitted in the frame current at that point of the walk.
        events.append(((m, F0), "joint", joints[m]))
    crossings = 0
    for k in range(m):
        tr = dev.transits[k]
        if tr is None:
            continue
        edge_dev, pre, post = tr
        hit = None
        for pk in (k, k + 1 if k + 1 < m else None):
            if pk is None:
                break
            a, b = portion(pk)
            if a == b:
                continue
            r = segment_intersection(a, b, edge_dev[0], edge_dev[1])
            if r is None:
                continue
            if r[0] != "point":
                raise GeometryError("offset runs along a gluing locus")
            _, p, t, u = r
            if u <= 0 or u >= 1:
                raise GeometryError("offset transit slides off the edge")
            hit = ((pk, t), p)
            break
        if hit is None and closed and k == m - 1:
            # The closing transit may cross on the wrapped first portion.
            a, b = portion(0)
            r = segment_intersection(
                dev.holonomy.apply(a), dev.holonomy.apply(b),
                edge_dev[0], edge_dev[1])
            if r is not None and r[0] == "point":
                _, p, t, u = r
                if 0 < u < 1:
                    hit = ((m, t), p)
        if hit is None:
            raise GeometryError("offset no longer crosses a transit locus")
        events.append((hit[0], "cross", (hit[1], pre, post)))
        crossings += 1
    events.sort(key=lambda e: e[0])

    if not closed:
        events = ([((0, F0), "joint", joints[0])] + events
                  + [((m, F0), "joint", joints[m])])

    # Fold back into the chart, switching frames at each locus crossing.
    out: list[Pt] = []

    def emit(p: Pt) -> None:
        if out and out[-1] == p:
            return
        out.append(p)

    frame = dev.frames[0]
    for _, kind, payload in events:
        if kind == "joint":
            emit(frame.inverse().apply(payload))
        else:
            p, pre, post = payload
            emit(pre.inverse().apply(p))
            emit(post.inverse().apply(p))
            frame = post
    if closed and out and out[0] == out[-1]:
        out.pop()

    dev_pts = [payload if kind == "joint" else payload[0]
               for _, kind, payload in events]
    if closed:
        dev_pts.append(joints[0])
    deviation2 = F0
    for p in dev_pts:
        near = min(point_segment_dist2(p, a, b) for a, b in dev.chords)
        if near > deviation2:
            deviation2 = near
    return PolyCurve(s, c.kind, out), deviation2


# ---------------------------------------------------------------------------
# float prefilter for the distance screens
#
# The screens below ask one question many times: is a pair of segments at
# squared distance >= lim?  Most pairs are nowhere near the limit, so a float
# estimate settles them.  The estimate is trusted only in one direction and
# only with a factor-two-plus-absolute margin; every "too close" verdict, and
# every pair inside the margin, is decided by exact arithmetic.  Coordinates
# here are bounded by the developed polygon (|x| well under 10^2), so the
# float evaluation error of a squared distance stays below ~1e-10 -- the
# 1e-9 cushion dominates it.
# ---------------------------------------------------------------------------

FSeg = tuple[float, float, float, float]


def _fseg(seg: tuple[Pt, Pt]) -> FSeg:
    (p, q) = seg
    return (float(p[0]), float(p[1]), float(q[0]), float(q[1]))


def _fgap2(sa: FSeg, sb: FSeg) -> float:
    """Float estimate of the squared gap between two segments, 0.0 whenever
    they might meet.  A hint only: callers act on it solely when it clears
    a wide margin."""
    ax0, ay0, ax1, ay1 = sa
    bx0, by0, bx1, by1 = sb
    dax, day = ax1 - ax0, ay1 - ay0
    dbx, dby = bx1 - bx0, by1 - by0
    c1 = dax * (by0 - ay0) - day * (bx0 - ax0)
    c2 = dax * (by1 - ay0) - day * (bx1 - ax0)
    c3 = dbx * (ay0 - by0) - dby * (ax0 - bx0)
    c4 = dbx * (ay1 - by0) - dby * (ax1 - bx0)
    if c1 * c2 <= 0.0 and c3 * c4 <= 0.0:
        return 0.0

    def pseg(px: float, py: float, ax: float, ay: float,
             bx: float, by: float) -> float:
        dx, dy = bx - ax, by - ay
        den = dx * dx + dy * dy
        if den > 0.0:
            t = ((px - ax) * dx + (py - ay) * dy) / den
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
            ax, ay = ax + t * dx, ay + t * dy
        ex, ey = px - ax, py - ay
        return ex * ex + ey * ey

    return min(pseg(ax0, ay0, bx0, by0, bx1, by1),
               pseg(ax1, ay1, bx0, by0, bx1, by1),
               pseg(bx0, by0, ax0, ay0, ax1, ay1),
               pseg(bx1, by1, ax0, ay0, ax1, ay1))


def _apart(sa: FSeg, sb: FSeg, flim: float,
           ea: tuple[Pt, Pt], eb: tuple[Pt, Pt], lim: Fraction) -> bool:
    """Whether segments ea and eb sit at squared distance >= lim.  The float
    gap decides only when it exceeds twice the limit plus a cushion; any
    smaller or non-finite value falls through to the exact computation."""
    if _fgap2(sa, sb) > 2.0 * flim + 1e-9:
        return True
    return segment_dist2(*ea, *eb) >= lim


# ---------------------------------------------------------------------------
# transports: gluing compositions that can bring distant chords close
# ---------------------------------------------------------------------------

def _transport_set(s: Surface, reach: Fraction,
                   near: list[tuple[Pt, Pt]]) -> list[Xform]:
    """Gluing compositions realizable by a surface path of length < ``reach``
    starting on one of the ``near`` segments.

    A short path that leaves the base chart crosses a chain of glued edges,
    and every crossing point lies within ``reach`` of the path's start.  So a
    composition only matters when each successive crossed edge, developed
    through the prefix composition, comes within ``reach`` of the ``near``
    set.  That admission test is what keeps the walk honest on cone surfaces:
    the developed picture wraps around cone points, and unconstrained
    compositions would overlay copies that are nowhere near each other on the
    surface itself.
    """
    if not s.gluings or not near:
        return []
    base = bbox_of(s.polygon)
    grown = (base[0] - reach, base[1] - reach, base[2] + reach, base[3] + reach)
    lim = reach * reach
    flim = float(lim)
    fnear = [_fseg(seg) for seg in near]
    # One crossing per wedge around a corner plus slack bounds how many edges
    # a path shorter than a quarter edge can cross.
    depth = len(s.polygon) + 2
    steps = []
    for g in {id(g): g for g in s.gluings.values()}.values():
        steps.append((gluing_xform(g, g.low), s.edge_endpoints(g.high)))
        steps.append((gluing_xform(g, g.high), s.edge_endpoints(g.low)))
    seen = {IDENTITY}
    frontier = [IDENTITY]
    out: list[Xform] = []
    for _ in range(depth):
        nxt: list[Xform] = []
        for t in frontier:
            for st, attach in steps:
                u = t.compose(st)
                if u in seen:
                    continue
                crossed = t.apply_seg(attach)
                fcrossed = _fseg(crossed)
                if all(_fgap2(fs, fcrossed) > 2.0 * flim + 1e-9
                       for fs in fnear):
                    continue
                if not any(segment_dist2(*seg, *crossed) <= lim
                           for seg in near):
                    continue
                seen.add(u)
                if len(seen) > MAX_TRANSPORTS:
                    raise GeometryError("transport search exploded")
                if not bbox_overlap(bbox_of([u.apply(p) for p in s.polygon]),
                                    grown):
                    continue
                nxt.append(u)
                out.append(u)
        frontier = nxt
    return out


def _boundary_edges(s: Surface) -> list[tuple[object, tuple[Pt, Pt]]]:
    out: list[tuple[object, tuple[Pt, Pt]]] = []
    for e in range(len(s.polygon)):
        if e not in s.partner:
            out.append((("edge", e), s.edge_endpoints(e)))
    for h, hole in enumerate(s.holes):
        for k in range(len(hole)):
            out.append((("hole", h, k), s.hole_edge_endpoints(h, k)))
    return out


def _continuation_exemptions(s: Surface, c: PolyCurve,
                             chord_ids: list[int]) -> set[tuple[int, int, Xform]]:
    """Chord pairs adjacent through a junction transit, keyed with the
    transport that realizes the adjacency."""
    out: set[tuple[int, int, Xform]] = set()
    pos = {seg: k for k, seg in enumerate(chord_ids)}
    n_seg = c.seg_count
    for k, seg in enumerate(chord_ids):
        nxt = (seg + 1) % n_seg
        if c.kind == "arc" and seg == c.seg_count - 1:
            continue
        if c.seg_kinds[nxt] != JUNCTION:
            continue
        after = (nxt + 1) % n_seg
        j = pos[after]
        edge = c.loci[nxt][1]
        g = gluing_xform(s.gluings[edge], edge)
        # chord j continues chord k across the locus: in chord k's chart the
        # continuation is g^{-1}(chord j); symmetrically g(chord k) meets j.
        out.add((k, j, g.inverse()))
        out.add((j, k, g))
    return out


def _screen_embeddedness(s: Surface, c: PolyCurve, r: Fraction) -> bool:
    """Exhaustive pairwise distance check: non-adjacent chords at least 2r
    apart (through every relevant transport) and r clear of the boundary."""
    chord_ids = [i for i in range(c.seg_count) if c.seg_kinds[i] == CHORD]
    chords = [c.segment_endpoints(i) for i in chord_ids]
    fchords = [_fseg(seg) for seg in chords]
    m = len(chords)
    closed = c.kind == "closed"
    lim_pair = 4 * r * r
    lim_bdry = r * r
    flim_pair = float(lim_pair)
    flim_bdry = float(lim_bdry)

    def seq_adjacent(i: int, j: int) -> bool:
        if i == j:
            return True
        if abs(i - j) == 1:
            return True
        return closed and {i, j} == {0, m - 1} and m > 1

    cont = _continuation_exemptions(s, c, chord_ids)
    transports = _transport_set(s, 2 * r, chords)

    for i in range(m):
        for j in range(i + 1, m):
            if seq_adjacent(i, j):
                continue
            if not _apart(fchords[i], fchords[j], flim_pair,
                          chords[i], chords[j], lim_pair):
                return False
    for t in transports:
        for j in range(m):
            tj = t.apply_seg(chords[j])
            ftj = _fseg(tj)
            for i in range(m):
                if (i, j, t) in cont:
                    continue
                if i == j and t.is_identity:
                    continue
                if not _apart(fchords[i], ftj, flim_pair,
                              chords[i], tj, lim_pair):
                    return False

    ends: set[tuple[int, object]] = set()
    if c.kind == "arc":
        for wp, k in ((0, 0), (len(c.waypoints) - 1, m - 1)):
            locus = c.loci[wp]
            label = (("edge", locus[1]) if locus[0] == "edge"
                     else ("hole", locus[1], locus[2]))
            ends.add((k, label))
    for label, seg in _boundary_edges(s):
        fs = _fseg(seg)
        for i in range(m):
            if (i, label) in ends:
                continue
            if not _apart(fchords[i], fs, flim_bdry,
                          chords[i], seg, lim_bdry):
                return False
        for t in transports:
            ts = t.apply_seg(seg)
            fts = _fseg(ts)
            for i in range(m):
                if not _apart(fchords[i], fts, flim_bdry,
                              chords[i], ts, lim_bdry):
                    return False
    return True


# ---------------------------------------------------------------------------
# tubular regions and pushoffs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TubularRegion:
    """An embedded metric neighborhood of a core curve: an annulus around a
    closed curve, a strip (ending on the boundary) around an arc."""

    core: PolyCurve
    radius: Fraction
    shape: str  # "annulus" | "strip"
    boundaries: tuple[PolyCurve, PolyCurve]  # (left offset, right offset)


def _radius_cap(s: Surface) -> Fraction:
    least = None
    for e in range(len(s.polygon)):
        a, b = s.edge_endpoints(e)
        n2 = norm2(sub(b, a))
        least = n2 if least is None else min(least, n2)
    for h, hole in enumerate(s.holes):
        for k in range(len(hole)):
            a, b = s.hole_edge_endpoints(h, k)
            n2 = norm2(sub(b, a))
            least = min(least, n2)
    return sqrt_lower(least) / 4


def tubular_region(s: Surface, c: PolyCurve, r: Fraction) -> TubularRegion:
    """Largest radius of the form r / 2**k whose metric neighborhood of the
    core verifiably embeds, with its two boundary offsets."""
    if c.surface is not s:
        raise GeometryError("curve drawn on a different surface")
    if r <= 0:
        raise ContractError("tube radius must be positive")
    cap = _radius_cap(s)
    last_error: Optional[str] = None
    for k in range(MAX_SHRINKS):
        rk = r / (1 << k)
        if rk > cap:
            continue
        if not _screen_embeddedness(s, c, rk):
            last_error = "distance screen"
            continue
        try:
            left = offset_curve(s, c, "left", rk)
            right = offset_curve(s, c, "right", rk)
        except (ContractError, GeometryError) as e:
            last_error = str(e)
            continue
        if not (disjoint(left, c) and disjoint(right, c)
                and disjoint(left, right)):
            last_error = "offset boundaries not disjoint"
            continue
        shape = "annulus" if c.kind == "closed" else "strip"
        return TubularRegion(core=c, radius=rk, shape=shape,
                             boundaries=(left, right))
    raise GeometryError(
        f"no embedded tube at radius r/2^k (last failure: {last_error})")


def pushoff(s: Surface, c: PolyCurve, side: str, d: Fraction) -> PolyCurve:
    """Disjoint parallel copy of ``c`` on the requested side, at distance
    d shrunk by halving until the copy verifiably embeds next to the core."""
    if c.surface is not s:
        raise GeometryError("curve drawn on a different surface")
    if side not in ("left", "right"):
        raise ContractError(f"side must be 'left' or 'right', not {side!r}")
    if d <= 0:
        raise ContractError("pushoff distance must be positive")
    cap = _radius_cap(s)
    last_error: Optional[str] = None
    for k in range(MAX_SHRINKS):
        dk = d / (1 << k)
        if dk > cap:
            continue
        if not _screen_embeddedness(s, c, dk):
            last_error = "distance screen"
            continue
        try:
            cand = offset_curve(s, c, side, dk)
        except (ContractError, GeometryError) as e:
            last_error = str(e)
            continue
        if not disjoint(cand, c):
            last_error = "offset copy meets the core"
            continue
        return cand
    raise GeometryError(
        f"no embedded pushoff at distance d/2^k (last failure: {last_error})")


def min_clearance2(c: PolyCurve, others: Sequence[PolyCurve]) -> Optional[Fraction]:
    """Smallest squared chart distance from c's chords to the chords of the
    given curves; None when no other curve is supplied.  Zero for touching
    configurations."""
    best: Optional[Fraction] = None
    for o in others:
        for i, a0, a1 in c.chords():
            for j, b0, b1 in o.chords():
                d2 = segment_dist2(a0, a1, b0, b1)
                if best is None or d2 < best:
                    best = d2
    return best
