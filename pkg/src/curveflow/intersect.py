"""Exact intersection kernel for polyline curves on a flat surface.

The meeting set of two simple curves decomposes into finitely many
connected components: isolated points and closed intervals (shared
sub-polylines).  Every component is classified exactly as *crossing*
(the curves pass through each other there, so no small deformation
removes the meeting) or *touching* (they stay on one side of each
other and can be pushed apart).

The waypoint convention in `curves` makes this finite and chart-local:
chord interiors never touch the gluing locus, so any meeting on the
locus happens at waypoints of both curves.  Meetings are found in two
sweeps -- chord-pair intersections inside the chart, and coincidences
of canonical waypoints (which catch meetings whose chart
representatives differ) -- then grouped and classified by the cyclic
order of strand directions around the meeting.

Classification of an isolated point: collect the (at most four) strand
rays of both curves at the point, developed into the chart of its
canonical representative; the meeting is a crossing exactly when the
two curves alternate in the counterclockwise cyclic order of the rays.

Classification of an interval: at each endpoint, each curve leaves the
shared interval along at most one exit ray.  Thickening the interval
to a thin rectangle turns the four exit rays into boundary points of a
disk; the cyclic order is reproduced exactly by sorting each end's
rays by counterclockwise angle from the direction pointing *into* the
interval and concatenating the two ends.  Crossing again means the
curves alternate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from .curves import PolyCurve
from .errors import GeometryError
from .geom import (
    F0,
    F1,
    Pt,
    Vec,
    bbox_overlap,
    dir_cmp,
    dot,
    cross,
    neg,
    point_on_segment,
    segment_intersection,
    sub,
)
from .surface import Surface


@dataclass(frozen=True)
class PointAtom:
    """An isolated meeting point of two curves."""

    point: Pt                 # canonical chart representative
    crossing: bool
    station_a: Fraction       # position along the first curve
    station_b: Fraction
    boundary: bool = False    # meeting at a boundary point (arc endpoints)


@dataclass(frozen=True)
class IntervalAtom:
    """A maximal shared sub-polyline of two curves."""

    endpoints: tuple[Pt, Pt]  # canonical representatives of the two ends
    crossing: bool
    # Chord fragments (segment index, parameter range) per curve.
    fragments_a: tuple[tuple[int, Fraction, Fraction], ...]
    fragments_b: tuple[tuple[int, Fraction, Fraction], ...]


@dataclass
class Intersections:
    """Full classified intersection picture of an ordered curve pair."""

    identical: bool
    points: list[PointAtom] = field(default_factory=list)
    intervals: list[IntervalAtom] = field(default_factory=list)

    def atom_count(self) -> int:
        return len(self.points) + len(self.intervals)

    def is_disjoint(self) -> bool:
        return not self.identical and self.atom_count() == 0

    def crossing_count(self) -> int:
        n = sum(1 for p in self.points if p.crossing)
        return n + sum(1 for iv in self.intervals if iv.crossing)

    def all_crossing(self) -> bool:
        """True when every component is an isolated crossing point."""
        return (not self.identical and not self.intervals
                and all(p.crossing for p in self.points))

    def problem_points(self) -> list[Pt]:
        """Touch points and interval endpoints: exactly the meetings that a
        small deformation can remove or must resolve."""
        out: list[Pt] = [p.point for p in self.points if not p.crossing]
        for iv in self.intervals:
            out.extend(iv.endpoints)
        return sorted(set(out))


# -- strand rays -----------------------------------------------------------


def _develop(surface: Surface, rep: Pt, d: Vec) -> Vec:
    """Rotate a direction based at a glued-edge representative into the
    chart of the representative's mirror."""
    locus = surface.locus_of(rep)
    g = surface.gluings[locus[1]]
    return g.rotate_dir(d) if locus[1] == g.low else g.rotate_dir_back(d)


def _rays_at(curve: PolyCurve, canon_pt: Pt) -> tuple[list[Vec], Optional[Fraction]]:
    """All strand rays of the curve at a canonical surface point, developed
    into the chart of the canonical representative, plus the station of the
    passage.  Returns ([], None) when the curve does not meet the point at
    a waypoint; chord-interior passages are handled separately."""
    s = curve.surface
    idxs = [i for i, c in enumerate(curve.canon) if c == canon_pt]
    if not idxs:
        return [], None
    rays: list[Vec] = []
    station: Optional[Fraction] = None
    for i in idxs:
        rep = curve.waypoints[i]
        for seg, outward in ((curve.prev_seg(i), False), (i if i < curve.seg_count else None, True)):
            if seg is None or curve.is_junction_segment(seg):
                if seg is not None and curve.is_junction_segment(seg):
                    station = Fraction(seg) if station is None else min(station, Fraction(seg))
                continue
            a, b = curve.segment_endpoints(seg)
            d = sub(b, a) if outward else sub(a, b)
            if rep != canon_pt:
                d = _develop(s, rep, d)
            rays.append(d)
            st = Fraction(seg) if outward else Fraction(seg) + F1
            station = st if station is None else min(station, st)
    return rays, station


def _chord_interior_hit(curve: PolyCurve, p: Pt) -> Optional[tuple[int, Fraction]]:
    for i, a, b in curve.chords():
        x0, y0, x1, y1 = curve.chord_bbox(i)
        if not (x0 <= p[0] <= x1 and y0 <= p[1] <= y1):
            continue
        t = point_on_segment(p, a, b)
        if t is not None and F0 < t < F1:
            return i, t
    return None


def _passage(curve: PolyCurve, canon_pt: Pt) -> tuple[list[Vec], Optional[Fraction]]:
    rays, station = _rays_at(curve, canon_pt)
    if rays or station is not None:
        return rays, station
    hit = _chord_interior_hit(curve, canon_pt)
    if hit is None:
        return [], None
    seg, t = hit
    d = curve.chord_dir(seg)
    return [d, neg(d)], Fraction(seg) + t


def _alternates(labels: Sequence[int]) -> bool:
    return (len(labels) == 4 and labels[0] == labels[2]
            and labels[1] == labels[3] and labels[0] != labels[1])


def _sorted_labels(rays: list[tuple[Vec, int]]) -> list[int]:
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            if dir_cmp(rays[i][0], rays[j][0]) == 0:
                raise GeometryError(
                    "coincident strand rays at an isolated meeting point")
    rays = sorted(rays, key=cmp_to_key(lambda r, s: dir_cmp(r[0], s[0])))
    return [label for _, label in rays]


def _classify_point(rays_a: list[Vec], rays_b: list[Vec]) -> bool:
    if len(rays_a) < 2 or len(rays_b) < 2:
        return False  # an arc stops here: nothing can cross
    labeled = [(d, 0) for d in rays_a] + [(d, 1) for d in rays_b]
    return _alternates(_sorted_labels(labeled))


# -- interval assembly -----------------------------------------------------


@dataclass
class _Fragment:
    seg_a: int
    span_a: tuple[Fraction, Fraction]
    seg_b: int
    span_b: tuple[Fraction, Fraction]
    ends: tuple[Pt, Pt]        # canonical representatives
    chart_ends: tuple[Pt, Pt]  # chart points, aligned with `ends`


def _angle_key(axis_in: Vec):
    """Sort key: counterclockwise angle from `axis_in`, in (0, 2*pi)."""

    def compare(r: tuple[Vec, int], s: tuple[Vec, int]) -> int:
        def rot(d: Vec) -> Vec:
            return (dot(axis_in, d), cross(axis_in, d))
        return dir_cmp(rot(r[0]), rot(s[0]))

    return cmp_to_key(compare)


def _cap_rays(curve: PolyCurve, label: int, end_canon: Pt,
              axis_in: Vec) -> list[tuple[Vec, int]]:
    """Exit rays of a curve at an interval end: its rays there minus the one
    pointing into the interval along `axis_in`."""
    rays, _ = _passage(curve, end_canon)
    out = []
    for d in rays:
        if cross(axis_in, d) == 0 and dot(axis_in, d) > 0:
            continue  # the strand running into the shared interval
        out.append((d, label))
    return out


def _classify_interval(u: PolyCurve, v: PolyCurve, ends: tuple[Pt, Pt],
                       axes_in: tuple[Vec, Vec]) -> bool:
    labels: list[int] = []
    for end_canon, axis_in in zip(ends, axes_in):
        cap = _cap_rays(u, 0, end_canon, axis_in) + _cap_rays(v, 1, end_canon, axis_in)
        if len(cap) < 2:
            return False
        cap.sort(key=_angle_key(axis_in))
        labels.extend(label for _, label in cap)
    return _alternates(labels)


def _merge_coverage(spans: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    spans = sorted(spans)
    merged: list[tuple[Fraction, Fraction]] = []
    for lo, hi in spans:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def _covers_fully(curve: PolyCurve, spans_by_seg: dict[int, list[tuple[Fraction, Fraction]]]) -> bool:
    for i in curve._chord_ids:
        merged = _merge_coverage(spans_by_seg.get(i, []))
        if merged != [(F0, F1)]:
            return False
    return True


# -- main kernel -----------------------------------------------------------


def intersect_curves(u: PolyCurve, v: PolyCurve) -> Intersections:
    """Classify every component of the meeting set of two curves.

    Curves must live on the same surface.  When the two curves are equal
    as point sets the result is flagged `identical` and carries no atoms.
    """
    if u.surface is not v.surface:
        raise GeometryError("curves live on different surfaces")
    s = u.surface

    point_meets: list[tuple[Pt, int, Fraction, int, Fraction]] = []
    raw_overlaps: list[_Fragment] = []
    for i, a0, a1 in u.chords():
        for j, b0, b1 in v.chords():
            if not bbox_overlap(u.chord_bbox(i), v.chord_bbox(j)):
                continue
            r = segment_intersection(a0, a1, b0, b1)
            if r is None:
                continue
            if r[0] == "point":
                point_meets.append((r[1], i, r[2], j, r[3]))
            else:
                _, p, q, (t0, t1), (s0, s1) = r
                raw_overlaps.append(_Fragment(
                    seg_a=i, span_a=(t0, t1), seg_b=j,
                    span_b=(min(s0, s1), max(s0, s1)),
                    ends=(s.canonical(p), s.canonical(q)), chart_ends=(p, q)))

    intervals, interval_canons, identical = _assemble_intervals(u, v, raw_overlaps)

    # Candidate isolated meetings: chord meets involving a waypoint, plus
    # canonical waypoint coincidences (meetings whose representatives differ).
    candidates: set[Pt] = set()
    crossings: list[PointAtom] = []
    for p, i, t, j, tv in point_meets:
        if F0 < t < F1 and F0 < tv < F1:
            crossings.append(PointAtom(
                point=s.canonical(p), crossing=True,
                station_a=Fraction(i) + t, station_b=Fraction(j) + tv))
        else:
            candidates.add(s.canonical(p))
    canon_v = set(v.canon)
    candidates.update(c for c in u.canon if c in canon_v)
    candidates -= interval_canons

    points = list(crossings)
    for c in sorted(candidates):
        rays_u, st_u = _passage(u, c)
        rays_v, st_v = _passage(v, c)
        if st_u is None or st_v is None:
            raise GeometryError("meeting candidate missing from a curve")
        on_boundary = s.is_boundary_locus(s.locus_of(c))
        points.append(PointAtom(
            point=c, crossing=_classify_point(rays_u, rays_v),
            station_a=st_u, station_b=st_v, boundary=on_boundary))

    points.sort(key=lambda a: (a.station_a, a.station_b))
    return Intersections(identical=identical, points=points, intervals=intervals)


def _assemble_intervals(u: PolyCurve, v: PolyCurve, fragments: list[_Fragment],
                        ) -> tuple[list[IntervalAtom], set[Pt], bool]:
    """Merge overlap fragments into maximal components and classify them.

    Returns the interval atoms, the set of canonical points lying on any
    component (these are excluded from isolated-point candidates), and the
    identical-curves flag."""
    if not fragments:
        return [], set(), False

    parent = list(range(len(fragments)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_end: dict[Pt, list[int]] = {}
    for k, f in enumerate(fragments):
        for c in f.ends:
            by_end.setdefault(c, []).append(k)
    for group in by_end.values():
        for k in group[1:]:
            ra, rb = find(group[0]), find(k)
            if ra != rb:
                parent[rb] = ra

    comps: dict[int, list[_Fragment]] = {}
    for k, f in enumerate(fragments):
        comps.setdefault(find(k), []).append(f)

    spans_u: dict[int, list[tuple[Fraction, Fraction]]] = {}
    spans_v: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for f in fragments:
        spans_u.setdefault(f.seg_a, []).append(f.span_a)
        spans_v.setdefault(f.seg_b, []).append(f.span_b)
    identical = _covers_fully(u, spans_u) and _covers_fully(v, spans_v)

    interval_canons: set[Pt] = set()
    for comp in comps.values():
        for f in comp:
            interval_canons.update(f.ends)
    if identical:
        return [], interval_canons, True

    atoms: list[IntervalAtom] = []
    for comp in comps.values():
        end_count: dict[Pt, int] = {}
        for f in comp:
            for c in f.ends:
                end_count[c] = end_count.get(c, 0) + 1
        free = sorted(c for c, n in end_count.items() if n == 1)
        if len(free) != 2:
            raise GeometryError(
                f"interval component with {len(free)} free ends")
        axes = []
        for end in free:
            frag, chart_end = next(
                (f, f.chart_ends[f.ends.index(end)])
                for f in comp if end in f.ends)
            other = frag.chart_ends[1 - frag.chart_ends.index(chart_end)]
            axis = sub(other, chart_end)
            if chart_end != end:  # end's chart point is the mirror rep
                axis = _develop(u.surface, chart_end, axis)
            axes.append(axis)
        crossing = _classify_interval(u, v, (free[0], free[1]),
                                      (axes[0], axes[1]))
        atoms.append(IntervalAtom(
            endpoints=(free[0], free[1]), crossing=crossing,
            fragments_a=tuple(sorted((f.seg_a, *f.span_a) for f in comp)),
            fragments_b=tuple(sorted((f.seg_b, *f.span_b) for f in comp))))
    atoms.sort(key=lambda a: a.endpoints)
    return atoms, interval_canons, identical


# -- convenience predicates -------------------------------------------------


def crossing_count(u: PolyCurve, v: PolyCurve) -> int:
    return intersect_curves(u, v).crossing_count()


def disjoint(u: PolyCurve, v: PolyCurve) -> bool:
    return intersect_curves(u, v).is_disjoint()


def all_crossing(u: PolyCurve, v: PolyCurve) -> bool:
    return intersect_curves(u, v).all_crossing()


def problem_set(u: PolyCurve, v: PolyCurve) -> list[Pt]:
    return intersect_curves(u, v).problem_points()


def pairwise_disjoint(curves: Sequence[PolyCurve]) -> bool:
    return all(disjoint(curves[i], curves[j])
               for i in range(len(curves)) for j in range(i + 1, len(curves)))


def family_all_crossing(curves: Sequence[PolyCurve]) -> bool:
    """Every pair meets only in isolated crossing points (or not at all)."""
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            r = intersect_curves(curves[i], curves[j])
            if r.identical or r.intervals or not all(p.crossing for p in r.points):
                return False
    return True
