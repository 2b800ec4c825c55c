"""Concrete curves and arcs as rational polylines on a flat surface.

A PolyCurve is an ordered list of chart waypoints.  Two consecutive
waypoints form either

* a *chord*: a straight segment whose interior stays strictly inside
  the polygon and off every hole, or
* a *junction*: the two waypoints are the two chart representatives of
  one surface point on a glued edge, so the curve passes through the
  gluing locus there with no chart-level geometry at all.

Every transit of the gluing locus therefore happens at a waypoint of
the curve, never inside a chord.  That convention is what keeps the
intersection kernel exact: when two curves meet on the locus they meet
at waypoints of both, and everything else happens inside one chart.

Closed curves list their waypoints cyclically without repeating the
first one; arcs run from one boundary waypoint to another.  A curve may
touch the gluing locus without crossing it (a waypoint on a glued edge
whose neighbors both lie in the chart on that side); it may never pass
through a polygon or hole corner, run along an edge, or intersect
itself.  Validation enforces all of this at construction time.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import ContractError
from .geom import (
    BBox,
    Pt,
    Vec,
    bbox_of,
    bbox_overlap,
    lerp,
    midpoint,
    segment_intersection,
    sub,
)
from .surface import Surface

CHORD = "chord"
JUNCTION = "junction"


class PolyCurve:
    """A simple closed curve or properly embedded arc on a Surface.

    Construction validates the curve completely and raises ContractError
    describing the first violation found.  Instances are immutable.
    """

    def __init__(self, surface: Surface, kind: str, waypoints: Sequence[Pt]):
        if kind not in ("closed", "arc"):
            raise ContractError(f"unknown curve kind {kind!r}")
        self.surface = surface
        self.kind = kind
        self.waypoints: tuple[Pt, ...] = tuple(waypoints)
        self._derive()
        self._validate()

    # -- derivation -------------------------------------------------------

    def _derive(self) -> None:
        s = self.surface
        n = len(self.waypoints)
        minimum = 2 if self.kind == "arc" else 2
        if n < minimum:
            raise ContractError("curve needs at least two waypoints")

        self.loci = [s.locus_of(w) for w in self.waypoints]
        for i, locus in enumerate(self.loci):
            if locus[0] == "corner":
                raise ContractError(
                    f"waypoint {i} sits on a {locus[1]} corner")
            if not s.is_on_surface(locus):
                raise ContractError(f"waypoint {i} is not on the surface")
        self.canon = [s.canonical(w, l)
                      for w, l in zip(self.waypoints, self.loci)]

        self.seg_count = n if self.kind == "closed" else n - 1
        kinds = []
        for i in range(self.seg_count):
            j = (i + 1) % n
            a, b = self.waypoints[i], self.waypoints[j]
            if a == b:
                raise ContractError(f"waypoints {i} and {j} coincide")
            kinds.append(JUNCTION if self.canon[i] == self.canon[j] else CHORD)
        if self.kind == "closed" and n == 2 and kinds == [JUNCTION, JUNCTION]:
            # Two chart representatives of one locus point: read the pair
            # as one chord through the polygon plus the closing junction.
            kinds[0] = CHORD
        self.seg_kinds = kinds

        self._chord_ids = [i for i, k in enumerate(kinds) if k == CHORD]
        if not self._chord_ids:
            raise ContractError("curve has no chords")
        self._chord_bbox: dict[int, BBox] = {
            i: bbox_of(self.segment_endpoints(i)) for i in self._chord_ids}
        self.bbox = bbox_of(self.waypoints)

    # -- validation -------------------------------------------------------

    def _validate(self) -> None:
        s = self.surface
        n = len(self.waypoints)

        if self.kind == "closed":
            for i, locus in enumerate(self.loci):
                if s.is_boundary_locus(locus):
                    raise ContractError(
                        f"closed curve touches the boundary at waypoint {i}")
        else:
            for end in (0, n - 1):
                if not s.is_boundary_locus(self.loci[end]):
                    raise ContractError(
                        f"arc endpoint {end} is not on the boundary")
            for i in range(1, n - 1):
                if s.is_boundary_locus(self.loci[i]):
                    raise ContractError(
                        f"arc touches the boundary at interior waypoint {i}")

        for i in range(self.seg_count):
            if self.seg_kinds[i] == JUNCTION:
                self._check_junction(i)
            else:
                self._check_chord(i)

        # Junctions never chain (that would revisit a point) -- implied by
        # the duplicate check below, but catch the cyclic special case.
        if self.kind == "closed":
            for i in range(self.seg_count):
                j = (i + 1) % self.seg_count
                if self.seg_kinds[i] == JUNCTION == self.seg_kinds[j]:
                    raise ContractError("consecutive junctions")

        self._check_no_revisits()
        self._check_chords_disjoint()

    def _check_junction(self, i: int) -> None:
        j = (i + 1) % len(self.waypoints)
        a, b = self.waypoints[i], self.waypoints[j]
        la, lb = self.loci[i], self.loci[j]
        if not (self.surface.is_glued_locus(la)
                and self.surface.is_glued_locus(lb)):
            raise ContractError(
                f"junction {i} endpoints must lie on a glued edge pair")
        if self.surface.mirror(a, la) != b:
            raise ContractError(
                f"junction {i} endpoints are not mirror representatives")

    def _check_chord(self, i: int) -> None:
        s = self.surface
        j = (i + 1) % len(self.waypoints)
        a, b = self.waypoints[i], self.waypoints[j]
        la, lb = self.loci[i], self.loci[j]
        if la[0] == "edge" and lb[0] == "edge" and la[1] == lb[1]:
            raise ContractError(f"chord {i} runs along polygon edge {la[1]}")
        if (la[0] == "hole" and lb[0] == "hole"
                and la[1:3] == lb[1:3]):
            raise ContractError(f"chord {i} runs along a hole edge")
        mid_locus = s.locus_of(midpoint(a, b))
        if mid_locus != ("interior",):
            raise ContractError(
                f"chord {i} leaves the surface interior ({mid_locus[0]})")
        # The interior of the chord may not meet any polygon or hole edge;
        # touching is allowed only at the chord's own endpoints.
        def check_against(p: Pt, q: Pt, what: str) -> None:
            r = segment_intersection(a, b, p, q)
            if r is None:
                return
            if r[0] == "overlap":
                raise ContractError(f"chord {i} runs along {what}")
            _, point, t, _ = r
            if t == 0 and point == a:
                return
            if t == 1 and point == b:
                return
            raise ContractError(f"chord {i} crosses {what} mid-segment")

        for e in range(len(s.polygon)):
            check_against(*s.edge_endpoints(e), what=f"polygon edge {e}")
        for h in range(len(s.holes)):
            for k in range(len(s.holes[h])):
                check_against(*s.hole_edge_endpoints(h, k),
                              what=f"hole {h} edge {k}")

    def _check_no_revisits(self) -> None:
        seen: dict[Pt, int] = {}
        for i, c in enumerate(self.canon):
            if c in seen:
                prev = seen[c]
                if not self._junction_joins(prev, i):
                    raise ContractError(
                        f"curve revisits a point (waypoints {prev} and {i})")
            seen[c] = i

    def _junction_joins(self, a: int, b: int) -> bool:
        """Whether waypoints a < b are the two representatives of one
        junction transit (joined directly by a junction segment)."""
        segs = []
        if b - a == 1:
            segs.append(a)
        if self.kind == "closed" and a == 0 and b == len(self.waypoints) - 1:
            segs.append(self.seg_count - 1)
        return any(self.seg_kinds[s] == JUNCTION for s in segs)

    def _check_chords_disjoint(self) -> None:
        ids = self._chord_ids
        for ai in range(len(ids)):
            for bi in range(ai + 1, len(ids)):
                ia, ib = ids[ai], ids[bi]
                if not bbox_overlap(self._chord_bbox[ia], self._chord_bbox[ib]):
                    continue
                a0, a1 = self.segment_endpoints(ia)
                b0, b1 = self.segment_endpoints(ib)
                r = segment_intersection(a0, a1, b0, b1)
                if r is None:
                    continue
                shared = self._shared_waypoint(ia, ib)
                if shared is None or r[0] != "point" or r[1] != shared:
                    raise ContractError(
                        f"curve is not simple: chords {ia} and {ib} meet")

    def _shared_waypoint(self, ia: int, ib: int) -> Optional[Pt]:
        """The chart point two chords share when directly adjacent."""
        n = len(self.waypoints)
        ends_a = (ia, (ia + 1) % n)
        ends_b = (ib, (ib + 1) % n)
        for x in ends_a:
            for y in ends_b:
                if x == y:
                    return self.waypoints[x]
        return None

    # -- geometry accessors ------------------------------------------------

    def segment_endpoints(self, i: int) -> tuple[Pt, Pt]:
        n = len(self.waypoints)
        return self.waypoints[i], self.waypoints[(i + 1) % n]

    def chords(self) -> Iterator[tuple[int, Pt, Pt]]:
        for i in self._chord_ids:
            a, b = self.segment_endpoints(i)
            yield i, a, b

    def chord_bbox(self, i: int) -> BBox:
        return self._chord_bbox[i]

    def is_junction_segment(self, i: int) -> bool:
        return self.seg_kinds[i] == JUNCTION

    def point_at(self, seg: int, t: Fraction) -> Pt:
        a, b = self.segment_endpoints(seg)
        if self.seg_kinds[seg] == JUNCTION:
            return a if t == 0 else b
        return lerp(a, b, t)

    def station(self, seg: int, t: Fraction) -> Fraction:
        """Monotone position of (seg, t) along the curve in [0, seg_count)."""
        return Fraction(seg) + t

    def chord_dir(self, seg: int) -> Vec:
        a, b = self.segment_endpoints(seg)
        return sub(b, a)

    def prev_seg(self, i: int) -> Optional[int]:
        if i > 0:
            return i - 1
        return self.seg_count - 1 if self.kind == "closed" else None

    def next_seg(self, i: int) -> Optional[int]:
        if i < self.seg_count - 1:
            return i + 1
        return 0 if self.kind == "closed" else None

    def reversed(self) -> "PolyCurve":
        return PolyCurve(self.surface, self.kind, tuple(reversed(self.waypoints)))

    def canonical_waypoints(self) -> tuple[Pt, ...]:
        return tuple(self.canon)

    def same_waypoints_as(self, other: "PolyCurve") -> bool:
        """Equality up to rotation (closed) and reversal of the canonical
        waypoint cycle -- a fast sufficient check for identical curves."""
        if self.kind != other.kind:
            return False
        a = list(self.canon)
        b = list(other.canon)
        if len(a) != len(b):
            return False
        if self.kind == "arc":
            return a == b or a == b[::-1]
        for cand in (b, b[::-1]):
            for r in range(len(cand)):
                if a == cand[r:] + cand[:r]:
                    return True
        return False

    def __repr__(self) -> str:
        return (f"PolyCurve({self.kind}, {len(self.waypoints)} waypoints, "
                f"{len(self._chord_ids)} chords)")


def validate_curve(surface: Surface, kind: str,
                   waypoints: Sequence[Pt]) -> Optional[str]:
    """Build-and-check; returns None when valid, else the first violation."""
    try:
        PolyCurve(surface, kind, waypoints)
    except ContractError as exc:
        return str(exc)
    return None


def closed_curve(surface: Surface, waypoints: Sequence[Pt]) -> PolyCurve:
    return PolyCurve(surface, "closed", waypoints)


def arc_curve(surface: Surface, waypoints: Sequence[Pt]) -> PolyCurve:
    return PolyCurve(surface, "arc", waypoints)
