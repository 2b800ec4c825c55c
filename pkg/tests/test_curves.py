from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from curveflow.curves import PolyCurve, closed_curve, arc_curve, validate_curve
from curveflow.errors import ContractError
from curveflow.surface import build_surface


def P(x, y):
    return (Fraction(x), Fraction(y))


UNIT_SQUARE = [P(0, 0), P(1, 0), P(1, 1), P(0, 1)]


def torus():
    return build_surface(1, 0, UNIT_SQUARE, [[0, 2, -1], [1, 3, -1]])


def square_hole(cx, cy, r=Fraction(1, 16)):
    cx, cy = Fraction(cx), Fraction(cy)
    return [P(cx - r, cy - r), P(cx + r, cy - r),
            P(cx + r, cy + r), P(cx - r, cy + r)]


def five_holed_sphere():
    holes = [square_hole(Fraction(1, 4), Fraction(1, 4)),
             square_hole(Fraction(3, 4), Fraction(1, 4)),
             square_hole(Fraction(1, 4), Fraction(3, 4)),
             square_hole(Fraction(3, 4), Fraction(3, 4))]
    return build_surface(0, 5, UNIT_SQUARE, [], holes)


class TestValidClosedCurves:
    def test_vertical_line_through_junction(self):
        c = closed_curve(torus(), [P("1/4", 0), P("1/4", 1)])
        assert c.seg_kinds == ["chord", "junction"]
        assert c.seg_count == 2
        assert c.canon[0] == c.canon[1] == P("1/4", 0)

    def test_interior_square_loop(self):
        c = closed_curve(torus(), [P("1/4", "1/4"), P("3/4", "1/4"),
                                   P("3/4", "3/4"), P("1/4", "3/4")])
        assert c.seg_kinds == ["chord"] * 4

    def test_subdivided_vertical(self):
        c = closed_curve(torus(), [P("1/4", 0), P("1/4", "1/2"), P("1/4", 1)])
        assert c.seg_kinds == ["chord", "chord", "junction"]

    def test_touch_waypoint_on_locus(self):
        c = closed_curve(torus(), [P("1/8", "1/8"), P("1/4", 0),
                                   P("3/8", "1/8"), P("1/4", "5/8")])
        assert c.seg_kinds == ["chord"] * 4

    def test_diagonal_through_two_junctions(self):
        c = closed_curve(torus(), [P("1/2", 0), P(1, "1/2"),
                                   P(0, "1/2"), P("1/2", 1)])
        assert c.seg_kinds == ["chord", "junction", "chord", "junction"]


class TestValidArcs:
    def test_boundary_to_hole(self):
        a = arc_curve(five_holed_sphere(), [P("1/4", 0), P("1/4", "3/16")])
        assert a.seg_kinds == ["chord"]

    def test_bent_arc(self):
        a = arc_curve(five_holed_sphere(),
                      [P("1/4", 0), P("3/8", "1/8"), P("5/16", "1/4")])
        assert a.seg_count == 2


class TestRejections:
    def test_self_crossing_reports_both_chords(self):
        msg = validate_curve(torus(), "closed",
                             [P("1/8", "1/8"), P("7/8", "1/8"),
                              P("1/8", "7/8"), P("7/8", "7/8")])
        assert msg is not None and "chords 1 and 3" in msg

    def test_corner_waypoint(self):
        msg = validate_curve(torus(), "closed",
                             [P(0, 0), P("1/2", "1/4"), P("1/4", "1/2")])
        assert msg is not None and "corner" in msg

    def test_arc_endpoint_off_boundary(self):
        msg = validate_curve(five_holed_sphere(), "arc",
                             [P("1/4", 0), P("1/2", "1/2")])
        assert msg is not None and "not on the boundary" in msg

    def test_closed_curve_on_boundary(self):
        msg = validate_curve(five_holed_sphere(), "closed",
                             [P("1/2", 0), P("1/2", "1/8"), P("5/8", "1/16")])
        assert msg is not None and "boundary" in msg

    def test_chord_through_hole(self):
        msg = validate_curve(five_holed_sphere(), "closed",
                             [P("1/8", "1/4"), P("3/8", "1/4"), P("1/4", "1/8")])
        assert msg is not None and "hole" in msg

    def test_chord_along_polygon_edge(self):
        msg = validate_curve(torus(), "closed",
                             [P(0, "1/4"), P(0, "3/4"), P("1/4", "1/2")])
        assert msg is not None and ("along" in msg or "crosses" in msg)

    def test_doubled_segment(self):
        msg = validate_curve(torus(), "closed",
                             [P("1/4", 0), P("3/4", 1)])
        assert msg is not None and "not simple" in msg

    def test_repeated_waypoint(self):
        msg = validate_curve(torus(), "closed",
                             [P("1/4", 0), P("1/4", 1), P("5/8", "1/2"),
                              P("1/4", 0)])
        assert msg is not None and ("coincide" in msg or "revisits" in msg)

    def test_canonical_revisit(self):
        msg = validate_curve(torus(), "closed",
                             [P("1/4", 0), P("5/8", "1/4"),
                              P("1/4", 1), P("5/8", "3/4")])
        assert msg is not None and "revisits" in msg

    def test_arc_through_boundary_interior_waypoint(self):
        msg = validate_curve(five_holed_sphere(), "arc",
                             [P("1/4", 0), P("1/2", 0), P("3/4", 0)])
        assert msg is not None

    def test_unknown_kind(self):
        with pytest.raises(ContractError):
            PolyCurve(torus(), "loop", [P("1/4", "1/4"), P("1/2", "1/2")])


class TestCurveOps:
    def test_reversed_roundtrip(self):
        c = closed_curve(torus(), [P("1/4", "1/4"), P("3/4", "1/4"),
                                   P("3/4", "3/4"), P("1/4", "3/4")])
        r = c.reversed()
        assert r.waypoints == tuple(reversed(c.waypoints))
        assert c.same_waypoints_as(r)

    def test_same_waypoints_up_to_rotation(self):
        pts = [P("1/4", "1/4"), P("3/4", "1/4"), P("3/4", "3/4"), P("1/4", "3/4")]
        c = closed_curve(torus(), pts)
        d = closed_curve(torus(), pts[2:] + pts[:2])
        assert c.same_waypoints_as(d)

    def test_different_curves_differ(self):
        c = closed_curve(torus(), [P("1/4", 0), P("1/4", 1)])
        d = closed_curve(torus(), [P("1/2", 0), P("1/2", 1)])
        assert not c.same_waypoints_as(d)

    def test_station_monotone(self):
        c = closed_curve(torus(), [P("1/4", "1/4"), P("3/4", "1/4"),
                                   P("3/4", "3/4"), P("1/4", "3/4")])
        stations = [c.station(i, Fraction(1, 2)) for i in range(4)]
        assert stations == sorted(stations)

    def test_point_at(self):
        c = closed_curve(torus(), [P("1/4", 0), P("1/4", 1)])
        assert c.point_at(0, Fraction(1, 4)) == P("1/4", "1/4")


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
def test_random_rectangles_valid(x0, y0, w, h):
    lo_x, lo_y = Fraction(x0, 8), Fraction(y0, 8)
    hi_x, hi_y = lo_x + Fraction(w, 64), lo_y + Fraction(h, 64)
    c = closed_curve(torus(), [(lo_x, lo_y), (hi_x, lo_y), (hi_x, hi_y), (lo_x, hi_y)])
    assert c.seg_count == 4


@given(st.integers(0, 3))
def test_rotation_preserves_validity(k):
    pts = [P("1/8", "1/8"), P("1/4", 0), P("3/8", "1/8"), P("1/4", "5/8")]
    c = closed_curve(torus(), pts[k:] + pts[:k])
    assert c.seg_count == 4
