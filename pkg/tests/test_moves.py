"""Innermost bigons, bigon surgery, pair tightening, and arc surgery."""

import dataclasses
from fractions import Fraction

import pytest

from curveflow.curves import arc_curve, closed_curve
from curveflow.errors import ContractError
from curveflow.intersect import (crossing_count, disjoint, intersect_curves)
from curveflow.isotopy import collapse_map_f
from curveflow.moves import (arc_surgery_step, bigon_surgery,
                             find_innermost_bigon, tighten_pair)
from curveflow.surface import build_surface


def P(x, y):
    return (Fraction(x), Fraction(y))


F = Fraction

UNIT_SQUARE = [P(0, 0), P(1, 0), P(1, 1), P(0, 1)]


def torus():
    return build_surface(genus=1, boundary=0, polygon=UNIT_SQUARE,
                         identifications=[[0, 2, -1], [1, 3, -1]])


def five_holed_sphere():
    holes = []
    for cx, cy in [(1, 1), (3, 1), (1, 3), (3, 3)]:
        cx, cy = Fraction(cx, 4), Fraction(cy, 4)
        r = Fraction(1, 16)
        holes.append([(cx - r, cy - r), (cx + r, cy - r),
                      (cx + r, cy + r), (cx - r, cy + r)])
    return build_surface(genus=0, boundary=5, polygon=UNIT_SQUARE,
                         identifications=[], holes=holes)


def minimal_crossings(p, q, r, s):
    # Two torus lines of classes (p, q) and (r, s) cross at least |ps - qr|
    # times, and straight representatives attain it.
    return abs(p * s - q * r)


T = torus()
VERT = closed_curve(T, [P(F(1, 4), 0), P(F(1, 4), 1)])
VERT2 = closed_curve(T, [P(F(5, 8), 0), P(F(5, 8), 1)])
HORIZ = closed_curve(T, [P(0, F(1, 2)), P(1, F(1, 2))])
HORIZ78 = closed_curve(T, [P(0, F(7, 8)), P(1, F(7, 8))])

# A horizontal-class curve with a zigzag crossing the vertical three times:
# at y = 1/2, 17/32 and 19/32.  The two bigons against the vertical have
# areas 1/512 (apex (3/8, 1/2)) and 1/256 (apex (1/8, 9/16)).
WIG = closed_curve(T, [P(0, F(1, 2)), P(F(3, 8), F(1, 2)),
                       P(F(1, 8), F(9, 16)), P(F(3, 8), F(5, 8)),
                       P(1, F(1, 2))])

# Straight (2,1) line and a copy with a detour adding two vertical crossings.
STRAIGHT21 = closed_curve(T, [P(F(3, 16), 0), P(1, F(13, 32)),
                              P(0, F(13, 32)), P(1, F(29, 32)),
                              P(0, F(29, 32)), P(F(3, 16), 1)])
WIG21 = closed_curve(T, [P(F(3, 16), 0), P(1, F(13, 32)),
                         P(0, F(13, 32)), P(F(3, 8), F(1, 2)),
                         P(F(1, 8), F(17, 32)), P(1, F(29, 32)),
                         P(0, F(29, 32)), P(F(3, 16), 1)])

# Tiny triangle crossing the vertical twice; its bigon is far smaller than
# either of WIG's.
TRI = closed_curve(T, [P(F(15, 64), F(1, 8)), P(F(17, 64), F(1, 8)),
                       P(F(15, 64), F(9, 64))])

TOUCHER = closed_curve(T, [P(F(1, 8), F(1, 4)), P(F(1, 4), F(1, 2)),
                           P(F(1, 8), F(3, 4))])
OVERLAPPER = closed_curve(T, [P(F(1, 4), F(1, 8)), P(F(1, 4), F(3, 8)),
                              P(F(3, 8), F(1, 4))])


class TestFindInnermostBigon:
    def test_wiggle_has_innermost_bigon(self):
        b = find_innermost_bigon(T, [WIG], VERT)
        assert b is not None
        assert b.member == 0
        assert b.innermost_rank[0] == F(1, 512)
        assert b.stations_u == (F(2, 3), F(3, 2))
        assert b.side_v[0] == P(F(1, 4), F(1, 2))
        assert b.side_v[-1] == P(F(1, 4), F(17, 32))
        assert b.disk.kind == "closed"

    def test_straight_pair_is_minimal(self):
        assert find_innermost_bigon(T, [HORIZ], VERT) is None

    def test_disjoint_pair_has_no_bigon(self):
        assert find_innermost_bigon(T, [VERT2], VERT) is None

    def test_straight_lines_2_1_vs_vertical(self):
        assert find_innermost_bigon(T, [STRAIGHT21], VERT) is None

    def test_touching_pair_rejected(self):
        with pytest.raises(ContractError):
            find_innermost_bigon(T, [TOUCHER], VERT)

    def test_overlapping_pair_rejected(self):
        with pytest.raises(ContractError):
            find_innermost_bigon(T, [OVERLAPPER], VERT)

    def test_target_in_family_rejected(self):
        with pytest.raises(ContractError):
            find_innermost_bigon(T, [VERT], VERT)

    def test_smaller_bigon_wins_across_family(self):
        b = find_innermost_bigon(T, [WIG, TRI], VERT)
        assert b is not None
        assert b.member == 1
        assert b.innermost_rank[0] < F(1, 512)


class TestBigonSurgery:
    def test_crossings_drop_by_exactly_two(self):
        b = find_innermost_bigon(T, [WIG], VERT)
        out = bigon_surgery(T, [WIG], b)
        assert len(out) == 1
        new = out[0]
        assert crossing_count(new, VERT) == 1
        assert intersect_curves(new, VERT).all_crossing()
        assert disjoint(new, WIG)
        assert collapse_map_f(T, new) == collapse_map_f(T, WIG)

    def test_family_disjointness_preserved(self):
        family = [WIG, HORIZ78]
        assert disjoint(WIG, HORIZ78)
        b = find_innermost_bigon(T, family, VERT)
        assert b.member == 0
        out = bigon_surgery(T, family, b)
        assert out[1] is HORIZ78
        assert disjoint(out[0], HORIZ78)

    def test_stale_bigon_rejected_when_smaller_one_appears(self):
        b = find_innermost_bigon(T, [WIG], VERT)
        with pytest.raises(ContractError):
            bigon_surgery(T, [WIG, TRI], b)

    def test_bad_member_index_rejected(self):
        b = find_innermost_bigon(T, [WIG], VERT)
        stale = dataclasses.replace(b, member=4)
        with pytest.raises(ContractError):
            bigon_surgery(T, [WIG], stale)


class TestTightenPair:
    def test_wiggle_tightens_to_one_crossing(self):
        out = tighten_pair(T, WIG, VERT)
        assert crossing_count(out, VERT) == minimal_crossings(1, 0, 0, 1)
        assert collapse_map_f(T, out) == collapse_map_f(T, HORIZ)

    def test_tighten_is_idempotent(self):
        out = tighten_pair(T, WIG, VERT)
        again = tighten_pair(T, out, VERT)
        assert again is out

    def test_wiggled_2_1_line_vs_vertical(self):
        assert crossing_count(WIG21, VERT) == 4
        out = tighten_pair(T, WIG21, VERT)
        assert crossing_count(out, VERT) == minimal_crossings(2, 1, 0, 1)
        assert collapse_map_f(T, out) == collapse_map_f(T, STRAIGHT21)

    def test_straight_2_1_returned_verbatim(self):
        out = tighten_pair(T, STRAIGHT21, VERT)
        assert out is STRAIGHT21
        assert crossing_count(out, VERT) == 2

    def test_minimal_pair_returned_verbatim(self):
        assert tighten_pair(T, HORIZ, VERT) is HORIZ

    def test_disjoint_pair_returned_verbatim(self):
        assert tighten_pair(T, VERT2, VERT) is VERT2

    def test_touching_pair_rejected(self):
        with pytest.raises(ContractError):
            tighten_pair(T, TOUCHER, VERT)

    def test_overlapping_pair_rejected(self):
        with pytest.raises(ContractError):
            tighten_pair(T, OVERLAPPER, VERT)

    def test_self_tighten_rejected(self):
        with pytest.raises(ContractError):
            tighten_pair(T, VERT, VERT)


S = five_holed_sphere()
BETA = arc_curve(S, [P(F(1, 2), 0), P(F(1, 2), 1)])
G_ACROSS = arc_curve(S, [P(0, F(1, 2)), P(1, F(1, 2))])
G_SLANT = arc_curve(S, [P(F(3, 8), 0), P(F(5, 8), 1)])
G_HIGH = arc_curve(S, [P(0, F(5, 8)), P(1, F(5, 8))])
G_FAR = arc_curve(S, [P(0, F(1, 4)), P(F(3, 16), F(1, 4))])
# Crosses the reference three times: at y = 5/9, 19/32, and 5/8 + 1/144.
G_ZIG = arc_curve(S, [P(0, F(1, 2)), P(F(9, 16), F(9, 16)),
                      P(F(7, 16), F(5, 8)), P(1, F(11, 16))])


class TestArcSurgeryStep:
    def test_single_crossing_removed(self):
        out = arc_surgery_step(S, [G_ACROSS], BETA)
        assert len(out) == 1
        new = out[0]
        assert new.kind == "arc"
        assert disjoint(new, BETA)
        assert disjoint(new, G_ACROSS)
        assert not collapse_map_f(S, new).rejected

    def test_disjoint_family_is_identity(self):
        out = arc_surgery_step(S, [G_FAR], BETA)
        assert out[0] is G_FAR

    def test_empty_family_is_identity(self):
        assert arc_surgery_step(S, [], BETA) == []

    def test_multi_intersection_replaces_whole_group(self):
        # Both arcs pass through (1/2, 1/2), the first point along the
        # reference, so one step replaces both.
        out = arc_surgery_step(S, [G_ACROSS, G_SLANT], BETA)
        assert disjoint(out[0], BETA)
        assert disjoint(out[1], BETA)
        assert disjoint(out[0], G_ACROSS)
        assert disjoint(out[1], G_SLANT)
        assert intersect_curves(out[0], out[1]).all_crossing()

    def test_later_crossings_left_alone(self):
        out = arc_surgery_step(S, [G_ACROSS, G_HIGH], BETA)
        assert out[1] is G_HIGH
        assert disjoint(out[0], G_HIGH)
        assert disjoint(out[0], BETA)

    def test_repeated_crossings_resolved_at_first_point(self):
        before = crossing_count(G_ZIG, BETA)
        assert before == 3
        out = arc_surgery_step(S, [G_ZIG], BETA)
        after = crossing_count(out[0], BETA)
        assert after < before
        assert disjoint(out[0], G_ZIG)
        assert not collapse_map_f(S, out[0]).rejected

    def test_arc_through_reference_endpoint_rejected(self):
        sharer = arc_curve(S, [P(F(1, 2), 0), P(1, F(1, 8))])
        with pytest.raises(ContractError):
            arc_surgery_step(S, [sharer], BETA)

    def test_touching_arc_rejected(self):
        toucher = arc_curve(S, [P(F(3, 8), 0), P(F(1, 2), F(3, 8)),
                                P(0, F(3, 8))])
        with pytest.raises(ContractError):
            arc_surgery_step(S, [toucher], BETA)

    def test_closed_curve_in_family_rejected(self):
        loop = closed_curve(S, [P(F(7, 16), F(7, 16)),
                                P(F(9, 16), F(7, 16)),
                                P(F(9, 16), F(9, 16)),
                                P(F(7, 16), F(9, 16))])
        with pytest.raises(ContractError):
            arc_surgery_step(S, [loop], BETA)

    def test_total_crossings_strictly_decrease(self):
        fam = [G_ACROSS, G_HIGH, G_ZIG]
        before = sum(crossing_count(g, BETA) for g in fam)
        out = arc_surgery_step(S, fam, BETA)
        after = sum(crossing_count(g, BETA) for g in out)
        assert after < before
