"""Clean perturbation, tube representatives, and the disjoint-copy family."""

from fractions import Fraction

import pytest

from curveflow.curves import arc_curve, closed_curve
from curveflow.errors import ContractError
from curveflow.intersect import (all_crossing, crossing_count, disjoint,
                                 intersect_curves)
from curveflow.isotopy import collapse_map_f
from curveflow.offsets import tubular_region
from curveflow.perturb import perturb, pushoff_family, region_representative
from curveflow.surface import build_surface


def P(x, y):
    return (Fraction(x), Fraction(y))


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


T = torus()
VERT = closed_curve(T, [P(Fraction(1, 4), 0), P(Fraction(1, 4), 1)])
HORIZ = closed_curve(T, [P(0, Fraction(1, 2)), P(1, Fraction(1, 2))])
DIAG = closed_curve(T, [P(Fraction(1, 2), 0), P(1, Fraction(1, 2)),
                        P(0, Fraction(1, 2)), P(Fraction(1, 2), 1)])

# Bulges left of the vertical x=1/4, meeting it at one non-crossing vertex.
TOUCHER = closed_curve(T, [P(Fraction(1, 8), Fraction(1, 4)),
                           P(Fraction(1, 4), Fraction(1, 2)),
                           P(Fraction(1, 8), Fraction(3, 4))])
# Shares the sub-segment x=1/4, y in [1/8, 3/8] with the vertical, bulging
# right of it.
OVERLAPPER = closed_curve(T, [P(Fraction(1, 4), Fraction(1, 8)),
                              P(Fraction(1, 4), Fraction(3, 8)),
                              P(Fraction(3, 8), Fraction(1, 4))])


class TestPerturb:
    def test_clean_target_returned_verbatim(self):
        out = perturb(T, VERT, [HORIZ], Fraction(1, 32))
        assert out is VERT

    def test_family_containing_target_gives_disjoint_copy(self):
        out = perturb(T, VERT, [VERT], Fraction(1, 32))
        assert disjoint(out, VERT)
        assert collapse_map_f(T, out) == collapse_map_f(T, VERT)
        for x, _ in out.waypoints:
            assert abs(x - Fraction(1, 4)) <= Fraction(1, 32)

    def test_touching_resolved_toward_removal(self):
        out = perturb(T, VERT, [TOUCHER], Fraction(1, 32))
        assert disjoint(out, TOUCHER)
        assert crossing_count(out, TOUCHER) == 0
        assert collapse_map_f(T, out) == collapse_map_f(T, VERT)

    def test_interval_overlap_avoided_entirely(self):
        out = perturb(T, VERT, [OVERLAPPER], Fraction(1, 32))
        r = intersect_curves(out, OVERLAPPER)
        assert not r.intervals
        assert disjoint(out, OVERLAPPER)

    def test_mixed_family_all_components_crossing(self):
        out = perturb(T, VERT, [HORIZ, TOUCHER, OVERLAPPER], Fraction(1, 64))
        for g in (HORIZ, TOUCHER, OVERLAPPER):
            assert all_crossing(out, g)
        assert crossing_count(out, HORIZ) == 1
        for x, _ in out.waypoints:
            assert abs(x - Fraction(1, 4)) <= Fraction(1, 64)

    def test_inessential_target_rejected(self):
        null = closed_curve(T, [P(Fraction(1, 2), Fraction(1, 2)),
                                P(Fraction(5, 8), Fraction(1, 2)),
                                P(Fraction(5, 8), Fraction(5, 8)),
                                P(Fraction(1, 2), Fraction(5, 8))])
        with pytest.raises(ContractError):
            perturb(T, null, [HORIZ], Fraction(1, 32))

    def test_nonpositive_bound_rejected(self):
        with pytest.raises(ContractError):
            perturb(T, VERT, [HORIZ], Fraction(0))

    def test_arc_perturbation_keeps_kind_and_class(self):
        s = five_holed_sphere()
        a = arc_curve(s, [P(Fraction(17, 32), 0), P(Fraction(17, 32), 1)])
        out = perturb(s, a, [a], Fraction(1, 64))
        assert out.kind == "arc"
        assert disjoint(out, a)
        assert collapse_map_f(s, out) == collapse_map_f(s, a)


class TestRegionRepresentative:
    def test_empty_family_returns_core(self):
        tube = tubular_region(T, VERT, Fraction(1, 8))
        assert region_representative(T, tube, []) is VERT

    def test_clean_core_returned(self):
        tube = tubular_region(T, VERT, Fraction(1, 8))
        assert region_representative(T, tube, [HORIZ]) is VERT

    def test_touching_core_replaced_inside_tube(self):
        tube = tubular_region(T, VERT, Fraction(1, 8))
        rep = region_representative(T, tube, [TOUCHER])
        assert rep is not VERT
        assert all_crossing(rep, TOUCHER)
        assert disjoint(rep, tube.boundaries[0])
        assert disjoint(rep, tube.boundaries[1])
        assert collapse_map_f(T, rep) == collapse_map_f(T, VERT)

    def test_strip_representative_is_arc(self):
        s = five_holed_sphere()
        core = arc_curve(s, [P(Fraction(17, 32), 0), P(Fraction(17, 32), 1)])
        # Wedge arc with a vertex on the core chord, bending back left.
        wedge = arc_curve(s, [P(0, Fraction(1, 2)),
                              P(Fraction(17, 32), Fraction(9, 16)),
                              P(0, Fraction(5, 8))])
        tube = tubular_region(s, core, Fraction(1, 16))
        rep = region_representative(s, tube, [wedge])
        assert rep.kind == "arc"
        assert all_crossing(rep, wedge)
        assert disjoint(rep, tube.boundaries[0])
        assert disjoint(rep, tube.boundaries[1])
        assert collapse_map_f(s, rep) == collapse_map_f(s, core)


def _family_conditions(originals, primes):
    n = len(originals)
    for i in range(n):
        r = intersect_curves(primes[i], originals[i])
        assert r.identical or r.is_disjoint()
        for j in range(n):
            if j == i:
                continue
            if disjoint(originals[i], originals[j]):
                assert disjoint(primes[i], primes[j])
                assert disjoint(primes[i], originals[j])
        for j in range(i + 1, n):
            assert intersect_curves(primes[i], primes[j]).all_crossing()


class TestPushoffFamily:
    def test_first_member_kept_verbatim(self):
        primes = pushoff_family(T, [VERT, HORIZ])
        assert primes[0] is VERT

    def test_disjoint_pair_stays_disjoint(self):
        left = closed_curve(T, [P(Fraction(1, 4), 0), P(Fraction(1, 4), 1)])
        right = closed_curve(T, [P(Fraction(3, 4), 0), P(Fraction(3, 4), 1)])
        primes = pushoff_family(T, [left, right])
        _family_conditions([left, right], primes)

    def test_touching_pair_resolved(self):
        primes = pushoff_family(T, [VERT, TOUCHER])
        _family_conditions([VERT, TOUCHER], primes)
        assert intersect_curves(primes[1], VERT).all_crossing()

    def test_three_in_general_position(self):
        family = [VERT, HORIZ, DIAG]
        primes = pushoff_family(T, family)
        _family_conditions(family, primes)

    def test_overlapping_distinct_members_resolved(self):
        primes = pushoff_family(T, [VERT, OVERLAPPER])
        _family_conditions([VERT, OVERLAPPER], primes)

    def test_identical_members_rejected(self):
        twin = closed_curve(T, [P(Fraction(1, 4), 0), P(Fraction(1, 4), 1)])
        with pytest.raises(ContractError):
            pushoff_family(T, [VERT, twin])

    def test_singleton_family(self):
        assert pushoff_family(T, [VERT]) == [VERT]
