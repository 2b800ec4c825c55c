"""Bigon detection and the two surgery primitives.

A *bigon* between curves u and v is an embedded disk bounded by one sub-path
of each, meeting only at the two shared crossing points.  Crossing counts
between a curve pair are minimal exactly when no bigon exists, so removing
bigons one at a time — always an innermost one — drives any pair to minimal
position.  Candidates here are *double-adjacent* crossing pairs (consecutive
along both curves); each candidate's two sides are assembled into a closed
polygonal loop whose complement is computed exactly, and the candidate is a
bigon precisely when some complementary region is a disk.  An innermost
bigon among all of them is found by taking the globally smallest disk area:
any bigon hiding inside a smaller candidate's disk would itself produce a
double-adjacent pair of strictly smaller area.

Surgery is verification-driven.  The replacement curve is built by rerouting
the surgered curve along the target past the bigon, then sweeping parallel
offsets (both sides, halving distances) until the intersection kernel
certifies every contract clause: crossing count drops by exactly two, the
replacement avoids the original, every disjointness in the working family is
preserved, and the isotopy key is unchanged.

The arc variant surgers the arcs through the first intersection along an
oriented reference arc with the boundary of a thin finger neighborhood of
the initial segment, as one step of the flow that empties a family of arcs
off the reference arc.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import complement_regions
from .curves import CHORD, PolyCurve
from .errors import ContractError, GeometryError
from .geom import (F0, Pt, add, cross, lerp, neg, norm2, perp, smul, sub,
                   sqrt_lower, sqrt_upper)
from .intersect import crossing_count, disjoint, intersect_curves
from .isotopy import collapse_map_f
from .offsets import _line_meet, _primitive_dir, _radius_cap
from .perturb import _candidate_offsets

__all__ = [
    "Bigon",
    "arc_surgery_step",
    "bigon_surgery",
    "find_innermost_bigon",
    "tighten_pair",
]

_SNAP_GRIDS = (16, 24, 32, 48, 64)


# ---------------------------------------------------------------------------
# station arithmetic: positions along a curve as segment index + parameter
# ---------------------------------------------------------------------------

def _point_at(c: PolyCurve, station: Fraction) -> Pt:
    n = c.seg_count
    if c.kind == "closed":
        station = station % n
    seg = int(station)
    t = station - seg
    if t == 0:
        return c.waypoints[seg]
    a, b = c.segment_endpoints(seg)
    return lerp(a, b, t)


def _forward_slice(c: PolyCurve, s_from: Fraction,
                   s_to: Fraction) -> list[Pt]:
    """Waypoint path from one station to another, walking forward (and
    wrapping around for closed curves), junction pairs included."""
    n = c.seg_count
    closed = c.kind == "closed"
    if closed:
        s_from = s_from % n
        s_to = s_to % n
        end = s_to if s_to > s_from else s_to + n
    else:
        if s_from > s_to:
            raise GeometryError("arc slice runs backward")
        end = s_to
    pts = [_point_at(c, s_from)]
    k = int(s_from) + 1
    while k < end:
        w = c.waypoints[k % n if closed else k]
        if w != pts[-1]:
            pts.append(w)
        k += 1
    last = _point_at(c, s_to)
    if last != pts[-1]:
        pts.append(last)
    return pts


def _dedupe_loop(pts: list[Pt]) -> list[Pt]:
    out: list[Pt] = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# bigon detection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bigon:
    """An embedded disk bounded by one sub-path of a family curve and one of
    the target, meeting exactly at two crossing points.

    ``disk`` stores the polygonal boundary loop of the disk; its interior is
    the complementary region of that loop with Euler characteristic one.
    ``innermost_rank`` orders candidates by (disk area, target-side start
    station, family index): the global minimum is innermost."""

    member: int
    target: PolyCurve
    side_u: tuple[Pt, ...]
    side_v: tuple[Pt, ...]
    disk: PolyCurve
    innermost_rank: tuple
    stations_u: tuple[Fraction, Fraction] = field(default=(F0, F0))


def _crossing_atoms(u: PolyCurve, target: PolyCurve):
    r = intersect_curves(u, target)
    if r.identical:
        raise ContractError("family member coincides with the target")
    if r.intervals or any(not a.crossing for a in r.points):
        raise ContractError(
            "family member has touching components against the target")
    return r.points


def _adjacent_pairs(atoms, key, closed):
    """Consecutive pairs in station order, cyclically for closed curves."""
    ordered = sorted(atoms, key=key)
    m = len(ordered)
    if m < 2:
        return []
    pairs = [(ordered[k], ordered[k + 1]) for k in range(m - 1)]
    if closed:
        pairs.append((ordered[-1], ordered[0]))
    return pairs


def _v_gaps(a1, a2, atoms, closed):
    """Forward gap slices of the target between two atoms that are adjacent
    along it, as (start_atom, end_atom) pairs; empty when not adjacent."""
    ordered = sorted(atoms, key=lambda a: a.station_b)
    m = len(ordered)
    r1, r2 = ordered.index(a1), ordered.index(a2)
    gaps = []
    if closed:
        if (r2 - r1) % m == 1:
            gaps.append((a1, a2))
        if (r1 - r2) % m == 1:
            gaps.append((a2, a1))
    else:
        if abs(r1 - r2) == 1:
            lo, hi = (a1, a2) if r1 < r2 else (a2, a1)
            gaps.append((lo, hi))
    return gaps


def _candidate_bigons(s, family: Sequence[PolyCurve], target: PolyCurve):
    """Every double-adjacent crossing pair whose side loop bounds a disk."""
    out = []
    for mi, u in enumerate(family):
        atoms = _crossing_atoms(u, target)
        closed_u = u.kind == "closed"
        closed_v = target.kind == "closed"
        for a1, a2 in _adjacent_pairs(atoms, lambda a: a.station_a, closed_u):
            if a1 is a2:
                continue
            side_u = _forward_slice(u, a1.station_a, a2.station_a)
            for g_start, g_end in _v_gaps(a1, a2, atoms, closed_v):
                side_v = _forward_slice(target, g_start.station_b,
                                        g_end.station_b)
                # Loop: along u from a1 to a2, back along the target.
                back = side_v[::-1] if g_start is a1 else list(side_v)
                loop_pts = _dedupe_loop(list(side_u) + back[1:])
                if len(loop_pts) < 3:
                    continue
                try:
                    loop = PolyCurve(s, "closed", loop_pts)
                except ContractError:
                    continue
                disks = [r for r in complement_regions(s, [loop])
                         if r.euler == 1]
                if not disks:
                    continue
                area = min(r.area for r in disks)
                oriented_v = side_v if g_start is a1 else side_v[::-1]
                rank = (area, min(a1.station_b, a2.station_b), mi,
                        a1.station_a)
                out.append(Bigon(
                    member=mi, target=target,
                    side_u=tuple(side_u), side_v=tuple(oriented_v),
                    disk=loop, innermost_rank=rank,
                    stations_u=(a1.station_a, a2.station_a)))
    return out


def find_innermost_bigon(s, family: Sequence[PolyCurve],
                         target: PolyCurve) -> Optional[Bigon]:
    """The globally smallest-area bigon candidate between any family member
    and the target, or None when every member is disjoint from the target or
    already in minimal position with it.

    A disk of smaller area inside the returned bigon would yield a
    double-adjacent candidate of smaller area, so the global minimum is
    innermost with respect to the whole family."""
    for u in family:
        if u.surface is not s:
            raise GeometryError("family curve drawn on a different surface")
    if target.surface is not s:
        raise GeometryError("target drawn on a different surface")
    cands = _candidate_bigons(s, family, target)
    if not cands:
        return None
    return min(cands, key=lambda b: b.innermost_rank)


# ---------------------------------------------------------------------------
# bigon surgery
# ---------------------------------------------------------------------------

def _reroute_past_bigon(s, u: PolyCurve, b: Bigon) -> PolyCurve:
    """The surgered base path: u with its bigon side replaced by the
    target's side, still touching the target there until offset away."""
    su1, su2 = b.stations_u
    side_v = list(b.side_v)  # oriented from the a1 point to the a2 point
    if u.kind == "closed":
        comp = _forward_slice(u, su2, su1)
        pts = _dedupe_loop(comp + side_v[1:])
    else:
        head = _forward_slice(u, Fraction(0), su1)
        tail = _forward_slice(u, su2, Fraction(u.seg_count))
        pts = head + side_v[1:] + tail[1:]
        out: list[Pt] = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        pts = out
    return PolyCurve(s, u.kind, pts)


def bigon_surgery(s, family: Sequence[PolyCurve],
                  b: Bigon) -> list[PolyCurve]:
    """Replace the bigon's family member by a nearby copy rerouted along the
    target past the bigon; all other members are returned unchanged.

    The candidate offsets are accepted only when the kernel certifies:
    crossing count with the target drops by exactly two (all crossings),
    the copy avoids the replaced original, every family member disjoint
    from the original stays disjoint from the copy (crossing members stay
    crossing-only), and the isotopy key is preserved."""
    if not (0 <= b.member < len(family)):
        raise ContractError("bigon does not reference the given family")
    best = find_innermost_bigon(s, family, b.target)
    if best is None or b.innermost_rank > best.innermost_rank:
        raise ContractError(
            "bigon is not innermost: a smaller bigon with the target exists")
    u = family[b.member]
    count0 = crossing_count(u, b.target)
    key = collapse_map_f(s, u)
    base = _reroute_past_bigon(s, u, b)
    area = b.innermost_rank[0]
    d0 = min(_radius_cap(s), sqrt_lower(area)) / 4

    def accept(cand: PolyCurve) -> bool:
        r = intersect_curves(cand, b.target)
        if not r.all_crossing() or r.crossing_count() != count0 - 2:
            return False
        if not disjoint(cand, u):
            return False
        for j, cj in enumerate(family):
            if j == b.member:
                continue
            if disjoint(cj, u):
                if not disjoint(cand, cj):
                    return False
            elif not intersect_curves(cand, cj).all_crossing():
                return False
        return collapse_map_f(s, cand) == key

    for side in ("left", "right"):
        for cand, _ in _candidate_offsets(s, base, side, d0):
            if accept(cand):
                out = list(family)
                out[b.member] = cand
                return out
    raise GeometryError("no verified replacement found for the bigon")


# ---------------------------------------------------------------------------
# pair tightening with dyadic re-gridding between rounds
# ---------------------------------------------------------------------------

def _snap_waypoints(s, c: PolyCurve, grid: int) -> Optional[PolyCurve]:
    """Waypoints rounded onto the 2**-grid lattice: interior points by
    coordinates, locus points along their edge parameter with junction
    partners recomputed through the gluing.  None when rounding degenerates."""
    g = 1 << grid
    pts: list[Optional[Pt]] = []
    for wp, locus in zip(c.waypoints, c.loci):
        if locus[0] == "interior":
            pts.append((Fraction(round(wp[0] * g), g),
                        Fraction(round(wp[1] * g), g)))
        elif locus[0] in ("edge", "hole"):
            t = locus[-1]
            t2 = Fraction(round(t * g), g)
            if not 0 < t2 < 1:
                return None
            if locus[0] == "edge":
                a, b = s.edge_endpoints(locus[1])
            else:
                a, b = s.hole_edge_endpoints(locus[1], locus[2])
            pts.append(lerp(a, b, t2))
        else:
            return None
    n = len(pts)
    for i in range(c.seg_count):
        if c.seg_kinds[i] != CHORD:
            partner = s.mirror(pts[i])
            if partner is None:
                return None
            pts[(i + 1) % n] = partner
    try:
        return PolyCurve(s, c.kind, pts)  # type: ignore[arg-type]
    except ContractError:
        return None


def _snap_verified(s, c: PolyCurve, target: PolyCurve) -> PolyCurve:
    """Coarsest dyadic re-gridding of c that keeps its key and its exact
    crossing picture with the target; c itself when none verifies."""
    key = collapse_map_f(s, c)
    count = crossing_count(c, target)
    for grid in _SNAP_GRIDS:
        cand = _snap_waypoints(s, c, grid)
        if cand is None:
            continue
        r = intersect_curves(cand, target)
        if not r.all_crossing() or r.crossing_count() != count:
            continue
        if collapse_map_f(s, cand) != key:
            continue
        return cand
    return c


def tighten_pair(s, u: PolyCurve, v: PolyCurve) -> PolyCurve:
    """Remove every bigon between u and v: the returned curve keeps u's
    isotopy key and meets v in the minimal crossing count of their classes.
    Each round surgers one innermost bigon (count drops by exactly two), so
    the loop terminates; waypoints are re-gridded between rounds to keep
    coordinates coarse."""
    if u.surface is not s or v.surface is not s:
        raise GeometryError("curves drawn on a different surface")
    r = intersect_curves(u, v)
    if r.identical:
        raise ContractError("cannot tighten a curve against itself")
    if r.intervals or any(not a.crossing for a in r.points):
        raise ContractError(
            "pair meets in touchings or intervals: perturb it clean first")
    cur = u
    while True:
        b = find_innermost_bigon(s, [cur], v)
        if b is None:
            return cur
        cur = bigon_surgery(s, [cur], b)[0]
        cur = _snap_verified(s, cur, v)


# ---------------------------------------------------------------------------
# arc surgery along an oriented reference arc
# ---------------------------------------------------------------------------

def _chain_offset(pts: list[Pt], d: Fraction, side: str) -> list[Pt]:
    """Single-chart parallel copy of an open polyline with miter joints."""
    m = len(pts) - 1
    dirs = [sub(pts[k + 1], pts[k]) for k in range(m)]
    shifts = []
    for u in dirs:
        prim = _primitive_dir(u)
        sc = d / sqrt_upper(norm2(prim))
        off = smul(sc, perp(prim))
        shifts.append(off if side == "left" else neg(off))
    out = [add(pts[0], shifts[0])]
    for k in range(1, m):
        hit = _line_meet(add(pts[k - 1], shifts[k - 1]), dirs[k - 1],
                         add(pts[k], shifts[k]), dirs[k])
        if hit is None:
            if cross(dirs[k], sub(add(pts[k], shifts[k]),
                                  add(pts[k - 1], shifts[k - 1]))) != 0:
                raise GeometryError("parallel offset lines fail to meet")
            hit = add(pts[k], shifts[k - 1])
        out.append(hit)
    out.append(add(pts[m], shifts[m - 1]))
    return out


def _boundary_edge_line(s, locus) -> tuple[Pt, Pt]:
    if locus[0] == "edge":
        return s.edge_endpoints(locus[1])
    if locus[0] == "hole":
        return s.hole_edge_endpoints(locus[1], locus[2])
    raise GeometryError("arc endpoint is not on a boundary edge")


def _finger_boundary(s, beta: PolyCurve, tip_station: Fraction,
                     r: Fraction) -> PolyCurve:
    """Boundary arc of a thin neighborhood of beta's initial segment: out
    along one side, across beta just past the tip station, and back, with
    both ends on the boundary edge beta starts at."""
    seg = int(tip_station)
    for k in range(seg + 1):
        if beta.seg_kinds[k] != CHORD:
            raise GeometryError(
                "initial reference segment crosses a gluing locus; "
                "finger construction needs it inside one chart")
    spine = list(beta.waypoints[:seg + 1]) + [_point_at(beta, tip_station)]
    if spine[-1] == spine[-2]:
        raise GeometryError("degenerate finger spine")
    left = _chain_offset(spine, r, "left")
    right = _chain_offset(spine, r, "right")
    a, bnd = _boundary_edge_line(s, beta.loci[0])
    e_dir = sub(bnd, a)
    first_dir = sub(spine[1], spine[0])
    lb = _line_meet(left[0], first_dir, a, e_dir)
    rb = _line_meet(right[0], first_dir, a, e_dir)
    if lb is None or rb is None:
        raise GeometryError("finger sides parallel to the boundary edge")
    pts = [lb] + left[1:] + list(reversed(right[1:])) + [rb]
    return PolyCurve(s, "arc", pts)


def _beta_stations(gamma: PolyCurve, beta: PolyCurve):
    r = intersect_curves(gamma, beta)
    if r.identical or r.intervals or any(not a.crossing for a in r.points):
        raise ContractError(
            "family arc has touching components against the reference arc")
    for a in r.points:
        if a.boundary:
            raise ContractError(
                "reference arc endpoints must avoid the family")
    return r.points


def _essential_arc(s, pts: list[Pt]) -> Optional[PolyCurve]:
    try:
        cand = PolyCurve(s, "arc", _dedupe_open(pts))
    except ContractError:
        return None
    if collapse_map_f(s, cand).rejected:
        return None
    return cand


def _dedupe_open(pts: list[Pt]) -> list[Pt]:
    out: list[Pt] = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    return out


def arc_surgery_step(s, family: Sequence[PolyCurve],
                     beta: PolyCurve) -> list[PolyCurve]:
    """One round of the arc flow: every family arc through the first
    intersection along ``beta`` (from its head) is surgered with the
    boundary of a finger neighborhood of beta's initial segment and replaced
    by an essential piece that avoids its original, preserves all original
    disjointnesses, and meets beta strictly fewer times.  Arcs not in the
    first intersection are returned unchanged; a family disjoint from beta
    is returned as-is."""
    if beta.surface is not s or beta.kind != "arc":
        raise ContractError("reference must be an arc on the given surface")
    arcs = list(family)
    for gm in arcs:
        if gm.surface is not s:
            raise GeometryError("family arc drawn on a different surface")
        if gm.kind != "arc":
            raise ContractError("arc surgery expects a family of arcs")
    atoms_by = [_beta_stations(gm, beta) for gm in arcs]
    firsts = [(a.station_b, i, a) for i, atoms in enumerate(atoms_by)
              for a in atoms]
    if not firsts:
        return arcs
    t0 = min(st for st, _, _ in firsts)
    p_first = next(a.point for st, _, a in firsts if st == t0)
    group = sorted({i for st, i, a in firsts
                    if st == t0 and a.point == p_first})
    others = [arcs[j] for j in range(len(arcs)) if j not in group]

    later = [st for st, _, _ in firsts if st > t0]
    seg_end = Fraction(int(t0) + 1)
    nxt = min(later + [seg_end])
    counts = {i: len(atoms_by[i]) for i in group}

    finger = None
    hits: dict[int, list] = {}
    r0 = _radius_cap(s) / 2
    for k in range(48):
        rk = r0 / (1 << k)
        tip = t0 + (nxt - t0) / (1 << (k + 1))
        try:
            dn = _finger_boundary(s, beta, tip, rk)
        except (ContractError, GeometryError):
            continue
        rb = intersect_curves(dn, beta)
        if not rb.all_crossing() or rb.crossing_count() != 1:
            continue
        if not all(disjoint(dn, o) for o in others):
            continue
        ok = True
        step_hits: dict[int, list] = {}
        for i in group:
            ri = intersect_curves(arcs[i], dn)
            if not ri.all_crossing() or ri.crossing_count() != 2:
                ok = False
                break
            step_hits[i] = sorted(ri.points, key=lambda a: a.station_a)
        if not ok:
            continue
        finger = dn
        hits = step_hits
        cap_station = rb.points[0].station_a
        radius = rk
        break
    if finger is None:
        raise GeometryError("no clean finger neighborhood at any radius")

    dn_end = Fraction(finger.seg_count)

    def away_slice(u_station: Fraction) -> list[Pt]:
        """From a finger-boundary station to whichever end of it lies away
        from the cap, oriented from the crossing point outward."""
        if u_station < cap_station:
            return _forward_slice(finger, Fraction(0), u_station)[::-1]
        return _forward_slice(finger, u_station, dn_end)

    replaced: dict[int, PolyCurve] = {}
    for i in group:
        gm = arcs[i]
        x1, x2 = hits[i]
        head = _forward_slice(gm, Fraction(0), x1.station_a)
        tail = _forward_slice(gm, x2.station_a, Fraction(gm.seg_count))
        piece_a = _essential_arc(s, head + away_slice(x1.station_b)[1:])
        exit2 = away_slice(x2.station_b)[1:]
        piece_b = _essential_arc(s, list(reversed(exit2)) + tail)
        pieces = [p for p in (piece_a, piece_b) if p is not None]
        if not pieces:
            raise GeometryError(
                "neither surgered piece is essential: the surgered arc "
                "cannot have been essential")
        pieces.sort(key=lambda p: (crossing_count(p, beta),
                                   tuple(p.waypoints)))
        raw = pieces[0]
        key = collapse_map_f(s, raw)
        produced = [replaced[j] for j in group if j in replaced]

        def accept(cand: PolyCurve) -> bool:
            rc = intersect_curves(cand, beta)
            if not rc.all_crossing():
                return False
            if rc.crossing_count() > counts[i] - 1:
                return False
            if not disjoint(cand, gm):
                return False
            for j, gj in enumerate(arcs):
                if j == i:
                    continue
                if disjoint(gj, gm) and not disjoint(cand, gj):
                    return False
                if not intersect_curves(cand, gj).all_crossing():
                    return False
            for pj in produced:
                rj = intersect_curves(cand, pj)
                if not rj.all_crossing():
                    return False
                if not rj.is_disjoint() and disjoint(pj, gm):
                    return False
            return collapse_map_f(s, cand) == key

        chosen: Optional[PolyCurve] = None
        for side in ("left", "right"):
            for cand, _ in _candidate_offsets(s, raw, side, radius / 2):
                if accept(cand):
                    chosen = cand
                    break
            if chosen is not None:
                break
        if chosen is None:
            raise GeometryError(
                f"no verified surgered replacement for family arc {i}")
        replaced[i] = chosen

    out = [replaced.get(i, arcs[i]) for i in range(len(arcs))]
    before = sum(len(a) for a in atoms_by)
    after = sum(crossing_count(g, beta) for g in out)
    if after >= before:
        raise GeometryError("surgery failed to reduce reference crossings")
    return out
