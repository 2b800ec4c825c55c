"""Nearby clean representatives of curves and arcs.

Every construction here answers the same demand: replace a curve by one
arbitrarily close to it whose meetings with a prescribed family are finite
and consist of honest transverse crossings — no touchings, no shared
sub-segments.  Existence is classical; what this module adds is a
deterministic procedure in the polygonal category whose output is *checked*,
never trusted: candidates are parallel offsets of the target at halving
distances on both sides, and a candidate wins only when the intersection
kernel certifies every component crossing, the unfolded deviation stays
within the requested bound, and the isotopy key is unchanged.

``perturb`` cleans one curve against a family.  ``region_representative``
does the same for the core of an embedded tube, staying inside the tube.
``pushoff_family`` runs the sequential form: each curve in turn is replaced
by a copy disjoint from itself (or kept verbatim) that preserves every
disjointness the original family had, so the primed family meets itself only
in crossings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .curves import PolyCurve
from .errors import ContractError, GeometryError
from .geom import segment_dist2, sqrt_lower
from .intersect import crossing_count, disjoint, intersect_curves
from .isotopy import collapse_map_f
from .offsets import (TubularRegion, _radius_cap, _screen_embeddedness,
                      offset_deviation2, pushoff, tubular_region)

__all__ = [
    "perturb",
    "pushoff",
    "pushoff_family",
    "region_representative",
    "tubular_region",
]

_MAX_SWEEP = 64


def _clean_against(u: PolyCurve, family: Sequence[PolyCurve]) -> bool:
    """Finite all-crossing against every family member (disjoint counts)."""
    return all(intersect_curves(u, g).all_crossing() for g in family)


def _self_clearance2(c: PolyCurve) -> Optional[Fraction]:
    """Least squared chart distance between non-adjacent chords of c."""
    chords = list(c.chords())
    m = len(chords)
    closed = c.kind == "closed"
    best: Optional[Fraction] = None
    for x in range(m):
        for y in range(x + 1, m):
            gap = min(y - x, (m - (y - x)) if closed else y - x)
            if gap <= 1:
                continue
            d2 = segment_dist2(chords[x][1], chords[x][2],
                               chords[y][1], chords[y][2])
            if best is None or d2 < best:
                best = d2
    return best


def _candidate_offsets(s, c, side, d0):
    """Yield verified offset copies of c on one side at halving distances."""
    cap = _radius_cap(s)
    for k in range(_MAX_SWEEP):
        dk = d0 / (1 << k)
        if dk > cap:
            continue
        if not _screen_embeddedness(s, c, dk):
            continue
        try:
            cand, dev2 = offset_deviation2(s, c, side, dk)
        except (ContractError, GeometryError):
            continue
        yield cand, dev2


def perturb(s, y: PolyCurve, family: Sequence[PolyCurve],
            eps: Fraction) -> PolyCurve:
    """A curve of y's kind and isotopy class, within ``eps`` of y in the
    unfolded chart, meeting every family member finitely and only in
    crossings.

    The target is returned verbatim when it already qualifies.  Otherwise
    both sides are swept at distances eps/2, eps/4, … and the first clean
    offset per side competes on total crossing count (fewer wins, tie to the
    left) — resolving each touching toward removal when either side can
    remove it.
    """
    if y.surface is not s:
        raise GeometryError("curve drawn on a different surface")
    if eps <= 0:
        raise ContractError("perturbation bound must be positive")
    for g in family:
        if g.surface is not s:
            raise GeometryError("family curve drawn on a different surface")
    key = collapse_map_f(s, y)
    if key.rejected:
        raise ContractError(
            "perturbation target is inessential; no nearby curve is a vertex")
    if _clean_against(y, family):
        return y
    eps2 = eps * eps
    best: Optional[tuple[tuple[int, int], PolyCurve]] = None
    for rank, side in enumerate(("left", "right")):
        for cand, dev2 in _candidate_offsets(s, y, side, eps / 2):
            if dev2 > eps2:
                continue
            if not _clean_against(cand, family):
                continue
            if collapse_map_f(s, cand) != key:
                continue
            score = (sum(crossing_count(cand, g) for g in family), rank)
            if best is None or score < best[0]:
                best = (score, cand)
            break
    if best is None:
        raise GeometryError(
            "no clean perturbation found within the requested bound")
    return best[1]


def region_representative(s, region: TubularRegion,
                          family: Sequence[PolyCurve]) -> PolyCurve:
    """A curve (annulus) or arc (strip) inside the tube, isotopic to its
    core, meeting every family member finitely and only in crossings.

    Tries the core itself, then offsets at radius/2, radius/4, … on both
    sides; containment in the tube is certified by the deviation bound plus
    kernel disjointness from both tube boundaries."""
    core = region.core
    if core.surface is not s:
        raise GeometryError("tube core drawn on a different surface")
    for g in family:
        if g.surface is not s:
            raise GeometryError("family curve drawn on a different surface")
    key = collapse_map_f(s, core)
    if _clean_against(core, family):
        return core
    r2 = region.radius * region.radius
    left, right = region.boundaries
    for side in ("left", "right"):
        for cand, dev2 in _candidate_offsets(s, core, side, region.radius / 2):
            if dev2 >= r2:
                continue
            if not (disjoint(cand, left) and disjoint(cand, right)):
                continue
            if not _clean_against(cand, family):
                continue
            if collapse_map_f(s, cand) != key:
                continue
            return cand
    raise GeometryError("no clean representative found inside the tube")


def _family_start_distance(s, v: PolyCurve,
                           avoid: Sequence[PolyCurve]) -> Fraction:
    """Half the least clearance among the core's own non-adjacent chords and
    every curve the copy must stay disjoint from."""
    least = _self_clearance2(v)
    for a in avoid:
        for _, p0, p1 in v.chords():
            for _, q0, q1 in a.chords():
                d2 = segment_dist2(p0, p1, q0, q1)
                if least is None or d2 < least:
                    least = d2
    cap = _radius_cap(s)
    if least is None or least == 0:
        return cap
    return min(sqrt_lower(least) / 2, cap)


def pushoff_family(s, family: Sequence[PolyCurve]) -> list[PolyCurve]:
    """Sequential disjoint-copy construction: v_1' = v_1, and each later
    v_i' is either v_i itself or a nearby offset, chosen so that

    * v_i' is disjoint from v_i (unless kept verbatim),
    * every disjointness of the evolving family persists — v_i' avoids each
      original disjoint from v_i and each earlier copy whose original or
      current position was disjoint from v_i,
    * all copies built so far meet v_i' finitely and only in crossings.
    """
    curves = list(family)
    n = len(curves)
    for v in curves:
        if v.surface is not s:
            raise GeometryError("family curve drawn on a different surface")
    for i in range(n):
        for j in range(i + 1, n):
            if intersect_curves(curves[i], curves[j]).identical:
                raise ContractError(
                    f"family members {i} and {j} coincide as point sets")
    out: list[PolyCurve] = []
    for i, v in enumerate(curves):
        if i == 0:
            out.append(v)
            continue
        key = collapse_map_f(s, v)
        avoid = [curves[j] for j in range(n)
                 if j != i and disjoint(curves[j], v)]
        avoid += [out[j] for j in range(i)
                  if disjoint(curves[j], v) or disjoint(out[j], v)]

        def acceptable(cand: PolyCurve, verbatim: bool) -> bool:
            if not verbatim and not disjoint(cand, v):
                return False
            if not all(disjoint(cand, a) for a in avoid):
                return False
            if not all(intersect_curves(cand, p).all_crossing()
                       for p in out):
                return False
            return collapse_map_f(s, cand) == key

        if acceptable(v, verbatim=True):
            out.append(v)
            continue
        d0 = _family_start_distance(s, v, avoid)
        chosen: Optional[PolyCurve] = None
        for side in ("left", "right"):
            for cand, _ in _candidate_offsets(s, v, side, d0):
                if acceptable(cand, verbatim=False):
                    chosen = cand
                    break
            if chosen is not None:
                break
        if chosen is None:
            raise GeometryError(
                f"no admissible copy of family member {i} was found")
        out.append(chosen)
    return out
