"""Deterministic sample builders: surfaces, curves, families, spheres.

Every randomized constructor draws exclusively from a caller-supplied
``random.Random`` and verifies its geometric claims through the
intersection kernel before returning, so a fixed seed reproduces the
same instances exactly.  The builders are the input side of the
self-check suite and of the demo scripts; nothing here is needed by the
kernels themselves.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from math import gcd
from random import Random
from typing import Optional, Sequence

from .complexes import CombinatorialSphere, SimplicialComplex
from .curves import PolyCurve, closed_curve
from .errors import ContractError, GeometryError
from .geom import (add, cross, dist2, lerp, neg, perp, point_on_segment,
                   point_segment_dist2, segment_dist2, smul, sub)
from .intersect import disjoint, intersect_curves
from .isotopy import collapse_map_f
from .surface import Surface, build_surface

F = Fraction

Pt = tuple[Fraction, Fraction]


def _pt(x, y) -> Pt:
    return (F(x), F(y))


UNIT_SQUARE = (_pt(0, 0), _pt(1, 0), _pt(1, 1), _pt(0, 1))


def _square_hole(cx, cy, r) -> list[Pt]:
    cx, cy, r = F(cx), F(cy), F(r)
    return [(cx - r, cy - r), (cx + r, cy - r),
            (cx + r, cy + r), (cx - r, cy + r)]


# ---------------------------------------------------------------------------
# surface zoo
# ---------------------------------------------------------------------------

def torus() -> Surface:
    """Unit square with both opposite edge pairs glued by translation."""
    return build_surface(genus=1, boundary=0, polygon=UNIT_SQUARE,
                         identifications=[[0, 2, -1], [1, 3, -1]])


def five_holed_sphere() -> Surface:
    """Unglued unit square with four small square holes; the rim of the
    square is the fifth boundary component."""
    holes = [_square_hole(F(cx, 4), F(cy, 4), F(1, 16))
             for cx, cy in ((1, 1), (3, 1), (1, 3), (3, 3))]
    return build_surface(genus=0, boundary=5, polygon=UNIT_SQUARE,
                         identifications=[], holes=holes)


def four_holed_sphere() -> Surface:
    """Unglued unit square with three holes (four boundary components)."""
    holes = [_square_hole(F(1, 4), F(1, 4), F(1, 16)),
             _square_hole(F(3, 4), F(1, 4), F(1, 16)),
             _square_hole(F(1, 2), F(3, 4), F(1, 16))]
    return build_surface(genus=0, boundary=4, polygon=UNIT_SQUARE,
                         identifications=[], holes=holes)


def one_holed_torus() -> Surface:
    """Square torus with one central hole."""
    return build_surface(genus=1, boundary=1, polygon=UNIT_SQUARE,
                         identifications=[[0, 2, -1], [1, 3, -1]],
                         holes=[_square_hole(F(1, 2), F(1, 2), F(1, 16))])


def two_holed_torus() -> Surface:
    """Square torus with two holes on the horizontal midline."""
    return build_surface(genus=1, boundary=2, polygon=UNIT_SQUARE,
                         identifications=[[0, 2, -1], [1, 3, -1]],
                         holes=[_square_hole(F(1, 4), F(1, 2), F(1, 16)),
                                _square_hole(F(3, 4), F(1, 2), F(1, 16))])


def genus_two_surface() -> Surface:
    """Centrally symmetric octagon with opposite edges glued by
    translation; all eight corners meet in one cone point."""
    octagon = [_pt(1, -2), _pt(2, -1), _pt(2, 1), _pt(1, 2),
               _pt(-1, 2), _pt(-2, 1), _pt(-2, -1), _pt(-1, -2)]
    return build_surface(genus=2, boundary=0, polygon=octagon,
                         identifications=[[0, 4, -1], [1, 5, -1],
                                          [2, 6, -1], [3, 7, -1]])


# ---------------------------------------------------------------------------
# straight lines on the square torus
# ---------------------------------------------------------------------------

def torus_line(s: Surface, p: int, q: int,
               offset: Fraction = F(1, 2)) -> PolyCurve:
    """The straight (p, q) loop { q*x - p*y = offset (mod 1) } on the
    square torus, walked from its lowest boundary crossing.

    (p, q) must be primitive and the offset must not be an integer
    (integral offsets run through the corner orbit).
    """
    p, q = int(p), int(q)
    if (p, q) == (0, 0) or gcd(abs(p), abs(q)) != 1:
        raise ContractError(f"({p}, {q}) is not a primitive class")
    c = F(offset) % 1
    if c == 0:
        raise ContractError("offset must keep the line off the corners")
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    if q == 0:
        y0 = (-c) % 1
        return closed_curve(s, [(F(0), y0), (F(1), y0)])

    x0 = c / q
    ts: list[tuple[Fraction, bool]] = []
    lo, hi = min(x0, x0 + p), max(x0, x0 + p)
    for k in range(math.floor(lo) + 1, math.ceil(hi)):
        ts.append(((k - x0) / p, True))
    for m in range(1, q):
        ts.append((F(m, q), False))
    ts.sort()
    if len({t for t, _ in ts}) != len(ts):
        raise GeometryError("line runs through a corner despite the offset")

    pts: list[Pt] = [(x0, F(0))]
    ox, oy = 0, 0
    for t, is_vertical in ts:
        cover = (x0 + p * t, q * t)
        pts.append((cover[0] - ox, cover[1] - oy))
        if is_vertical:
            ox += 1 if p > 0 else -1
        else:
            oy += 1
        pts.append((cover[0] - ox, cover[1] - oy))
    pts.append((x0 + p - ox, F(q - oy)))
    return closed_curve(s, pts)


def random_primitive(rng: Random, bound: int = 5) -> tuple[int, int]:
    """A uniformly drawn primitive class with entries in [-bound, bound]."""
    while True:
        p = rng.randint(-bound, bound)
        q = rng.randint(-bound, bound)
        if (p, q) != (0, 0) and gcd(abs(p), abs(q)) == 1:
            return p, q


def random_offset(rng: Random, grain: int = 64) -> Fraction:
    """A non-integral transverse offset with denominator ``grain``."""
    return F(rng.randrange(1, grain), grain)


# ---------------------------------------------------------------------------
# wiggle injection
# ---------------------------------------------------------------------------

_SHRINKS = 8


def _linf(v) -> Fraction:
    return max(abs(v[0]), abs(v[1]))


def _pow2_clearance(d2: Fraction) -> Fraction:
    """The largest power of two r with 4*r*r <= d2."""
    r = F(1, 2)
    while 4 * r * r > d2:
        r /= 2
    return r


def _chord_through(c: PolyCurve, x: Pt) -> Optional[tuple[int, Pt, Pt]]:
    """The chord of ``c`` whose open interior contains the chart point."""
    for i, a, b in c.chords():
        t = point_on_segment(x, a, b)
        if t is not None and 0 < t < 1:
            return i, a, b
    return None


def _splice(c: PolyCurve, seg: int, detour: Sequence[Pt]) -> list[Pt]:
    w = list(c.waypoints)
    if seg == len(w) - 1 and c.kind == "closed":
        return w + list(detour)
    return w[: seg + 1] + list(detour) + w[seg + 1:]


def _feature_clearance2(s: Surface, x: Pt, skip_u, skip_v,
                        u: PolyCurve, v: PolyCurve,
                        avoid: Sequence[PolyCurve]) -> Fraction:
    """Squared clearance from ``x`` to every chart feature other than the
    two chords being surgered: the remaining chords of u and v, the
    surgered chords' endpoints, every chord of ``avoid``, the polygon rim,
    and the hole rims.  Zero means some untouchable feature runs through
    ``x`` itself and the site is unusable."""
    best: Optional[Fraction] = None

    def take(d2: Fraction) -> None:
        nonlocal best
        if best is None or d2 < best:
            best = d2

    for curve, skip in ((u, skip_u), (v, skip_v)):
        for i, a, b in curve.chords():
            if i == skip:
                take(dist2(x, a))
                take(dist2(x, b))
            else:
                take(point_segment_dist2(x, a, b))
    for other in avoid:
        for _, a, b in other.chords():
            take(point_segment_dist2(x, a, b))
    for e in range(len(s.polygon)):
        take(point_segment_dist2(x, *s.edge_endpoints(e)))
    for h in range(len(s.holes)):
        for k in range(len(s.holes[h])):
            take(point_segment_dist2(x, *s.hole_edge_endpoints(h, k)))
    if best is None:
        raise GeometryError("clearance query found no features at all")
    return best


def _verify_wiggle(s: Surface, cand_pts: list[Pt], u: PolyCurve,
                   v: PolyCurve, base: int, key,
                   avoid: Sequence[PolyCurve]) -> Optional[PolyCurve]:
    try:
        cand = PolyCurve(s, u.kind, cand_pts)
    except ContractError:
        return None
    r = intersect_curves(cand, v)
    if r.crossing_count() != base + 2 or not r.all_crossing() or r.intervals:
        return None
    for other in avoid:
        if disjoint(u, other) and not disjoint(cand, other):
            return None
    if collapse_map_f(s, cand) != key:
        return None
    return cand


def _zigzag_at(s: Surface, u: PolyCurve, v: PolyCurve, x: Pt,
               site_u, site_v, sign: int, base: int, key,
               avoid: Sequence[PolyCurve]) -> Optional[PolyCurve]:
    """Replace u's straight passage through the crossing ``x`` by a
    five-corner zigzag meeting v's chord three times instead of once."""
    iu, a0, a1 = site_u
    iv, b0, b1 = site_v
    du, dv = sub(a1, a0), sub(b1, b0)
    d2 = _feature_clearance2(s, x, iu, iv, u, v, avoid)
    if d2 == 0:
        return None
    rho = _pow2_clearance(d2)
    for _ in range(_SHRINKS):
        big_u = smul(rho / (4 * _linf(du)), du)
        lift = smul(sign * rho / (12 * _linf(dv)), dv)
        detour = [
            add(x, neg(big_u)),
            add(add(x, smul(F(-3, 4), big_u)), smul(3, lift)),
            add(add(x, smul(F(1, 2), big_u)), smul(3, lift)),
            add(add(x, smul(F(-1, 2), big_u)), smul(2, lift)),
            add(add(x, smul(F(3, 4), big_u)), lift),
            add(x, big_u),
        ]
        cand = _verify_wiggle(s, _splice(u, iu, detour), u, v,
                              base, key, avoid)
        if cand is not None:
            return cand
        rho /= 2
    return None


_SITE_GRID = (F(1, 2), F(1, 3), F(2, 3), F(1, 4), F(3, 4))


def _finger_at(s: Surface, u: PolyCurve, v: PolyCurve, site,
               base: int, key,
               avoid: Sequence[PolyCurve]) -> Optional[PolyCurve]:
    """Poke a thin finger from a point of u across one chord of v."""
    iu, a0, a1, tu, iv, b0, b1, tv = site
    anchor, tip = lerp(a0, a1, tu), lerp(b0, b1, tv)
    du, dv, w = sub(a1, a0), sub(b1, b0), sub(tip, anchor)
    if cross(dv, w) == 0:
        return None

    best: Optional[Fraction] = None

    def take(d2: Fraction) -> None:
        nonlocal best
        if best is None or d2 < best:
            best = d2

    for curve, skip in ((u, iu), (v, iv)):
        for i, c0, c1 in curve.chords():
            if i != skip:
                take(segment_dist2(anchor, tip, c0, c1))
    for other in avoid:
        for _, c0, c1 in other.chords():
            take(segment_dist2(anchor, tip, c0, c1))
    for e in range(len(s.polygon)):
        take(segment_dist2(anchor, tip, *s.edge_endpoints(e)))
    for h in range(len(s.holes)):
        for k in range(len(s.holes[h])):
            take(segment_dist2(anchor, tip, *s.hole_edge_endpoints(h, k)))
    take(dist2(anchor, a0))
    take(dist2(anchor, a1))
    take(dist2(tip, b0))
    take(dist2(tip, b1))
    if best is None or best == 0:
        return None

    tau = _pow2_clearance(best)
    for _ in range(_SHRINKS):
        half = smul(tau / (4 * _linf(du)), du)
        over = add(tip, smul(tau / (4 * _linf(w)), w))
        slide = smul(tau / (4 * _linf(dv)), dv)
        head, tail = add(anchor, neg(half)), add(anchor, half)
        for g1, g2 in ((add(over, slide), add(over, neg(slide))),
                       (add(over, neg(slide)), add(over, slide))):
            cand = _verify_wiggle(s, _splice(u, iu, [head, g1, g2, tail]),
                                  u, v, base, key, avoid)
            if cand is not None:
                return cand
        tau /= 2
    return None


def inject_wiggle(s: Surface, u: PolyCurve, v: PolyCurve, rng: Random,
                  avoid: Sequence[PolyCurve] = ()) -> PolyCurve:
    """A copy of ``u``, isotopic to it, crossing ``v`` exactly two more
    times, in crossings only.

    A crossing pair gets a transverse zigzag straddling one existing
    crossing; a disjoint pair gets a finger poked across one chord of
    ``v``.  Curves in ``avoid`` that were disjoint from ``u`` stay
    disjoint from the result.  Raises GeometryError when no verified
    site exists.
    """
    r = intersect_curves(u, v)
    if r.identical:
        raise ContractError("cannot wiggle a curve against itself")
    base = r.crossing_count()
    key = collapse_map_f(s, u)

    sites = []
    for atom in r.points:
        if not atom.crossing or s.locus_of(atom.point) != ("interior",):
            continue
        hu = _chord_through(u, atom.point)
        hv = _chord_through(v, atom.point)
        if hu and hv:
            sites.append((atom.point, hu, hv))
    rng.shuffle(sites)
    sign = rng.choice((1, -1))
    for x, hu, hv in sites:
        cand = _zigzag_at(s, u, v, x, hu, hv, sign, base, key, avoid)
        if cand is not None:
            return cand

    finger_sites = []
    for iv, b0, b1 in v.chords():
        for tv in _SITE_GRID:
            if s.locus_of(lerp(b0, b1, tv)) != ("interior",):
                continue
            for iu, a0, a1 in u.chords():
                for tu in _SITE_GRID:
                    if s.locus_of(lerp(a0, a1, tu)) != ("interior",):
                        continue
                    finger_sites.append((iu, a0, a1, tu, iv, b0, b1, tv))
    rng.shuffle(finger_sites)
    for site in finger_sites[:60]:
        cand = _finger_at(s, u, v, site, base, key, avoid)
        if cand is not None:
            return cand
    raise GeometryError("no admissible wiggle site was found")


def bend_chord(s: Surface, u: PolyCurve, rng: Random,
               avoid: Sequence[PolyCurve] = ()) -> PolyCurve:
    """A copy of ``u`` with one chord bent into a small elbow, staying
    disjoint from everything in ``avoid`` that ``u`` missed."""
    key = collapse_map_f(s, u)
    chords = list(u.chords())
    rng.shuffle(chords)
    for i, a, b in chords:
        mid = lerp(a, b, F(1, 2))
        if s.locus_of(mid) != ("interior",):
            continue
        d2 = _feature_clearance2(s, mid, i, i, u, u, avoid)
        if d2 == 0:
            continue
        h = _pow2_clearance(d2)
        side = rng.choice((1, -1))
        for _ in range(_SHRINKS):
            nudge = smul(side * h / (2 * _linf(perp(sub(b, a)))),
                         perp(sub(b, a)))
            try:
                cand = PolyCurve(s, u.kind,
                                 _splice(u, i, [add(mid, nudge)]))
            except ContractError:
                h /= 2
                continue
            ok = collapse_map_f(s, cand) == key and all(
                disjoint(cand, other) for other in avoid
                if disjoint(u, other))
            if ok:
                return cand
            h /= 2
    raise GeometryError("no admissible bend site was found")


# ---------------------------------------------------------------------------
# combinatorial spheres and simplex boundaries
# ---------------------------------------------------------------------------

def sphere_zero() -> CombinatorialSphere:
    return CombinatorialSphere(
        SimplicialComplex.from_maximal(["n", "s"], []), 0)


def cycle_sphere(m: int) -> CombinatorialSphere:
    verts = [f"r{i}" for i in range(m)]
    edges = [[f"r{i}", f"r{(i + 1) % m}"] for i in range(m)]
    return CombinatorialSphere(
        SimplicialComplex.from_maximal(verts, edges), 1)


def octahedron_sphere() -> CombinatorialSphere:
    faces = [[x, y, z] for x in "aA" for y in "bB" for z in "cC"]
    return CombinatorialSphere(
        SimplicialComplex.from_maximal(list("aAbBcC"), faces), 2)


def simplex_boundary(n: int) -> SimplicialComplex:
    """The boundary of the n-simplex on vertices v0..vn."""
    verts = [f"v{i}" for i in range(n + 1)]
    return SimplicialComplex.from_maximal(
        verts, [list(f) for f in combinations(verts, n)])


# ---------------------------------------------------------------------------
# seeded instances
# ---------------------------------------------------------------------------

def crossing_pair_instance(s: Surface, rng: Random,
                           wiggles: Optional[int] = None):
    """Two essential torus loops in distinct primitive classes, the first
    wiggled 2-8 times against the second.

    Returns (wiggled u, straight v, (p, q), (r, s)); the straight pair
    meets exactly |p*s2 - q*r| times and every wiggle adds two verified
    crossings.
    """
    while True:
        pq = random_primitive(rng)
        rs = random_primitive(rng)
        if pq[0] * rs[1] - pq[1] * rs[0] != 0:
            break
    u = torus_line(s, *pq, offset=random_offset(rng))
    v = torus_line(s, *rs, offset=random_offset(rng))
    if wiggles is None:
        wiggles = rng.randint(2, 8)
    for _ in range(wiggles):
        u = inject_wiggle(s, u, v, rng)
    return u, v, pq, rs


def _overlap_member(s: Surface, y: PolyCurve, rng: Random) -> PolyCurve:
    """A closed loop sharing one sub-segment of y's first chord."""
    _, a, b = next(iter(y.chords()))
    d = sub(b, a)
    for denom in (8, 16, 32, 64):
        lo = lerp(a, b, F(3, 8))
        hi = lerp(a, b, F(1, 2))
        bulge = smul(rng.choice((1, -1)) * F(1, denom) / _linf(perp(d)),
                     perp(d))
        try:
            cand = closed_curve(s, [lo, hi, add(hi, bulge), add(lo, bulge)])
        except ContractError:
            continue
        r = intersect_curves(cand, y)
        if r.intervals and not r.identical:
            return cand
    raise GeometryError("no overlapping member could be built")


def _touching_member(s: Surface, y: PolyCurve, rng: Random) -> PolyCurve:
    """A small triangle whose apex sits on y's first chord and whose body
    stays on one side, touching y without crossing it."""
    _, a, b = next(iter(y.chords()))
    d = sub(b, a)
    apex = lerp(a, b, F(5, 8))
    for denom in (16, 32, 64, 128):
        n = smul(rng.choice((1, -1)) * F(1, denom) / _linf(perp(d)), perp(d))
        along = smul(F(1, denom) / (2 * _linf(d)), d)
        try:
            cand = closed_curve(
                s, [apex, add(add(apex, n), along),
                    add(add(apex, n), neg(along))])
        except ContractError:
            continue
        r = intersect_curves(cand, y)
        if (not r.is_disjoint() and r.crossing_count() == 0
                and not r.intervals):
            return cand
    raise GeometryError("no touching member could be built")


def perturb_instance(s: Surface, rng: Random):
    """Target plus a family of at most five curves containing one
    overlapping and one touching configuration.  Returns
    (target, family, eps)."""
    pq = random_primitive(rng, bound=2)
    y = torus_line(s, *pq, offset=random_offset(rng))
    family = [_overlap_member(s, y, rng), _touching_member(s, y, rng)]
    for _ in range(rng.randint(0, 3)):
        other = random_primitive(rng, bound=2)
        family.append(torus_line(s, *other, offset=random_offset(rng)))
    rng.shuffle(family)
    eps = F(1, rng.choice((32, 64, 128)))
    return y, family[:5], eps


def pushoff_instance(s: Surface, rng: Random) -> list[PolyCurve]:
    """A family of two to five torus loops: straight lines in mixed
    classes with distinct offsets, sometimes sharing a class, at most one
    wiggled against another member."""
    n = rng.randint(2, 5)
    taken: set[tuple[int, int, Fraction]] = set()
    family: list[PolyCurve] = []
    classes: list[tuple[int, int]] = []
    while len(family) < n:
        pq = random_primitive(rng, bound=3)
        if classes and rng.random() < 0.4:
            pq = rng.choice(classes)
        c = random_offset(rng)
        if (*pq, c) in taken:
            continue
        taken.add((*pq, c))
        family.append(torus_line(s, *pq, offset=c))
        classes.append(pq)
    if n >= 2 and rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        rest = [family[k] for k in range(n) if k not in (i, j)]
        try:
            family[i] = inject_wiggle(s, family[i], family[j], rng,
                                      avoid=rest)
        except GeometryError:
            pass
    return family


def fiber_instance(s: Surface, rng: Random, k: Optional[int] = None):
    """A sphere, an assignment, and representatives of one torus class.

    Returns (sphere, assignment, curves) ready for the star flow: 4-8
    parallel representatives; the sphere has dimension 0, 1, or 2 (pass
    ``k`` to force one); when a crossing pair is injected it sits on
    sphere vertices that span no edge, so the induced map stays
    simplicial.
    """
    pq = random_primitive(rng, bound=2)
    n = rng.randint(6 if k == 2 else 4, 8)
    reps = [torus_line(s, *pq, offset=F(2 * i + 1, 2 * n))
            for i in range(n)]
    handles = [f"c{i}" for i in range(n)]
    if k is None:
        k = rng.choice([0, 1] if n < 6 else [0, 1, 2])

    if k == 0:
        sphere = sphere_zero()
        order = ["n", "s"]
        images = [0, 1]
    elif k == 1:
        m = rng.randint(4, min(n, 6))
        sphere = cycle_sphere(m)
        order = [f"r{i}" for i in range(m)]
        # vertices r0 and r2 are never adjacent, so they may cross; give
        # them the two lowest offsets to keep a finger corridor clear.
        images = _permute_for_pair(m, first=0, second=2)
    else:
        sphere = octahedron_sphere()
        order = list("aAbBcC")
        images = [0, 1, 2, 3, 4, 5]

    assignment = {order[idx]: handles[images[idx]]
                  for idx in range(len(order))}

    if rng.random() < 0.8:
        # cross the offset-adjacent pair assigned to non-adjacent sphere
        # vertices (or, for 0-spheres, the two image curves themselves)
        lo, hi = 0, 1
        rest = [reps[t] for t in range(n) if t not in (lo, hi)]
        try:
            reps[hi] = inject_wiggle(s, reps[hi], reps[lo], rng, avoid=rest)
        except GeometryError:
            pass
    curves = dict(zip(handles, reps))
    return sphere, assignment, curves


def _permute_for_pair(m: int, first: int, second: int) -> list[int]:
    """Image indices 0..m-1 arranged so cycle vertices ``first`` and
    ``second`` receive offsets 0 and 1."""
    out = [-1] * m
    out[first], out[second] = 0, 1
    nxt = 2
    for i in range(m):
        if out[i] < 0:
            out[i] = nxt
            nxt += 1
    return out


# -- arc families -----------------------------------------------------------

def _jitter(rng: Random, lo: Fraction, hi: Fraction,
            grain: int = 64) -> Fraction:
    span = hi - lo
    return lo + span * F(rng.randrange(1, grain), grain)


def arc_family_instance(s: Surface, rng: Random,
                        n: Optional[int] = None) -> list[PolyCurve]:
    """One to six essential arcs on the five-holed sphere or the
    two-holed torus, drawn from a menu of chords and wrapping paths with
    jittered positions."""
    if n is None:
        n = rng.randint(1, 6)
    if s.boundary_count == 5 and not s.gluings:
        menu = _flat_arc_menu
    elif s.genus == 1 and s.boundary_count == 2:
        menu = _glued_arc_menu
    else:
        raise ContractError("no arc menu for this surface")
    arcs: list[PolyCurve] = []
    guard = 0
    while len(arcs) < n:
        guard += 1
        if guard > 60 * n:
            raise GeometryError("arc menu kept colliding with itself")
        try:
            cand = rng.choice(menu)(s, rng)
        except ContractError:
            continue
        if any(intersect_curves(cand, other).identical for other in arcs):
            continue
        if collapse_map_f(s, cand).rejected:
            continue
        arcs.append(cand)
    return arcs


def _arc(s, pts):
    return PolyCurve(s, "arc", pts)


def _flat_vertical(s: Surface, rng: Random) -> PolyCurve:
    x = _jitter(rng, F(3, 8), F(5, 8))
    return _arc(s, [(x, F(0)), (x, F(1))])


def _flat_horizontal(s: Surface, rng: Random) -> PolyCurve:
    y = _jitter(rng, F(3, 8), F(5, 8))
    return _arc(s, [(F(0), y), (F(1), y)])


def _flat_slant(s: Surface, rng: Random) -> PolyCurve:
    x0 = _jitter(rng, F(3, 8), F(5, 8))
    x1 = _jitter(rng, F(3, 8), F(5, 8))
    return _arc(s, [(x0, F(0)), (x1, F(1))])


def _flat_hole_drop(s: Surface, rng: Random) -> PolyCurve:
    hole = rng.randrange(4)
    cx = F(1, 4) if hole in (0, 2) else F(3, 4)
    x = cx + _jitter(rng, F(-1, 24), F(1, 24))
    if hole in (0, 1):
        return _arc(s, [(x, F(3, 16)), (x, F(0))])
    return _arc(s, [(x, F(13, 16)), (x, F(1))])


def _flat_hole_bridge(s: Surface, rng: Random) -> PolyCurve:
    row = rng.choice((F(1, 4), F(3, 4)))
    y0 = row + _jitter(rng, F(-1, 24), F(1, 24))
    y1 = row + _jitter(rng, F(-1, 24), F(1, 24))
    return _arc(s, [(F(5, 16), y0), (F(11, 16), y1)])


_flat_arc_menu = (_flat_vertical, _flat_horizontal, _flat_slant,
                  _flat_hole_drop, _flat_hole_bridge)


def _glued_direct(s: Surface, rng: Random) -> PolyCurve:
    y0 = F(1, 2) + _jitter(rng, F(-1, 24), F(1, 24))
    y1 = F(1, 2) + _jitter(rng, F(-1, 24), F(1, 24))
    return _arc(s, [(F(5, 16), y0), (F(11, 16), y1)])


def _glued_wrap_back(s: Surface, rng: Random) -> PolyCurve:
    y = F(1, 2) + _jitter(rng, F(-1, 24), F(1, 24))
    y1 = F(1, 2) + _jitter(rng, F(-1, 24), F(1, 24))
    return _arc(s, [(F(3, 16), y), (F(0), y), (F(1), y), (F(13, 16), y1)])


def _glued_wrap_over(s: Surface, rng: Random) -> PolyCurve:
    x = F(1, 4) + _jitter(rng, F(-1, 24), F(1, 24))
    x1 = F(3, 4) + _jitter(rng, F(-1, 24), F(1, 24))
    return _arc(s, [(x, F(9, 16)), (x, F(1)), (x, F(0)), (x1, F(7, 16))])


def _glued_wrap_home(s: Surface, rng: Random) -> PolyCurve:
    x = F(1, 4) + _jitter(rng, F(-1, 24), F(1, 24))
    x1 = F(1, 4) + _jitter(rng, F(-1, 24), F(1, 24))
    return _arc(s, [(x, F(9, 16)), (x, F(1)), (x, F(0)), (x1, F(7, 16))])


_glued_arc_menu = (_glued_direct, _glued_wrap_back, _glued_wrap_over,
                   _glued_wrap_home)


# -- disjoint pairs ----------------------------------------------------------

def _band(s: Surface, x0, y0, x1, y1) -> PolyCurve:
    return closed_curve(s, [(F(x0), F(y0)), (F(x1), F(y0)),
                            (F(x1), F(y1)), (F(x0), F(y1))])


def disjoint_pair_instance(s: Surface, rng: Random):
    """Two disjoint essential curves: parallel torus lines (possibly bent)
    on the square torus, or hole-enclosing bands on the five-holed
    sphere.  Returns (u, v)."""
    if s.genus == 1 and s.boundary_count == 0:
        pq = random_primitive(rng)
        n = 2 * rng.randint(1, 8)
        i, j = rng.sample(range(n), 2)
        u = torus_line(s, *pq, offset=F(2 * i + 1, 2 * n))
        v = torus_line(s, *pq, offset=F(2 * j + 1, 2 * n))
        if rng.random() < 0.4:
            try:
                u = bend_chord(s, u, rng, avoid=[v])
            except GeometryError:
                pass
        return u, v

    j = lambda: _jitter(rng, F(-1, 48), F(1, 48))  # noqa: E731
    bottom = _band(s, F(1, 8) + j(), F(1, 8) + j(),
                   F(7, 8) + j(), F(3, 8) + j())
    top = _band(s, F(1, 8) + j(), F(5, 8) + j(),
                F(7, 8) + j(), F(7, 8) + j())
    left = _band(s, F(1, 8) + j(), F(1, 8) + j(),
                 F(3, 8) + j(), F(7, 8) + j())
    right = _band(s, F(5, 8) + j(), F(1, 8) + j(),
                  F(7, 8) + j(), F(7, 8) + j())
    inner = _band(s, F(1, 16), F(1, 16), F(15, 16), F(7, 16))
    pick = rng.choice(("rows", "cols", "nested"))
    if pick == "rows":
        pair = (bottom, top)
    elif pick == "cols":
        pair = (left, right)
    else:
        pair = (bottom, inner) if rng.random() < 0.5 else (inner, bottom)
    u, v = pair
    if not disjoint(u, v):
        raise GeometryError("band pair failed its disjointness check")
    return u, v
