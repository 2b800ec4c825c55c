"""Exact arrangement of curves on a flat surface, with region topology.

Everything downstream that needs *topology* rather than single
intersections -- is a curve null-homotopic, does a pair of crossings
bound an embedded disk, what are the complementary regions -- runs on
this module.  The construction:

1. Take every polygon edge, hole edge, and curve chord as a segment in
   the chart, split all of them at their pairwise intersections and at
   curve waypoints (and, on glued edges, at the mirror images of such
   points, so the subdivisions of identified edges agree).
2. The pieces may form several connected components (a small loop
   floating inside the polygon, say).  For each extra component, drop a
   vertical *cut* segment from its lowest vertex straight down to the
   first piece below; cuts are artificial, carry no geometry, and are
   treated as transparent everywhere.  After cutting, the arrangement
   is connected, so every face of the planar subdivision is a disk.
3. Build the half-edge (dart) structure, trace faces, and classify each
   face as inside the domain (polygon minus holes), outside, or inside
   a hole, by which side of the boundary edges it sees.
4. Pair darts: the two darts of a cut sub-edge pair with each other,
   the domain-side darts of identified boundary sub-edges pair across
   the gluing, and ordinary sub-edges pair their two sides.  All region
   and disk topology reduces to one computation on a face set with some
   sub-edges declared *blocked* (cut open): Euler characteristic and
   boundary circles of the glued-up complex.

Complementary regions of a curve family are the face classes obtained
by blocking every curve sub-edge; a candidate bigon is checked by
flooding from one side of its boundary loop with the loop blocked and
asking for Euler characteristic 1 with no cone point strictly inside.
Two global identities are asserted after every build: faces partition
the domain area exactly, and vertices - edges + faces of the glued
complex equals the Euler characteristic of the surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence

from .curves import PolyCurve
from .errors import GeometryError
from .geom import (
    F0,
    F1,
    Pt,
    Vec,
    cross,
    dir_cmp,
    lerp,
    midpoint,
    orient,
    perp,
    point_on_segment,
    same_ray,
    segment_intersection,
    sub,
    twice_signed_area,
)
from .surface import Surface

Key = tuple[Pt, Pt]
Tag = tuple


def _norm_key(p: Pt, q: Pt) -> Key:
    return (p, q) if p <= q else (q, p)


@dataclass
class Region:
    """One complementary region of the curve family on the surface,
    completed by cutting the surface open along every curve."""

    index: int
    faces: frozenset[int]
    area: Fraction
    euler: int
    circle_labels: tuple[frozenset, ...]

    def curve_indices(self) -> set[int]:
        out: set[int] = set()
        for labels in self.circle_labels:
            out.update(i for kind, i in labels if kind == "curve")
        return out


class Arrangement:
    """Exact planar subdivision of a surface chart induced by a family of
    curves, with gluing-aware topology queries."""

    def __init__(self, surface: Surface, curves: Sequence[PolyCurve]):
        self.surface = surface
        self.curves = list(curves)
        for c in self.curves:
            if c.surface is not surface:
                raise GeometryError("curve drawn on a different surface")
        self._build()

    # -- construction ------------------------------------------------------

    def _base_segments(self) -> list[tuple[Pt, Pt, Tag]]:
        s = self.surface
        segs: list[tuple[Pt, Pt, Tag]] = []
        for e in range(len(s.polygon)):
            a, b = s.edge_endpoints(e)
            segs.append((a, b, ("poly", e)))
        for h in range(len(s.holes)):
            for k in range(len(s.holes[h])):
                a, b = s.hole_edge_endpoints(h, k)
                segs.append((a, b, ("hole", h, k)))
        for ci, c in enumerate(self.curves):
            for seg, a, b in c.chords():
                segs.append((a, b, ("curve", ci, seg)))
        return segs

    def _build(self) -> None:
        s = self.surface
        base = self._base_segments()
        forced: set[Pt] = set()
        for c in self.curves:
            for w, locus in zip(c.waypoints, c.loci):
                forced.add(w)
                if s.is_glued_locus(locus):
                    forced.add(s.mirror(w, locus))
        cuts: list[tuple[Pt, Pt]] = []

        for _ in range(256):
            self._assemble(base, cuts, forced)
            missing = self._missing_mirrors()
            if missing:
                forced |= missing
                continue
            cut = self._next_cut()
            if cut is None:
                break
            cuts.append(cut)
        else:
            raise GeometryError("arrangement construction failed to settle")

        self._finish()

    def _assemble(self, base: list[tuple[Pt, Pt, Tag]],
                  cuts: list[tuple[Pt, Pt]], forced: set[Pt]) -> None:
        """Split all segments at mutual intersections and forced points."""
        segs = list(base) + [(p, q, ("cut",)) for p, q in cuts]
        params: list[set[Fraction]] = [{F0, F1} for _ in segs]
        for i in range(len(segs)):
            a0, a1, _ = segs[i]
            for j in range(i + 1, len(segs)):
                b0, b1, _ = segs[j]
                r = segment_intersection(a0, a1, b0, b1)
                if r is None:
                    continue
                if r[0] == "point":
                    params[i].add(r[2])
                    params[j].add(r[3])
                else:
                    _, _, _, (t0, t1), (u0, u1) = r
                    params[i].update((t0, t1))
                    params[j].update((u0, u1))
            for p in forced:
                t = point_on_segment(p, a0, a1)
                if t is not None:
                    params[i].add(t)

        self.subedge_tags: dict[Key, set[Tag]] = {}
        self.fragments: dict[Tag, list[tuple[Fraction, Fraction, Key]]] = {}
        for (a, b, tag), ts in zip(segs, params):
            chain = []
            ordered = sorted(ts)
            for t0, t1 in zip(ordered, ordered[1:]):
                p, q = lerp(a, b, t0), lerp(a, b, t1)
                key = _norm_key(p, q)
                self.subedge_tags.setdefault(key, set()).add(tag)
                chain.append((t0, t1, key))
            self.fragments[tag] = chain

        self.vertices: set[Pt] = set()
        for p, q in self.subedge_tags:
            self.vertices.add(p)
            self.vertices.add(q)

    def _missing_mirrors(self) -> set[Pt]:
        s = self.surface
        missing: set[Pt] = set()
        for v in self.vertices:
            locus = s.locus_of(v)
            if s.is_glued_locus(locus):
                m = s.mirror(v, locus)
                if m not in self.vertices:
                    missing.add(m)
        return missing

    def _next_cut(self) -> Optional[tuple[Pt, Pt]]:
        """Vertical connector from the lowest vertex of a stray component
        down to the first sub-edge below it, or None when connected."""
        index = {v: i for i, v in enumerate(sorted(self.vertices))}
        parent = list(range(len(index)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p, q in self.subedge_tags:
            a, b = find(index[p]), find(index[q])
            if a != b:
                parent[a] = b

        root = find(index[self.surface.polygon[0]])
        comps: dict[int, list[Pt]] = {}
        for v, i in index.items():
            comps.setdefault(find(i), []).append(v)
        strays = {r: vs for r, vs in comps.items() if r != root}
        if not strays:
            return None

        def low_key(vs: list[Pt]) -> tuple:
            return min((v[1], v[0]) for v in vs)

        target = min(strays.values(), key=low_key)
        y0, x0 = low_key(target)
        comp_ids = {find(index[v]) for v in target}
        best: Optional[Fraction] = None
        for (p, q), _tags in self.subedge_tags.items():
            if find(index[p]) in comp_ids:
                continue
            hit = _vertical_ray_hit(x0, y0, p, q)
            if hit is not None and (best is None or hit > best):
                best = hit
        if best is None:
            raise GeometryError("stray component has nothing below it")
        return ((x0, best), (x0, y0))

    # -- dart structure ------------------------------------------------------

    def _finish(self) -> None:
        keys = sorted(self.subedge_tags)
        self.keys = keys
        n = len(keys)
        self.dart_tail: list[Pt] = [None] * (2 * n)  # type: ignore[list-item]
        self.dart_head: list[Pt] = [None] * (2 * n)  # type: ignore[list-item]
        self.dart_key: list[Key] = [None] * (2 * n)  # type: ignore[list-item]
        for k, (p, q) in enumerate(keys):
            self.dart_tail[2 * k], self.dart_head[2 * k] = p, q
            self.dart_tail[2 * k + 1], self.dart_head[2 * k + 1] = q, p
            self.dart_key[2 * k] = self.dart_key[2 * k + 1] = (p, q)

        out: dict[Pt, list[int]] = {}
        for d in range(2 * n):
            out.setdefault(self.dart_tail[d], []).append(d)

        def by_dir(u: int, v: int) -> int:
            du = sub(self.dart_head[u], self.dart_tail[u])
            dv = sub(self.dart_head[v], self.dart_tail[v])
            c = dir_cmp(du, dv)
            return c if c != 0 else (u > v) - (u < v)

        self._rot_prev: dict[int, int] = {}
        for v, ds in out.items():
            ds.sort(key=cmp_to_key(by_dir))
            for i, d in enumerate(ds):
                self._rot_prev[d] = ds[i - 1]
        self.out_darts = out

        # Faces, traced with the interior on the left.
        self.dart_next: list[int] = [-1] * (2 * n)
        for d in range(2 * n):
            self.dart_next[d] = self._rot_prev[d ^ 1]
        self.dart_face: list[int] = [-1] * (2 * n)
        self.face_darts: list[list[int]] = []
        for d0 in range(2 * n):
            if self.dart_face[d0] != -1:
                continue
            fid = len(self.face_darts)
            walk = []
            d = d0
            while self.dart_face[d] == -1:
                self.dart_face[d] = fid
                walk.append(d)
                d = self.dart_next[d]
            if d != d0:
                raise GeometryError("face walk failed to close")
            self.face_darts.append(walk)

        self.face_area: list[Fraction] = []
        for walk in self.face_darts:
            a = sum((cross(self.dart_tail[d], self.dart_head[d])
                     for d in walk), start=F0)
            self.face_area.append(a / 2)

        self._classify_faces()
        self._build_locus_partners()
        self._check_globals()
        self._build_regions()

    def _classify_faces(self) -> None:
        s = self.surface
        self.face_in_domain: list[bool] = []
        for fid, walk in enumerate(self.face_darts):
            votes: set[bool] = set()
            for d in walk:
                for tag in self.subedge_tags[self.dart_key[d]]:
                    ddir = sub(self.dart_head[d], self.dart_tail[d])
                    if tag[0] == "poly":
                        votes.add(same_ray(ddir, s.edge_vec(tag[1])))
                    elif tag[0] == "hole":
                        h, k = tag[1], tag[2]
                        hole = s.holes[h]
                        hdir = sub(hole[(k + 1) % len(hole)], hole[k])
                        votes.add(not same_ray(ddir, hdir))
            if len(votes) > 1:
                raise GeometryError(f"face {fid} sees both sides of the boundary")
            self.face_in_domain.append(votes.pop() if votes else True)
        self.domain_faces = frozenset(
            f for f, ok in enumerate(self.face_in_domain) if ok)

    def _build_locus_partners(self) -> None:
        """Pair the domain-side darts of identified boundary sub-edges."""
        s = self.surface
        self.locus_partner: dict[int, int] = {}
        domain_dart: dict[Key, dict[int, int]] = {}
        for k, key in enumerate(self.keys):
            for tag in self.subedge_tags[key]:
                if tag[0] != "poly" or tag[1] not in s.partner:
                    continue
                e = tag[1]
                d = 2 * k if same_ray(sub(key[1], key[0]), s.edge_vec(e)) else 2 * k + 1
                domain_dart.setdefault(key, {})[e] = d
        for key, per_edge in domain_dart.items():
            for e, d in per_edge.items():
                g = s.gluings[e]
                to_mirror = g.apply if e == g.low else g.invert
                p, q = self.dart_tail[d], self.dart_head[d]
                mkey = _norm_key(to_mirror(p), to_mirror(q))
                if mkey not in self.subedge_tags:
                    raise GeometryError("identified sub-edge has no mirror")
                pd = domain_dart[mkey][s.partner[e]]
                self.locus_partner[d] = pd
        for d, pd in list(self.locus_partner.items()):
            if self.locus_partner.get(pd) != d:
                raise GeometryError("locus pairing is not an involution")

    def _pair(self, d: int) -> Optional[int]:
        """Structural partner of a dart: across the gluing for identified
        sub-edges, the twin otherwise (cut twins included).  None for the
        chart-outside dart of an identified sub-edge."""
        key = self.dart_key[d]
        tags = self.subedge_tags[key]
        for tag in tags:
            if tag[0] == "poly" and tag[1] in self.surface.partner:
                return self.locus_partner.get(d)
        return d ^ 1

    # -- glued-complex topology --------------------------------------------

    def _active_pairs(self, faces: frozenset[int],
                      blocked: frozenset[Key]) -> dict[int, int]:
        pair: dict[int, int] = {}
        for f in faces:
            for d in self.face_darts[f]:
                if self.dart_key[d] in blocked:
                    continue
                p = self._pair(d)
                if p is None or self.dart_face[p] not in faces:
                    continue
                pair[d] = p
        for d, p in pair.items():
            if pair.get(p) != d:
                raise GeometryError("dart pairing is not symmetric")
        return pair

    def euler_of_faces(self, faces: Iterable[int],
                       blocked: Iterable[Key] = ()) -> int:
        """Euler characteristic of the union of the given faces, glued
        across all non-blocked sub-edges (and the identification locus),
        cut open along blocked ones."""
        faces = frozenset(faces)
        blocked = frozenset(blocked)
        pair = self._active_pairs(faces, blocked)
        darts = [d for f in faces for d in self.face_darts[f]]
        parent: dict[int, int] = {d: d for d in darts}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> None:
            parent[find(x)] = find(y)

        for d, p in pair.items():
            union(self.dart_next[d], p)
        v = len({find(d) for d in darts})
        e = len(darts) - len(pair) // 2
        return v - e + len(faces)

    def boundary_circles(self, faces: Iterable[int],
                         blocked: Iterable[Key] = ()) -> list[list[int]]:
        """Boundary walks of the glued-up face union, as dart cycles."""
        faces = frozenset(faces)
        blocked = frozenset(blocked)
        pair = self._active_pairs(faces, blocked)
        unpaired = [d for f in sorted(faces) for d in self.face_darts[f]
                    if d not in pair]
        circles: list[list[int]] = []
        seen: set[int] = set()
        for d0 in unpaired:
            if d0 in seen:
                continue
            circle = []
            d = d0
            while True:
                circle.append(d)
                seen.add(d)
                e = self.dart_next[d]
                while e in pair:
                    e = self.dart_next[pair[e]]
                d = e
                if d == d0:
                    break
            circles.append(circle)
        return circles

    def circle_label(self, circle: list[int]) -> frozenset:
        s = self.surface
        labels: set[tuple] = set()
        for d in circle:
            for tag in self.subedge_tags[self.dart_key[d]]:
                if tag[0] == "curve":
                    labels.add(("curve", tag[1]))
                elif tag[0] == "poly":
                    for idx, circ in enumerate(s.polygon_boundary_circles):
                        if tag[1] in circ:
                            labels.add(("bdry", ("poly", idx)))
                            break
                elif tag[0] == "hole":
                    labels.add(("bdry", ("hole", tag[1])))
                else:
                    raise GeometryError("cut sub-edge on a boundary circle")
        return frozenset(labels)

    def flood(self, seeds: Iterable[int], blocked: Iterable[Key] = ()) -> frozenset[int]:
        """Faces reachable from the seeds without stepping over a blocked
        sub-edge; crosses the gluing locus and cuts freely.  Restricted to
        in-domain faces."""
        blocked = frozenset(blocked)
        todo = [f for f in seeds]
        seen: set[int] = set(todo)
        while todo:
            f = todo.pop()
            for d in self.face_darts[f]:
                if self.dart_key[d] in blocked:
                    continue
                p = self._pair(d)
                if p is None:
                    continue
                g = self.dart_face[p]
                if g in seen or not self.face_in_domain[g]:
                    continue
                seen.add(g)
                todo.append(g)
        return frozenset(seen)

    # -- self-checks ---------------------------------------------------------

    def _check_globals(self) -> None:
        s = self.surface
        total = sum((self.face_area[f] for f in self.domain_faces), start=F0)
        expected = twice_signed_area(s.polygon) / 2
        for hole in s.holes:
            expected -= twice_signed_area(hole) / 2
        if total != expected:
            raise GeometryError(
                f"domain faces cover area {total}, expected {expected}")
        chi = self.euler_of_faces(self.domain_faces)
        if chi != s.euler_characteristic:
            raise GeometryError(
                f"glued complex has Euler characteristic {chi}, surface "
                f"needs {s.euler_characteristic}")

    # -- regions --------------------------------------------------------------

    def curve_keys(self, indices: Optional[Iterable[int]] = None) -> frozenset[Key]:
        chosen = set(range(len(self.curves))) if indices is None else set(indices)
        out: set[Key] = set()
        for key, tags in self.subedge_tags.items():
            if any(t[0] == "curve" and t[1] in chosen for t in tags):
                out.add(key)
        return frozenset(out)

    def chord_piece_keys(self, ci: int, seg: int, t0: Fraction,
                         t1: Fraction) -> list[Key]:
        """Sub-edge keys covering parameters [t0, t1] of one curve chord.
        The range must start and end at existing split points."""
        chain = self.fragments[("curve", ci, seg)]
        keys = [key for a, b, key in chain if t0 <= a and b <= t1]
        spans = [(a, b) for a, b, _ in chain if t0 <= a and b <= t1]
        if not spans or spans[0][0] != t0 or spans[-1][1] != t1:
            raise GeometryError("chord piece does not align with splits")
        return keys

    def _build_regions(self) -> None:
        blocked = self.curve_keys()
        pair = self._active_pairs(self.domain_faces, blocked)
        parent = {f: f for f in self.domain_faces}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d, p in pair.items():
            a, b = find(self.dart_face[d]), find(self.dart_face[p])
            if a != b:
                parent[a] = b

        groups: dict[int, set[int]] = {}
        for f in self.domain_faces:
            groups.setdefault(find(f), set()).add(f)

        self.regions: list[Region] = []
        self.region_of_face: dict[int, int] = {}
        for faces in sorted(groups.values(), key=min):
            fs = frozenset(faces)
            circles = self.boundary_circles(fs, blocked)
            region = Region(
                index=len(self.regions),
                faces=fs,
                area=sum((self.face_area[f] for f in fs), start=F0),
                euler=self.euler_of_faces(fs, blocked),
                circle_labels=tuple(sorted(
                    (self.circle_label(c) for c in circles),
                    key=lambda fs_: sorted(fs_))),
            )
            self.regions.append(region)
            for f in fs:
                self.region_of_face[f] = region.index

    # -- point location and representatives -----------------------------------

    def face_at(self, p: Pt) -> int:
        """The face containing a point that lies on no sub-edge."""
        for (a, b) in self.subedge_tags:
            if point_on_segment(p, a, b) is not None:
                raise GeometryError("point lies on the arrangement itself")
        for f in sorted(self.domain_faces):
            if self._winding(f, p) == 1:
                return f
        raise GeometryError("point is not inside any domain face")

    def region_at(self, p: Pt) -> Region:
        return self.regions[self.region_of_face[self.face_at(p)]]

    def _winding(self, f: int, p: Pt) -> int:
        w = 0
        for d in self.face_darts[f]:
            a, b = self.dart_tail[d], self.dart_head[d]
            if a[1] <= p[1] < b[1] and orient(a, b, p) > 0:
                w += 1
            elif b[1] <= p[1] < a[1] and orient(a, b, p) < 0:
                w -= 1
        return w

    def face_interior_point(self, f: int) -> Pt:
        """A deterministic exact point strictly inside a face."""
        for d in sorted(self.face_darts[f]):
            if self.dart_face[d ^ 1] != f:
                break
        else:
            raise GeometryError("face bounded entirely by bridges")
        m = midpoint(self.dart_tail[d], self.dart_head[d])
        n = perp(sub(self.dart_head[d], self.dart_tail[d]))
        best: Optional[Fraction] = None
        for (a, b) in self.subedge_tags:
            t = _ray_segment_hit(m, n, a, b)
            if t is not None and t > 0 and (best is None or t < best):
                best = t
        if best is None:
            raise GeometryError("interior ray escapes the arrangement")
        return (m[0] + n[0] * best / 2, m[1] + n[1] * best / 2)

    def region_interior_point(self, region: Region) -> Pt:
        for f in sorted(region.faces):
            for d in self.face_darts[f]:
                if self.dart_face[d ^ 1] != f:
                    return self.face_interior_point(f)
        raise GeometryError("region has no two-sided face")

    # -- interior vertices and cone points -------------------------------------

    def _vertex_qualifies(self, v: Pt, faces: frozenset[int],
                          blocked: frozenset[Key]) -> bool:
        for d in self.out_darts.get(v, ()):
            if self.dart_key[d] in blocked:
                return False
            f = self.dart_face[d]
            if self.face_in_domain[f] and f not in faces:
                return False
        return v in self.out_darts

    def interior_cone_points_flat(self, faces: Iterable[int],
                                  blocked: Iterable[Key] = ()) -> bool:
        """True when every surface point strictly inside the face union is
        locally flat -- i.e. no cone point of the flat structure lies in the
        interior.  Points on the blocked walls do not count as interior."""
        faces = frozenset(faces)
        blocked = frozenset(blocked)
        s = self.surface
        n = len(s.polygon)
        checked: set[int] = set()
        for k in range(n):
            orbit = s.corner_orbit[k]
            if orbit in checked or orbit not in s.interior_corner_turns:
                continue
            checked.add(orbit)
            members = [i for i in range(n) if s.corner_orbit[i] == orbit]
            if all(self._vertex_qualifies(s.polygon[i], faces, blocked)
                   for i in members):
                if not s.orbit_is_flat(orbit):
                    return False
        return True

    def is_embedded_disk(self, faces: Iterable[int],
                         blocked: Iterable[Key] = ()) -> bool:
        """Whether the glued face union is a disk that develops flatly (no
        cone point inside), so straight-line constructions within it are
        sound."""
        faces = frozenset(faces)
        blocked = frozenset(blocked)
        return (self.euler_of_faces(faces, blocked) == 1
                and self.interior_cone_points_flat(faces, blocked))


def _vertical_ray_hit(x0: Fraction, y0: Fraction, a: Pt, b: Pt) -> Optional[Fraction]:
    """Largest y < y0 where the downward ray from (x0, y0) meets [a, b]."""
    if a[0] == b[0]:
        if a[0] != x0:
            return None
        top = max(a[1], b[1])
        return top if top < y0 else None
    lo, hi = (a, b) if a[0] < b[0] else (b, a)
    if not (lo[0] <= x0 <= hi[0]):
        return None
    t = (x0 - a[0]) / (b[0] - a[0])
    y = a[1] + t * (b[1] - a[1])
    return y if y < y0 else None


def _ray_segment_hit(m: Pt, n: Vec, a: Pt, b: Pt) -> Optional[Fraction]:
    """Smallest t > 0 with m + t*n on [a, b], or None."""
    d = sub(b, a)
    denom = cross(n, d)
    w = sub(a, m)
    if denom == 0:
        if cross(n, w) != 0:
            return None
        # Collinear: project the endpoints onto the ray.
        nn = n[0] * n[0] + n[1] * n[1]
        ts = [(w[0] * n[0] + w[1] * n[1]) / nn,
              ((b[0] - m[0]) * n[0] + (b[1] - m[1]) * n[1]) / nn]
        pos = [t for t in ts if t > 0]
        return min(pos) if pos else None
    t = cross(w, d) / denom
    u = cross(w, n) / denom
    if t <= 0 or u < 0 or u > 1:
        return None
    return t


# -- essentialness ------------------------------------------------------------


def complement_regions(surface: Surface, curves: Sequence[PolyCurve]) -> list[Region]:
    return Arrangement(surface, curves).regions


def is_null_closed(surface: Surface, curve: PolyCurve) -> bool:
    """A closed curve bounds an embedded disk exactly when some
    complementary region is a disk."""
    if curve.kind != "closed":
        raise GeometryError("nullity test expects a closed curve")
    return any(r.euler == 1 for r in complement_regions(surface, [curve]))


def is_peripheral(surface: Surface, curve: PolyCurve) -> bool:
    """A closed curve is boundary-parallel exactly when some region is an
    annulus between it and one full boundary circle of the surface."""
    if curve.kind != "closed":
        raise GeometryError("peripherality test expects a closed curve")
    for r in complement_regions(surface, [curve]):
        if r.euler != 0 or len(r.circle_labels) != 2:
            continue
        kinds = sorted(frozenset(k for k, _ in labels)
                       for labels in r.circle_labels)
        if kinds == [frozenset({"bdry"}), frozenset({"curve"})]:
            return True
    return False


def arc_is_trivial(surface: Surface, arc: PolyCurve) -> bool:
    """An arc cuts off a disk exactly when some region is a disk."""
    if arc.kind != "arc":
        raise GeometryError("arc triviality test expects an arc")
    return any(r.euler == 1 for r in complement_regions(surface, [arc]))


def is_essential(surface: Surface, curve: PolyCurve) -> bool:
    if curve.kind == "closed":
        regions = complement_regions(surface, [curve])
        if any(r.euler == 1 for r in regions):
            return False
        for r in regions:
            if r.euler != 0 or len(r.circle_labels) != 2:
                continue
            kinds = sorted(frozenset(k for k, _ in labels)
                           for labels in r.circle_labels)
            if kinds == [frozenset({"bdry"}), frozenset({"curve"})]:
                return False
        return True
    return not arc_is_trivial(surface, curve)
