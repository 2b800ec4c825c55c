"""Flat polygonal surfaces: a convex rational polygon, glued edges, holes.

A surface is described by one strictly convex counterclockwise polygon
with rational vertices, a pairing of some of its edges (each pair glued
by the unique orientation-preserving isometry matching the edges
head-to-tail), and a list of simple polygonal holes strictly inside.
Unpaired polygon edges and hole edges make up the boundary.  The genus
and boundary count declared by the caller are cross-checked against the
Euler characteristic of the induced cell structure, so a description
that does not actually build S_{g,b} is rejected outright.

Charts and loci
---------------
Points live in the closed polygon (the chart).  A point's *locus*
records where it sits:

    ("interior",)        strictly inside, off every hole
    ("edge", i, t)       on polygon edge i at parameter t in (0, 1)
    ("hole", h, k, t)    on edge k of hole h at parameter t in (0, 1)
    ("corner", which, i) a polygon or hole corner (never allowed on curves)
    ("outside",)         off the chart entirely
    ("in_hole", h)       strictly inside hole h (removed from the surface)

A point on a glued edge has exactly two chart representatives; the
*canonical* one lies on the smaller edge index.  Gluing isometries are
rational rotations, which is automatic once paired edges have equal
squared length (enforced at build time), so every folded or unfolded
coordinate stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ContractError
from .geom import (
    F0,
    F1,
    Pt,
    Vec,
    add,
    cross,
    dot,
    dist2,
    is_strictly_convex_ccw,
    lerp,
    neg,
    norm2,
    point_on_segment,
    same_ray,
    segment_intersection,
    strictly_between_ccw,
    sub,
    twice_signed_area,
    winding_number,
)

Locus = tuple


@dataclass(frozen=True)
class SurfacePoint:
    """A chart point together with its locus on the surface."""

    coords: Pt
    locus: Locus


@dataclass(frozen=True)
class Gluing:
    """Orientation-preserving isometry carrying edge ``low`` onto edge
    ``high`` reversed: start of ``low`` goes to the head of ``high``."""

    low: int
    high: int
    # p |-> b + R (p - a), with R the rotation (c, -s; s, c)
    a: Pt
    b: Pt
    c: Fraction
    s: Fraction

    def apply(self, p: Pt) -> Pt:
        x, y = p[0] - self.a[0], p[1] - self.a[1]
        return (self.b[0] + self.c * x - self.s * y,
                self.b[1] + self.s * x + self.c * y)

    def invert(self, p: Pt) -> Pt:
        x, y = p[0] - self.b[0], p[1] - self.b[1]
        return (self.a[0] + self.c * x + self.s * y,
                self.a[1] - self.s * x + self.c * y)

    def rotate_dir(self, d: Vec) -> Vec:
        return (self.c * d[0] - self.s * d[1], self.s * d[0] + self.c * d[1])

    def rotate_dir_back(self, d: Vec) -> Vec:
        return (self.c * d[0] + self.s * d[1], -self.s * d[0] + self.c * d[1])


class Surface:
    """A validated compact orientable surface S_{g,b} in the flat model.

    Instances are immutable after construction; build them through
    `build_surface`.
    """

    def __init__(self, genus: int, boundary_count: int, polygon: Sequence[Pt],
                 identifications: Sequence[tuple[int, int, int]],
                 holes: Sequence[Sequence[Pt]]):
        self.genus = genus
        self.boundary_count = boundary_count
        self.polygon: tuple[Pt, ...] = tuple(polygon)
        self.identifications: tuple[tuple[int, int, int], ...] = tuple(
            (min(i, j), max(i, j), f) for i, j, f in identifications)
        self.holes: tuple[tuple[Pt, ...], ...] = tuple(tuple(h) for h in holes)
        self._validate_and_derive()

    # -- construction-time validation ------------------------------------

    def _validate_and_derive(self) -> None:
        n = len(self.polygon)
        if n < 3:
            raise ContractError("polygon needs at least 3 vertices")
        if not is_strictly_convex_ccw(self.polygon):
            raise ContractError(
                "polygon must be strictly convex and listed counterclockwise")
        if self.genus < 0 or self.boundary_count < 0:
            raise ContractError("genus and boundary count must be >= 0")

        # Edge pairing: an involution on distinct edges, each edge at most once.
        partner: dict[int, int] = {}
        for i, j, flag in self.identifications:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ContractError(f"identification ({i},{j}) out of range")
            if flag != -1:
                raise ContractError(
                    "orientation flag must be -1 (edge glued to reversed "
                    "partner); +1 would produce a non-orientable gluing, "
                    "which is out of scope")
            if i in partner or j in partner:
                raise ContractError(
                    f"edge {i if i in partner else j} identified twice")
            partner[i] = j
            partner[j] = i
        self.partner = partner

        # Gluing isometries; rationality forces equal squared edge lengths.
        self.gluings: dict[int, Gluing] = {}
        for i, j, _ in self.identifications:
            di = self.edge_vec(i)
            dj = self.edge_vec(j)
            if norm2(di) != norm2(dj):
                raise ContractError(
                    f"identified edges {i} and {j} have different lengths")
            mdj = neg(dj)
            c = dot(di, mdj) / norm2(di)
            s = cross(di, mdj) / norm2(di)
            g = Gluing(low=i, high=j, a=self.polygon[i],
                       b=self.polygon[(j + 1) % n], c=c, s=s)
            self.gluings[i] = g
            self.gluings[j] = g

        self._validate_holes()
        self._derive_cells()

    def _validate_holes(self) -> None:
        # Normalize each hole to counterclockwise vertex order; the input
        # order carries no meaning (curve files refer only to coordinates).
        fixed = []
        for idx, hole in enumerate(self.holes):
            if len(hole) < 3:
                raise ContractError(f"hole {idx} needs at least 3 vertices")
            if len(set(hole)) != len(hole):
                raise ContractError(f"hole {idx} repeats a vertex")
            if not _is_simple_polygon(hole):
                raise ContractError(f"hole {idx} is not a simple polygon")
            if twice_signed_area(hole) < 0:
                hole = tuple(reversed(hole))
            fixed.append(tuple(hole))
        self.holes = tuple(fixed)

        npoly = len(self.polygon)
        poly_edges = [(self.polygon[i], self.polygon[(i + 1) % npoly])
                      for i in range(npoly)]
        for idx, hole in enumerate(self.holes):
            for v in hole:
                if winding_number(self.polygon, v) == 0 or any(
                        point_on_segment(v, a, b) is not None
                        for a, b in poly_edges):
                    raise ContractError(
                        f"hole {idx} is not strictly inside the polygon")
            for a, b in _poly_edges(hole):
                for c, d in poly_edges:
                    if segment_intersection(a, b, c, d) is not None:
                        raise ContractError(
                            f"hole {idx} touches the polygon boundary")
        for idx in range(len(self.holes)):
            for jdx in range(idx + 1, len(self.holes)):
                if _polygons_touch(self.holes[idx], self.holes[jdx]):
                    raise ContractError(f"holes {idx} and {jdx} overlap")

    def _derive_cells(self) -> None:
        """Corner orbits, boundary circles, Euler characteristic, cone data."""
        n = len(self.polygon)

        # Corner orbits under the gluings: pair (i, j) sends corner i to
        # corner j+1 and corner i+1 to corner j.
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> None:
            parent[find(x)] = find(y)

        for i, j, _ in self.identifications:
            union(i, (j + 1) % n)
            union((i + 1) % n, j)
        self.corner_orbit = [find(k) for k in range(n)]
        orbit_count = len(set(self.corner_orbit))

        # Quotient cell counts for the glued polygon (holes handled after).
        v_q = orbit_count
        e_q = n - len(self.identifications)
        chi = v_q - e_q + 1 - len(self.holes)
        expected = 2 - 2 * self.genus - self.boundary_count
        if chi != expected:
            raise ContractError(
                f"Euler characteristic mismatch: cell structure gives {chi}, "
                f"genus {self.genus} with {self.boundary_count} boundary "
                f"components needs {expected}")

        # Boundary circles: each hole is one; unidentified polygon edges
        # chain into circles by walking corner fans.
        unmatched = [i for i in range(n) if i not in self.partner]
        circles: list[tuple[int, ...]] = []
        seen: set[int] = set()
        for start in unmatched:
            if start in seen:
                continue
            circle = []
            e = start
            while e not in seen:
                seen.add(e)
                circle.append(e)
                e = self._next_boundary_edge(e)
            circles.append(tuple(circle))
        self.polygon_boundary_circles = tuple(circles)
        found_b = len(circles) + len(self.holes)
        if found_b != self.boundary_count:
            raise ContractError(
                f"boundary mismatch: found {found_b} boundary circles, "
                f"declared {self.boundary_count}")

        # Interior corner orbits and their cone angles (in full turns).
        self._derive_cone_points()

    def _next_boundary_edge(self, e: int) -> int:
        """The boundary edge following unpaired edge e around the surface."""
        n = len(self.polygon)
        cur = (e + 1) % n
        while cur in self.partner:
            j = self.partner[cur]
            # Edge cur leaves the corner at its start; crossing the gluing
            # re-enters at the far end of its partner, whose following
            # polygon edge continues the fan.
            cur = (j + 1) % n
        return cur

    def _derive_cone_points(self) -> None:
        """For each corner orbit disjoint from the boundary, develop the
        corner fan and count full turns; a turn count of 1 means the flat
        structure is smooth there, more means a cone point."""
        n = len(self.polygon)
        on_boundary = set()
        for k in range(n):
            if k not in self.partner or (k - 1) % n not in self.partner:
                on_boundary.add(self.corner_orbit[k])

        self.interior_corner_turns: dict[int, int] = {}
        done: set[int] = set()
        for k0 in range(n):
            orbit = self.corner_orbit[k0]
            if orbit in on_boundary or orbit in done:
                continue
            done.add(orbit)
            self.interior_corner_turns[orbit] = self._fan_turns(k0)

    def _fan_turns(self, k0: int) -> int:
        """Develop polygon corners around the orbit of corner k0 and count
        how many times the sweeping ray passes the +x direction."""
        n = len(self.polygon)
        ref: Vec = (F1, F0)
        turns = 0
        k = k0
        steps = 0
        # rotation composed so far, mapping current chart into the first
        c_acc, s_acc = F1, F0
        while True:
            steps += 1
            if steps > 4 * n:
                raise ContractError("corner fan fails to close")
            d_out = self.edge_vec(k)
            d_in = neg(self.edge_vec((k - 1) % n))
            u = (c_acc * d_out[0] - s_acc * d_out[1],
                 s_acc * d_out[0] + c_acc * d_out[1])
            v = (c_acc * d_in[0] - s_acc * d_in[1],
                 s_acc * d_in[0] + c_acc * d_in[1])
            if strictly_between_ccw(u, v, ref) or same_ray(v, ref):
                turns += 1
            # cross edge (k-1): develop the partner chart into our frame
            e = (k - 1) % n
            g = self.gluings[e]
            if g.low == e:
                rc, rs = g.c, -g.s  # inverse rotation develops high side
                k = g.high
            else:
                rc, rs = g.c, g.s
                k = g.low
            c_acc, s_acc = (c_acc * rc - s_acc * rs, s_acc * rc + c_acc * rs)
            if k == k0:
                if not (c_acc == F1 and s_acc == F0):
                    raise ContractError(
                        "gluings do not close up flatly around a corner")
                return turns

    # -- chart geometry ---------------------------------------------------

    def edge_vec(self, i: int) -> Vec:
        n = len(self.polygon)
        return sub(self.polygon[(i + 1) % n], self.polygon[i])

    def edge_endpoints(self, i: int) -> tuple[Pt, Pt]:
        n = len(self.polygon)
        return self.polygon[i], self.polygon[(i + 1) % n]

    def hole_edge_endpoints(self, h: int, k: int) -> tuple[Pt, Pt]:
        hole = self.holes[h]
        return hole[k], hole[(k + 1) % len(hole)]

    def locus_of(self, p: Pt) -> Locus:
        """Classify a chart point; see the module docstring for loci."""
        n = len(self.polygon)
        for i in range(n):
            a, b = self.edge_endpoints(i)
            t = point_on_segment(p, a, b)
            if t is not None:
                if t == 0:
                    return ("corner", "polygon", i)
                if t == 1:
                    return ("corner", "polygon", (i + 1) % n)
                return ("edge", i, t)
        if winding_number(self.polygon, p) == 0:
            return ("outside",)
        for h, hole in enumerate(self.holes):
            m = len(hole)
            for k in range(m):
                a, b = hole[k], hole[(k + 1) % m]
                t = point_on_segment(p, a, b)
                if t is not None:
                    if t == 0:
                        return ("corner", "hole", (h, k))
                    if t == 1:
                        return ("corner", "hole", (h, (k + 1) % m))
                    return ("hole", h, k, t)
            if winding_number(hole, p) != 0:
                return ("in_hole", h)
        return ("interior",)

    def surface_point(self, p: Pt) -> SurfacePoint:
        return SurfacePoint(p, self.locus_of(p))

    def is_on_surface(self, locus: Locus) -> bool:
        return locus[0] in ("interior", "edge", "hole")

    def is_boundary_locus(self, locus: Locus) -> bool:
        """On an unglued polygon edge or a hole edge (that is, on ∂S)."""
        if locus[0] == "hole":
            return True
        return locus[0] == "edge" and locus[1] not in self.partner

    def is_glued_locus(self, locus: Locus) -> bool:
        return locus[0] == "edge" and locus[1] in self.partner

    def mirror(self, p: Pt, locus: Optional[Locus] = None) -> Optional[Pt]:
        """The other chart representative of a glued-edge point; None for
        points with a single representative."""
        locus = locus if locus is not None else self.locus_of(p)
        if not self.is_glued_locus(locus):
            return None
        g = self.gluings[locus[1]]
        return g.apply(p) if locus[1] == g.low else g.invert(p)

    def canonical(self, p: Pt, locus: Optional[Locus] = None) -> Pt:
        """Canonical representative: glued points are reported on the
        lower edge index of their pair."""
        locus = locus if locus is not None else self.locus_of(p)
        if not self.is_glued_locus(locus):
            return p
        g = self.gluings[locus[1]]
        return p if locus[1] == g.low else g.invert(p)

    def boundary_circle_of(self, locus: Locus):
        """Label of the boundary circle through a boundary locus: holes by
        ("hole", h), polygon circles by ("poly", index in the circle list)."""
        if locus[0] == "hole":
            return ("hole", locus[1])
        if locus[0] == "edge" and locus[1] not in self.partner:
            for idx, circle in enumerate(self.polygon_boundary_circles):
                if locus[1] in circle:
                    return ("poly", idx)
        raise ContractError(f"not a boundary locus: {locus}")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_count

    def orbit_is_flat(self, orbit: int) -> bool:
        """True when the interior corner orbit carries total angle 2π."""
        return self.interior_corner_turns.get(orbit, 1) == 1

    def __repr__(self) -> str:
        return (f"Surface(genus={self.genus}, boundary={self.boundary_count}, "
                f"{len(self.polygon)}-gon, {len(self.holes)} holes)")


def _poly_edges(poly: Sequence[Pt]):
    m = len(poly)
    return [(poly[k], poly[(k + 1) % m]) for k in range(m)]


def _is_simple_polygon(poly: Sequence[Pt]) -> bool:
    edges = _poly_edges(poly)
    m = len(edges)
    for i in range(m):
        for j in range(i + 1, m):
            r = segment_intersection(*edges[i], *edges[j])
            if r is None:
                continue
            adjacent = j == i + 1 or (i == 0 and j == m - 1)
            if not adjacent or r[0] != "point":
                return False
            # adjacent edges must meet exactly at the shared vertex
            shared = edges[i][1] if j == i + 1 else edges[i][0]
            if r[1] != shared:
                return False
    return True


def _polygons_touch(a: Sequence[Pt], b: Sequence[Pt]) -> bool:
    for pa, qa in _poly_edges(a):
        for pb, qb in _poly_edges(b):
            if segment_intersection(pa, qa, pb, qb) is not None:
                return True
    # containment without edge contact
    return winding_number(b, a[0]) != 0 or winding_number(a, b[0]) != 0


def build_surface(genus: int, boundary: int, polygon: Sequence[Pt],
                  identifications: Sequence[Sequence[int]],
                  holes: Sequence[Sequence[Pt]] = ()) -> Surface:
    """Validate a surface description and return the Surface.

    Raises ContractError when the identifications are not an involution,
    the Euler characteristic disagrees with 2-2g-b, holes overlap, or the
    gluing data cannot be realized isometrically.
    """
    ids = []
    for entry in identifications:
        if len(entry) == 2:
            i, j = entry
            flag = -1
        else:
            i, j, flag = entry
        ids.append((int(i), int(j), int(flag)))
    return Surface(genus, boundary, tuple(polygon), tuple(ids), tuple(holes))
