"""Finite simplicial complexes over opaque vertex handles.

Complexes store the full downward-closed simplex family as frozensets of
handles.  Handles stay opaque (any hashable with a distinct string form);
every deterministic ordering below sorts by the string form, which also
fixes the orientation convention for boundary matrices.

Homology is computed exactly: integer boundary matrices in the reduced
chain complex (the degree-zero boundary is the augmentation row), ranks and
invariant factors through a hand-rolled Smith normal form with full
pivoting, and a bitset Gaussian elimination for mod-2 coefficients.  No
floating point, no approximation — the matrices involved stay at desk
scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .errors import ContractError
from .intersect import intersect_curves

Handle = Hashable
Simplex = frozenset


def _ordered(simplex: Iterable[Handle]) -> tuple:
    return tuple(sorted(simplex, key=str))


class SimplicialComplex:
    """A finite downward-closed family of non-empty vertex subsets."""

    def __init__(self, vertices: Sequence[Handle],
                 simplices: Iterable[Iterable[Handle]]):
        vs = tuple(vertices)
        if len(set(vs)) != len(vs):
            raise ContractError("duplicate vertex handles")
        if len({str(v) for v in vs}) != len(vs):
            raise ContractError("vertex handles need distinct string forms")
        vset = set(vs)
        family = {frozenset(s) for s in simplices}
        family.discard(frozenset())
        for s in family:
            if not s <= vset:
                raise ContractError("simplex uses an unknown vertex handle")
            if len(s) > 1:
                for v in s:
                    if s - {v} not in family:
                        raise ContractError(
                            "simplex family is not downward closed")
        for v in vs:
            if frozenset({v}) not in family:
                raise ContractError(f"vertex {v!r} missing from simplices")
        self.vertices = vs
        self.simplices = frozenset(family)
        by_dim: dict[int, list[tuple]] = {}
        for s in family:
            by_dim.setdefault(len(s) - 1, []).append(_ordered(s))
        self._by_dim = {p: sorted(rows) for p, rows in by_dim.items()}

    @classmethod
    def from_maximal(cls, vertices: Sequence[Handle],
                     maximal: Iterable[Iterable[Handle]]
                     ) -> "SimplicialComplex":
        family: set[frozenset] = {frozenset({v}) for v in vertices}
        for m in maximal:
            m = tuple(m)
            if len(set(m)) != len(m):
                raise ContractError("simplex repeats a vertex")
            for r in range(1, len(m) + 1):
                for c in combinations(m, r):
                    family.add(frozenset(c))
        return cls(vertices, family)

    # -- structure ----------------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    def simplices_of_dim(self, p: int) -> list[tuple]:
        return list(self._by_dim.get(p, []))

    def has_simplex(self, simplex: Iterable[Handle]) -> bool:
        return frozenset(simplex) in self.simplices

    def maximal_simplices(self) -> list[tuple]:
        out = [s for s in self.simplices
               if not any(s < t for t in self.simplices)]
        return sorted(map(_ordered, out))

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * len(rows) for p, rows in self._by_dim.items())

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e in self._by_dim.get(1, []):
            a, b = find(e[0]), find(e[1])
            if a != b:
                parent[a] = b
        roots = {find(v) for v in self.vertices}
        return len(roots) == 1

    def __eq__(self, other) -> bool:
        return (isinstance(other, SimplicialComplex)
                and set(self.vertices) == set(other.vertices)
                and self.simplices == other.simplices)

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        return (f"SimplicialComplex({len(self.vertices)} vertices, "
                f"dim {self.dim})")


def _vertex_degrees(x: SimplicialComplex) -> dict:
    deg = {v: 0 for v in x.vertices}
    for a, b in x.simplices_of_dim(1):
        deg[a] += 1
        deg[b] += 1
    return deg


def _is_single_cycle(x: SimplicialComplex) -> bool:
    if x.dim != 1 or not x.vertices:
        return False
    if any(d != 2 for d in _vertex_degrees(x).values()):
        return False
    return x.is_connected() and x.euler_characteristic() == 0


class CombinatorialSphere:
    """A simplicial complex asserted to triangulate the k-sphere.

    Dimensions up to two are validated combinatorially (vertex count,
    cycle structure, edge--triangle incidence, vertex links, connectivity,
    Euler characteristic); higher dimensions are accepted as claimed and
    flagged ``validated = False``.
    """

    def __init__(self, complex_: SimplicialComplex, k: int):
        if k < 0:
            raise ContractError("sphere dimension must be non-negative")
        self.complex = complex_
        self.k = k
        self.validated = k <= 2
        if k == 0:
            if len(complex_.vertices) != 2 or complex_.dim != 0:
                raise ContractError(
                    "a 0-sphere is exactly two isolated vertices")
        elif k == 1:
            if not _is_single_cycle(complex_):
                raise ContractError("a 1-sphere is a single edge cycle")
        elif k == 2:
            self._validate_surface_sphere(complex_)

    @staticmethod
    def _validate_surface_sphere(x: SimplicialComplex) -> None:
        if x.dim != 2:
            raise ContractError("a 2-sphere complex must have dimension 2")
        if any(len(m) != 3 for m in x.maximal_simplices()):
            raise ContractError("a 2-sphere complex must be pure")
        count: dict[frozenset, int] = {}
        for tri in x.simplices_of_dim(2):
            for e in combinations(tri, 2):
                count[frozenset(e)] = count.get(frozenset(e), 0) + 1
        for e in x.simplices_of_dim(1):
            if count.get(frozenset(e), 0) != 2:
                raise ContractError(
                    "every edge of a 2-sphere lies in exactly two triangles")
        for v in x.vertices:
            if not _is_single_cycle(link(x, v)):
                raise ContractError(
                    "every vertex link of a 2-sphere is a single cycle")
        if not x.is_connected():
            raise ContractError("a 2-sphere complex is connected")
        if x.euler_characteristic() != 2:
            raise ContractError(
                "a 2-sphere complex has Euler characteristic 2")


class SimplicialMap:
    """Vertex assignment between complexes; simpliciality is checked by
    ``check_simplicial``, not by construction."""

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex,
                 assignment: Mapping[Handle, Handle]):
        if set(assignment) != set(source.vertices):
            raise ContractError(
                "assignment must cover exactly the source vertices")
        tv = set(target.vertices)
        for v, w in assignment.items():
            if w not in tv:
                raise ContractError(
                    f"assignment sends {v!r} outside the target")
        self.source = source
        self.target = target
        self.assignment = dict(assignment)

    def image(self, simplex: Iterable[Handle]) -> frozenset:
        return frozenset(self.assignment[v] for v in simplex)


def check_simplicial(f: SimplicialMap) -> bool:
    return all(f.image(s) in f.target.simplices for s in f.source.simplices)


class BarycentricPoint:
    """Finitely supported convex weights on the vertices of one simplex."""

    def __init__(self, complex_: SimplicialComplex,
                 weights: Mapping[Handle, Fraction]):
        total = Fraction(0)
        support = set()
        for v, t in weights.items():
            if t < 0:
                raise ContractError("barycentric weights must be >= 0")
            total += t
            if t > 0:
                support.add(v)
        if total != 1:
            raise ContractError("barycentric weights must sum to 1")
        if frozenset(support) not in complex_.simplices:
            raise ContractError(
                "barycentric support does not span a simplex")
        self.complex = complex_
        self.weights = {v: Fraction(t) for v, t in weights.items() if t > 0}

    def support(self) -> frozenset:
        return frozenset(self.weights)


# ---------------------------------------------------------------------------
# star, link, fine subcomplexes of concrete curves
# ---------------------------------------------------------------------------

def star(x: SimplicialComplex, v: Handle) -> SimplicialComplex:
    """Closed star: every simplex contained in one that has v as a vertex."""
    if frozenset({v}) not in x.simplices:
        raise ContractError(f"unknown vertex handle {v!r}")
    family = {s for s in x.simplices if s | {v} in x.simplices}
    verts = sorted({w for s in family for w in s}, key=str)
    return SimplicialComplex(verts, family)


def link(x: SimplicialComplex, v: Handle) -> SimplicialComplex:
    if frozenset({v}) not in x.simplices:
        raise ContractError(f"unknown vertex handle {v!r}")
    family = {s for s in x.simplices if v not in s and s | {v} in x.simplices}
    verts = sorted({w for s in family for w in s}, key=str)
    return SimplicialComplex(verts, family)


def fine_subcomplex(s, curves: Sequence,
                    handles: Optional[Sequence[Handle]] = None
                    ) -> SimplicialComplex:
    """Full subcomplex of the fine curve (or arc) complex on the given
    concrete curves: a subset is a simplex exactly when its members are
    pairwise disjoint point sets, decided by the intersection kernel."""
    if handles is None:
        handles = [f"c{i}" for i in range(len(curves))]
    if len(handles) != len(curves):
        raise ContractError("one handle per curve required")
    kinds = {c.kind for c in curves}
    if len(kinds) > 1:
        raise ContractError(
            "cannot mix closed curves and arcs in one fine complex")
    for c in curves:
        if c.surface is not s:
            raise ContractError("curve drawn on a different surface")
    n = len(curves)
    adj = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            r = intersect_curves(curves[i], curves[j])
            if r.identical:
                raise ContractError(
                    f"curves {i} and {j} are the same point set")
            adj[i][j] = adj[j][i] = r.is_disjoint()

    family: set[frozenset] = set()

    def grow(clique: list[int], start: int) -> None:
        if clique:
            family.add(frozenset(handles[i] for i in clique))
        for k in range(start, n):
            if all(adj[i][k] for i in clique):
                grow(clique + [k], k + 1)

    grow([], 0)
    return SimplicialComplex(list(handles), family)


# ---------------------------------------------------------------------------
# homology through exact integer normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyReport:
    """Reduced Betti numbers by dimension, plus the torsion invariant
    factors (non-trivial ones, in divisibility order) over the integers."""

    coefficients: str
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]


def _boundary_matrix(x: SimplicialComplex, p: int) -> list[list[int]]:
    """Rows indexed by (p-1)-simplices, columns by p-simplices; p = 0 gives
    the augmentation row mapping every vertex to the generator of C_{-1}."""
    cols = x.simplices_of_dim(p)
    if p == 0:
        return [[1] * len(cols)]
    rows = x.simplices_of_dim(p - 1)
    index = {r: i for i, r in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i, v in enumerate(s):
            face = s[:i] + s[i + 1:]
            mat[index[face]][j] = (-1) ** i
    return mat


def _smith_diagonal(mat: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form (absolute values, divisibility
    chain).  Full pivoting on the smallest entry keeps coefficients tame."""
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    out: list[int] = []
    t = 0
    while t < min(m, n):
        piv = None
        best = 0
        for i in range(t, m):
            for j in range(t, n):
                v = abs(a[i][j])
                if v and (piv is None or v < best):
                    piv, best = (i, j), v
        if piv is None:
            break
        i0, j0 = piv
        a[t], a[i0] = a[i0], a[t]
        if j0 != t:
            for row in a:
                row[t], row[j0] = row[j0], row[t]
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if not dirty:
                break
        d = a[t][t]
        stray = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % d:
                    stray = i
                    break
            if stray is not None:
                break
        if stray is not None:
            a[t] = [x + y for x, y in zip(a[t], a[stray])]
            continue
        out.append(abs(d))
        t += 1
    return out


def _rank_mod2(mat: list[list[int]]) -> int:
    rows = []
    for r in mat:
        bits = 0
        for j, v in enumerate(r):
            if v & 1:
                bits |= 1 << j
        if bits:
            rows.append(bits)
    rank = 0
    while rows:
        piv = rows.pop()
        rank += 1
        low = piv & -piv
        rows = [r ^ piv if r & low else r for r in rows if r]
        rows = [r for r in rows if r]
    return rank


def homology(x: SimplicialComplex, coefficients: str = "Z") -> HomologyReport:
    """Reduced homology of a finite complex.

    ``coefficients``: "Z" for integers (Betti numbers plus torsion
    invariant factors), "Z2" for the field of two elements (Betti numbers
    only)."""
    if coefficients not in ("Z", "Z2"):
        raise ContractError('coefficients must be "Z" or "Z2"')
    top = x.dim
    if top < 0:
        return HomologyReport(coefficients, (), ())
    counts = {p: len(x.simplices_of_dim(p)) for p in range(top + 1)}
    snfs: dict[int, list[int]] = {}
    ranks: dict[int, int] = {}
    for p in range(top + 2):
        if p > top:
            ranks[p] = 0
            snfs[p] = []
            continue
        mat = _boundary_matrix(x, p)
        if coefficients == "Z":
            diag = _smith_diagonal(mat)
            snfs[p] = diag
            ranks[p] = len(diag)
        else:
            ranks[p] = _rank_mod2(mat)
            snfs[p] = []
    betti = []
    torsion = []
    for p in range(top + 1):
        betti.append(counts[p] - ranks[p] - ranks[p + 1])
        torsion.append(tuple(d for d in snfs[p + 1] if d > 1))
    return HomologyReport(coefficients, tuple(betti), tuple(torsion))


def straight_line_homotopy_valid(phi: SimplicialMap,
                                 psi: SimplicialMap) -> bool:
    """Whether the straight-line interpolation between two simplicial maps
    stays inside the target: for every source simplex, both images jointly
    span a target simplex."""
    if phi.source != psi.source:
        raise ContractError("maps must share their source complex")
    if phi.target != psi.target:
        raise ContractError("maps must share their target complex")
    for s in phi.source.simplices:
        union = phi.image(s) | psi.image(s)
        if union not in phi.target.simplices:
            return False
    return True


# ---------------------------------------------------------------------------
# JSON shape
# ---------------------------------------------------------------------------

def complex_to_json(x: SimplicialComplex) -> dict:
    return {
        "vertices": [str(v) for v in x.vertices],
        "maximal_simplices": [list(m) for m in x.maximal_simplices()],
    }


def complex_from_json(data: dict) -> SimplicialComplex:
    if (not isinstance(data, dict) or "vertices" not in data
            or "maximal_simplices" not in data):
        raise ContractError(
            'complex JSON needs "vertices" and "maximal_simplices"')
    return SimplicialComplex.from_maximal(
        [str(v) for v in data["vertices"]],
        [[str(v) for v in m] for m in data["maximal_simplices"]])
