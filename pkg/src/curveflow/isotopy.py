"""Isotopy-class keys: the collapsing map from concrete curves to classes.

A key is a canonical, surface-dependent value with one promise: two curves
with equal keys are isotopic, and inessential input (null-homotopic, or
parallel to a boundary component) maps to the single distinguished
"rejected" key.

Three canonical forms, picked by surface shape:

* one-polygon torus (genus 1, closed, two gluing pairs): the signed
  counts of gluing-locus transits, as a primitive integer pair normalized
  up to sign.  On the standard unit-square model this is (horizontal
  winding, vertical winding), so the straight y = const curve gets (1, 0).
* planar (genus 0, no gluings): the set of holes the curve encloses,
  canonicalized to the smaller side of the partition of boundary circles.
  Complete for isotopy on S_{0,b}.
* everything else: the cyclically reduced word of locus transits,
  canonicalized over rotation and orientation reversal, together with the
  topological profile of the complementary regions.  This form is
  correct (isotopy-invariant) but NOT complete: distinct non-isotopic
  curves can in principle share a key on higher-genus surfaces, since
  free reduction does not see the surface-group relator.  Equal-key
  conclusions on such surfaces are advisory; the toolkit's flows only
  rely on keys where the form is complete.

Arcs get an analogous composite key (endpoint boundary circles, reduced
transit word, region profile).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .arrangement import Arrangement, arc_is_trivial
from .curves import JUNCTION, PolyCurve
from .errors import GeometryError
from .geom import winding_number
from .surface import Surface

REJECTED_REASONS = ("null", "peripheral", "trivial-arc")


@dataclass(frozen=True)
class IsotopyClassKey:
    form: str  # "torus" | "planar" | "word" | "arc" | "rejected"
    data: tuple

    @property
    def rejected(self) -> bool:
        return self.form == "rejected"

    def __repr__(self) -> str:
        if self.rejected:
            return "Key(rejected)"
        return f"Key({self.form}:{self.data!r})"


REJECTED = IsotopyClassKey("rejected", ())


def _gluing_pairs(s: Surface) -> list[tuple[int, int]]:
    pairs = sorted({(g.low, g.high) for g in s.gluings.values()})
    return pairs


def _transits(s: Surface, c: PolyCurve) -> list[tuple[int, int]]:
    """One token per gluing-locus transit, in curve order: (pair index,
    +1 when passing from the lower to the higher edge of the pair)."""
    pairs = _gluing_pairs(s)
    pair_index = {}
    for i, (lo, hi) in enumerate(pairs):
        pair_index[lo] = (i, 1)
        pair_index[hi] = (i, -1)
    out: list[tuple[int, int]] = []
    for seg in range(c.seg_count):
        if c.seg_kinds[seg] != JUNCTION:
            continue
        exit_locus = c.loci[seg]
        if exit_locus[0] != "edge":
            raise GeometryError("junction waypoint off the gluing locus")
        i, sign = pair_index[exit_locus[1]]
        out.append((i, sign))
    return out


def _cyclic_reduce(word: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Free reduction of a cyclic word: cancel adjacent inverse tokens,
    wrapping around, until stable."""
    w = list(word)
    changed = True
    while changed and w:
        changed = False
        out: list[tuple[int, int]] = []
        for tok in w:
            if out and out[-1][0] == tok[0] and out[-1][1] == -tok[1]:
                out.pop()
                changed = True
            else:
                out.append(tok)
        while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
            out = out[1:-1]
            changed = True
        w = out
    return w


def _line_reduce(word: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for tok in word:
        if out and out[-1][0] == tok[0] and out[-1][1] == -tok[1]:
            out.pop()
        else:
            out.append(tok)
    return out


def _flip(word: list[tuple[int, int]]) -> list[tuple[int, int]]:
    return [(p, -s) for p, s in reversed(word)]


def _canonical_cyclic(word: list[tuple[int, int]]) -> tuple:
    w = _cyclic_reduce(word)
    if not w:
        return ()
    best = None
    for cand in (w, _cyclic_reduce(_flip(w))):
        for r in range(len(cand)):
            rot = tuple(cand[r:] + cand[:r])
            if best is None or rot < best:
                best = rot
    return best


def _canonical_linear(word: list[tuple[int, int]]) -> tuple:
    w = _line_reduce(word)
    return min(tuple(w), tuple(_flip(w)))


def _region_profile(arr: Arrangement) -> tuple:
    prof = []
    for r in arr.regions:
        labels = tuple(tuple(sorted(ls)) for ls in r.circle_labels)
        prof.append((r.euler, labels))
    return tuple(sorted(prof))


def _torus_key(s: Surface, c: PolyCurve) -> IsotopyClassKey:
    counts = [0, 0]
    for pair, sign in _transits(s, c):
        counts[pair] += sign
    # Components ordered (second pair, first pair) with the second pair
    # counted low-to-high and the first high-to-low: on the unit square
    # this reads as (horizontal winding, vertical winding).
    a, b = counts[1], -counts[0]
    if a == 0 and b == 0:
        if not _is_rejected(s, c):
            raise GeometryError(
                "curve has zero winding but is not null-homotopic")
        return REJECTED
    if gcd(abs(a), abs(b)) != 1:
        raise GeometryError(
            f"simple closed curve with imprimitive class ({a}, {b})")
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return IsotopyClassKey("torus", (a, b))


def _planar_key(s: Surface, c: PolyCurve) -> IsotopyClassKey:
    inside = []
    for h, hole in enumerate(s.holes):
        if winding_number(list(c.waypoints), hole[0]) != 0:
            inside.append(("hole", h))
    total = len(s.holes) + len(s.polygon_boundary_circles)
    if len(inside) <= 1 or len(inside) >= total - 1:
        return REJECTED
    outside = [("hole", h) for h in range(len(s.holes))
               if ("hole", h) not in inside]
    outside += [("poly", i) for i in range(len(s.polygon_boundary_circles))]
    side = sorted(inside)
    other = sorted(outside)
    if (len(other), other) < (len(side), side):
        side = other
    return IsotopyClassKey("planar", tuple(side))


def _is_rejected(s: Surface, c: PolyCurve) -> bool:
    from .arrangement import is_essential
    return not is_essential(s, c)


def collapse_map_f(s: Surface, c: PolyCurve) -> IsotopyClassKey:
    """Canonical isotopy-class key of a curve or arc; REJECTED for curves
    that bound disks or are parallel to a boundary component."""
    if c.surface is not s:
        raise GeometryError("curve drawn on a different surface")
    if c.kind == "arc":
        if arc_is_trivial(s, c):
            return REJECTED
        ends = tuple(sorted(
            s.boundary_circle_of(locus)
            for locus in (c.loci[0], c.loci[-1])))
        word = _canonical_linear(_transits(s, c))
        arr = Arrangement(s, [c])
        return IsotopyClassKey("arc", (ends, word, _region_profile(arr)))
    if s.genus == 1 and s.boundary_count == 0 and len(_gluing_pairs(s)) == 2:
        return _torus_key(s, c)
    if s.genus == 0 and not s.gluings:
        return _planar_key(s, c)
    if _is_rejected(s, c):
        return REJECTED
    word = _canonical_cyclic(_transits(s, c))
    arr = Arrangement(s, [c])
    return IsotopyClassKey("word", (word, _region_profile(arr)))


def key_to_json(key: IsotopyClassKey):
    def enc(x):
        if isinstance(x, tuple):
            return [enc(v) for v in x]
        return x
    return {"form": key.form, "data": enc(key.data)}


def key_from_json(obj) -> IsotopyClassKey:
    def dec(x):
        if isinstance(x, list):
            return tuple(dec(v) for v in x)
        return x
    return IsotopyClassKey(obj["form"], dec(obj["data"]))
