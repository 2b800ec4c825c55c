"""Exact 2D geometry kernel over the rationals.

Points are plain ``(Fraction, Fraction)`` tuples -- hashable, comparable,
and cheap.  Every predicate in this module is exact: no floats, no
epsilons.  The only deliberately inexact values are the rational square
root *bounds* (`sqrt_lower`, `sqrt_upper`), which are still exact
one-sided bounds.

Conventions
-----------
* ``cross(u, v) > 0``  means v lies counterclockwise of u.
* Segments are closed and assumed nondegenerate unless noted.
* A "direction" is any nonzero vector; only its ray matters.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Frac = Fraction
Pt = tuple[Fraction, Fraction]
Vec = tuple[Fraction, Fraction]
Seg = tuple[Pt, Pt]
BBox = tuple[Fraction, Fraction, Fraction, Fraction]  # xmin, ymin, xmax, ymax

Rational = Union[int, str, Fraction]

F0 = Fraction(0)
F1 = Fraction(1)


def fr(value: Rational) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_frac(value)
    raise TypeError(f"not a rational: {value!r}")


def pt(x: Rational, y: Rational) -> Pt:
    return (fr(x), fr(y))


def parse_frac(text: str) -> Fraction:
    """Parse "p/q" or "p" (optionally signed) into a Fraction.

    Floats are rejected on purpose: every quantity in the file formats is
    an exact rational and silently accepting "0.1" would smuggle binary
    rounding into the kernel.
    """
    s = text.strip()
    if "." in s or "e" in s or "E" in s:
        raise ValueError(f"expected exact rational 'p/q', got {text!r}")
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc


def format_frac(value: Fraction) -> str:
    """Render a Fraction as "p/q", always including the denominator."""
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# vector algebra
# ---------------------------------------------------------------------------

def add(a: Pt, b: Vec) -> Pt:
    return (a[0] + b[0], a[1] + b[1])


def sub(a: Pt, b: Pt) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def smul(s: Fraction, v: Vec) -> Vec:
    return (s * v[0], s * v[1])


def neg(v: Vec) -> Vec:
    return (-v[0], -v[1])


def dot(u: Vec, v: Vec) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def cross(u: Vec, v: Vec) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def norm2(v: Vec) -> Fraction:
    return v[0] * v[0] + v[1] * v[1]


def dist2(a: Pt, b: Pt) -> Fraction:
    return norm2(sub(a, b))


def perp(v: Vec) -> Vec:
    """Rotate v by +90 degrees (counterclockwise)."""
    return (-v[1], v[0])


def orient(a: Pt, b: Pt, c: Pt) -> int:
    """Sign of the signed area of triangle abc: +1 ccw, -1 cw, 0 collinear."""
    s = cross(sub(b, a), sub(c, a))
    return (s > 0) - (s < 0)


def lerp(a: Pt, b: Pt, t: Fraction) -> Pt:
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def midpoint(a: Pt, b: Pt) -> Pt:
    half = Fraction(1, 2)
    return ((a[0] + b[0]) * half, (a[1] + b[1]) * half)


# ---------------------------------------------------------------------------
# bounding boxes (cheap conservative prefilter for exact tests)
# ---------------------------------------------------------------------------

def bbox_of(points: Iterable[Pt]) -> BBox:
    it = iter(points)
    first = next(it)
    xmin = xmax = first[0]
    ymin = ymax = first[1]
    for x, y in it:
        if x < xmin:
            xmin = x
        elif x > xmax:
            xmax = x
        if y < ymin:
            ymin = y
        elif y > ymax:
            ymax = y
    return (xmin, ymin, xmax, ymax)


def bbox_overlap(a: BBox, b: BBox) -> bool:
    return not (a[2] < b[0] or b[2] < a[0] or a[3] < b[1] or b[3] < a[1])


# ---------------------------------------------------------------------------
# segments
# ---------------------------------------------------------------------------

def point_on_segment(p: Pt, a: Pt, b: Pt) -> Optional[Fraction]:
    """Parameter t with p == a + t*(b-a), t in [0,1], or None if p is off
    the closed segment.  The segment must be nondegenerate."""
    d = sub(b, a)
    w = sub(p, a)
    if cross(d, w) != 0:
        return None
    den = norm2(d)
    if den == 0:
        raise ValueError("degenerate segment")
    t = dot(w, d) / den
    if t < 0 or t > 1:
        return None
    return t


def segment_point(a: Pt, b: Pt, t: Fraction) -> Pt:
    return lerp(a, b, t)


def segment_intersection(a0: Pt, a1: Pt, b0: Pt, b1: Pt):
    """Exact intersection of two closed nondegenerate segments.

    Returns one of::

        None                                   disjoint
        ("point", p, t, u)                     single point, p = a0+t*(a1-a0)
                                               = b0+u*(b1-b0), t,u in [0,1]
        ("overlap", p, q, (t0, t1), (u0, u1))  collinear overlap of positive
                                               length from p to q; t0<t1 are
                                               the parameters of p,q on A and
                                               u0,u1 (any order) those on B

    A zero-length collinear overlap is reported as a "point".
    """
    da = sub(a1, a0)
    db = sub(b1, b0)
    denom = cross(da, db)
    w = sub(b0, a0)
    if denom != 0:
        t = cross(w, db) / denom
        u = cross(w, da) / denom
        if t < 0 or t > 1 or u < 0 or u > 1:
            return None
        return ("point", lerp(a0, a1, t), t, u)

    # Parallel.  Distinct lines never meet.
    if cross(da, w) != 0:
        return None

    # Collinear: compare parameters of B's endpoints along A.
    den = norm2(da)
    ub0 = dot(sub(b0, a0), da) / den
    ub1 = dot(sub(b1, a0), da) / den
    lo_b, hi_b = (ub0, ub1) if ub0 <= ub1 else (ub1, ub0)
    lo = max(F0, lo_b)
    hi = min(F1, hi_b)
    if lo > hi:
        return None
    if lo == hi:
        p = lerp(a0, a1, lo)
        u = point_on_segment(p, b0, b1)
        assert u is not None
        return ("point", p, lo, u)
    p = lerp(a0, a1, lo)
    q = lerp(a0, a1, hi)
    up = point_on_segment(p, b0, b1)
    uq = point_on_segment(q, b0, b1)
    assert up is not None and uq is not None
    return ("overlap", p, q, (lo, hi), (up, uq))


def segment_dist2(a0: Pt, a1: Pt, b0: Pt, b1: Pt) -> Fraction:
    """Exact squared distance between two closed segments (0 if they meet)."""
    if segment_intersection(a0, a1, b0, b1) is not None:
        return F0
    return min(
        point_segment_dist2(a0, b0, b1),
        point_segment_dist2(a1, b0, b1),
        point_segment_dist2(b0, a0, a1),
        point_segment_dist2(b1, a0, a1),
    )


def point_segment_dist2(p: Pt, a: Pt, b: Pt) -> Fraction:
    d = sub(b, a)
    den = norm2(d)
    if den == 0:
        return dist2(p, a)
    t = dot(sub(p, a), d) / den
    if t <= 0:
        return dist2(p, a)
    if t >= 1:
        return dist2(p, b)
    return dist2(p, lerp(a, b, t))


# ---------------------------------------------------------------------------
# directions and angular order
# ---------------------------------------------------------------------------

def quadrant(d: Vec) -> int:
    """Index of the quarter-turn containing direction d, counting ccw from
    the positive x-axis.  d must be nonzero."""
    x, y = d
    if x > 0 and y >= 0:
        return 0
    if x <= 0 and y > 0:
        return 1
    if x < 0 and y <= 0:
        return 2
    if x >= 0 and y < 0:
        return 3
    raise ValueError("zero direction")


def dir_cmp(u: Vec, v: Vec) -> int:
    """Compare directions by angle in [0, 2*pi), counterclockwise.

    Returns -1, 0, +1.  Equal means the same ray (magnitudes ignored)."""
    qu, qv = quadrant(u), quadrant(v)
    if qu != qv:
        return -1 if qu < qv else 1
    c = cross(u, v)
    return (c < 0) - (c > 0)


def same_ray(u: Vec, v: Vec) -> bool:
    return cross(u, v) == 0 and dot(u, v) > 0


def strictly_between_ccw(a: Vec, b: Vec, d: Vec) -> bool:
    """Is direction d strictly inside the sector swept counterclockwise
    from a to b?  If a and b span the same ray the sector is empty; if
    they are opposite rays the sector is the open half-plane to the left
    of a."""
    ca_b = cross(a, b)
    if ca_b > 0:
        return cross(a, d) > 0 and cross(d, b) > 0
    if ca_b < 0:
        return cross(a, d) > 0 or cross(d, b) > 0
    if dot(a, b) > 0:
        return False
    return cross(a, d) > 0


# ---------------------------------------------------------------------------
# polygons and polylines
# ---------------------------------------------------------------------------

def twice_signed_area(poly: Sequence[Pt]) -> Fraction:
    """Twice the shoelace area of a closed polygon (ccw positive).  The
    factor of two keeps torsion-free rationals out of hot loops."""
    total = F0
    n = len(poly)
    for i in range(n):
        total += cross(poly[i], poly[(i + 1) % n])
    return total


def is_strictly_convex_ccw(poly: Sequence[Pt]) -> bool:
    """True iff the polygon is counterclockwise and strictly convex (no
    three consecutive vertices collinear, no repeats)."""
    n = len(poly)
    if n < 3 or len(set(poly)) != n:
        return False
    for i in range(n):
        if orient(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) <= 0:
            return False
    return True


def winding_number(loop: Sequence[Pt], p: Pt) -> int:
    """Winding number of a closed polyline around p.  The loop is the
    cycle loop[0] -> loop[1] -> ... -> loop[0]; p must not lie on it."""
    w = 0
    n = len(loop)
    for i in range(n):
        a = loop[i]
        b = loop[(i + 1) % n]
        if a[1] <= p[1]:
            if b[1] > p[1] and orient(a, b, p) > 0:
                w += 1
        else:
            if b[1] <= p[1] and orient(a, b, p) < 0:
                w -= 1
    return w


def point_in_polygon(poly: Sequence[Pt], p: Pt) -> bool:
    """Strict interior test for a simple polygon (either orientation)."""
    for i in range(len(poly)):
        if point_on_segment(p, poly[i], poly[(i + 1) % len(poly)]) is not None:
            return False
    return winding_number(poly, p) != 0


# ---------------------------------------------------------------------------
# rational square-root bounds
# ---------------------------------------------------------------------------

def sqrt_lower(q: Fraction) -> Fraction:
    """A rational lower bound for sqrt(q), exact when q is a perfect
    square of a rational with the same denominator.  q must be >= 0."""
    if q < 0:
        raise ValueError("sqrt of negative rational")
    n, d = q.numerator, q.denominator
    return Fraction(math.isqrt(n * d), d)


def sqrt_upper(q: Fraction) -> Fraction:
    """A rational upper bound for sqrt(q).  q must be >= 0."""
    if q < 0:
        raise ValueError("sqrt of negative rational")
    n, d = q.numerator, q.denominator
    r = math.isqrt(n * d)
    if r * r == n * d:
        return Fraction(r, d)
    return Fraction(r + 1, d)
