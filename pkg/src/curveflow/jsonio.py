"""JSON shapes for surfaces, curves, families, and kernel reports.

Every rational number travels as a ``"p/q"`` string (plain integers are
accepted on input and emitted without the ``/q`` part, matching
``Fraction``'s own canonical form).  Floats are banned outright — a float
literal anywhere in an input file raises :class:`InputError`, and nothing
in this module ever emits one.  Malformed data raises
:class:`InputError`; data that parses but breaks a library precondition
surfaces the underlying contract error unchanged.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

from .curves import PolyCurve, arc_curve, closed_curve
from .errors import InputError
from .intersect import Intersections
from .surface import Surface, build_surface

_RATIONAL = re.compile(r"-?\d+(/[1-9]\d*)?\Z")


def fraction_to_str(q: Fraction) -> str:
    return str(Fraction(q))


def fraction_from_json(value, what: str = "rational") -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{what}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InputError(
            f'{what}: floats are not allowed; write the rational as "p/q"')
    if isinstance(value, str):
        if not _RATIONAL.match(value):
            raise InputError(f'{what}: {value!r} is not of the form "p/q"')
        return Fraction(value)
    raise InputError(f"{what}: expected a rational, got {type(value).__name__}")


def _reject_float(text: str):
    raise InputError(
        f'float literal {text!r} in input; rationals must be "p/q" strings')


def loads(text: str) -> object:
    try:
        return json.loads(text, parse_float=_reject_float,
                          parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def load_path(path) -> object:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def dumps(data) -> str:
    """Canonical text form: two-space indent, keys in insertion order, one
    trailing newline.  Identical data gives identical bytes."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def dump_path(data, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(data))


def _point_from_json(value, what: str):
    if (not isinstance(value, Sequence) or isinstance(value, str)
            or len(value) != 2):
        raise InputError(f"{what}: expected an [x, y] pair")
    return (fraction_from_json(value[0], f"{what}.x"),
            fraction_from_json(value[1], f"{what}.y"))


# --- surfaces ----------------------------------------------------------------

def surface_to_json(s: Surface) -> dict:
    return {
        "genus": s.genus,
        "boundary": s.boundary_count,
        "polygon": [[fraction_to_str(x), fraction_to_str(y)]
                    for x, y in s.polygon],
        "identifications": [[i, j, flag] for i, j, flag in s.identifications],
        "holes": [[[fraction_to_str(x), fraction_to_str(y)] for x, y in hole]
                  for hole in s.holes],
    }


def surface_from_json(data) -> Surface:
    if not isinstance(data, dict):
        raise InputError("surface: expected a JSON object")
    for key in ("genus", "boundary", "polygon", "identifications"):
        if key not in data:
            raise InputError(f'surface: missing "{key}"')
    genus, boundary = data["genus"], data["boundary"]
    if not isinstance(genus, int) or isinstance(genus, bool):
        raise InputError("surface: genus must be an integer")
    if not isinstance(boundary, int) or isinstance(boundary, bool):
        raise InputError("surface: boundary must be an integer")
    polygon = [_point_from_json(p, f"surface.polygon[{k}]")
               for k, p in enumerate(_as_list(data["polygon"], "polygon"))]
    idents = []
    for k, row in enumerate(_as_list(data["identifications"],
                                     "identifications")):
        if (not isinstance(row, Sequence) or isinstance(row, str)
                or len(row) != 3):
            raise InputError(
                f"surface.identifications[{k}]: expected [i, j, flag]")
        i, j, flag = row
        for v in (i, j, flag):
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError(
                    f"surface.identifications[{k}]: entries must be integers")
        idents.append((i, j, flag))
    holes = []
    for k, hole in enumerate(_as_list(data.get("holes", []), "holes")):
        holes.append([_point_from_json(p, f"surface.holes[{k}][{m}]")
                      for m, p in enumerate(_as_list(hole, f"holes[{k}]"))])
    return build_surface(genus=genus, boundary=boundary, polygon=polygon,
                         identifications=idents, holes=holes)


def _as_list(value, what: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"surface.{what}: expected a list")
    return value


# --- curves ------------------------------------------------------------------

def curve_to_json(c: PolyCurve) -> dict:
    return {
        "kind": c.kind,
        "waypoints": [{"x": fraction_to_str(x), "y": fraction_to_str(y)}
                      for x, y in c.waypoints],
    }


def curve_from_json(s: Surface, data) -> PolyCurve:
    if not isinstance(data, dict):
        raise InputError("curve: expected a JSON object")
    kind = data.get("kind")
    if kind not in ("closed", "arc"):
        raise InputError('curve: "kind" must be "closed" or "arc"')
    raw = data.get("waypoints")
    if not isinstance(raw, list):
        raise InputError('curve: "waypoints" must be a list')
    pts = []
    for k, wp in enumerate(raw):
        if not isinstance(wp, dict) or set(wp) != {"x", "y"}:
            raise InputError(
                f'curve.waypoints[{k}]: expected {{"x": .., "y": ..}}')
        pts.append((fraction_from_json(wp["x"], f"waypoints[{k}].x"),
                    fraction_from_json(wp["y"], f"waypoints[{k}].y")))
    make = closed_curve if kind == "closed" else arc_curve
    return make(s, pts)


def family_to_json(curves: Sequence[PolyCurve]) -> dict:
    return {"curves": [curve_to_json(c) for c in curves]}


def family_from_json(s: Surface, data) -> list[PolyCurve]:
    if not isinstance(data, dict) or "curves" not in data:
        raise InputError('family: expected {"curves": [...]}')
    if not isinstance(data["curves"], list):
        raise InputError('family: "curves" must be a list')
    return [curve_from_json(s, c) for c in data["curves"]]


# --- kernel reports ----------------------------------------------------------

def intersections_to_json(r: Intersections) -> dict:
    components = []
    for p in r.points:
        components.append({
            "class": "crossing" if p.crossing else "touching",
            "type": "point",
            "point": {"x": fraction_to_str(p.point[0]),
                      "y": fraction_to_str(p.point[1])},
            "station_a": fraction_to_str(p.station_a),
            "station_b": fraction_to_str(p.station_b),
            "boundary": p.boundary,
        })
    for iv in r.intervals:
        components.append({
            "class": "crossing" if iv.crossing else "touching",
            "type": "interval",
            "endpoints": [{"x": fraction_to_str(x), "y": fraction_to_str(y)}
                          for x, y in iv.endpoints],
        })
    problem = [{"x": fraction_to_str(x), "y": fraction_to_str(y)}
               for x, y in r.problem_points()]
    return {
        "identical": r.identical,
        "crossing_count": r.crossing_count(),
        "disjoint": r.is_disjoint(),
        "all_crossing": r.all_crossing(),
        "components": components,
        "problem_set": problem,
    }
