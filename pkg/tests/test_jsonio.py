"""JSON round-trips, strict rational parsing, float rejection."""

from fractions import Fraction

import pytest

from curveflow.curves import arc_curve, closed_curve
from curveflow.errors import ContractError, InputError
from curveflow.intersect import intersect_curves
from curveflow.jsonio import (curve_from_json, curve_to_json, dumps,
                              family_from_json, family_to_json,
                              fraction_from_json, fraction_to_str,
                              intersections_to_json, loads,
                              surface_from_json, surface_to_json)
from curveflow.surface import build_surface


def P(x, y):
    return (Fraction(x), Fraction(y))


F = Fraction

UNIT_SQUARE = [P(0, 0), P(1, 0), P(1, 1), P(0, 1)]


def torus():
    return build_surface(genus=1, boundary=0, polygon=UNIT_SQUARE,
                         identifications=[[0, 2, -1], [1, 3, -1]])


def one_holed_square():
    hole = [P(F(7, 16), F(7, 16)), P(F(9, 16), F(7, 16)),
            P(F(9, 16), F(9, 16)), P(F(7, 16), F(9, 16))]
    return build_surface(genus=0, boundary=2, polygon=UNIT_SQUARE,
                         identifications=[], holes=[hole])


def test_fraction_strings():
    assert fraction_to_str(F(1, 2)) == "1/2"
    assert fraction_to_str(F(-3, 6)) == "-1/2"
    assert fraction_to_str(F(4)) == "4"
    assert fraction_from_json("3/4") == F(3, 4)
    assert fraction_from_json("-7") == F(-7)
    assert fraction_from_json(5) == F(5)


@pytest.mark.parametrize("bad", ["1.5", "1e3", "1/0", "1/-2", "1/02",
                                 " 1/2", "1/2 ", "", "a/b", True, 2.5, None])
def test_fraction_rejects(bad):
    with pytest.raises(InputError):
        fraction_from_json(bad)


def test_loads_rejects_float_literals():
    with pytest.raises(InputError):
        loads('{"x": 0.5}')
    with pytest.raises(InputError):
        loads('{"x": NaN}')
    with pytest.raises(InputError):
        loads("{not json")


def test_surface_round_trip():
    for s in (torus(), one_holed_square()):
        data = surface_to_json(s)
        t = surface_from_json(data)
        assert surface_to_json(t) == data
        assert t.genus == s.genus
        assert t.boundary_count == s.boundary_count
        assert t.polygon == s.polygon
        assert t.holes == s.holes


def test_surface_json_is_float_free():
    text = dumps(surface_to_json(one_holed_square()))
    assert "." not in text.replace('"boundary"', "")
    assert loads(text) == surface_to_json(one_holed_square())


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("genus"),
    lambda d: d.update(genus="one"),
    lambda d: d.update(genus=True),
    lambda d: d.update(polygon="nope"),
    lambda d: d.update(identifications=[[0, 2]]),
    lambda d: d.update(identifications=[[0, 2, "flip"]]),
    lambda d: d.update(polygon=[["0", "0"], ["1", "0"], ["1.0", "1"],
                                ["0", "1"]]),
])
def test_surface_json_malformed(mutate):
    data = surface_to_json(torus())
    mutate(data)
    with pytest.raises(InputError):
        surface_from_json(data)


def test_surface_contract_errors_pass_through():
    data = surface_to_json(torus())
    data["identifications"] = [[0, 2, -1]]  # half-glued square
    with pytest.raises(ContractError):
        surface_from_json(data)


def test_curve_round_trip():
    t = torus()
    closed = closed_curve(t, [P(F(1, 4), 0), P(F(1, 4), 1)])
    data = curve_to_json(closed)
    back = curve_from_json(t, data)
    assert back.waypoints == closed.waypoints
    assert back.kind == "closed"
    assert curve_to_json(back) == data

    s = one_holed_square()
    arc = arc_curve(s, [P(F(1, 8), 0), P(F(1, 8), 1)])
    assert curve_from_json(s, curve_to_json(arc)).waypoints == arc.waypoints


@pytest.mark.parametrize("data", [
    [],
    {"kind": "open", "waypoints": []},
    {"kind": "closed"},
    {"kind": "closed", "waypoints": [{"x": "0"}]},
    {"kind": "closed", "waypoints": [["0", "0"]]},
])
def test_curve_json_malformed(data):
    with pytest.raises(InputError):
        curve_from_json(torus(), data)


def test_family_round_trip():
    t = torus()
    fam = [closed_curve(t, [P(F(1, 4), 0), P(F(1, 4), 1)]),
           closed_curve(t, [P(F(5, 8), 0), P(F(5, 8), 1)])]
    data = family_to_json(fam)
    back = family_from_json(t, data)
    assert [c.waypoints for c in back] == [c.waypoints for c in fam]
    with pytest.raises(InputError):
        family_from_json(t, {"arcs": []})


def test_intersections_report():
    t = torus()
    vert = closed_curve(t, [P(F(1, 4), 0), P(F(1, 4), 1)])
    horiz = closed_curve(t, [P(0, F(1, 2)), P(1, F(1, 2))])
    rep = intersections_to_json(intersect_curves(vert, horiz))
    assert rep["crossing_count"] == 1
    assert not rep["identical"]
    assert rep["all_crossing"]
    assert rep["components"][0]["class"] == "crossing"
    assert rep["components"][0]["point"] == {"x": "1/4", "y": "1/2"}
    assert rep["problem_set"] == []


def test_touching_reported_distinctly():
    t = torus()
    vert = closed_curve(t, [P(F(1, 4), 0), P(F(1, 4), 1)])
    toucher = closed_curve(t, [P(F(1, 8), F(1, 4)), P(F(1, 4), F(1, 2)),
                               P(F(1, 8), F(3, 4))])
    rep = intersections_to_json(intersect_curves(vert, toucher))
    assert rep["crossing_count"] == 0
    classes = {c["class"] for c in rep["components"]}
    assert classes == {"touching"}
    assert rep["problem_set"] != []


def test_dumps_deterministic():
    data = surface_to_json(one_holed_square())
    assert dumps(data) == dumps(surface_to_json(one_holed_square()))
    assert dumps(data).endswith("\n")
