"""Simplicial complexes, sphere validation, fine subcomplexes, homology."""

from fractions import Fraction
from itertools import combinations

import pytest

from curveflow.complexes import (BarycentricPoint, CombinatorialSphere,
                                 HomologyReport, SimplicialComplex,
                                 SimplicialMap, check_simplicial,
                                 complex_from_json, complex_to_json,
                                 fine_subcomplex, homology, link, star,
                                 straight_line_homotopy_valid)
from curveflow.curves import closed_curve
from curveflow.errors import ContractError
from curveflow.surface import build_surface


def P(x, y):
    return (Fraction(x), Fraction(y))


F = Fraction

UNIT_SQUARE = [P(0, 0), P(1, 0), P(1, 1), P(0, 1)]


def torus():
    return build_surface(genus=1, boundary=0, polygon=UNIT_SQUARE,
                         identifications=[[0, 2, -1], [1, 3, -1]])


T = torus()


def square_loop(cx, cy, r):
    cx, cy, r = F(cx), F(cy), F(r)
    return closed_curve(T, [P(cx - r, cy - r), P(cx + r, cy - r),
                            P(cx + r, cy + r), P(cx - r, cy + r)])


def vertical(x):
    return closed_curve(T, [P(F(x), 0), P(F(x), 1)])


# --- reusable complexes ------------------------------------------------------

def s0():
    return SimplicialComplex.from_maximal(["n", "s"], [])


def cycle(n):
    vs = [f"v{i}" for i in range(n)]
    return SimplicialComplex.from_maximal(
        vs, [[vs[i], vs[(i + 1) % n]] for i in range(n)])


def octahedron():
    # Antipodal pairs a/A, b/B, c/C; faces avoid the pairs.
    faces = [[x, y, z] for x in "aA" for y in "bB" for z in "cC"]
    return SimplicialComplex.from_maximal(list("aAbBcC"), faces)


def boundary_simplex(n):
    vs = [f"p{i}" for i in range(n + 2)]
    return SimplicialComplex.from_maximal(
        vs, list(combinations(vs, n + 1)))


def projective_plane():
    # Six vertices, every pair an edge, ten triangles; every edge lies in
    # exactly two of them and chi = 1.
    faces = ["125", "126", "134", "136", "145",
             "234", "235", "246", "356", "456"]
    return SimplicialComplex.from_maximal(
        list("123456"), [list(f) for f in faces])


# --- construction and validation --------------------------------------------

def test_from_maximal_generates_all_faces():
    x = SimplicialComplex.from_maximal(["a", "b", "c"], [["a", "b", "c"]])
    assert len(x.simplices) == 7
    assert x.dim == 2
    assert x.euler_characteristic() == 1
    assert x.maximal_simplices() == [("a", "b", "c")]


def test_isolated_vertices_survive():
    x = SimplicialComplex.from_maximal(["a", "b", "c"], [["a", "b"]])
    assert x.has_simplex(["c"])
    assert x.dim == 1
    assert x.simplices_of_dim(1) == [("a", "b")]


def test_downward_closure_enforced():
    with pytest.raises(ContractError):
        SimplicialComplex(["a", "b", "c"],
                          [{"a"}, {"b"}, {"c"}, {"a", "b", "c"}])


def test_unknown_vertex_rejected():
    with pytest.raises(ContractError):
        SimplicialComplex(["a"], [{"a"}, {"b"}])


def test_duplicate_handles_rejected():
    with pytest.raises(ContractError):
        SimplicialComplex.from_maximal(["a", "a"], [])


def test_vertex_repeated_inside_simplex_rejected():
    with pytest.raises(ContractError):
        SimplicialComplex.from_maximal(["a", "b"], [["a", "a"]])


def test_empty_complex():
    x = SimplicialComplex.from_maximal([], [])
    assert x.dim == -1
    assert x.euler_characteristic() == 0
    assert x.is_connected()


# --- spheres -----------------------------------------------------------------

def test_sphere_k0():
    sph = CombinatorialSphere(s0(), 0)
    assert sph.validated


def test_sphere_k0_wrong_vertex_count():
    with pytest.raises(ContractError):
        CombinatorialSphere(
            SimplicialComplex.from_maximal(["a", "b", "c"], []), 0)


def test_sphere_k0_with_an_edge():
    with pytest.raises(ContractError):
        CombinatorialSphere(
            SimplicialComplex.from_maximal(["a", "b"], [["a", "b"]]), 0)


@pytest.mark.parametrize("n", [3, 4, 5, 8])
def test_sphere_k1_cycles(n):
    assert CombinatorialSphere(cycle(n), 1).validated


def test_sphere_k1_path_rejected():
    path = SimplicialComplex.from_maximal(
        ["a", "b", "c"], [["a", "b"], ["b", "c"]])
    with pytest.raises(ContractError):
        CombinatorialSphere(path, 1)


def test_sphere_k1_two_cycles_rejected():
    vs = [f"v{i}" for i in range(6)]
    edges = [[vs[i], vs[(i + 1) % 3]] for i in range(3)]
    edges += [[vs[3 + i], vs[3 + (i + 1) % 3]] for i in range(3)]
    two = SimplicialComplex.from_maximal(vs, edges)
    with pytest.raises(ContractError):
        CombinatorialSphere(two, 1)


def test_sphere_k2_octahedron():
    assert CombinatorialSphere(octahedron(), 2).validated


def test_sphere_k2_tetrahedron():
    assert CombinatorialSphere(boundary_simplex(2), 2).validated


def test_sphere_k2_missing_face_rejected():
    faces = [f for f in octahedron().simplices_of_dim(2)][:-1]
    broken = SimplicialComplex.from_maximal(list("aAbBcC"), faces)
    with pytest.raises(ContractError):
        CombinatorialSphere(broken, 2)


def test_sphere_k2_projective_plane_rejected():
    # Edge-triangle incidence is fine; Euler characteristic gives it away.
    with pytest.raises(ContractError):
        CombinatorialSphere(projective_plane(), 2)


def test_sphere_k3_accepted_unvalidated():
    sph = CombinatorialSphere(boundary_simplex(3), 3)
    assert not sph.validated


def test_sphere_negative_dimension():
    with pytest.raises(ContractError):
        CombinatorialSphere(s0(), -1)


# --- maps --------------------------------------------------------------------

def test_identity_map_is_simplicial():
    x = octahedron()
    f = SimplicialMap(x, x, {v: v for v in x.vertices})
    assert check_simplicial(f)


def test_constant_map_is_simplicial():
    x = cycle(4)
    y = SimplicialComplex.from_maximal(["z"], [])
    f = SimplicialMap(x, y, {v: "z" for v in x.vertices})
    assert check_simplicial(f)


def test_edge_to_non_edge_fails():
    x = cycle(3)
    y = SimplicialComplex.from_maximal(["p", "q"], [])
    f = SimplicialMap(x, y, {"v0": "p", "v1": "q", "v2": "p"})
    assert not check_simplicial(f)


def test_assignment_must_cover_source():
    x = cycle(3)
    with pytest.raises(ContractError):
        SimplicialMap(x, x, {"v0": "v0"})


def test_assignment_must_land_in_target():
    x = cycle(3)
    with pytest.raises(ContractError):
        SimplicialMap(x, x, {"v0": "v0", "v1": "v1", "v2": "nope"})


# --- barycentric points ------------------------------------------------------

def test_barycentric_point_ok():
    x = SimplicialComplex.from_maximal(["a", "b", "c"], [["a", "b", "c"]])
    p = BarycentricPoint(x, {"a": F(1, 2), "b": F(1, 3), "c": F(1, 6)})
    assert p.support() == frozenset({"a", "b", "c"})


def test_barycentric_zero_weights_dropped():
    x = SimplicialComplex.from_maximal(["a", "b"], [["a", "b"]])
    p = BarycentricPoint(x, {"a": F(1), "b": F(0)})
    assert p.support() == frozenset({"a"})


def test_barycentric_negative_weight():
    x = SimplicialComplex.from_maximal(["a", "b"], [["a", "b"]])
    with pytest.raises(ContractError):
        BarycentricPoint(x, {"a": F(3, 2), "b": F(-1, 2)})


def test_barycentric_sum_must_be_one():
    x = SimplicialComplex.from_maximal(["a", "b"], [["a", "b"]])
    with pytest.raises(ContractError):
        BarycentricPoint(x, {"a": F(1, 2), "b": F(1, 3)})


def test_barycentric_support_must_span_simplex():
    x = SimplicialComplex.from_maximal(["a", "b", "c"],
                                       [["a", "b"], ["b", "c"]])
    with pytest.raises(ContractError):
        BarycentricPoint(x, {"a": F(1, 2), "c": F(1, 2)})


# --- star and link -----------------------------------------------------------

def test_star_in_full_simplex_is_everything():
    x = SimplicialComplex.from_maximal(["a", "b", "c"], [["a", "b", "c"]])
    assert star(x, "a") == x


def test_star_of_isolated_vertex():
    x = SimplicialComplex.from_maximal(["a", "b"], [])
    st = star(x, "a")
    assert st.vertices == ("a",)
    assert st.simplices == frozenset({frozenset({"a"})})


def test_link_of_octahedron_vertex_is_4_cycle():
    lk = link(octahedron(), "a")
    assert len(lk.vertices) == 4
    assert len(lk.simplices_of_dim(1)) == 4
    assert CombinatorialSphere(lk, 1).validated


def test_star_unknown_handle():
    with pytest.raises(ContractError):
        star(cycle(3), "w")
    with pytest.raises(ContractError):
        link(cycle(3), "w")


def test_link_of_cycle_vertex_is_s0():
    lk = link(cycle(5), "v0")
    assert CombinatorialSphere(lk, 0).validated


# --- fine subcomplexes of concrete curves ------------------------------------

def test_three_disjoint_verticals_span_triangle():
    x = fine_subcomplex(T, [vertical("1/8"), vertical("3/8"),
                            vertical("5/8")])
    assert x.maximal_simplices() == [("c0", "c1", "c2")]
    assert len(x.simplices) == 7


def test_crossing_pair_gives_isolated_vertices():
    vert = vertical("1/4")
    horiz = closed_curve(T, [P(0, F(1, 2)), P(1, F(1, 2))])
    x = fine_subcomplex(T, [vert, horiz])
    assert x.simplices == frozenset({frozenset({"c0"}), frozenset({"c1"})})


def test_four_cycle_disjointness_graph():
    a = square_loop("1/4", "1/4", "1/8")
    c = square_loop("5/16", "1/4", "1/8")     # crosses a, clears b and d
    b = square_loop("3/4", "3/4", "1/8")
    d = square_loop("13/16", "3/4", "1/8")    # crosses b, clears a and c
    x = fine_subcomplex(T, [a, b, c, d])
    edges = x.simplices_of_dim(1)
    assert edges == [("c0", "c1"), ("c0", "c3"), ("c1", "c2"), ("c2", "c3")]
    assert x.simplices_of_dim(2) == []
    assert len(x.simplices) == 8


def test_fine_subcomplex_monotone():
    a = square_loop("1/4", "1/4", "1/8")
    b = square_loop("3/4", "3/4", "1/8")
    c = square_loop("5/16", "1/4", "1/8")
    small = fine_subcomplex(T, [a, b, c])
    big = fine_subcomplex(T, [a, b, c, square_loop("13/16", "3/4", "1/8")])
    assert small.simplices <= big.simplices


def test_fine_subcomplex_rejects_identical_pair():
    v = vertical("1/4")
    w = closed_curve(T, [P(F(1, 4), 0), P(F(1, 4), 1)])
    with pytest.raises(ContractError):
        fine_subcomplex(T, [v, w])


def test_fine_subcomplex_rejects_mixed_kinds():
    from curveflow.curves import arc_curve
    holes = [[P(F(7, 16), F(7, 16)), P(F(9, 16), F(7, 16)),
              P(F(9, 16), F(9, 16)), P(F(7, 16), F(9, 16))]]
    s = build_surface(genus=0, boundary=2, polygon=UNIT_SQUARE,
                      identifications=[], holes=holes)
    loop = closed_curve(s, [P(F(1, 8), F(1, 8)), P(F(1, 4), F(1, 8)),
                            P(F(1, 4), F(1, 4)), P(F(1, 8), F(1, 4))])
    chord = arc_curve(s, [P(F(3, 4), 0), P(F(3, 4), 1)])
    with pytest.raises(ContractError):
        fine_subcomplex(s, [loop, chord])


def test_fine_subcomplex_custom_handles():
    x = fine_subcomplex(T, [vertical("1/8"), vertical("3/8")],
                        handles=["u", "v"])
    assert x.has_simplex(["u", "v"])


# --- homology ----------------------------------------------------------------

def test_tetrahedron_boundary_is_a_2_sphere():
    rep = homology(boundary_simplex(2))
    assert rep.betti == (0, 0, 1)
    assert all(t == () for t in rep.torsion)


def test_octahedron_homology():
    rep = homology(octahedron())
    assert rep.betti == (0, 0, 1)
    assert all(t == () for t in rep.torsion)


def test_boundary_simplex_n4():
    rep = homology(boundary_simplex(4))
    assert rep.betti == (0, 0, 0, 0, 1)


def test_closed_star_is_acyclic():
    st = star(octahedron(), "a")
    rep = homology(st)
    assert rep.betti == (0, 0, 0)
    assert all(t == () for t in rep.torsion)


def test_circle_homology():
    rep = homology(cycle(6))
    assert rep.betti == (0, 1)


def test_s0_homology():
    rep = homology(s0())
    assert rep.betti == (1,)


def test_projective_plane_torsion():
    rep = homology(projective_plane())
    assert rep.betti == (0, 0, 0)
    assert rep.torsion == ((), (2,), ())
    mod2 = homology(projective_plane(), "Z2")
    assert mod2.betti == (0, 1, 1)


def test_empty_complex_homology():
    rep = homology(SimplicialComplex.from_maximal([], []))
    assert rep.betti == ()


def test_bad_coefficients():
    with pytest.raises(ContractError):
        homology(s0(), "Q")


@pytest.mark.parametrize("make", [s0, lambda: cycle(5), octahedron,
                                  projective_plane,
                                  lambda: boundary_simplex(3),
                                  lambda: star(octahedron(), "b")])
def test_euler_characteristic_matches_mod2_betti(make):
    x = make()
    rep = homology(x, "Z2")
    alternating = sum((-1) ** p * b for p, b in enumerate(rep.betti))
    assert x.euler_characteristic() == 1 + alternating


# --- straight-line homotopies ------------------------------------------------

def test_homotopy_to_itself_valid():
    x = cycle(4)
    f = SimplicialMap(x, x, {v: v for v in x.vertices})
    assert straight_line_homotopy_valid(f, f)


def test_homotopy_within_one_simplex_valid():
    edge = SimplicialComplex.from_maximal(["u", "v"], [["u", "v"]])
    tri = SimplicialComplex.from_maximal(["a", "b", "c"], [["a", "b", "c"]])
    f = SimplicialMap(edge, tri, {"u": "a", "v": "b"})
    g = SimplicialMap(edge, tri, {"u": "b", "v": "c"})
    assert straight_line_homotopy_valid(f, g)


def test_homotopy_through_crossing_curves_invalid():
    a = vertical("1/8")
    b = vertical("3/8")
    x = square_loop("13/32", "1/2", "1/16")  # crosses b, clears a
    target = fine_subcomplex(T, [a, b, x])
    edge = SimplicialComplex.from_maximal(["u", "v"], [["u", "v"]])
    f = SimplicialMap(edge, target, {"u": "c0", "v": "c1"})
    g = SimplicialMap(edge, target, {"u": "c0", "v": "c2"})
    # Swapping one endpoint to the crossing curve breaks the joint simplex.
    assert check_simplicial(f) and check_simplicial(g)
    assert not straight_line_homotopy_valid(f, g)


def test_homotopy_requires_shared_source():
    f = SimplicialMap(cycle(3), cycle(3),
                      {f"v{i}": f"v{i}" for i in range(3)})
    g = SimplicialMap(cycle(4), cycle(4),
                      {f"v{i}": f"v{i}" for i in range(4)})
    with pytest.raises(ContractError):
        straight_line_homotopy_valid(f, g)


# --- JSON shape ----------------------------------------------------------------

def test_complex_json_round_trip():
    x = octahedron()
    data = complex_to_json(x)
    assert set(data) == {"vertices", "maximal_simplices"}
    y = complex_from_json(data)
    assert y == x
    assert complex_to_json(y) == data


def test_complex_json_requires_fields():
    with pytest.raises(ContractError):
        complex_from_json({"vertices": ["a"]})
