"""The command-line front end: happy paths, exit codes, determinism."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction as F
from random import Random

import pytest

from curveflow.cli import main
from curveflow.complexes import complex_to_json
from curveflow.curves import arc_curve
from curveflow.flows import certificate_to_json, hatcher_flow
from curveflow.jsonio import (curve_to_json, dump_path, family_to_json,
                              surface_to_json)
from curveflow.samples import (arc_family_instance, fiber_instance,
                               five_holed_sphere, four_holed_sphere,
                               one_holed_torus, torus, torus_line,
                               inject_wiggle)

S = torus()
S5 = five_holed_sphere()


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def torus_files(tmp_path):
    u, v = torus_line(S, 1, 0), torus_line(S, 0, 1)
    w = inject_wiggle(S, u, v, Random(1))
    paths = {}
    for name, doc in (("torus", surface_to_json(S)),
                      ("u", curve_to_json(u)), ("v", curve_to_json(v)),
                      ("w", curve_to_json(w)),
                      ("fam", family_to_json([v]))):
        paths[name] = str(tmp_path / f"{name}.json")
        dump_path(doc, paths[name])
    return paths


def test_validate_reports_key(torus_files):
    code, out, _ = run("validate", "--surface", torus_files["torus"],
                       "--a", torus_files["u"])
    assert code == 0
    doc = json.loads(out)
    assert doc["valid"] is True
    assert doc["essential"] is True
    assert doc["key"] == {"form": "torus", "data": [1, 0]}


def test_intersect_counts_the_crossing(torus_files):
    code, out, _ = run("intersect", "--surface", torus_files["torus"],
                       "--a", torus_files["u"], "--b", torus_files["v"])
    assert code == 0
    doc = json.loads(out)
    assert doc["crossing_count"] == 1
    assert doc["disjoint"] is False


def test_tighten_reaches_the_minimum(torus_files):
    code, out, _ = run("tighten", "--surface", torus_files["torus"],
                       "--a", torus_files["w"], "--b", torus_files["v"])
    assert code == 0
    doc = json.loads(out)
    assert doc["crossing_count"] == 1
    assert doc["kind"] == "closed"


def test_perturb_emits_a_loadable_curve(torus_files, tmp_path):
    out_file = str(tmp_path / "moved.json")
    code, out, _ = run("perturb", "--surface", torus_files["torus"],
                       "--a", torus_files["u"], "--arcs", torus_files["fam"],
                       "--eps", "1/64", "--out", out_file)
    assert code == 0
    assert out == ""
    code, out, _ = run("validate", "--surface", torus_files["torus"],
                       "--a", out_file)
    assert code == 0


def test_star_flow_roundtrip(torus_files, tmp_path):
    sphere, assignment, curves = fiber_instance(S, Random(5), k=1)
    inst = {"sphere": {"k": sphere.k, **complex_to_json(sphere.complex)},
            "assignment": assignment,
            "initial": [{"handle": h, "curve": curve_to_json(c)}
                        for h, c in sorted(curves.items())]}
    inst_file = str(tmp_path / "inst.json")
    cert_file = str(tmp_path / "cert.json")
    dump_path(inst, inst_file)
    code, _, _ = run("flow-star", "--surface", torus_files["torus"],
                     "--instance", inst_file, "--out", cert_file)
    assert code == 0
    code, out, _ = run("verify", "--surface", torus_files["torus"],
                       "--cert", cert_file)
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_verify_rejects_with_exit_2(torus_files, tmp_path):
    sphere, assignment, curves = fiber_instance(S, Random(5), k=0)
    inst = {"sphere": {"k": sphere.k, **complex_to_json(sphere.complex)},
            "assignment": assignment,
            "initial": [{"handle": h, "curve": curve_to_json(c)}
                        for h, c in sorted(curves.items())]}
    inst_file = str(tmp_path / "inst.json")
    cert_file = str(tmp_path / "cert.json")
    dump_path(inst, inst_file)
    run("flow-star", "--surface", torus_files["torus"],
        "--instance", inst_file, "--out", cert_file)
    doc = json.loads(open(cert_file).read())
    doc["star_center"] = "nobody"
    dump_path(doc, cert_file)
    code, out, _ = run("verify", "--surface", torus_files["torus"],
                       "--cert", cert_file)
    assert code == 2
    assert json.loads(out)["ok"] is False


def test_hatcher_flow_and_render(tmp_path):
    arcs = arc_family_instance(S5, Random(2), n=3)
    s_file = str(tmp_path / "s05.json")
    g_file = str(tmp_path / "G.json")
    cert_file = str(tmp_path / "cert.json")
    dump_path(surface_to_json(S5), s_file)
    dump_path(family_to_json(arcs), g_file)
    code, _, _ = run("hatcher-flow", "--surface", s_file, "--arcs", g_file,
                     "--beta", "auto", "--out", cert_file)
    assert code == 0
    code, out, _ = run("verify", "--surface", s_file, "--cert", cert_file)
    assert code == 0
    code, out, _ = run("render", "--surface", s_file, "--arcs", g_file)
    assert code == 0
    assert out.startswith("<svg ")
    assert out.endswith("</svg>\n")


def test_arc_step_reduces_crossings(tmp_path):
    s_file = str(tmp_path / "s05.json")
    g_file = str(tmp_path / "G.json")
    b_file = str(tmp_path / "beta.json")
    dump_path(surface_to_json(S5), s_file)
    beta = arc_curve(S5, [(F(511, 1024), F(0)), (F(511, 1024), F(1))])
    crossing = arc_curve(S5, [(F(5, 16), F(1, 4)), (F(11, 16), F(1, 4))])
    dump_path(family_to_json([crossing]), g_file)
    dump_path(curve_to_json(beta), b_file)
    code, out, _ = run("arc-step", "--surface", s_file, "--arcs", g_file,
                       "--beta", b_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["changed"] is True
    assert len(doc["curves"]) == 1


def test_complex_then_homology(tmp_path):
    # three pairwise-disjoint parallels: a 2-simplex, contractible
    fam = [torus_line(S, 1, 0, offset=F(2 * i + 1, 6)) for i in range(3)]
    s_file = str(tmp_path / "torus.json")
    g_file = str(tmp_path / "fam.json")
    x_file = str(tmp_path / "cx.json")
    dump_path(surface_to_json(S), s_file)
    dump_path(family_to_json(fam), g_file)
    code, _, _ = run("complex", "--surface", s_file, "--arcs", g_file,
                     "--out", x_file)
    assert code == 0
    assert json.loads(open(x_file).read())["maximal_simplices"] == [
        ["g0", "g1", "g2"]]
    for coeff in ("Z", "Z2"):
        code, out, _ = run("homology", "--complex", x_file, "--coeff", coeff)
        assert code == 0
        doc = json.loads(out)
        assert doc["coefficients"] == coeff
        assert all(b == 0 for b in doc["betti"])


def test_byte_identical_outputs(torus_files, tmp_path):
    a, b = str(tmp_path / "one.json"), str(tmp_path / "two.json")
    for out in (a, b):
        code, _, _ = run("tighten", "--surface", torus_files["torus"],
                         "--a", torus_files["w"], "--b", torus_files["v"],
                         "--out", out)
        assert code == 0
    assert open(a, "rb").read() == open(b, "rb").read()


def test_exit_1_on_missing_file(torus_files):
    code, _, err = run("validate", "--surface", torus_files["torus"],
                       "--a", "/nonexistent/c.json")
    assert code == 1
    assert "error:" in err


def test_exit_1_on_float_in_json(torus_files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "closed", "waypoints": [{"x": 0.5, "y": "0"},'
                   ' {"x": "1/2", "y": "1"}]}')
    code, _, err = run("validate", "--surface", torus_files["torus"],
                       "--a", str(bad))
    assert code == 1
    assert "float" in err


def test_exit_1_on_usage_error(torus_files):
    code, _, err = run("intersect", "--surface", torus_files["torus"],
                       "--a", torus_files["u"])
    assert code == 1


def test_exit_2_on_contract_violation(torus_files, tmp_path):
    bad = tmp_path / "corner.json"
    bad.write_text('{"kind": "closed", "waypoints": [{"x": "0", "y": "0"},'
                   ' {"x": "1/2", "y": "1/2"}]}')
    code, _, err = run("validate", "--surface", torus_files["torus"],
                       "--a", str(bad))
    assert code == 2
    assert "corner" in err


def test_inadmissible_surfaces_exit_2(tmp_path):
    for name, s in (("s04", four_holed_sphere()), ("s11", one_holed_torus())):
        s_file = str(tmp_path / f"{name}.json")
        g_file = str(tmp_path / f"{name}_G.json")
        dump_path(surface_to_json(s), s_file)
        hole = s.holes[0]
        xs = sorted(p[0] for p in hole)
        ys = sorted(p[1] for p in hole)
        xm = (xs[0] + xs[-1]) / 2
        if s.gluings:
            arc = arc_curve(s, [(xm, ys[-1]), (xm, F(1)), (xm, F(0)),
                                (xm, ys[0])])
        else:
            arc = arc_curve(s, [(xm, ys[-1]), (xm, F(1))])
        dump_path(family_to_json([arc]), g_file)
        code, _, err = run("hatcher-flow", "--surface", s_file,
                           "--arcs", g_file, "--beta", "auto")
        assert code == 2
        assert "does not support" in err


def test_module_entry_point(torus_files):
    proc = subprocess.run(
        [sys.executable, "-m", "curveflow", "validate",
         "--surface", torus_files["torus"], "--a", torus_files["u"]],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["valid"] is True
