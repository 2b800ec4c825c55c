"""Command-line front end.

Loads surfaces and curves from JSON files, runs the kernels and flows,
and emits JSON reports, certificates, and SVG figures.  Every subcommand
writes exactly one document to --out (or stdout), and the bytes are a
pure function of the input files and flags.

Exit codes: 0 success, 1 malformed input (files or command line),
2 contract violation (the module's error text goes to stderr),
70 geometric search failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .complexes import (CombinatorialSphere, complex_from_json,
                        complex_to_json, fine_subcomplex, homology)
from .errors import (ContractError, CurveflowError, GeometryError,
                     InputError)
from .flows import (certificate_from_json, certificate_to_json,
                    flow_sphere_to_star, hatcher_flow, verify_certificate)
from .intersect import intersect_curves
from .isotopy import collapse_map_f, key_to_json
from .jsonio import (curve_from_json, curve_to_json, dumps,
                     family_from_json, family_to_json, fraction_from_json,
                     intersections_to_json, load_path, surface_from_json)
from .moves import arc_surgery_step, tighten_pair
from .perturb import perturb
from .render import render_svg

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONTRACT = 2
EXIT_GEOMETRY = 70


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors routed through the input-error exit."""

    def error(self, message):
        raise InputError(message)


# --- input plumbing ----------------------------------------------------------

def _load_surface(path):
    return surface_from_json(load_path(path))


def _load_curve(s, path):
    return curve_from_json(s, load_path(path))


def _load_family(s, path):
    return family_from_json(s, load_path(path))


def _parse_eps(text: str):
    eps = fraction_from_json(text, "--eps")
    if eps <= 0:
        raise InputError("--eps must be positive")
    return eps


def _instance_from_json(s, data):
    """A star-flow instance: the head of a certificate.  Shape:
    {"sphere": {"k", "vertices", "maximal_simplices"},
     "assignment": {vertex: handle}, "initial": [{"handle", "curve"}]}."""
    if not isinstance(data, dict):
        raise InputError("instance: expected a JSON object")
    for fieldname in ("sphere", "assignment", "initial"):
        if fieldname not in data:
            raise InputError(f'instance: missing "{fieldname}"')
    raw_sphere = data["sphere"]
    if not isinstance(raw_sphere, dict) or "k" not in raw_sphere:
        raise InputError('instance.sphere: expected {"k": .., "vertices": ..,'
                         ' "maximal_simplices": ..}')
    k = raw_sphere["k"]
    if not isinstance(k, int) or isinstance(k, bool):
        raise InputError("instance.sphere.k: expected an integer")
    sphere = CombinatorialSphere(complex_from_json(raw_sphere), k)
    raw_assign = data["assignment"]
    if (not isinstance(raw_assign, dict)
            or not all(isinstance(v, str) for v in raw_assign.values())):
        raise InputError("instance.assignment: expected {vertex: handle}")
    raw_initial = data["initial"]
    if not isinstance(raw_initial, list):
        raise InputError('instance.initial: expected a list')
    curves = {}
    for i, entry in enumerate(raw_initial):
        if (not isinstance(entry, dict) or "handle" not in entry
                or "curve" not in entry):
            raise InputError(
                f'instance.initial[{i}]: expected {{"handle", "curve"}}')
        handle = entry["handle"]
        if not isinstance(handle, str):
            raise InputError(f"instance.initial[{i}].handle: expected a string")
        if handle in curves:
            raise InputError(f"instance.initial[{i}]: duplicate handle {handle!r}")
        curves[handle] = curve_from_json(s, entry["curve"])
    return sphere, dict(raw_assign), curves


# --- subcommand handlers -----------------------------------------------------
# Each returns (document, exit code); the document is a JSON-ready dict or,
# for render, the finished SVG text.

def _cmd_validate(args):
    s = _load_surface(args.surface)
    c = _load_curve(s, args.a)
    key = collapse_map_f(s, c)
    return {"valid": True, "kind": c.kind,
            "essential": not key.rejected,
            "key": key_to_json(key)}, EXIT_OK


def _cmd_intersect(args):
    s = _load_surface(args.surface)
    u = _load_curve(s, args.a)
    v = _load_curve(s, args.b)
    return intersections_to_json(intersect_curves(u, v)), EXIT_OK


def _cmd_perturb(args):
    s = _load_surface(args.surface)
    y = _load_curve(s, args.a)
    family = _load_family(s, args.arcs)
    out = perturb(s, y, family, _parse_eps(args.eps))
    return curve_to_json(out), EXIT_OK


def _cmd_tighten(args):
    s = _load_surface(args.surface)
    u = _load_curve(s, args.a)
    v = _load_curve(s, args.b)
    tight = tighten_pair(s, u, v)
    doc = curve_to_json(tight)
    doc["crossing_count"] = intersect_curves(tight, v).crossing_count()
    return doc, EXIT_OK


def _cmd_flow_star(args):
    s = _load_surface(args.surface)
    sphere, assignment, curves = _instance_from_json(
        s, load_path(args.instance))
    cert = flow_sphere_to_star(s, sphere, assignment, curves)
    return certificate_to_json(cert), EXIT_OK


def _cmd_hatcher_flow(args):
    s = _load_surface(args.surface)
    arcs = _load_family(s, args.arcs)
    beta = "auto" if args.beta == "auto" else _load_curve(s, args.beta)
    eps = None if args.eps is None else _parse_eps(args.eps)
    cert = hatcher_flow(s, arcs, beta=beta, eps=eps)
    return certificate_to_json(cert), EXIT_OK


def _cmd_arc_step(args):
    s = _load_surface(args.surface)
    arcs = _load_family(s, args.arcs)
    beta = _load_curve(s, args.beta)
    stepped = arc_surgery_step(s, arcs, beta)
    doc = family_to_json(stepped)
    doc["changed"] = any(a.waypoints != b.waypoints
                         for a, b in zip(arcs, stepped))
    return doc, EXIT_OK


def _cmd_complex(args):
    s = _load_surface(args.surface)
    curves = _load_family(s, args.arcs)
    handles = [f"g{i}" for i in range(len(curves))]
    x = fine_subcomplex(s, curves, handles)
    return complex_to_json(x), EXIT_OK


def _cmd_homology(args):
    x = complex_from_json(load_path(args.complex))
    rep = homology(x, coefficients=args.coeff)
    return {"coefficients": rep.coefficients,
            "betti": list(rep.betti),
            "torsion": [list(t) for t in rep.torsion]}, EXIT_OK


def _cmd_verify(args):
    s = _load_surface(args.surface)
    cert = certificate_from_json(s, load_path(args.cert))
    report = verify_certificate(s, cert)
    doc = {"ok": report.ok,
           "failure_index": report.failure_index,
           "message": report.message}
    return doc, EXIT_OK if report.ok else EXIT_CONTRACT


def _cmd_render(args):
    s = _load_surface(args.surface)
    curves = {}
    if args.a is not None:
        curves["a"] = _load_curve(s, args.a)
    if args.b is not None:
        curves["b"] = _load_curve(s, args.b)
    if args.arcs is not None:
        for i, c in enumerate(_load_family(s, args.arcs)):
            curves[f"g{i}"] = c
    return render_svg(s, curves), EXIT_OK


# --- parser ------------------------------------------------------------------

def _build_parser() -> _Parser:
    top = _Parser(prog="curveflow",
                  description="exact curves, intersections, and flows on "
                              "compact surfaces")
    top.add_argument("--seed", type=int, default=0,
                     help="reserved; every pipeline here is deterministic, "
                          "so the seed never changes any output")
    sub = top.add_subparsers(dest="command", metavar="command",
                             parser_class=_Parser)
    sub.required = True

    def cmd(name, summary, handler):
        p = sub.add_parser(name, help=summary, description=summary)
        p.set_defaults(handler=handler)
        p.add_argument("--out", metavar="FILE",
                       help="write the output document here instead of stdout")
        return p

    p = cmd("validate", "check a curve file and report its class key",
            _cmd_validate)
    p.add_argument("--surface", required=True, metavar="FILE")
    p.add_argument("--a", required=True, metavar="FILE")

    p = cmd("intersect", "classify every meeting of two curves",
            _cmd_intersect)
    p.add_argument("--surface", required=True, metavar="FILE")
    p.add_argument("--a", required=True, metavar="FILE")
    p.add_argument("--b", required=True, metavar="FILE")

    p = cmd("perturb", "nudge a curve off a family: crossings only",
            _cmd_perturb)
    p.add_argument("--surface", required=True, metavar="FILE")
    p.add_argument("--a", required=True, metavar="FILE",
                   help="the curve to move")
    p.add_argument("--arcs", required=True, metavar="FILE",
                   help="family file to perturb against")
    p.add_argument("--eps", required=True, metavar="P/Q",
                   help="proximity budget (rational)")

    p = cmd("tighten", "remove every bigon between two curves",
            _cmd_tighten)
    p.add_argument("--surface", required=True, metavar="FILE")
    p.add_argument("--a", required=True, metavar="FILE",
                   help="the curve to tighten")
    p.add_argument("--b", required=True, metavar="FILE",
                   help="the curve held fixed")

    p = cmd("flow-star", "flow sphere-indexed curves into a star",
            _cmd_flow_star)
    p.add_argument("--surface", required=True, metavar="FILE")
    p.add_argument("--instance", required=True, metavar="FILE",
                   help='{"sphere", "assignment", "initial"} JSON')

    p = cmd("hatcher-flow", "flow an arc family off a reference arc",
            _cmd_hatcher_flow)
    p.add_argument("--surface", required=True, metavar="FILE")
    p.add_argument("--arcs", required=True, metavar="FILE")
    p.add_argument("--beta", default="auto", metavar="FILE|auto",
                   help='reference arc file, or "auto" (default)')
    p.add_argument("--eps", default=None, metavar="P/Q",
                   help="override the perturbation budget")

    p = cmd("arc-step", "run a single arc-surgery round of the arc flow",
            _cmd_arc_step)
    p.add_argument("--surface", required=True, metavar="FILE")
    p.add_argument("--arcs", required=True, metavar="FILE")
    p.add_argument("--beta", required=True, metavar="FILE")

    p = cmd("complex", "fine subcomplex spanned by a curve family",
            _cmd_complex)
    p.add_argument("--surface", required=True, metavar="FILE")
    p.add_argument("--arcs", required=True, metavar="FILE")

    p = cmd("homology", "reduced homology of a simplicial complex",
            _cmd_homology)
    p.add_argument("--complex", required=True, metavar="FILE")
    p.add_argument("--coeff", choices=("Z", "Z2"), default="Z")

    p = cmd("verify", "re-check a flow certificate from scratch",
            _cmd_verify)
    p.add_argument("--surface", required=True, metavar="FILE")
    p.add_argument("--cert", required=True, metavar="FILE")

    p = cmd("render", "draw curves on the unfolded polygon as SVG",
            _cmd_render)
    p.add_argument("--surface", required=True, metavar="FILE")
    p.add_argument("--a", metavar="FILE")
    p.add_argument("--b", metavar="FILE")
    p.add_argument("--arcs", metavar="FILE")

    return top


def _emit(doc, out: Optional[str]) -> None:
    text = doc if isinstance(doc, str) else dumps(doc)
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc.strerror}") from None


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        doc, code = args.handler(args)
        _emit(doc, args.out)
        return code
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except GeometryError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_GEOMETRY
    except CurveflowError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
