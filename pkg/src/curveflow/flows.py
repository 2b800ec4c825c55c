"""Certified flows of concrete curve and arc families into closed stars.

Two producers share one certificate format.  The *star flow* takes a
combinatorial sphere mapped simplicially into a family of closed curves,
normalizes the family to transversal position by pushoffs, picks the
member carrying the largest total crossing count as the star center, and
removes innermost bigons against it until every member is disjoint from
it.  The *reference-arc flow* takes a family of essential arcs plus a
reference arc (supplied or constructed) and applies ordered finger
surgeries until the family clears the reference.

Every replacement becomes one certificate step: exactly one handle is
swapped per step, the replacement is disjoint from the curve it replaces,
and no disjointness between live members is ever broken.  Together these
make the straight-line interpolation between consecutive family states
stay inside the fine complex, so the recorded run witnesses a homotopy
into the closed star of the center.  Steps carry kernel-checkable facts;
``verify_certificate`` replays the whole run with fresh kernel queries —
never calling the surgery code — and reports the first index at which
anything fails.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .complexes import (CombinatorialSphere, SimplicialComplex,
                        SimplicialMap, check_simplicial, complex_from_json,
                        complex_to_json, fine_subcomplex)
from .curves import PolyCurve, arc_curve
from .errors import ContractError, CurveflowError, GeometryError, InputError
from .geom import lerp, norm2, sub
from .intersect import crossing_count, disjoint, intersect_curves
from .isotopy import IsotopyClassKey, collapse_map_f
from .jsonio import curve_from_json, curve_to_json
from .moves import arc_surgery_step, bigon_surgery, find_innermost_bigon
from .offsets import _radius_cap
from .perturb import perturb, pushoff_family

#: Surfaces whose arc complex is empty or a single point; the reference-arc
#: flow is pointless or undefined there.
INADMISSIBLE_ARC_SURFACES = frozenset({(0, 1), (0, 2), (0, 3), (0, 4),
                                       (1, 1)})

_REASONS = ("pushoff", "bigon-surgery", "arc-surgery")

_VERSIONED = re.compile(r"\A(?P<base>.*v)(?P<n>[1-9]\d*)\Z")


def _bump(handle: str) -> str:
    m = _VERSIONED.match(handle)
    if m:
        return f"{m.group('base')}{int(m.group('n')) + 1}"
    return handle + "v2"


def _fresh_handle(old: str, taken) -> str:
    h = _bump(old)
    while h in taken:
        h = _bump(h)
    return h


# ---------------------------------------------------------------------------
# certificate data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowStep:
    """One handle replacement with the facts that justify it."""

    replace: str
    with_curve: PolyCurve
    reason: str
    witnesses: tuple[dict, ...]


@dataclass(frozen=True)
class FlowCertificate:
    """Replayable record of a flow: initial bound handles, ordered single
    replacements, and the handle whose closed star the family lands in.
    Sphere-driven flows also carry the sphere and the vertex assignment so
    the per-step homotopy condition can be re-checked simplex by simplex."""

    initial: tuple[tuple[str, PolyCurve], ...]
    steps: tuple[FlowStep, ...]
    star_center: str
    sphere_k: Optional[int] = None
    sphere_complex: Optional[SimplicialComplex] = None
    assignment: Optional[dict] = None

    def final_handles(self) -> list[str]:
        taken = {h for h, _ in self.initial}
        live = [h for h, _ in self.initial]
        for st in self.steps:
            new = _fresh_handle(st.replace, taken)
            taken.add(new)
            live[live.index(st.replace)] = new
        return live


def _fact(kind: str, a: str, b: str, count: Optional[int] = None) -> dict:
    w = {"fact": kind, "a": a, "b": b}
    if count is not None:
        w["count"] = count
    return w


def _relation_facts(new_h: str, new_c: PolyCurve, old_h: str,
                    binding: Mapping[str, PolyCurve],
                    live: Sequence[str]) -> list[dict]:
    """True pairwise facts between the replacement and the live family:
    the guaranteed avoidance of the replaced curve first, then whatever
    clean relation holds against each other member."""
    facts = [_fact("disjoint", new_h, old_h)]
    for o in live:
        if o == old_h:
            continue
        r = intersect_curves(new_c, binding[o])
        if r.is_disjoint():
            facts.append(_fact("disjoint", new_h, o))
        elif r.all_crossing():
            facts.append(_fact("all_crossing", new_h, o))
    return facts


# ---------------------------------------------------------------------------
# fiber subcomplexes
# ---------------------------------------------------------------------------

def fiber_subcomplex(s, curves: Sequence[PolyCurve],
                     keys: Sequence[IsotopyClassKey]) -> SimplicialComplex:
    """Full subcomplex on the supplied curves whose isotopy keys lie in the
    given class set, with handles keeping the original curve indices.

    The class set must form a simplex of the collapsed complex as far as
    the supplied curves can witness it: every pair of distinct keys both
    realized here must be realized by at least one disjoint pair."""
    key_set = []
    for k in keys:
        if k.rejected:
            raise ContractError("class set contains a rejected key")
        if k not in key_set:
            key_set.append(k)
    curve_keys = []
    for i, c in enumerate(curves):
        k = collapse_map_f(s, c)
        if k.rejected:
            raise ContractError(f"curve {i} is not essential")
        curve_keys.append(k)
    realized: dict[IsotopyClassKey, list[int]] = {}
    for i, k in enumerate(curve_keys):
        if k in key_set:
            realized.setdefault(k, []).append(i)
    for k1, k2 in combinations(sorted(realized, key=repr), 2):
        if not any(disjoint(curves[i], curves[j])
                   for i in realized[k1] for j in realized[k2]):
            raise ContractError(
                f"keys {k1!r} and {k2!r} admit no disjoint pair of "
                "representatives among the supplied curves")
    keep = [i for i, k in enumerate(curve_keys) if k in key_set]
    return fine_subcomplex(s, [curves[i] for i in keep],
                           handles=[f"c{i}" for i in keep])


# ---------------------------------------------------------------------------
# star flow
# ---------------------------------------------------------------------------

def flow_sphere_to_star(s, sphere: CombinatorialSphere,
                        assignment: Mapping[str, str],
                        curves: Mapping[str, PolyCurve]) -> FlowCertificate:
    """Flow the image family of a sphere map into the closed star of one
    member, returning the step-by-step certificate.

    ``assignment`` sends every sphere vertex to a handle of ``curves``;
    the induced map must be simplicial for the fine complex on the
    supplied curves.  All curves ride along: after a pushoff
    normalization, the member with the largest total crossing count
    becomes the center and innermost bigons against it are surgered away
    until the whole family is disjoint from it."""
    if not isinstance(sphere, CombinatorialSphere):
        raise ContractError("sphere must be a CombinatorialSphere")
    if not sphere.validated:
        raise ContractError(
            f"sphere of dimension {sphere.k} is not validated; "
            "flows accept dimensions 0-2 only")
    if not curves:
        raise ContractError("no curves supplied")
    for v in sphere.complex.vertices:
        if not isinstance(v, str):
            raise ContractError("sphere vertex handles must be strings")
    for h, c in curves.items():
        if not isinstance(h, str):
            raise ContractError("curve handles must be strings")
        if c.surface is not s:
            raise ContractError(f"curve {h!r} drawn on a different surface")
        if c.kind != "closed":
            raise ContractError("the star flow moves closed curves only")
    if set(assignment) != set(sphere.complex.vertices):
        raise ContractError(
            "assignment must cover exactly the sphere vertices")
    for v, h in assignment.items():
        if h not in curves:
            raise ContractError(f"assignment sends {v!r} to unknown {h!r}")

    keys = {}
    for h, c in curves.items():
        k = collapse_map_f(s, c)
        if k.rejected:
            raise ContractError(f"curve {h!r} is not essential")
        keys[h] = k
    image = sorted({assignment[v] for v in sphere.complex.vertices})
    realized: dict[IsotopyClassKey, list[str]] = {}
    for h in curves:
        realized.setdefault(keys[h], []).append(h)
    image_keys = sorted({keys[h] for h in image}, key=repr)
    for k1, k2 in combinations(image_keys, 2):
        if not any(disjoint(curves[a], curves[b])
                   for a in realized[k1] for b in realized[k2]):
            raise ContractError(
                f"image keys {k1!r} and {k2!r} admit no disjoint pair of "
                "representatives among the supplied curves")
    target0 = fine_subcomplex(s, list(curves.values()),
                              handles=list(curves))
    phi0 = SimplicialMap(sphere.complex, target0, assignment)
    if not check_simplicial(phi0):
        raise ContractError(
            "the sphere map is not simplicial on the supplied curves")

    binding: dict[str, PolyCurve] = dict(curves)
    live: list[str] = list(curves)
    steps: list[FlowStep] = []

    def emit(old_h: str, new_c: PolyCurve, reason: str,
             extra: list[dict]) -> str:
        new_h = _fresh_handle(old_h, binding)
        facts = extra + _relation_facts(new_h, new_c, old_h, binding, live)
        binding[new_h] = new_c
        live[live.index(old_h)] = new_h
        steps.append(FlowStep(old_h, new_c, reason, tuple(facts)))
        return new_h

    # Phase one: transversal position via pushoffs (class-preserving).
    originals = [binding[h] for h in live]
    normalized = pushoff_family(s, originals)
    for idx in range(len(live)):
        if normalized[idx] is originals[idx]:
            continue
        old_h = live[idx]
        emit(old_h, normalized[idx], "pushoff",
             [_fact("key_preserved", old_h,
                    _fresh_handle(old_h, binding))])

    # Phase two: choose the center and remove innermost bigons against it.
    totals = {
        h: sum(crossing_count(binding[h], binding[o])
               for o in live if o != h)
        for h in live
    }
    center = min(live, key=lambda h: (-totals[h], h))
    center_curve = binding[center]

    while True:
        fam_handles = [h for h in live if h != center]
        fam = [binding[h] for h in fam_handles]
        if all(disjoint(c, center_curve) for c in fam):
            break
        b = find_innermost_bigon(s, fam, center_curve)
        if b is None:
            raise GeometryError(
                "crossings with the center remain but no bigon exists; "
                "the family classes cannot lie in one simplex")
        out = bigon_surgery(s, fam, b)
        old_h = fam_handles[b.member]
        new_c = out[b.member]
        n0 = crossing_count(binding[old_h], center_curve)
        new_h = _fresh_handle(old_h, binding)
        emit(old_h, new_c, "bigon-surgery",
             [_fact("crossing_count", old_h, center, n0),
              _fact("crossing_count", new_h, center, n0 - 2),
              _fact("key_preserved", old_h, new_h)])

    amap = {v: assignment[v] for v in
            sorted(sphere.complex.vertices)}
    return FlowCertificate(
        initial=tuple((h, curves[h]) for h in curves),
        steps=tuple(steps),
        star_center=center,
        sphere_k=sphere.k,
        sphere_complex=sphere.complex,
        assignment=amap,
    )


# ---------------------------------------------------------------------------
# reference-arc flow
# ---------------------------------------------------------------------------

def arc_flow_admissible(s) -> bool:
    return (s.boundary_count >= 1
            and (s.genus, s.boundary_count) not in INADMISSIBLE_ARC_SURFACES)


def _boundary_sites(s) -> list[tuple]:
    glued = set()
    for i, j, _ in s.identifications:
        glued.add(i)
        glued.add(j)
    sites: list[tuple] = []
    n = len(s.polygon)
    for i in range(n):
        if i not in glued:
            sites.append(("edge", i))
    for h, hole in enumerate(s.holes):
        for m in range(len(hole)):
            sites.append(("hole", h, m))
    return sites


def _site_point(s, site: tuple, t: Fraction):
    if site[0] == "edge":
        i = site[1]
        a, b = s.polygon[i], s.polygon[(i + 1) % len(s.polygon)]
    else:
        hole = s.holes[site[1]]
        a, b = hole[site[2]], hole[(site[2] + 1) % len(hole)]
    return lerp(a, b, t)


_SITE_PARAMS = (Fraction(1, 2), Fraction(3, 8), Fraction(5, 8),
                Fraction(7, 16), Fraction(9, 16), Fraction(13, 32),
                Fraction(19, 32))


def _auto_reference_arc(s, arcs: Sequence[PolyCurve],
                        eps: Fraction) -> PolyCurve:
    """Deterministic reference arc: anchor one point per boundary site off
    every family endpoint, try straight chords between anchors from
    shortest to longest, keep the first essential one that perturbs clean
    against the family."""
    family_ends = set()
    for g in arcs:
        family_ends.add(g.waypoints[0])
        family_ends.add(g.waypoints[-1])
    anchors = []
    for site in _boundary_sites(s):
        for t in _SITE_PARAMS:
            p = _site_point(s, site, t)
            if p not in family_ends:
                anchors.append(p)
                break
    candidates = []
    for a_i, b_i in combinations(range(len(anchors)), 2):
        p, q = anchors[a_i], anchors[b_i]
        try:
            cand = arc_curve(s, [p, q])
        except CurveflowError:
            continue
        if collapse_map_f(s, cand).rejected:
            continue
        candidates.append((norm2(sub(q, p)), a_i, b_i, cand))
    candidates.sort(key=lambda item: item[:3])
    for _, _, _, cand in candidates:
        try:
            beta = perturb(s, cand, arcs, eps)
        except CurveflowError:
            continue
        if any(a.boundary for g in arcs
               for a in intersect_curves(g, beta).points):
            continue
        return beta
    raise GeometryError(
        "no reference arc could be constructed clear of the family")


def hatcher_flow(s, arcs: Sequence[PolyCurve], beta="auto",
                 eps: Optional[Fraction] = None) -> FlowCertificate:
    """Flow an essential arc family off a reference arc by ordered finger
    surgeries, returning the step-by-step certificate.

    ``beta`` is either a concrete essential arc or ``"auto"``.  Surfaces
    whose essential-arc structure is empty or a single class are refused.
    Group steps (several arcs through the same first meeting point) appear
    in the certificate as consecutive single replacements."""
    if not arc_flow_admissible(s):
        raise ContractError(
            f"surface (genus {s.genus}, boundary {s.boundary_count}) "
            "does not support the reference-arc flow")
    arcs = list(arcs)
    for i, g in enumerate(arcs):
        if g.surface is not s:
            raise ContractError(f"arc {i} drawn on a different surface")
        if g.kind != "arc":
            raise ContractError("the reference-arc flow moves arcs only")
        if collapse_map_f(s, g).rejected:
            raise ContractError(f"arc {i} is not essential")
    for i, j in combinations(range(len(arcs)), 2):
        if intersect_curves(arcs[i], arcs[j]).identical:
            raise ContractError(f"arcs {i} and {j} are the same point set")
    if eps is None:
        eps = _radius_cap(s) / 4
    if isinstance(beta, str):
        if beta != "auto":
            raise ContractError('beta must be an arc or "auto"')
        beta = _auto_reference_arc(s, arcs, eps)
    else:
        if beta.surface is not s or beta.kind != "arc":
            raise ContractError("beta must be an arc on the given surface")
        if collapse_map_f(s, beta).rejected:
            raise ContractError("beta is not essential")
        for i, g in enumerate(arcs):
            if intersect_curves(g, beta).identical:
                raise ContractError(f"arc {i} coincides with beta")

    handles = [f"c{i}" for i in range(len(arcs))]
    binding: dict[str, PolyCurve] = dict(zip(handles, arcs))
    binding["beta"] = beta
    live = handles + ["beta"]
    steps: list[FlowStep] = []
    fam_handles = list(handles)

    while True:
        cur = [binding[h] for h in fam_handles]
        if all(disjoint(g, beta) for g in cur):
            break
        stepped = arc_surgery_step(s, cur, beta)
        changed = [i for i in range(len(cur)) if stepped[i] is not cur[i]]
        if not changed:
            raise GeometryError("surgery round replaced nothing")
        for i in changed:
            old_h = fam_handles[i]
            new_c = stepped[i]
            n_old = crossing_count(binding[old_h], beta)
            n_new = crossing_count(new_c, beta)
            new_h = _fresh_handle(old_h, binding)
            facts = [_fact("crossing_count", old_h, "beta", n_old),
                     _fact("crossing_count", new_h, "beta", n_new)]
            facts += _relation_facts(new_h, new_c, old_h, binding, live)
            binding[new_h] = new_c
            live[live.index(old_h)] = new_h
            fam_handles[i] = new_h
            steps.append(FlowStep(old_h, new_c, "arc-surgery",
                                  tuple(facts)))

    initial = tuple(zip(handles, arcs)) + (("beta", beta),)
    return FlowCertificate(initial=initial, steps=tuple(steps),
                           star_center="beta")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def certificate_to_json(cert: FlowCertificate) -> dict:
    data = {
        "initial": [{"handle": h, "curve": curve_to_json(c)}
                    for h, c in cert.initial],
        "steps": [{"replace": st.replace,
                   "with": curve_to_json(st.with_curve),
                   "reason": st.reason,
                   "witnesses": [dict(w) for w in st.witnesses]}
                  for st in cert.steps],
        "star_center": cert.star_center,
    }
    if cert.sphere_complex is not None:
        data["sphere"] = {"k": cert.sphere_k,
                          **complex_to_json(cert.sphere_complex)}
        data["assignment"] = {v: cert.assignment[v]
                              for v in sorted(cert.assignment)}
    return data


def certificate_from_json(s, data) -> FlowCertificate:
    if not isinstance(data, dict):
        raise InputError("certificate: expected a JSON object")
    for key in ("initial", "steps", "star_center"):
        if key not in data:
            raise InputError(f'certificate: missing "{key}"')
    initial = []
    if not isinstance(data["initial"], list):
        raise InputError('certificate: "initial" must be a list')
    for k, entry in enumerate(data["initial"]):
        if (not isinstance(entry, dict) or "handle" not in entry
                or "curve" not in entry):
            raise InputError(
                f"certificate.initial[{k}]: expected handle and curve")
        if not isinstance(entry["handle"], str):
            raise InputError(f"certificate.initial[{k}]: handle not a string")
        initial.append((entry["handle"], curve_from_json(s, entry["curve"])))
    steps = []
    if not isinstance(data["steps"], list):
        raise InputError('certificate: "steps" must be a list')
    for k, entry in enumerate(data["steps"]):
        if not isinstance(entry, dict):
            raise InputError(f"certificate.steps[{k}]: expected an object")
        for fieldname in ("replace", "with", "reason", "witnesses"):
            if fieldname not in entry:
                raise InputError(
                    f'certificate.steps[{k}]: missing "{fieldname}"')
        if not isinstance(entry["replace"], str):
            raise InputError(f"certificate.steps[{k}]: replace not a string")
        if not isinstance(entry["reason"], str):
            raise InputError(f"certificate.steps[{k}]: reason not a string")
        if not isinstance(entry["witnesses"], list):
            raise InputError(f"certificate.steps[{k}]: witnesses not a list")
        witnesses = []
        for w in entry["witnesses"]:
            if not isinstance(w, dict):
                raise InputError(
                    f"certificate.steps[{k}]: witness not an object")
            witnesses.append(dict(w))
        steps.append(FlowStep(entry["replace"],
                              curve_from_json(s, entry["with"]),
                              entry["reason"], tuple(witnesses)))
    sphere_k = None
    sphere_complex = None
    assignment = None
    if data.get("sphere") is not None:
        sph = data["sphere"]
        if not isinstance(sph, dict) or "k" not in sph:
            raise InputError('certificate: "sphere" needs "k"')
        if not isinstance(sph["k"], int) or isinstance(sph["k"], bool):
            raise InputError("certificate: sphere dimension not an integer")
        sphere_k = sph["k"]
        sphere_complex = complex_from_json(sph)
        amap = data.get("assignment")
        if not isinstance(amap, dict):
            raise InputError('certificate: sphere needs an "assignment"')
        assignment = {}
        for v, h in amap.items():
            if not isinstance(h, str):
                raise InputError("certificate: assignment values not strings")
            assignment[str(v)] = h
    if not isinstance(data["star_center"], str):
        raise InputError("certificate: star_center not a string")
    return FlowCertificate(initial=tuple(initial), steps=tuple(steps),
                           star_center=data["star_center"],
                           sphere_k=sphere_k,
                           sphere_complex=sphere_complex,
                           assignment=assignment)


# ---------------------------------------------------------------------------
# independent verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    """Outcome of replaying a certificate.  ``failure_index`` is -1 for a
    setup failure, the step index for a step failure, and the step count
    for a failure of the final star condition."""

    ok: bool
    failure_index: Optional[int] = None
    message: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


class _DisjointCache:
    def __init__(self, binding):
        self.binding = binding
        self.cache: dict[tuple[str, str], bool] = {}

    def __call__(self, a: str, b: str) -> bool:
        key = (a, b) if a <= b else (b, a)
        if key not in self.cache:
            self.cache[key] = disjoint(self.binding[a], self.binding[b])
        return self.cache[key]


def verify_certificate(s, cert: FlowCertificate) -> VerificationReport:
    """Replay a certificate with fresh kernel queries only.

    Checks, in order: the initial binding and (when present) the sphere
    and the simpliciality of its assignment; per step, handle bookkeeping,
    the replacement's avoidance of the replaced curve, preservation of
    every live disjointness, class preservation for pushoffs and bigon
    surgeries, exact crossing progress against the star center, the
    straight-line condition on every affected sphere simplex, and every
    recorded witness fact; finally, that the star center is live and the
    whole final family is disjoint from it."""

    def fail(idx: Optional[int], msg: str) -> VerificationReport:
        return VerificationReport(False, idx, msg)

    binding: dict[str, PolyCurve] = {}
    for h, c in cert.initial:
        if not isinstance(h, str):
            return fail(-1, "initial handle is not a string")
        if h in binding:
            return fail(-1, f"initial handle {h!r} repeats")
        if c.surface is not s:
            return fail(-1, "initial curve drawn on a different surface")
        binding[h] = c
    live = [h for h, _ in cert.initial]
    if not live:
        return fail(-1, "certificate binds no curves")
    if not isinstance(cert.star_center, str):
        return fail(-1, "star center is not a string handle")

    is_disjoint = _DisjointCache(binding)

    vert_handle = None
    sphere_simplices = ()
    if cert.sphere_complex is not None:
        try:
            sphere = CombinatorialSphere(cert.sphere_complex, cert.sphere_k)
        except CurveflowError as exc:
            return fail(-1, f"sphere rejected: {exc}")
        if not sphere.validated:
            return fail(-1, "sphere dimension exceeds what is validated")
        amap = cert.assignment
        if amap is None:
            return fail(-1, "sphere certificate lacks an assignment")
        if set(amap) != set(sphere.complex.vertices):
            return fail(-1, "assignment does not cover the sphere vertices")
        for v, h in amap.items():
            if h not in binding:
                return fail(-1, f"assignment target {h!r} is not bound")
        sphere_simplices = tuple(sphere.complex.simplices)
        for simplex in sphere_simplices:
            hs = sorted({amap[v] for v in simplex})
            for a, b in combinations(hs, 2):
                if not is_disjoint(a, b):
                    return fail(-1, "initial sphere map is not simplicial")
        vert_handle = dict(amap)

    for i, st in enumerate(cert.steps):
        if st.reason not in _REASONS:
            return fail(i, f"unknown step reason {st.reason!r}")
        old_h = st.replace
        if old_h not in live:
            return fail(i, f"replaced handle {old_h!r} is not live")
        new_h = _fresh_handle(old_h, binding)
        new_c = st.with_curve
        if new_c.surface is not s:
            return fail(i, "replacement drawn on a different surface")
        old_c = binding[old_h]
        if new_c.kind != old_c.kind:
            return fail(i, "replacement changes the curve kind")
        if not disjoint(new_c, old_c):
            return fail(i, "replacement meets the curve it replaces")
        for o in live:
            if o != old_h and is_disjoint(o, old_h):
                if not disjoint(new_c, binding[o]):
                    return fail(i, f"step breaks disjointness with {o!r}")
        if st.reason in ("pushoff", "bigon-surgery"):
            if collapse_map_f(s, old_c) != collapse_map_f(s, new_c):
                return fail(i, "replacement changes the isotopy class")
        if st.reason == "bigon-surgery":
            if cert.star_center not in live:
                return fail(i, "bigon surgery before the center exists")
            center_c = binding[cert.star_center]
            r_old = intersect_curves(old_c, center_c)
            r_new = intersect_curves(new_c, center_c)
            if not r_old.all_crossing() or not r_new.all_crossing():
                return fail(i, "surgery endpoints are not in transversal "
                               "position with the center")
            if r_new.crossing_count() != r_old.crossing_count() - 2:
                return fail(i, "surgery must drop exactly two crossings "
                               "with the center")
        if st.reason == "arc-surgery":
            if cert.star_center not in live:
                return fail(i, "arc surgery without a live reference arc")
            center_c = binding[cert.star_center]
            if center_c.kind != "arc" or new_c.kind != "arc":
                return fail(i, "arc surgery on non-arcs")
            r_old = intersect_curves(old_c, center_c)
            r_new = intersect_curves(new_c, center_c)
            if not r_new.all_crossing():
                return fail(i, "replacement not transversal to the "
                               "reference arc")
            if r_new.crossing_count() >= r_old.crossing_count():
                return fail(i, "surgery must reduce crossings with the "
                               "reference arc")
        binding[new_h] = new_c
        if vert_handle is not None:
            for simplex in sphere_simplices:
                hs = {vert_handle[v] for v in simplex}
                if old_h not in hs:
                    continue
                joint = sorted(hs | {new_h})
                for a, b in combinations(joint, 2):
                    if not is_disjoint(a, b):
                        return fail(i, "straight-line condition fails on a "
                                       "sphere simplex")
        for w in st.witnesses:
            verdict = _check_witness(s, binding, w)
            if verdict is not None:
                return fail(i, verdict)
        live[live.index(old_h)] = new_h
        if vert_handle is not None:
            for v, h in vert_handle.items():
                if h == old_h:
                    vert_handle[v] = new_h

    final_idx = len(cert.steps)
    if cert.star_center not in live:
        return fail(final_idx, "star center is not a live handle")
    for h in live:
        if h != cert.star_center and not is_disjoint(h, cert.star_center):
            return fail(final_idx,
                        f"final curve {h!r} still meets the star center")
    return VerificationReport(True)


def _check_witness(s, binding: Mapping[str, PolyCurve],
                   w: Mapping) -> Optional[str]:
    """None when the fact holds; otherwise the failure message."""
    if not isinstance(w, Mapping) or "fact" not in w:
        return "malformed witness"
    kind = w.get("fact")
    a, b = w.get("a"), w.get("b")
    if a not in binding or b not in binding:
        return f"witness references unknown handles {a!r}, {b!r}"
    ca, cb = binding[a], binding[b]
    if kind == "disjoint":
        if not disjoint(ca, cb):
            return f"witness disjoint({a!r}, {b!r}) fails"
        return None
    if kind == "all_crossing":
        if not intersect_curves(ca, cb).all_crossing():
            return f"witness all_crossing({a!r}, {b!r}) fails"
        return None
    if kind == "crossing_count":
        n = w.get("count")
        if not isinstance(n, int) or isinstance(n, bool):
            return "crossing_count witness lacks an integer count"
        if crossing_count(ca, cb) != n:
            return (f"witness crossing_count({a!r}, {b!r}) = {n} fails; "
                    f"kernel says {crossing_count(ca, cb)}")
        return None
    if kind == "key_preserved":
        if collapse_map_f(s, ca) != collapse_map_f(s, cb):
            return f"witness key_preserved({a!r}, {b!r}) fails"
        return None
    return f"unknown witness fact {kind!r}"
