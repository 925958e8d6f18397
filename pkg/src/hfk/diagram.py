"""Doubly-pointed Heegaard diagram model with exact homology machinery.

Combinatorial conventions
-------------------------
At every intersection point the four local rays are labeled E, N, W, S in
counterclockwise order around the surface orientation: E is the outgoing
alpha arc end, W the incoming alpha end, and N the beta end that follows E
counterclockwise (S is the other beta end).  The crossing sign is +1 exactly
when N is the outgoing beta end.  Quadrant k in the order (NE, NW, SW, SE)
spans counterclockwise from ray k to ray k+1.

Region boundaries are cyclic lists of signed arcs; a positive traversal has
the region on its left.  Walking a boundary component with the region on the
left, every junction is a genuine corner: if the walk departs point p via
ray u and arrived via ray v then v is the counterclockwise successor of u
and the corner occupies the quadrant labeled by u.  Validation enforces this
at every junction, which pins the whole embedding combinatorially.

Regions may have several boundary components but must be planar
(euler_char == 2 - #components); that holds automatically when the alpha
curves are independent, since the complement of an independent system of
disjoint curves is a punctured sphere.  For homology each multi-component
region is cut into a disc by virtual edges joining its components, giving an
honest cellular chain complex; loops that cross regions transversally are
converted to skeleton cycles by boundary walks inside those disc faces.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .intlinalg import (
    Quotient,
    kernel_basis,
    mat_vec,
    smith_normal_form,
    solve_integer,
)

QUADRANTS = ("NE", "NW", "SW", "SE")
RAYS = ("E", "N", "W", "S")

# Edge keys of the subdivided complex: real arcs and per-region virtual cuts.
EdgeKey = Tuple
Chain = Dict[EdgeKey, int]


class DiagramError(ValueError):
    """Structural problem that prevents interpreting the input at all."""


class BudgetError(RuntimeError):
    """An enumeration exceeded its node budget; results would be partial."""


class InvariantError(RuntimeError):
    """A law the machinery itself guarantees failed; the code is at fault,
    not the input."""


def default_budget() -> int:
    """Search-node budget, overridable through the HFK_BUDGET variable."""
    raw = os.environ.get("HFK_BUDGET", "")
    try:
        n = int(raw)
    except ValueError:
        return 1_000_000
    return n if n > 0 else 1_000_000


@dataclass
class IntersectionPoint:
    id: str
    alpha: str
    beta: str
    quadrants: Tuple[str, str, str, str]  # region ids in (NE, NW, SW, SE)
    sign: Optional[int] = None  # stored crossing sign; required only when
    #                             the quadrant regions do not determine it


@dataclass
class Arc:
    id: str
    tail: str
    head: str


@dataclass
class Curve:
    id: str
    kind: str  # "alpha" or "beta"
    arcs: List[str]  # cyclic, head-to-tail in curve orientation


@dataclass
class Region:
    id: str
    euler_char: int
    corners: List[Tuple[str, str]]  # (point id, quadrant tag)
    boundary: List[List[Tuple[str, int]]]  # components of signed arcs


@dataclass
class PointedDiagram:
    genus: int
    points: Dict[str, IntersectionPoint]
    arcs: Dict[str, Arc]
    curves: Dict[str, Curve]
    regions: Dict[str, Region]
    z: str
    w: str
    domains: Dict[str, Dict[str, int]] = field(default_factory=dict)
    comment: str = ""


@dataclass
class ValidationReport:
    errors: List[str] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.errors


# ---------------------------------------------------------------------------
# JSON input / output


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DiagramError(msg)


def diagram_from_dict(data: Dict) -> PointedDiagram:
    """Parse the JSON object form.  Raises DiagramError on malformed shapes;
    semantic problems are left for validate()."""
    _require(isinstance(data, dict), "top level must be an object")
    for key in ("genus", "points", "arcs", "curves", "regions", "basepoints"):
        _require(key in data, "missing top-level key %r" % key)
    genus = data["genus"]
    _require(isinstance(genus, int) and genus >= 0, "genus must be an integer >= 0")

    points: Dict[str, IntersectionPoint] = {}
    for obj in _as_list(data["points"], "points"):
        pid = _as_id(obj.get("id"), "point id")
        quads = obj.get("quadrants")
        _require(isinstance(quads, list) and len(quads) == 4,
                 "point %r needs a 4-entry quadrants list" % pid)
        sign = obj.get("sign")
        _require(sign in (None, 1, -1), "point %r has bad sign" % pid)
        _require(pid not in points, "duplicate point id %r" % pid)
        points[pid] = IntersectionPoint(
            id=pid,
            alpha=_as_id(obj.get("alpha"), "point %r alpha" % pid),
            beta=_as_id(obj.get("beta"), "point %r beta" % pid),
            quadrants=tuple(_as_id(q, "point %r quadrant" % pid) for q in quads),
            sign=sign,
        )

    arcs: Dict[str, Arc] = {}
    for obj in _as_list(data["arcs"], "arcs"):
        aid = _as_id(obj.get("id"), "arc id")
        _require(aid not in arcs, "duplicate arc id %r" % aid)
        arcs[aid] = Arc(
            id=aid,
            tail=_as_id(obj.get("from"), "arc %r from" % aid),
            head=_as_id(obj.get("to"), "arc %r to" % aid),
        )

    curves: Dict[str, Curve] = {}
    for obj in _as_list(data["curves"], "curves"):
        cid = _as_id(obj.get("id"), "curve id")
        kind = obj.get("kind")
        _require(kind in ("alpha", "beta"), "curve %r kind must be alpha/beta" % cid)
        arc_list = obj.get("arcs")
        _require(isinstance(arc_list, list) and arc_list,
                 "curve %r needs a nonempty arc list" % cid)
        _require(cid not in curves, "duplicate curve id %r" % cid)
        curves[cid] = Curve(id=cid, kind=kind,
                            arcs=[_as_id(a, "curve %r arc" % cid) for a in arc_list])

    regions: Dict[str, Region] = {}
    for obj in _as_list(data["regions"], "regions"):
        rid = _as_id(obj.get("id"), "region id")
        chi = obj.get("euler_char")
        _require(isinstance(chi, int), "region %r euler_char must be an integer" % rid)
        corners = []
        for entry in _as_list(obj.get("corners", []), "region %r corners" % rid):
            _require(isinstance(entry, list) and len(entry) == 2,
                     "region %r corner entries are [point, tag]" % rid)
            _require(entry[1] in QUADRANTS, "region %r corner tag %r" % (rid, entry[1]))
            corners.append((_as_id(entry[0], "corner point"), entry[1]))
        boundary = []
        for comp in _as_list(obj.get("boundary", []), "region %r boundary" % rid):
            parsed = []
            for token in _as_list(comp, "region %r boundary component" % rid):
                _require(isinstance(token, str) and token.strip("-"),
                         "region %r boundary tokens are arc ids" % rid)
                if token.startswith("-"):
                    parsed.append((token[1:], -1))
                else:
                    parsed.append((token, 1))
            boundary.append(parsed)
        _require(rid not in regions, "duplicate region id %r" % rid)
        regions[rid] = Region(id=rid, euler_char=chi, corners=corners,
                              boundary=boundary)

    bp = data["basepoints"]
    _require(isinstance(bp, dict) and "z" in bp and "w" in bp,
             "basepoints must carry z and w")

    domains: Dict[str, Dict[str, int]] = {}
    for name, mults in (data.get("domains") or {}).items():
        _require(isinstance(mults, dict), "domain %r must map regions to ints" % name)
        clean = {}
        for rid, m in mults.items():
            _require(isinstance(m, int), "domain %r multiplicities are ints" % name)
            clean[str(rid)] = m
        domains[str(name)] = clean

    return PointedDiagram(
        genus=genus,
        points=points,
        arcs=arcs,
        curves=curves,
        regions=regions,
        z=_as_id(bp["z"], "basepoint z"),
        w=_as_id(bp["w"], "basepoint w"),
        domains=domains,
        comment=str(data.get("comment", "")),
    )


def _as_list(value, what: str) -> List:
    _require(isinstance(value, list), "%s must be a list" % what)
    return value


def _as_id(value, what: str) -> str:
    _require(isinstance(value, str) and value != "", "%s must be a nonempty string" % what)
    return value


def diagram_to_dict(d: PointedDiagram) -> Dict:
    data: Dict = {}
    if d.comment:
        data["comment"] = d.comment
    data["genus"] = d.genus
    data["points"] = [
        {
            "id": p.id, "alpha": p.alpha, "beta": p.beta,
            "quadrants": list(p.quadrants),
            **({"sign": p.sign} if p.sign is not None else {}),
        }
        for p in d.points.values()
    ]
    data["arcs"] = [{"id": a.id, "from": a.tail, "to": a.head} for a in d.arcs.values()]
    data["curves"] = [{"id": c.id, "kind": c.kind, "arcs": list(c.arcs)}
                      for c in d.curves.values()]
    data["regions"] = [
        {
            "id": r.id,
            "euler_char": r.euler_char,
            "corners": [[p, t] for p, t in r.corners],
            "boundary": [[("-" + a if s < 0 else a) for a, s in comp]
                         for comp in r.boundary],
        }
        for r in d.regions.values()
    ]
    data["basepoints"] = {"z": d.z, "w": d.w}
    if d.domains:
        data["domains"] = {k: dict(v) for k, v in d.domains.items()}
    return data


def load_diagram(path: str) -> PointedDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DiagramError("not valid JSON: %s" % exc) from None
    return diagram_from_dict(data)


def save_diagram(d: PointedDiagram, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(diagram_to_dict(d), fh, indent=2, sort_keys=False)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Validation


def _traversal_ends(arcs: Dict[str, Arc], arc_id: str, sign: int) -> Tuple[str, str]:
    a = arcs[arc_id]
    return (a.tail, a.head) if sign > 0 else (a.head, a.tail)


def validate(d: PointedDiagram) -> ValidationReport:
    """Check every structural invariant.  An empty report means accepted.

    Later phases assume earlier ones passed; on failure the report carries
    what was established so far rather than cascading noise.
    """
    errors: List[str] = []

    def err(msg: str) -> None:
        errors.append(msg)

    # Phase A: reference integrity.
    for p in d.points.values():
        for cid, kind in ((p.alpha, "alpha"), (p.beta, "beta")):
            c = d.curves.get(cid)
            if c is None:
                err("point %s references missing curve %s" % (p.id, cid))
            elif c.kind != kind:
                err("point %s: curve %s is not an %s curve" % (p.id, cid, kind))
        for q in p.quadrants:
            if q not in d.regions:
                err("point %s quadrant references missing region %s" % (p.id, q))
    for a in d.arcs.values():
        for pt in (a.tail, a.head):
            if pt not in d.points:
                err("arc %s endpoint %s is not a point" % (a.id, pt))
    seen_arcs: Dict[str, str] = {}
    for c in d.curves.values():
        for aid in c.arcs:
            if aid not in d.arcs:
                err("curve %s lists missing arc %s" % (c.id, aid))
            elif aid in seen_arcs:
                err("arc %s belongs to curves %s and %s" % (aid, seen_arcs[aid], c.id))
            else:
                seen_arcs[aid] = c.id
    for aid in d.arcs:
        if aid not in seen_arcs:
            err("arc %s belongs to no curve" % aid)
    for r in d.regions.values():
        for p, _tag in r.corners:
            if p not in d.points:
                err("region %s corner references missing point %s" % (r.id, p))
        for comp in r.boundary:
            for aid, _s in comp:
                if aid not in d.arcs:
                    err("region %s boundary references missing arc %s" % (r.id, aid))
    for bp_name, rid in (("z", d.z), ("w", d.w)):
        if rid not in d.regions:
            err("basepoint %s region %s does not exist" % (bp_name, rid))
    for name, mults in d.domains.items():
        for rid in mults:
            if rid not in d.regions:
                err("domain %s references missing region %s" % (name, rid))
    n_alpha = sum(1 for c in d.curves.values() if c.kind == "alpha")
    n_beta = len(d.curves) - n_alpha
    if n_alpha != d.genus or n_beta != d.genus:
        err("genus %d diagram needs %d curves per family, found %d alpha / %d beta"
            % (d.genus, d.genus, n_alpha, n_beta))
    if errors:
        return ValidationReport(errors)

    # Phase B: each curve is a single head-to-tail cycle through its points.
    for c in d.curves.values():
        for prev, nxt in zip(c.arcs, c.arcs[1:] + c.arcs[:1]):
            if d.arcs[prev].head != d.arcs[nxt].tail:
                err("curve %s: arc %s ends at %s but %s starts at %s"
                    % (c.id, prev, d.arcs[prev].head, nxt, d.arcs[nxt].tail))
        for aid in c.arcs:
            for pt in (d.arcs[aid].tail, d.arcs[aid].head):
                owner = d.points[pt].alpha if c.kind == "alpha" else d.points[pt].beta
                if owner != c.id:
                    err("curve %s passes through point %s owned by %s"
                        % (c.id, pt, owner))
    ends_at: Dict[Tuple[str, str], Dict[str, List[str]]] = {}
    for pid in d.points:
        ends_at[(pid, "alpha")] = {"tail": [], "head": []}
        ends_at[(pid, "beta")] = {"tail": [], "head": []}
    for c in d.curves.values():
        for aid in c.arcs:
            a = d.arcs[aid]
            if a.tail in d.points:
                ends_at[(a.tail, c.kind)]["tail"].append(aid)
            if a.head in d.points:
                ends_at[(a.head, c.kind)]["head"].append(aid)
    for pid in d.points:
        for kind in ("alpha", "beta"):
            for end in ("tail", "head"):
                n = len(ends_at[(pid, kind)][end])
                if n != 1:
                    err("point %s has %d %s %s-ends (needs exactly 1)"
                        % (pid, n, kind, end))
    if errors:
        return ValidationReport(errors)

    # Phase C: every arc has exactly one left side and one right side.
    left: Dict[str, str] = {}
    right: Dict[str, str] = {}
    for r in d.regions.values():
        for comp in r.boundary:
            if not comp:
                err("region %s has an empty boundary component" % r.id)
                continue
            for aid, s in comp:
                store = left if s > 0 else right
                if aid in store:
                    err("arc %s appears with sign %+d twice (regions %s, %s)"
                        % (aid, s, store[aid], r.id))
                else:
                    store[aid] = r.id
            for (a1, s1), (a2, s2) in zip(comp, comp[1:] + comp[:1]):
                if _traversal_ends(d.arcs, a1, s1)[1] != _traversal_ends(d.arcs, a2, s2)[0]:
                    err("region %s boundary is not head-to-tail at arc %s -> %s"
                        % (r.id, a1, a2))
    for aid in d.arcs:
        if aid not in left:
            err("arc %s has no left region" % aid)
        if aid not in right:
            err("arc %s has no right region" % aid)
    if errors:
        return ValidationReport(errors)

    # Phase D: ray assignment and crossing signs at every point.
    rays, sign_errors = _assign_rays(d, left, right)
    errors.extend(sign_errors)
    if errors:
        return ValidationReport(errors)

    # Phase E: boundary walks turn through matching quadrants, and each
    # region's stored corners agree with the quadrant map and the walks.
    walk_corners: Dict[str, List[Tuple[str, str]]] = {rid: [] for rid in d.regions}
    for r in d.regions.values():
        for comp in r.boundary:
            for (a1, s1), (a2, s2) in zip(comp, comp[1:] + comp[:1]):
                pid = _traversal_ends(d.arcs, a1, s1)[1]
                arr_end = (a1, "head" if s1 > 0 else "tail")
                dep_end = (a2, "tail" if s2 > 0 else "head")
                end_ray = rays[pid]["end_to_ray"]
                v = end_ray.get(arr_end)
                u = end_ray.get(dep_end)
                if v is None or u is None:
                    err("region %s boundary visits point %s via foreign arcs" % (r.id, pid))
                    continue
                if (RAYS.index(u) + 1) % 4 != RAYS.index(v):
                    err("region %s boundary at point %s: arrive ray %s after depart "
                        "ray %s is not a corner" % (r.id, pid, v, u))
                    continue
                tag = QUADRANTS[RAYS.index(u)]
                if d.points[pid].quadrants[RAYS.index(u)] != r.id:
                    err("region %s turns through quadrant %s of point %s, which the "
                        "point assigns to %s"
                        % (r.id, tag, pid, d.points[pid].quadrants[RAYS.index(u)]))
                walk_corners[r.id].append((pid, tag))
    derived: Dict[str, List[Tuple[str, str]]] = {rid: [] for rid in d.regions}
    for p in d.points.values():
        for k, rid in enumerate(p.quadrants):
            derived[rid].append((p.id, QUADRANTS[k]))
    for r in d.regions.values():
        if sorted(r.corners) != sorted(derived[r.id]):
            err("region %s stored corners %s do not match the quadrant map %s"
                % (r.id, sorted(r.corners), sorted(derived[r.id])))
        if sorted(walk_corners[r.id]) != sorted(derived[r.id]):
            err("region %s boundary walk corners %s do not match the quadrant map %s"
                % (r.id, sorted(walk_corners[r.id]), sorted(derived[r.id])))
    if errors:
        return ValidationReport(errors)

    # Phase F: Euler characteristic two ways, and per-region planarity.
    for r in d.regions.values():
        if r.euler_char > 1:
            if not (r.euler_char == 2 and not r.boundary and not d.points):
                err("region %s has euler_char %d > 1" % (r.id, r.euler_char))
        if r.boundary and r.euler_char != 2 - len(r.boundary):
            err("region %s: euler_char %d but %d boundary components (planar "
                "regions need 2 - #components)"
                % (r.id, r.euler_char, len(r.boundary)))
        if not r.boundary:
            if d.points:
                err("region %s has no boundary in a diagram with curves" % r.id)
            elif len(d.regions) != 1 or r.euler_char != 2:
                err("region %s: a boundaryless region must be the unique "
                    "sphere region" % r.id)
    total = len(d.points) - len(d.arcs) + sum(r.euler_char for r in d.regions.values())
    if total != 2 - 2 * d.genus:
        err("Euler characteristic %d does not equal 2 - 2*genus = %d"
            % (total, 2 - 2 * d.genus))
    if errors:
        return ValidationReport(errors)

    # Phase G: the subdivided complex must present H1 of a genus-g surface,
    # and each curve family must be independent in it.
    try:
        model = DiagramModel(d, _prevalidated=True)
    except DiagramError as exc:
        err(str(exc))
        return ValidationReport(errors)
    if model.h1_torsion:
        err("surface homology has torsion %s; the gluing data is inconsistent"
            % model.h1_torsion)
    if model.h1_rank != 2 * d.genus:
        err("surface H1 rank %d, expected %d" % (model.h1_rank, 2 * d.genus))
    if errors:
        return ValidationReport(errors)
    for kind in ("alpha", "beta"):
        coords = [model.curve_class(cid) for cid in model.curve_ids(kind)]
        if coords:
            dmat, _, _ = smith_normal_form([list(v) for v in coords])
            rank = sum(1 for i in range(min(len(coords), len(coords[0])))
                       if dmat[i][i] != 0)
        else:
            rank = 0
        if rank != d.genus:
            err("%s curves are homologically dependent (rank %d of %d)"
                % (kind, rank, d.genus))
    return ValidationReport(errors)


def _assign_rays(d: PointedDiagram, left: Dict[str, str], right: Dict[str, str]):
    """Per point: map rays E/N/W/S to arc ends and derive the crossing sign.

    The alpha ends fix E and W.  The two beta ends are assigned to N and S by
    matching the quadrant regions against arc sides; when both assignments
    match (all four quadrant regions coincide) the stored sign must break the
    tie.  Returns ({point: {"ray_to_end", "end_to_ray", "sign"}}, errors).
    """
    out: Dict[str, Dict] = {}
    errors: List[str] = []
    for p in d.points.values():
        a_curve = d.curves[p.alpha]
        b_curve = d.curves[p.beta]
        a_out = a_in = b_out = b_in = None
        for aid in a_curve.arcs:
            if d.arcs[aid].tail == p.id:
                a_out = aid
            if d.arcs[aid].head == p.id:
                a_in = aid
        for aid in b_curve.arcs:
            if d.arcs[aid].tail == p.id:
                b_out = aid
            if d.arcs[aid].head == p.id:
                b_in = aid
        quads = p.quadrants

        def sides_ok(aid: str, want_left: str, want_right: str) -> bool:
            return left[aid] == want_left and right[aid] == want_right

        if not sides_ok(a_out, quads[0], quads[3]):
            errors.append("point %s: outgoing alpha arc %s has sides (%s, %s), "
                          "quadrants say (%s, %s)"
                          % (p.id, a_out, left[a_out], right[a_out], quads[0], quads[3]))
        if not sides_ok(a_in, quads[1], quads[2]):
            errors.append("point %s: incoming alpha arc %s has sides (%s, %s), "
                          "quadrants say (%s, %s)"
                          % (p.id, a_in, left[a_in], right[a_in], quads[1], quads[2]))
        plus_ok = (sides_ok(b_out, quads[1], quads[0]) and
                   sides_ok(b_in, quads[2], quads[3]))
        minus_ok = (sides_ok(b_in, quads[0], quads[1]) and
                    sides_ok(b_out, quads[3], quads[2]))
        if plus_ok and minus_ok:
            if p.sign in (1, -1):
                sign = p.sign
            else:
                errors.append("point %s: quadrant regions coincide, crossing sign "
                              "must be stored explicitly" % p.id)
                sign = 1
        elif plus_ok:
            sign = 1
            if p.sign not in (None, 1):
                errors.append("point %s: stored sign %d contradicts regions (+1)"
                              % (p.id, p.sign))
        elif minus_ok:
            sign = -1
            if p.sign not in (None, -1):
                errors.append("point %s: stored sign %d contradicts regions (-1)"
                              % (p.id, p.sign))
        else:
            errors.append("point %s: beta arc sides match no quadrant assignment"
                          % p.id)
            sign = 1
        if sign > 0:
            ray_to_end = {"E": (a_out, "tail"), "N": (b_out, "tail"),
                          "W": (a_in, "head"), "S": (b_in, "head")}
        else:
            ray_to_end = {"E": (a_out, "tail"), "N": (b_in, "head"),
                          "W": (a_in, "head"), "S": (b_out, "tail")}
        out[p.id] = {
            "ray_to_end": ray_to_end,
            "end_to_ray": {v: k for k, v in ray_to_end.items()},
            "sign": sign,
        }
    return out, errors


# ---------------------------------------------------------------------------
# Derived model


class DiagramModel:
    """Caches the derived combinatorial structure of a validated diagram.

    Pre-condition: the diagram passes validate() (the constructor re-checks
    unless _prevalidated is set by the validator itself, which needs the
    homology part of the model to finish its own job).
    """

    def __init__(self, diagram: PointedDiagram, _prevalidated: bool = False):
        if not _prevalidated:
            report = validate(diagram)
            if not report.is_valid:
                raise DiagramError("invalid diagram: " + "; ".join(report.errors))
        self.d = diagram
        self.point_ids = sorted(diagram.points)
        self.arc_ids = sorted(diagram.arcs)
        self.region_ids = sorted(diagram.regions)
        self.left: Dict[str, str] = {}
        self.right: Dict[str, str] = {}
        for r in diagram.regions.values():
            for comp in r.boundary:
                for aid, s in comp:
                    (self.left if s > 0 else self.right)[aid] = r.id
        self.rays, ray_errors = _assign_rays(diagram, self.left, self.right)
        if ray_errors:
            raise DiagramError("; ".join(ray_errors))
        self.sign = {pid: self.rays[pid]["sign"] for pid in diagram.points}
        self.curve_of_arc: Dict[str, str] = {}
        for c in diagram.curves.values():
            for aid in c.arcs:
                self.curve_of_arc[aid] = c.id
        self._build_faces()
        self._build_homology()

    # -- subdivision into disc faces ------------------------------------

    def _build_faces(self) -> None:
        """Cut every multi-component region into one disc by virtual edges.

        The disc word of a region is component 0 with each further component
        spliced in at the first junction vertex of component 0 via a fresh
        virtual edge (traversed there and back).  Words are stored as lists
        of (edge_key, sign); virtual edge keys are ("v", region, index).
        """
        self.face_word: Dict[str, List[Tuple[EdgeKey, int]]] = {}
        self.virtual_edges: List[Tuple[EdgeKey, str, str]] = []
        for rid in self.region_ids:
            r = self.d.regions[rid]
            comps = r.boundary
            if not comps:
                self.face_word[rid] = []
                continue

            def junction_vertex(comp: Sequence[Tuple[str, int]]) -> str:
                aid, s = comp[0]
                return _traversal_ends(self.d.arcs, aid, s)[0]

            word: List[Tuple[EdgeKey, int]] = [(("a", aid), s) for aid, s in comps[0]]
            anchor = junction_vertex(comps[0])
            for i, comp in enumerate(comps[1:], start=1):
                vkey: EdgeKey = ("v", rid, i)
                far = junction_vertex(comp)
                self.virtual_edges.append((vkey, anchor, far))
                spliced = [(vkey, 1)]
                spliced.extend((("a", aid), s) for aid, s in comp)
                spliced.append((vkey, -1))
                word = spliced + word
            self.face_word[rid] = word
        self.edge_keys: List[EdgeKey] = [("a", aid) for aid in self.arc_ids]
        self.edge_keys.extend(v[0] for v in self.virtual_edges)
        self.edge_index = {k: i for i, k in enumerate(self.edge_keys)}
        self.edge_ends: Dict[EdgeKey, Tuple[str, str]] = {}
        for aid in self.arc_ids:
            a = self.d.arcs[aid]
            self.edge_ends[("a", aid)] = (a.tail, a.head)
        for vkey, tail, head in self.virtual_edges:
            self.edge_ends[vkey] = (tail, head)

    # -- cellular homology of the subdivided surface --------------------

    def _build_homology(self) -> None:
        n_pts = len(self.point_ids)
        n_edges = len(self.edge_keys)
        pt_index = {pid: i for i, pid in enumerate(self.point_ids)}
        d1 = [[0] * n_edges for _ in range(n_pts)]
        for key, (tail, head) in self.edge_ends.items():
            j = self.edge_index[key]
            d1[pt_index[head]][j] += 1
            d1[pt_index[tail]][j] -= 1
        self._pt_index = pt_index
        self._d1 = d1
        cycles = kernel_basis(d1) if n_edges else []
        self._cycle_mat = [[cycles[j][i] for j in range(len(cycles))]
                          for i in range(n_edges)]
        face_cols: List[List[int]] = []
        for rid in self.region_ids:
            col = [0] * n_edges
            for key, s in self.face_word[rid]:
                col[self.edge_index[key]] += s
            face_cols.append(col)
        in_cycle_coords: List[List[int]] = []
        for col in face_cols:
            if not cycles:
                if any(col):
                    raise DiagramError("region boundary is not a cycle")
                in_cycle_coords.append([])
                continue
            y = solve_integer(self._cycle_mat, col)
            if y is None:
                raise DiagramError("region boundary is not a cycle")
            in_cycle_coords.append(y)
        k = len(cycles)
        if k:
            ymat = [[in_cycle_coords[r][i] for r in range(len(face_cols))]
                    for i in range(k)]
            dmat, umat, _ = smith_normal_form(ymat)
            ncols = len(face_cols)
            diag = [dmat[i][i] if i < ncols else 0 for i in range(k)]
        else:
            umat = []
            diag = []
        self._h1_u = umat
        self._h1_free_rows = [i for i in range(k) if diag[i] == 0]
        self.h1_rank = len(self._h1_free_rows)
        self.h1_torsion = [x for x in diag if x > 1]
        self._h1y: Optional[Quotient] = None

    def chain_vector(self, chain: Chain) -> List[int]:
        v = [0] * len(self.edge_keys)
        for key, c in chain.items():
            v[self.edge_index[key]] += c
        return v

    def cycle_class(self, chain: Chain) -> Tuple[int, ...]:
        """H1(surface) coordinates of a 1-cycle given as an edge chain."""
        vec = self.chain_vector(chain)
        boundary = mat_vec(self._d1, vec)
        if any(boundary):
            raise DiagramError("chain is not a cycle")
        if not self._cycle_mat or not self._cycle_mat[0]:
            return ()
        y = solve_integer(self._cycle_mat, vec)
        if y is None:
            raise DiagramError("cycle lies outside the computed cycle lattice")
        w = mat_vec(self._h1_u, y)
        return tuple(w[i] for i in self._h1_free_rows)

    def curve_ids(self, kind: str) -> List[str]:
        return sorted(c.id for c in self.d.curves.values() if c.kind == kind)

    def curve_class(self, curve_id: str) -> Tuple[int, ...]:
        chain: Chain = {}
        for aid in self.d.curves[curve_id].arcs:
            chain[("a", aid)] = chain.get(("a", aid), 0) + 1
        return self.cycle_class(chain)

    def ambient_quotient(self) -> Quotient:
        """H1 of the ambient 3-manifold as a quotient of H1(surface)."""
        if self._h1y is None:
            gens = [list(self.curve_class(cid))
                    for kind in ("alpha", "beta")
                    for cid in self.curve_ids(kind)]
            self._h1y = Quotient(self.h1_rank, gens)
        return self._h1y

    # -- loops along the skeleton ----------------------------------------

    def segment_chain(self, curve_id: str, p_from: str, p_to: str) -> Chain:
        """Arcs traversed walking curve_id forward from p_from to p_to."""
        chain: Chain = {}
        if p_from == p_to:
            return chain
        arcs = self.d.curves[curve_id].arcs
        starts = [i for i, aid in enumerate(arcs) if self.d.arcs[aid].tail == p_from]
        if not starts:
            raise DiagramError("point %s is not on curve %s" % (p_from, curve_id))
        i = starts[0]
        for _ in range(len(arcs)):
            aid = arcs[i % len(arcs)]
            chain[("a", aid)] = chain.get(("a", aid), 0) + 1
            if self.d.arcs[aid].head == p_to:
                return chain
            i += 1
        raise DiagramError("point %s is not on curve %s" % (p_to, curve_id))

    # -- loops transverse to the skeleton --------------------------------

    def dual_loop_chain(self, steps: Sequence[Tuple[str, str]]) -> Chain:
        """Skeleton 1-chain homotopic to a loop crossing regions.

        steps is the cyclic sequence (region, arc) meaning the loop sits in
        the region and then crosses the arc into the next region; crossed
        arcs must have the two consecutive regions as their two sides.  The
        crossing through an arc is slid along the arc to its tail vertex;
        this lands on the junction of the face boundary word adjacent to the
        side being crossed (occurrences of the same vertex elsewhere on the
        word are different points of the disc, so the choice matters).  The
        in-region chord then becomes a forward walk of the disc boundary
        between the two junctions, which is unique up to homotopy.  Virtual
        edges may appear in the result; the loop itself never crosses them.
        """
        chain: Chain = {}
        n = len(steps)

        def junction(rid: str, aid: str) -> int:
            # Junction index of the tail of arc aid on the side of rid;
            # junction j sits between word[j-1] and word[j].
            word = self.face_word[rid]
            s = 1 if self.left[aid] == rid else -1
            for pos, (key, sgn) in enumerate(word):
                if key == ("a", aid) and sgn == s:
                    return pos if s > 0 else (pos + 1) % len(word)
            raise DiagramError("arc %s does not bound region %s" % (aid, rid))

        for i, (rid, aid) in enumerate(steps):
            next_rid = steps[(i + 1) % n][0]
            lft, rgt = self.left[aid], self.right[aid]
            if lft == rgt:
                raise DiagramError("step %d crosses arc %s with the same region "
                                   "on both sides" % (i, aid))
            if {lft, rgt} != {rid, next_rid}:
                raise DiagramError("step %d crosses arc %s not between %s and %s"
                                   % (i, aid, rid, next_rid))
            prev_aid = steps[i - 1][1]
            word = self.face_word[rid]
            j = junction(rid, prev_aid)
            goal = junction(rid, aid)
            while j != goal:
                key, s = word[j]
                chain[key] = chain.get(key, 0) + s
                j = (j + 1) % len(word)
        return chain

    # -- knot data --------------------------------------------------------

    def knot_beta_arc(self) -> Optional[str]:
        """The single beta arc separating the two basepoint regions."""
        if self.d.z == self.d.w:
            return None
        candidates = []
        for c in self.d.curves.values():
            if c.kind != "beta":
                continue
            for aid in c.arcs:
                if {self.left[aid], self.right[aid]} == {self.d.z, self.d.w}:
                    candidates.append(aid)
        return sorted(candidates)[0] if candidates else None

    def region_path(self, kind: str, start: str, goal: str,
                    rotate: int = 0) -> List[Tuple[str, str]]:
        """BFS path of (region, crossed arc) steps using only arcs of one
        curve family; rotate permutes the deterministic neighbor order so
        callers can probe independence from route choices."""
        if start == goal:
            return []
        adjacency: Dict[str, List[Tuple[str, str]]] = {rid: [] for rid in self.region_ids}
        for c in self.d.curves.values():
            if c.kind != kind:
                continue
            for aid in sorted(c.arcs):
                lft, rgt = self.left[aid], self.right[aid]
                adjacency[lft].append((rgt, aid))
                adjacency[rgt].append((lft, aid))
        for rid in adjacency:
            neigh = sorted(adjacency[rid])
            if neigh and rotate:
                k = rotate % len(neigh)
                neigh = neigh[k:] + neigh[:k]
            adjacency[rid] = neigh
        prev: Dict[str, Tuple[str, str]] = {start: ("", "")}
        queue = [start]
        while queue:
            rid = queue.pop(0)
            if rid == goal:
                break
            for nxt, aid in adjacency[rid]:
                if nxt not in prev:
                    prev[nxt] = (rid, aid)
                    queue.append(nxt)
        if goal not in prev:
            raise DiagramError("no %s-avoiding path between regions %s and %s"
                               % ("beta" if kind == "alpha" else "alpha", start, goal))
        steps: List[Tuple[str, str]] = []
        rid = goal
        while rid != start:
            parent, aid = prev[rid]
            steps.append((parent, aid))
            rid = parent
        steps.reverse()
        return steps

    def knot_class(self, rotate: int = 0) -> Tuple[int, ...]:
        """[K] in H1(Y): cross from w to z through beta arcs only, return
        through alpha arcs only, convert to a skeleton cycle and project.

        Pre-condition: z and w are adjacent along a beta arc (checked), or
        coincide (degenerate unknot; the class is 0).
        """
        q = self.ambient_quotient()
        if self.d.z == self.d.w:
            return q.canonical([0] * self.h1_rank)
        if self.knot_beta_arc() is None:
            raise DiagramError("diagram is not knot-adapted: basepoint regions "
                               "do not share a beta arc")
        sigma = self.region_path("beta", self.d.w, self.d.z, rotate)
        tau = self.region_path("alpha", self.d.z, self.d.w, rotate)
        chain = self.dual_loop_chain(sigma + tau)
        return q.canonical(self.cycle_class(chain))

    # -- misc helpers ------------------------------------------------------

    def region_corner_count(self, rid: str) -> int:
        return len(self.d.regions[rid].corners)

    def is_disc(self, rid: str) -> bool:
        return self.d.regions[rid].euler_char == 1

    def quadrant_region(self, pid: str, tag: str) -> str:
        return self.d.points[pid].quadrants[QUADRANTS.index(tag)]


# ---------------------------------------------------------------------------
# Derived topological data


def surface_h1(d: PointedDiagram) -> Dict:
    """Rank-2g surface homology with the curve classes in its basis."""
    model = DiagramModel(d)
    return {
        "rank": model.h1_rank,
        "alpha": {cid: list(model.curve_class(cid)) for cid in model.curve_ids("alpha")},
        "beta": {cid: list(model.curve_class(cid)) for cid in model.curve_ids("beta")},
    }


def ambient_h1(d: PointedDiagram) -> List[int]:
    """Invariant factors of H1 of the ambient manifold (zeros = free ranks,
    trivial factors dropped, divisibility order)."""
    return list(DiagramModel(d).ambient_quotient().factors)


def recover_knot_data(d: PointedDiagram) -> Tuple[int, ...]:
    """Class of the knot determined by the two basepoints, as the canonical
    form of an element of H1(Y).  Degenerate (z == w) diagrams give 0."""
    return DiagramModel(d).knot_class()
