"""Construct diagrams from crossing sequences and crossing signs.

A diagram is pinned combinatorially by (a) the cyclic sequence of crossings
along each curve and (b) the sign of every crossing: these determine the
rays at each point, and walking "turn clockwise at every point" with the
region kept on the left traces all boundary circles of the complement.
Regions that are discs are exactly the traced circles; regions with several
boundary circles (they are planar, so euler_char = 2 - #circles) are given
by grouping circles explicitly.

Builders here produce the surgery-slope family, its fingered variant with a
nonzero differential, and the two-bigon essential circle diagram; they are
used both by the shipped corpus and by the fuzzing command.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import (
    QUADRANTS,
    RAYS,
    Arc,
    Curve,
    DiagramError,
    IntersectionPoint,
    PointedDiagram,
    Region,
    validate,
)

Traversal = Tuple[str, int]


def build_diagram(
    genus: int,
    alpha: Dict[str, Sequence[str]],
    beta: Dict[str, Sequence[str]],
    signs: Dict[str, int],
    z_rep: Traversal,
    w_rep: Traversal,
    regions: Optional[Dict[str, List[Traversal]]] = None,
    comment: str = "",
) -> PointedDiagram:
    """Assemble and validate a diagram from rotation data.

    alpha/beta map curve ids to cyclic crossing sequences; arc i of curve c
    is named "c.i" and runs from sequence[i] to sequence[i+1].  regions maps
    region ids to one representative (arc, sign) traversal per boundary
    circle; None means every traced circle is its own disc region, named
    R0, R1, ... in a deterministic order.  z_rep/w_rep pick the basepoint
    regions by a traversal on their boundary.
    """
    curves: Dict[str, Curve] = {}
    arcs: Dict[str, Arc] = {}
    alpha_of: Dict[str, str] = {}
    beta_of: Dict[str, str] = {}
    for kind, family in (("alpha", alpha), ("beta", beta)):
        for cid, seq in family.items():
            if not seq:
                raise DiagramError("curve %s has an empty crossing sequence" % cid)
            arc_ids = []
            for i, pid in enumerate(seq):
                owner = alpha_of if kind == "alpha" else beta_of
                if pid in owner:
                    raise DiagramError("point %s appears on two %s curves" % (pid, kind))
                owner[pid] = cid
                aid = "%s.%d" % (cid, i)
                arcs[aid] = Arc(id=aid, tail=pid, head=seq[(i + 1) % len(seq)])
                arc_ids.append(aid)
            curves[cid] = Curve(id=cid, kind=kind, arcs=arc_ids)
    point_ids = sorted(alpha_of)
    if sorted(beta_of) != point_ids:
        raise DiagramError("alpha and beta curves cross different point sets")
    for pid in point_ids:
        if signs.get(pid) not in (1, -1):
            raise DiagramError("point %s needs a crossing sign" % pid)

    # Ray assignment straight from the rotation data.
    ray_to_end: Dict[str, Dict[str, Tuple[str, str]]] = {}
    for pid in point_ids:
        a_arcs = curves[alpha_of[pid]].arcs
        b_arcs = curves[beta_of[pid]].arcs
        a_out = next(a for a in a_arcs if arcs[a].tail == pid)
        a_in = next(a for a in a_arcs if arcs[a].head == pid)
        b_out = next(a for a in b_arcs if arcs[a].tail == pid)
        b_in = next(a for a in b_arcs if arcs[a].head == pid)
        if signs[pid] > 0:
            rays = {"E": (a_out, "tail"), "N": (b_out, "tail"),
                    "W": (a_in, "head"), "S": (b_in, "head")}
        else:
            rays = {"E": (a_out, "tail"), "N": (b_in, "head"),
                    "W": (a_in, "head"), "S": (b_out, "tail")}
        ray_to_end[pid] = rays
    end_to_ray = {
        pid: {end: ray for ray, end in rays.items()}
        for pid, rays in ray_to_end.items()
    }

    # Face tracing: departing clockwise-next from the arrival ray keeps the
    # face on the left, so each orbit of `step` is one boundary circle.
    def step(t: Traversal) -> Tuple[Traversal, Tuple[str, str]]:
        aid, s = t
        pid = arcs[aid].head if s > 0 else arcs[aid].tail
        arr_end = (aid, "head" if s > 0 else "tail")
        v = end_to_ray[pid][arr_end]
        u = RAYS[(RAYS.index(v) - 1) % 4]
        dep_arc, dep_kind = ray_to_end[pid][u]
        corner = (pid, QUADRANTS[RAYS.index(u)])
        return (dep_arc, 1 if dep_kind == "tail" else -1), corner

    all_traversals = sorted((aid, s) for aid in arcs for s in (1, -1))
    seen: Dict[Traversal, int] = {}
    circles: List[List[Traversal]] = []
    circle_corners: List[List[Tuple[str, str]]] = []
    for t0 in all_traversals:
        if t0 in seen:
            continue
        word: List[Traversal] = []
        corners: List[Tuple[str, str]] = []
        t = t0
        while t not in seen:
            seen[t] = len(circles)
            word.append(t)
            t, corner = step(t)
            corners.append(corner)
        if t != t0:
            raise DiagramError("face tracing did not close at %s" % (t0,))
        circles.append(word)
        circle_corners.append(corners)

    # Group circles into regions.
    if regions is None:
        grouping: Dict[str, List[Traversal]] = {
            "R%d" % i: [circles[i][0]] for i in range(len(circles))
        }
    else:
        grouping = {rid: list(reps) for rid, reps in regions.items()}
    circle_of: Dict[Traversal, int] = {}
    for i, word in enumerate(circles):
        for t in word:
            circle_of[t] = i
    claimed: Dict[int, str] = {}
    region_objects: Dict[str, Region] = {}
    for rid, reps in grouping.items():
        comps = []
        corner_list: List[Tuple[str, str]] = []
        for rep in reps:
            rep = (rep[0], rep[1])
            if rep not in circle_of:
                raise DiagramError("region %s representative %s is not a traversal"
                                   % (rid, rep))
            i = circle_of[rep]
            if i in claimed:
                raise DiagramError("boundary circle of %s also claimed by %s"
                                   % (rid, claimed[i]))
            claimed[i] = rid
            comps.append(list(circles[i]))
            corner_list.extend(circle_corners[i])
        region_objects[rid] = Region(
            id=rid,
            euler_char=2 - len(comps),
            corners=corner_list,
            boundary=comps,
        )
    missing = [i for i in range(len(circles)) if i not in claimed]
    if missing:
        raise DiagramError("boundary circles %s belong to no region (starts: %s)"
                           % (missing, [circles[i][0] for i in missing]))

    quadrant_map: Dict[str, Dict[str, str]] = {pid: {} for pid in point_ids}
    for rid, reg in region_objects.items():
        for pid, tag in reg.corners:
            if tag in quadrant_map[pid]:
                raise DiagramError("quadrant %s of %s claimed twice" % (tag, pid))
            quadrant_map[pid][tag] = rid
    points: Dict[str, IntersectionPoint] = {}
    for pid in point_ids:
        if len(quadrant_map[pid]) != 4:
            raise DiagramError("point %s has uncovered quadrants" % pid)
        points[pid] = IntersectionPoint(
            id=pid,
            alpha=alpha_of[pid],
            beta=beta_of[pid],
            quadrants=tuple(quadrant_map[pid][tag] for tag in QUADRANTS),
            sign=signs[pid],
        )

    def region_of(rep: Traversal) -> str:
        if rep not in circle_of:
            raise DiagramError("basepoint representative %s is not a traversal"
                               % (rep,))
        return claimed[circle_of[rep]]

    diagram = PointedDiagram(
        genus=genus,
        points=points,
        arcs=arcs,
        curves=curves,
        regions=region_objects,
        z=region_of(z_rep),
        w=region_of(w_rep),
        comment=comment,
    )
    report = validate(diagram)
    if not report.is_valid:
        raise DiagramError("built diagram fails validation: "
                           + "; ".join(report.errors))
    return diagram


# ---------------------------------------------------------------------------
# Concrete families


def lens_diagram(e: int) -> PointedDiagram:
    """Genus-1 diagram with slopes meeting in |e| points: the complement of
    an order-|e| knot (the core circle) in the lens space of order |e|.
    e = 1 has a single region, so both basepoints are forced to coincide."""
    if e < 1:
        raise DiagramError("slope count must be >= 1, got %d" % e)
    pts = ["p%d" % k for k in range(e)]
    return build_diagram(
        genus=1,
        alpha={"A": pts},
        beta={"B": pts},
        signs={p: 1 for p in pts},
        z_rep=("A.0", 1),
        w_rep=("A.0", -1),
        comment="two curves on the torus crossing %d times; the basepoints "
                "sit on either side of one beta arc" % e,
    )


def lens_finger_diagram(e: int) -> PointedDiagram:
    """The slope-e diagram with a finger pushed across the alpha curve.

    Two extra crossings u, v create a cancelling pair of small discs, so the
    differential is nonzero while all homology ranks match lens_diagram(e)."""
    if e < 1:
        raise DiagramError("slope count must be >= 1, got %d" % e)
    pts = ["p%d" % k for k in range(e)]
    seq = [pts[0], "u", "v"] + pts[1:]
    signs = {p: 1 for p in pts}
    signs["u"] = -1
    signs["v"] = 1
    return build_diagram(
        genus=1,
        alpha={"A": seq},
        beta={"B": seq},
        signs=signs,
        z_rep=("B.0", 1),
        w_rep=("A.0", 1) if e == 1 else ("B.%d" % (e + 1), 1),
        comment="slope-%d diagram isotoped so a finger of the beta curve "
                "crosses alpha twice" % e,
    )


def essential_circle_diagram() -> PointedDiagram:
    """Two curves in the same torus homology class, meeting in a cancelling
    pair of points.  The manifold is the circle bundle S1 x S2 and the knot
    (basepoints on the two sides of one beta arc) is the essential circle,
    a generator of its infinite first homology."""
    return build_diagram(
        genus=1,
        alpha={"A": ["p", "q"]},
        beta={"B": ["p", "q"]},
        signs={"p": 1, "q": -1},
        regions={
            "U": [("A.0", 1)],
            "D": [("A.1", -1)],
            "REST": [("B.0", 1), ("A.0", -1)],
        },
        z_rep=("B.0", 1),
        w_rep=("B.1", 1),
        comment="parallel curves with a cancelling bigon pair; the annulus "
                "region carries z",
    )


# Multiplicity vector of the genus-1 piece cut out by alpha1 and beta2 in
# genus2_tube_diagram; its support runs through handle A (regions R1 and R3),
# misses z, and covers w once.
GENUS2_TUBE_P: Dict[str, int] = {"R1": 1, "R3": 1}


def genus2_tube_diagram() -> PointedDiagram:
    """A genus-2 diagram of the double connected sum of S1 x S2.

    Around handle A, alpha2 and beta1 are disjoint nested meridian circles;
    the annulus between them (R3) plus the annulus through the handle (R1)
    forms the 0/1 periodic domain GENUS2_TUBE_P with euler characteristic -2.
    Handle B carries beta2 (a circle around one mouth with a finger pushed
    across alpha2 at v1, v2) and alpha1 (a circle around the other mouth with
    a finger pushed across beta1 at u1, u2).  Both fingers leave a bigon at
    the tip (R4, R5) and a disc-pair region through handle B (R2).

    There are four generators {u1,u2} x {v1,v2}, one spin-c class, and the
    all-positive periodic domains make the diagram weakly admissible at
    neither basepoint, so only the domain and grading machinery applies.
    The knot crosses beta2 once and generates a free factor of H1."""
    d = build_diagram(
        genus=2,
        alpha={"A1": ["u1", "u2"], "A2": ["v1", "v2"]},
        beta={"B1": ["u1", "u2"], "B2": ["v1", "v2"]},
        signs={"u1": 1, "u2": -1, "v1": 1, "v2": -1},
        regions={
            "R1": [("A2.0", 1), ("A1.0", -1)],
            "R2": [("A2.1", -1), ("A1.1", 1)],
            "R3": [("A2.0", -1), ("A1.1", -1)],
            "R4": [("A2.1", 1)],
            "R5": [("A1.0", 1)],
        },
        z_rep=("B2.1", 1),
        w_rep=("B2.1", -1),
        comment="nested meridians around one handle with fingered circles "
                "from the other; carries a genus-1 periodic domain",
    )
    d.domains["P"] = dict(GENUS2_TUBE_P)
    return d
