"""Diagram-level symmetries and the checks they make executable.

Three transforms: exchanging the two basepoints, reversing the surface
orientation while exchanging the two curve families, and their composite.
Each returns the transformed diagram together with a record of how
generators and classes correspond, and re-verifies on the spot whatever
identity is provable at this level: the basepoint swap leaves the
differential literally unchanged, conjugation preserves the rank table as
a multiset, and the composite induces an involution on classes pairing
equal ranks.

The quadrant relabeling under conjugation depends on the crossing sign:
positive crossings exchange their NW and SE quadrants, negative crossings
their NE and SW quadrants, and the other two stay put.  Region boundary
words reverse with flipped signs.  Both facts fall out of re-deriving the
ray order at a crossing after the roles of the curves are exchanged on the
reversed surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import (
    Arc,
    Curve,
    DiagramError,
    DiagramModel,
    IntersectionPoint,
    InvariantError,
    PointedDiagram,
    Region,
    diagram_from_dict,
    diagram_to_dict,
)
from .domains import (
    DiagramLike,
    _model,
    alpha_boundary_matrix,
    check_generator,
    domain_vector,
    multiplicity,
)
from .chain_f2 import RankTable, differential, enumerate_generators, homology
from .spinc import label_shift_pdk, partition

Generator = Tuple[str, ...]
ClassKey = Tuple[int, ...]

_SWAP_PLUS = {"NE": "NE", "NW": "SE", "SW": "SW", "SE": "NW"}
_SWAP_MINUS = {"NE": "SW", "NW": "NW", "SW": "NE", "SE": "SE"}


@dataclass
class DiagramTransform:
    kind: str
    generator_map: Dict[Generator, Generator]
    class_map: Dict[ClassKey, ClassKey]
    label_shift: Optional[Tuple[int, ...]] = None
    notes: List[str] = field(default_factory=list)


def _try_differential(m: DiagramModel, budget: Optional[int]):
    try:
        return differential(m, budget=budget)
    except DiagramError:
        return None


def point_swap(d: DiagramLike, check: bool = True,
               budget: Optional[int] = None) -> Tuple[PointedDiagram, DiagramTransform]:
    """The same diagram with z and w exchanged.

    Checked postconditions: the generator partition is untouched, the
    knot class reverses sign, and wherever the differential is defined on
    both sides it is literally the same map.  A differential mismatch is
    an implementation bug, reported as such."""
    m = _model(d)
    data = diagram_to_dict(m.d)
    data["basepoints"] = {"z": m.d.w, "w": m.d.z}
    swapped = diagram_from_dict(data)
    m2 = DiagramModel(swapped)
    gens = enumerate_generators(m, budget=budget)
    t = DiagramTransform(kind="point-swap",
                         generator_map={g: g for g in gens},
                         class_map={},
                         label_shift=m.knot_class())
    if check:
        part, part2 = partition(m, generators=gens), partition(m2, generators=gens)
        if part != part2:
            raise InvariantError("basepoint swap changed the class partition")
        t.class_map = {cls["key"]: cls["key"] for cls in part}
        q = m.ambient_quotient()
        if m2.knot_class() != q.canonical(q.neg(list(m.knot_class()))):
            raise InvariantError("swapped knot class is not the negative")
        diff, diff2 = _try_differential(m, budget), _try_differential(m2, budget)
        if diff is not None and diff2 is not None:
            if diff != diff2:
                raise InvariantError("differential changed under basepoint swap")
            t.notes.append("differential compared: equal")
        else:
            t.notes.append("differential undefined on %s"
                           % ("both sides" if diff is None and diff2 is None
                              else ("the original side" if diff is None
                                    else "the swapped side")))
    return swapped, t


def conjugate(d: DiagramLike, check: bool = True,
              budget: Optional[int] = None) -> Tuple[PointedDiagram, DiagramTransform]:
    """The diagram of the reversed surface: curve families exchange roles,
    basepoints exchange, quadrants relabel by crossing sign, boundary
    words reverse with flipped signs.  Checked postcondition: when
    homology is computable on both sides, per-class rank multisets agree
    under the member-wise class correspondence."""
    m = _model(d)
    old = m.d
    points = {}
    for p in old.points.values():
        swap = _SWAP_PLUS if m.sign[p.id] > 0 else _SWAP_MINUS
        by_tag = dict(zip(("NE", "NW", "SW", "SE"), p.quadrants))
        points[p.id] = IntersectionPoint(
            id=p.id, alpha=p.beta, beta=p.alpha,
            quadrants=tuple(by_tag[swap[tag]]
                            for tag in ("NE", "NW", "SW", "SE")),
            sign=m.sign[p.id])
    curves = {
        c.id: Curve(id=c.id, kind="beta" if c.kind == "alpha" else "alpha",
                    arcs=list(c.arcs))
        for c in old.curves.values()
    }
    swap_tag = {pid: (_SWAP_PLUS if m.sign[pid] > 0 else _SWAP_MINUS)
                for pid in old.points}
    regions = {}
    for r in old.regions.values():
        regions[r.id] = Region(
            id=r.id, euler_char=r.euler_char,
            corners=[(pid, swap_tag[pid][tag]) for pid, tag in r.corners],
            boundary=[[(aid, -s) for aid, s in reversed(comp)]
                      for comp in r.boundary])
    conj = PointedDiagram(
        genus=old.genus,
        points=points,
        arcs={a.id: Arc(id=a.id, tail=a.tail, head=a.head)
              for a in old.arcs.values()},
        curves=curves,
        regions=regions,
        z=old.w, w=old.z,
        domains={name: dict(dom) for name, dom in old.domains.items()},
        comment=old.comment)
    m2 = DiagramModel(conj)
    gens = enumerate_generators(m, budget=budget)
    t = DiagramTransform(kind="conjugation",
                         generator_map={g: g for g in gens},
                         class_map={})
    if check:
        part, part2 = partition(m, generators=gens), partition(m2, generators=gens)
        key2_of = {}
        for cls in part2:
            for g in cls["generators"]:
                key2_of[g] = cls["key"]
        for cls in part:
            images = {key2_of[g] for g in cls["generators"]}
            if len(images) != 1:
                raise InvariantError("conjugation split the class %s"
                                     % (cls["key"],))
            t.class_map[cls["key"]] = images.pop()
        if len(set(t.class_map.values())) != len(t.class_map):
            raise InvariantError("conjugation class correspondence is not "
                                 "a bijection")
        tables = []
        for model in (m, m2):
            try:
                tables.append(homology(model, budget=budget))
            except DiagramError:
                tables.append(None)
        if tables[0] is not None and tables[1] is not None:
            if _class_rank_multisets(tables[0]) != _class_rank_multisets(tables[1]):
                raise InvariantError("conjugation changed the rank table")
            t.notes.append("rank tables compared: equal multisets")
        else:
            t.notes.append("homology undefined on a side; tables not compared")
    return conj, t


def _class_rank_multisets(table: RankTable):
    per_class = sorted(
        (tuple(sorted(r for _, _, r in c["entries"] if r)), c["total"])
        for c in table.classes
    )
    return per_class


def knot_conjugation_check(d: DiagramLike,
                           budget: Optional[int] = None) -> Dict:
    """Composite symmetry report: composes the basepoint swap with
    conjugation, computes the induced involution on classes (key goes to
    minus key minus the knot class), and checks classes pair with equal
    rank.  Fixed classes are reported, not failed; their presence is
    equivalent to the knot class being divisible by two inside the
    realized classes."""
    m = _model(d)
    swapped, _ = point_swap(m, check=False, budget=budget)
    composed, _ = conjugate(swapped, check=False, budget=budget)
    DiagramModel(composed)
    q = m.ambient_quotient()
    kc = list(m.knot_class())
    part = partition(m, budget=budget)
    keys = [cls["key"] for cls in part]
    invol = {}
    for key in keys:
        image = q.canonical(q.neg(q.add(list(key), kc)))
        invol[key] = image
    report: Dict = {"check": "knot-conjugation", "status": "pass",
                    "involution": invol,
                    "fixed": sorted(k for k, v in invol.items() if k == v),
                    "witnesses": []}
    bad_targets = sorted(set(invol.values()) - set(keys))
    if bad_targets:
        report["status"] = "fail"
        report["witnesses"].append(
            {"kind": "image-not-realized", "classes": bad_targets})
        return report
    for key in keys:
        if invol[invol[key]] != key:
            report["status"] = "fail"
            report["witnesses"].append({"kind": "not-an-involution",
                                        "class": key})
    try:
        table = homology(m, budget=budget)
    except DiagramError as exc:
        report["ranks_checked"] = False
        report["note"] = "homology unavailable: %s" % exc
        return report
    report["ranks_checked"] = True
    totals = {tuple(c["key"]): c["total"] for c in table.classes}
    for key in keys:
        a, b = totals[key], totals[invol[key]]
        if a != b:
            report["status"] = "fail"
            report["witnesses"].append(
                {"kind": "rank-mismatch", "pair": [key, invol[key]],
                 "ranks": [a, b]})
    return report


def evenness_check(d: DiagramLike, budget: Optional[int] = None) -> Dict:
    """Total-rank parity report.  Applicable exactly when the knot class
    is not divisible by two in the ambient first homology; in that case
    the grand total must be even."""
    m = _model(d)
    q = m.ambient_quotient()
    kc = list(m.knot_class())
    applicable = not q.divisible_by_two(kc)
    report: Dict = {"check": "evenness", "applicable": applicable}
    if not applicable:
        return report
    try:
        table = homology(m, budget=budget)
    except DiagramError as exc:
        report["note"] = "homology unavailable: %s" % exc
        return report
    report["grand_total"] = table.grand_total
    report["even"] = table.grand_total % 2 == 0
    return report


def _euler_char_of_support(m: DiagramModel, P: Dict[str, int]) -> int:
    """Euler characteristic of the closed subcomplex carrying the
    multiplicity-1 regions: vertices minus edges plus the region
    characteristics (each boundary circle carries as many vertices as
    edges, so closing up the regions adds nothing further)."""
    support = {rid for rid, v in P.items() if v}
    edges = set()
    for aid in m.arc_ids:
        if m.left[aid] in support or m.right[aid] in support:
            edges.add(aid)
    vertices = set()
    for aid in edges:
        arc = m.d.arcs[aid]
        vertices.add(arc.tail)
        vertices.add(arc.head)
    return len(vertices) - len(edges) + sum(
        m.d.regions[rid].euler_char for rid in support)


def chern_eval(d: DiagramLike, P: Dict[str, int], x: Sequence[str]) -> int:
    """Pairing of the structure class of x with the surface carried by a
    0/1 periodic domain: 2 - 2g plus twice the number of coordinates of x
    in the interior of the domain, with g read off the support's Euler
    characteristic."""
    m = _model(d)
    xs = check_generator(m, x)
    for rid, v in P.items():
        if v not in (0, 1):
            raise DiagramError("domain multiplicity %d at %s is not 0/1"
                               % (v, rid))
    vec = domain_vector(m, P)
    mat = alpha_boundary_matrix(m)
    if any(sum(row[j] * vec[j] for j in range(len(vec))) for row in mat):
        raise DiagramError("domain is not periodic")
    if multiplicity(P, m.d.z):
        raise DiagramError("basepoint z lies inside the domain")
    chi = _euler_char_of_support(m, P)
    if chi % 2 or chi > 0:
        raise DiagramError("support has Euler characteristic %d, expected "
                           "even and nonpositive" % chi)
    g = -chi // 2
    interior = sum(
        1 for pid in xs
        if all(multiplicity(P, rid) == 1 for rid in m.d.points[pid].quadrants))
    return 2 - 2 * g + 2 * interior


def adjunction_report(d: DiagramLike, P: Dict[str, int],
                      table: Optional[RankTable] = None,
                      budget: Optional[int] = None) -> Dict:
    """Checks the vanishing bound on every class with nonzero rank.

    With the knot passing through the domain's surface (w inside), the
    bound is one-sided: minus the pairing is at most 2g - 2.  With both
    basepoints outside it holds in absolute value.  Violations are
    reported as witnesses, not raised.  On diagrams whose homology is out
    of reach (not nice, or not admissible) the bound is checked on every
    class instead and a failure is only inconclusive."""
    m = _model(d)
    if table is None:
        try:
            table = homology(m, budget=budget)
        except DiagramError:
            table = None
    chi = _euler_char_of_support(m, P)
    g = -chi // 2
    case = "i" if multiplicity(P, m.d.w) else "ii"
    reps = {cls["key"]: cls["generators"][0] for cls in partition(m, budget=budget)}
    report: Dict = {
        "check": "adjunction",
        "case": case,
        "genus": g,
        "genus_hypothesis_ok": m.d.genus > 2 * g,
        "ranks_available": table is not None,
        "status": "pass",
        "witnesses": [],
        "values": {},
    }
    if table is not None:
        keys = [tuple(cls["key"]) for cls in table.classes if cls["total"]]
    else:
        keys = list(reps)
    for key in keys:
        value = chern_eval(m, P, reps[key])
        report["values"][key] = value
        bound = 2 * g - 2
        ok = (-value <= bound) if case == "i" else (abs(value) <= bound)
        if not ok:
            report["status"] = "violation" if table is not None else "inconclusive"
            report["witnesses"].append({"class": key, "value": value,
                                        "bound": bound, "case": case})
    return report


def triangle_rank_consistency(a: int, b: int, c: int) -> bool:
    """Necessary rank condition for three groups forming a long exact
    triangle: each total is at most the sum of the other two."""
    for total in (a, b, c):
        if total < 0:
            raise DiagramError("rank totals must be nonnegative")
    return a <= b + c and b <= a + c and c <= a + b
