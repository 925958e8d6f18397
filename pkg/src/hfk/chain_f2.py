"""Chain complex over the two-element field and its homology.

On a nice diagram (every region away from the basepoints a bigon or a
square) the differential counts embedded discs with two or four corners,
no basepoint, and index one.  Candidate discs are enumerated by tracing
their boundary: start at a generator point in one of its two outgoing
corner quadrants and walk arcs with the disc kept on the left, either
passing straight through each crossing or turning by the corner rule, and
close up back at the start.  The enclosed regions are recovered by a flood
fill from the corner quadrants that never crosses a traced arc.

Every candidate is then re-verified against the definition itself: the
region multiplicities must be 0/1 with both basepoint multiplicities zero,
the alpha-side boundary must equal y - x, the index must be one, and the
local multiplicities at generator points must be a quarter at the four
corners and zero elsewhere.  The same predicate drives the brute-force
oracle used in tests, so the walk is only trusted as an enumerator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .diagram import (
    QUADRANTS,
    RAYS,
    BudgetError,
    DiagramError,
    InvariantError,
    default_budget,
)
from .domains import (
    DiagramLike,
    _model,
    basepoint_multiplicities,
    check_generator,
    is_nice,
    is_weakly_admissible,
    maslov_index,
    point_measure,
)

Generator = Tuple[str, ...]
Domain = Dict[str, int]


def enumerate_generators(d: DiagramLike,
                         budget: Optional[int] = None) -> List[Generator]:
    """All ways to pick one intersection point on every alpha curve so that
    every beta curve is hit exactly once, sorted."""
    m = _model(d)
    limit = default_budget() if budget is None else budget
    counter = [0]
    alphas = m.curve_ids("alpha")
    points_on = {}
    for cid in alphas:
        points_on[cid] = sorted(
            m.d.arcs[aid].tail for aid in m.d.curves[cid].arcs)
    out: List[Generator] = []
    chosen: List[str] = []
    used_beta: Set[str] = set()

    def rec(i: int) -> None:
        counter[0] += 1
        if counter[0] > limit:
            raise BudgetError("generator enumeration exceeded budget %d" % limit)
        if i == len(alphas):
            out.append(tuple(sorted(chosen)))
            return
        for pid in points_on[alphas[i]]:
            beta = m.d.points[pid].beta
            if beta in used_beta:
                continue
            used_beta.add(beta)
            chosen.append(pid)
            rec(i + 1)
            chosen.pop()
            used_beta.discard(beta)

    rec(0)
    return sorted(out)


def is_counted_disc(d: DiagramLike, dom: Domain, x: Sequence[str],
                    y: Sequence[str]) -> bool:
    """Whether dom is a disc the differential counts from x to y."""
    m = _model(d)
    xs, ys = check_generator(m, x), check_generator(m, y)
    if xs == ys:
        return False
    if any(v not in (0, 1) for v in dom.values()):
        return False
    nz, nw = basepoint_multiplicities(m, dom)
    if nz or nw:
        return False
    try:
        mu = maslov_index(m, dom, xs, ys)
    except DiagramError:
        return False
    if mu != 1:
        return False
    xset, yset = set(xs), set(ys)
    for pid in xset | yset:
        want = Fraction(0) if (pid in xset and pid in yset) else Fraction(1, 4)
        if point_measure(m, dom, pid) != want:
            return False
    return True


def _trace_discs(m, x_set: Set[str], start_pid: str, quad: str,
                 counter: List[int], limit: int):
    """Closed left-hand walks from one outgoing corner of a generator.

    Yields (corners, walk_arcs) for every closure with two or four corners;
    turns into a generator-type corner are only taken at unused points of
    x, turns into the other type only away from x, and no arc is walked
    twice.  All results are candidates only.
    """
    d = m.d
    rays = m.rays
    dep0 = "E" if quad == "NE" else "W"
    close_ray = "N" if quad == "NE" else "S"
    used: Set[str] = set()
    corners: List[Tuple[str, str]] = [(start_pid, quad)]
    corner_pts: Set[str] = {start_pid}
    walk: List[str] = []
    results: List[Tuple[List[Tuple[str, str]], List[str]]] = []

    def go(pid: str, dep: str) -> None:
        aid, end = rays[pid]["ray_to_end"][dep]
        arc = d.arcs[aid]
        if aid in used:
            return
        if end == "tail":
            nxt, far = arc.head, "head"
        else:
            nxt, far = arc.tail, "tail"
        arr = rays[nxt]["end_to_ray"][(aid, far)]
        used.add(aid)
        walk.append(aid)
        rec(nxt, arr)
        used.discard(aid)
        walk.pop()

    def rec(pid: str, arr: str) -> None:
        counter[0] += 1
        if counter[0] > limit:
            raise BudgetError("disc search exceeded budget %d" % limit)
        if pid == start_pid and arr == close_ray and len(corners) in (2, 4):
            results.append(([c for c in corners], [a for a in walk]))
        go(pid, RAYS[(RAYS.index(arr) + 2) % 4])
        dep = RAYS[(RAYS.index(arr) - 1) % 4]
        tag = QUADRANTS[RAYS.index(dep)]
        if tag in ("NE", "SW"):
            ok = len(corners) == 2 and pid in x_set and pid not in corner_pts
        else:
            ok = len(corners) in (1, 3) and pid not in x_set \
                and pid not in corner_pts
        if ok:
            corners.append((pid, tag))
            corner_pts.add(pid)
            go(pid, dep)
            corners.pop()
            corner_pts.discard(pid)

    go(start_pid, dep0)
    return results


def _fill_disc(m, adj: Dict[str, List[str]], x: Generator,
               corners: List[Tuple[str, str]], walk: List[str]):
    """(y, domain) for a closed walk, or None when the filling is clearly
    not a counted disc (bad generator, or it swallows a basepoint)."""
    xc = {p for p, t in corners if t in ("NE", "SW")}
    yc = {p for p, t in corners if t in ("NW", "SE")}
    y = tuple(sorted((set(x) - xc) | yc))
    try:
        check_generator(m, y)
    except DiagramError:
        return None
    walk_set = set(walk)
    inside: Set[str] = set()
    stack: List[str] = []
    for p, t in corners:
        rid = m.quadrant_region(p, t)
        if rid not in inside:
            inside.add(rid)
            stack.append(rid)
    while stack:
        rid = stack.pop()
        if rid in (m.d.z, m.d.w):
            return None
        for aid in adj[rid]:
            if aid in walk_set:
                continue
            lft, rgt = m.left[aid], m.right[aid]
            other = rgt if lft == rid else lft
            if other != rid and other not in inside:
                inside.add(other)
                stack.append(other)
    return y, {rid: 1 for rid in inside}


def differential(d: DiagramLike, generators: Optional[List[Generator]] = None,
                 budget: Optional[int] = None) -> Dict[Generator, Tuple[Generator, ...]]:
    """The mod-2 differential as a map from each generator to the sorted
    tuple of generators hit an odd number of times.

    Pre-conditions: the diagram is nice and weakly admissible for at least
    one of the two basepoints.
    """
    m = _model(d)
    if not is_nice(m):
        raise DiagramError("differential needs a nice diagram; refine it first")
    if not (is_weakly_admissible(m, "z")[0] or is_weakly_admissible(m, "w")[0]):
        raise DiagramError("differential needs weak admissibility at one "
                           "basepoint")
    limit = default_budget() if budget is None else budget
    if generators is None:
        generators = enumerate_generators(m, budget=limit)
    adj: Dict[str, List[str]] = {rid: [] for rid in m.region_ids}
    for aid in m.arc_ids:
        adj[m.left[aid]].append(aid)
        if m.right[aid] != m.left[aid]:
            adj[m.right[aid]].append(aid)
    counter = [0]
    out: Dict[Generator, Tuple[Generator, ...]] = {}
    for x in generators:
        x_set = set(x)
        seen: Set[Tuple[Generator, Tuple[Tuple[str, int], ...]]] = set()
        for pid in x:
            for quad in ("NE", "SW"):
                for corners, walk in _trace_discs(m, x_set, pid, quad,
                                                  counter, limit):
                    filled = _fill_disc(m, adj, x, corners, walk)
                    if filled is None:
                        continue
                    y, dom = filled
                    if not is_counted_disc(m, dom, x, y):
                        continue
                    seen.add((y, tuple(sorted(dom.items()))))
        hits: Dict[Generator, int] = {}
        for y, _ in seen:
            hits[y] = hits.get(y, 0) ^ 1
        out[x] = tuple(sorted(y for y, parity in hits.items() if parity))
    return out


def brute_force_differential(d: DiagramLike,
                             generators: Optional[List[Generator]] = None
                             ) -> Dict[Generator, Tuple[Generator, ...]]:
    """Same map computed by testing every 0/1 region assignment against
    the counting predicate.  Exponential in the region count; a test
    oracle, not a tool."""
    m = _model(d)
    if generators is None:
        generators = enumerate_generators(m)
    free = [rid for rid in m.region_ids if rid not in (m.d.z, m.d.w)]
    doms: List[Domain] = []
    for mask in range(1, 1 << len(free)):
        doms.append({rid: 1 for i, rid in enumerate(free) if mask >> i & 1})
    out: Dict[Generator, Tuple[Generator, ...]] = {}
    for x in generators:
        hits: Dict[Generator, int] = {}
        for y in generators:
            if y == x:
                continue
            n = sum(1 for dom in doms if is_counted_disc(m, dom, x, y))
            if n & 1:
                hits[y] = 1
        out[x] = tuple(sorted(hits))
    return out


def verify_d_squared(d: DiagramLike,
                     diff: Optional[Dict[Generator, Tuple[Generator, ...]]] = None,
                     budget: Optional[int] = None) -> bool:
    """Checks that the differential squares to zero, raising on failure."""
    m = _model(d)
    if diff is None:
        diff = differential(m, budget=budget)
    for x, ys in diff.items():
        acc: Dict[Generator, int] = {}
        for y in ys:
            for z in diff.get(y, ()):
                acc[z] = acc.get(z, 0) ^ 1
        bad = sorted(z for z, parity in acc.items() if parity)
        if bad:
            raise InvariantError("d^2(%s) hits %s" % (x, bad))
    return True


def _f2_rank(rows: List[int]) -> int:
    pivots: Dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            hb = row.bit_length() - 1
            if hb in pivots:
                row ^= pivots[hb]
            else:
                pivots[hb] = row
                rank += 1
                break
    return rank


@dataclass
class RankTable:
    """Homology ranks bucketed by generator class and the two gradings.

    Per class: the class key, the grading moduli (zero meaning the grading
    is honestly integral), entries (a, m, rank) for buckets that held any
    generator, and the class total.  Gradings are relative to the smallest
    generator of the class, reduced into [0, modulus) when the modulus is
    nonzero.
    """
    classes: List[Dict]
    grand_total: int

    def as_dict(self) -> Dict:
        return {
            "classes": [
                {
                    "key": list(c["key"]),
                    "delta_a": c["delta_a"],
                    "delta_m": c["delta_m"],
                    "entries": [
                        {"a": a, "m": m, "rank": r}
                        for a, m, r in c["entries"]
                    ],
                    "total": c["total"],
                }
                for c in self.classes
            ],
            "grand_total": self.grand_total,
        }


def homology(d: DiagramLike, budget: Optional[int] = None) -> RankTable:
    """Homology of the mod-2 complex, one block per generator class and
    grading bucket.  The differential preserves the first grading and drops
    the second by one (modulo the class moduli); a violation means the
    complex itself is broken and raises."""
    from .spinc import relative_gradings

    m = _model(d)
    limit = default_budget() if budget is None else budget
    gens = enumerate_generators(m, budget=limit)
    diff = differential(m, generators=gens, budget=limit)
    classes = []
    grand = 0
    for cls in relative_gradings(m, generators=gens, budget=limit):
        delta_a, delta_m = cls["delta_a"], cls["delta_m"]
        offsets: Dict[Generator, Tuple[int, int]] = cls["offsets"]
        buckets: Dict[Tuple[int, int], List[Generator]] = {}
        for g, am in offsets.items():
            buckets.setdefault(am, []).append(g)
        for am in buckets:
            buckets[am].sort()
        index = {
            (am, g): i
            for am in buckets for i, g in enumerate(buckets[am])
        }
        rank_out: Dict[Tuple[int, int], int] = {}
        for (a, mm), sources in buckets.items():
            target_am = (a, (mm - 1) % delta_m if delta_m else mm - 1)
            targets = buckets.get(target_am, [])
            rows = []
            for x in sources:
                row = 0
                for y in diff[x]:
                    if y not in offsets:
                        raise InvariantError(
                            "differential leaves the class of %s" % (x,))
                    if offsets[y] != target_am:
                        raise InvariantError(
                            "disc from %s to %s breaks the grading law"
                            % (x, y))
                    row |= 1 << index[(target_am, y)]
                rows.append(row)
            rank_out[(a, mm)] = _f2_rank(rows)
        entries = []
        total = 0
        for (a, mm), members in sorted(buckets.items()):
            into = (a, (mm + 1) % delta_m if delta_m else mm + 1)
            h = len(members) - rank_out[(a, mm)] - rank_out.get(into, 0)
            entries.append((a, mm, h))
            total += h
        classes.append({
            "key": cls["key"],
            "delta_a": delta_a,
            "delta_m": delta_m,
            "entries": entries,
            "total": total,
        })
        grand += total
    return RankTable(classes=classes, grand_total=grand)
