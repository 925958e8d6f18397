"""Domains between generators: membership, measures, index, admissibility.

A domain is an integer combination of regions.  Its boundary condition is
checked on the alpha side only: writing E(D) for the point chain
sum_R D(R) * (alpha part of the boundary word of R), a domain connects x to
y exactly when E(D) = y - x; the beta side then matches automatically
because the full boundary of a 2-chain is null.  Periodic domains are the
kernel of E; the surface class (all regions once) is always periodic and
has multiplicity 1 at every basepoint, so the kernel splits off the pinned
sublattice with multiplicity 0 at a chosen basepoint.

All measures are exact rationals: euler_measure uses the corner-corrected
Euler characteristic chi(R) - corners(R)/4, point_measure averages the four
quadrant multiplicities, and the Maslov index of D between x and y is
euler_measure(D) + point_measure at x + point_measure at y.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .diagram import DiagramModel, DiagramError, PointedDiagram, QUADRANTS
from .intlinalg import kernel_basis, solve_integer

Domain = Dict[str, int]
DiagramLike = Union[PointedDiagram, DiagramModel]


def _model(d: DiagramLike) -> DiagramModel:
    return d if isinstance(d, DiagramModel) else DiagramModel(d)


def check_generator(m: DiagramModel, x: Sequence[str]) -> Tuple[str, ...]:
    """Canonical form of a generator: one point on every alpha and every
    beta curve, returned sorted."""
    pts = tuple(sorted(x))
    if len(set(pts)) != len(pts):
        raise DiagramError("generator %s repeats a point" % (pts,))
    alphas = []
    betas = []
    for pid in pts:
        p = m.d.points.get(pid)
        if p is None:
            raise DiagramError("generator point %s does not exist" % pid)
        alphas.append(p.alpha)
        betas.append(p.beta)
    if sorted(alphas) != m.curve_ids("alpha") or sorted(betas) != m.curve_ids("beta"):
        raise DiagramError("generator %s does not hit every curve exactly once"
                           % (pts,))
    return pts


def alpha_boundary_matrix(d: DiagramLike) -> List[List[int]]:
    """E with rows indexed by sorted points and columns by sorted regions."""
    m = _model(d)
    pt_index = {pid: i for i, pid in enumerate(m.point_ids)}
    mat = [[0] * len(m.region_ids) for _ in m.point_ids]
    for j, rid in enumerate(m.region_ids):
        for comp in m.d.regions[rid].boundary:
            for aid, s in comp:
                if m.d.curves[m.curve_of_arc[aid]].kind != "alpha":
                    continue
                arc = m.d.arcs[aid]
                mat[pt_index[arc.head]][j] += s
                mat[pt_index[arc.tail]][j] -= s
    return mat


def domain_vector(m: DiagramModel, domain: Domain) -> List[int]:
    vec = [0] * len(m.region_ids)
    index = {rid: i for i, rid in enumerate(m.region_ids)}
    for rid, mult in domain.items():
        if rid not in index:
            raise DiagramError("domain names unknown region %s" % rid)
        vec[index[rid]] = mult
    return vec


def _domain_dict(m: DiagramModel, vec: Sequence[int]) -> Domain:
    return {rid: v for rid, v in zip(m.region_ids, vec) if v}


def connecting_domain(d: DiagramLike, x: Sequence[str],
                      y: Sequence[str]) -> Optional[Domain]:
    """Some domain from x to y, or None when the two generators are not
    connected by any domain.  The choice is deterministic but otherwise
    arbitrary; add periodic domains to move within the fiber."""
    m = _model(d)
    xs, ys = check_generator(m, x), check_generator(m, y)
    target = [0] * len(m.point_ids)
    pt_index = {pid: i for i, pid in enumerate(m.point_ids)}
    for pid in ys:
        target[pt_index[pid]] += 1
    for pid in xs:
        target[pt_index[pid]] -= 1
    sol = solve_integer(alpha_boundary_matrix(m), target)
    if sol is None:
        return None
    return _domain_dict(m, sol)


def multiplicity(domain: Domain, region: str) -> int:
    return domain.get(region, 0)


def basepoint_multiplicities(d: DiagramLike, domain: Domain) -> Tuple[int, int]:
    m = _model(d)
    return multiplicity(domain, m.d.z), multiplicity(domain, m.d.w)


def periodic_domains(d: DiagramLike, pin: Optional[str] = "z") -> List[Domain]:
    """Basis of the periodic domains; pin = "z"/"w" restricts to the
    sublattice vanishing at that basepoint, pin = None gives the full
    kernel (which always contains the surface class)."""
    m = _model(d)
    basis = kernel_basis(alpha_boundary_matrix(m))
    if pin is not None:
        rid = m.d.z if pin == "z" else m.d.w
        idx = m.region_ids.index(rid)
        row = [[vec[idx] for vec in basis]]
        coeffs = kernel_basis(row) if basis else []
        basis = [
            [sum(c[i] * basis[i][j] for i in range(len(basis)))
             for j in range(len(m.region_ids))]
            for c in coeffs
        ]
    return [_domain_dict(m, vec) for vec in basis]


def euler_measure(d: DiagramLike, domain: Domain) -> Fraction:
    m = _model(d)
    total = Fraction(0)
    for rid, mult in domain.items():
        r = m.d.regions[rid]
        total += mult * (Fraction(r.euler_char) - Fraction(len(r.corners), 4))
    return total


def point_measure(d: DiagramLike, domain: Domain, point: str) -> Fraction:
    """Average multiplicity of the four quadrants at the point."""
    m = _model(d)
    p = m.d.points.get(point)
    if p is None:
        raise DiagramError("no point %s" % point)
    return Fraction(sum(multiplicity(domain, rid) for rid in p.quadrants), 4)


def maslov_index(d: DiagramLike, domain: Domain, x: Sequence[str],
                 y: Sequence[str]) -> Fraction:
    """Index of a domain from x to y.  Pre-condition: the domain actually
    connects x to y (checked); the result is an integer in that case for
    honest diagrams but is returned exactly as computed."""
    m = _model(d)
    xs, ys = check_generator(m, x), check_generator(m, y)
    vec = domain_vector(m, domain)
    target = {}
    for pid in ys:
        target[pid] = target.get(pid, 0) + 1
    for pid in xs:
        target[pid] = target.get(pid, 0) - 1
    image = mat_rows_apply(alpha_boundary_matrix(m), vec, m.point_ids)
    if image != {k: v for k, v in target.items() if v}:
        raise DiagramError("domain does not connect %s to %s" % (xs, ys))
    total = euler_measure(m, domain)
    for pid in xs:
        total += point_measure(m, domain, pid)
    for pid in ys:
        total += point_measure(m, domain, pid)
    return total


def mat_rows_apply(mat: List[List[int]], vec: Sequence[int],
                   row_names: Sequence[str]) -> Dict[str, int]:
    out: Dict[str, int] = {}
    for name, row in zip(row_names, mat):
        v = sum(a * b for a, b in zip(row, vec))
        if v:
            out[name] = v
    return out


# ---------------------------------------------------------------------------
# Weak admissibility, decided exactly


def _fourier_motzkin_feasible(
    rows: List[List[Fraction]],
) -> Optional[List[Fraction]]:
    """A point c with row . (c, 1) >= 0 for every row, or None.

    Each row is (a_1 .. a_n, b) encoding a_1 c_1 + ... + a_n c_n + b >= 0.
    Variables are eliminated left to right; a satisfying point is rebuilt by
    back-substitution, so a non-None answer is a checked certificate."""
    n = len(rows[0]) - 1 if rows else 0
    stages: List[List[List[Fraction]]] = []
    current = [list(r) for r in rows]
    for j in range(n):
        stages.append(current)
        zeros, lowers, uppers = [], [], []
        for r in current:
            if r[j] > 0:
                lowers.append(r)  # c_j >= -(rest)/r[j]
            elif r[j] < 0:
                uppers.append(r)  # c_j <= -(rest)/r[j]
            else:
                zeros.append(r)
        new_rows = [r[:j] + [Fraction(0)] + r[j + 1:] for r in zeros]
        for lo in lowers:
            for up in uppers:
                # lo[j] > 0 > up[j]; eliminate c_j between the pair.
                combined = [lo[j] * up[k] - up[j] * lo[k]
                            for k in range(len(lo))]
                combined[j] = Fraction(0)
                new_rows.append(combined)
        current = new_rows
    for r in current:
        if r[-1] < 0:
            return None
    point: List[Fraction] = [Fraction(0)] * n
    for j in reversed(range(n)):
        stage = stages[j]
        lo_bound: Optional[Fraction] = None
        up_bound: Optional[Fraction] = None
        for r in stage:
            if r[j] == 0:
                continue
            rest = r[-1] + sum(r[k] * point[k] for k in range(j + 1, n))
            bound = -rest / r[j]
            if r[j] > 0:
                lo_bound = bound if lo_bound is None else max(lo_bound, bound)
            else:
                up_bound = bound if up_bound is None else min(up_bound, bound)
        if lo_bound is None and up_bound is None:
            point[j] = Fraction(0)
        elif lo_bound is None:
            point[j] = up_bound
        elif up_bound is None:
            point[j] = lo_bound
        else:
            point[j] = (lo_bound + up_bound) / 2
    return point


def is_weakly_admissible(d: DiagramLike, at: str = "z") -> Tuple[bool, Optional[Domain]]:
    """Whether every nonzero periodic domain with multiplicity 0 at the
    chosen basepoint has both signs.  Returns (verdict, certificate): the
    certificate is a nonnegative nonzero pinned periodic domain when the
    answer is no, re-verified before returning."""
    if at not in ("z", "w"):
        raise DiagramError("admissibility basepoint must be 'z' or 'w'")
    m = _model(d)
    pinned = periodic_domains(m, pin=at)
    if not pinned:
        return True, None
    vectors = [domain_vector(m, p) for p in pinned]
    k = len(vectors)
    rows: List[List[Fraction]] = []
    for j in range(len(m.region_ids)):
        rows.append([Fraction(vectors[i][j]) for i in range(k)] + [Fraction(0)])
    # Scale-invariance: a nonzero nonnegative combination exists iff one has
    # total multiplicity at least 1.
    total = [Fraction(sum(vectors[i][j] for j in range(len(m.region_ids))))
             for i in range(k)]
    rows.append(total + [Fraction(-1)])
    point = _fourier_motzkin_feasible(rows)
    if point is None:
        return True, None
    denom = 1
    for c in point:
        denom = denom * c.denominator // _gcd(denom, c.denominator)
    coeffs = [int(c * denom) for c in point]
    combo = [sum(coeffs[i] * vectors[i][j] for i in range(k))
             for j in range(len(m.region_ids))]
    if all(v == 0 for v in combo) or any(v < 0 for v in combo):
        raise DiagramError("internal: admissibility certificate failed re-check")
    pin_idx = m.region_ids.index(m.d.z if at == "z" else m.d.w)
    if combo[pin_idx] != 0:
        raise DiagramError("internal: admissibility certificate not pinned")
    return False, _domain_dict(m, combo)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def is_nice(d: DiagramLike) -> bool:
    """Every region not holding a basepoint is a bigon or a square."""
    m = _model(d)
    for rid in m.region_ids:
        if rid in (m.d.z, m.d.w):
            continue
        r = m.d.regions[rid]
        if r.euler_char != 1 or len(r.corners) not in (2, 4):
            return False
    return True
