"""Generator classes and relative gradings.

Two generators lie in the same class exactly when some domain connects
them; the obstruction is a first-homology element computed on the skeleton:
run along each alpha curve from x to y and back along each beta curve from
y to x, and project the resulting cycle to H1 of the ambient manifold.
Classes are keyed by that element measured from the lexicographically
smallest generator.

Within a class, differences of the two gradings are multiplicities of any
connecting domain phi from x to y: the Alexander difference A(x) - A(y) is
n_z(phi) - n_w(phi) and the Maslov difference M(x) - M(y) is
maslov_index(phi) - 2 n_w(phi).  Both are well defined only modulo the
values the defining formulas take on pinned periodic domains; those moduli
are reported alongside the offsets.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .diagram import DiagramError, DiagramModel, PointedDiagram
from .domains import (
    DiagramLike,
    _model,
    basepoint_multiplicities,
    check_generator,
    connecting_domain,
    domain_vector,
    euler_measure,
    maslov_index,
    multiplicity,
    periodic_domains,
    point_measure,
)

Generator = Tuple[str, ...]


def epsilon_class(d: DiagramLike, x: Sequence[str],
                  y: Sequence[str]) -> Tuple[int, ...]:
    """Obstruction class in H1(Y) to connecting x and y by a domain.

    Additive over triples of generators, zero exactly on connectable pairs.
    """
    m = _model(d)
    xs, ys = check_generator(m, x), check_generator(m, y)
    on_alpha_x = {m.d.points[p].alpha: p for p in xs}
    on_alpha_y = {m.d.points[p].alpha: p for p in ys}
    on_beta_x = {m.d.points[p].beta: p for p in xs}
    on_beta_y = {m.d.points[p].beta: p for p in ys}
    chain: Dict = {}
    for cid in m.curve_ids("alpha"):
        for key, s in m.segment_chain(cid, on_alpha_x[cid], on_alpha_y[cid]).items():
            chain[key] = chain.get(key, 0) + s
    for cid in m.curve_ids("beta"):
        for key, s in m.segment_chain(cid, on_beta_y[cid], on_beta_x[cid]).items():
            chain[key] = chain.get(key, 0) + s
    return m.ambient_quotient().canonical(list(m.cycle_class(chain)))


def partition(d: DiagramLike, generators: Optional[List[Generator]] = None,
              budget: Optional[int] = None) -> List[Dict]:
    """Generators grouped by class, each entry carrying the class key
    (epsilon from the lex-smallest generator) and the member list, ordered
    by key."""
    from .chain_f2 import enumerate_generators

    m = _model(d)
    if generators is None:
        generators = enumerate_generators(m, budget=budget)
    if not generators:
        return []
    base = generators[0]
    buckets: Dict[Tuple[int, ...], List[Generator]] = {}
    for g in generators:
        buckets.setdefault(epsilon_class(m, base, g), []).append(g)
    return [
        {"key": key, "generators": sorted(buckets[key])}
        for key in sorted(buckets)
    ]


def label_shift_pdk(d: DiagramLike, probes: int = 4) -> Tuple[int, ...]:
    """Class of the knot as the shift between the two basepoint labelings,
    recomputed over several deterministic route variations; a disagreement
    is reported as an error rather than averaged away."""
    m = _model(d)
    values = {m.knot_class(rotate) for rotate in range(max(1, probes))}
    if len(values) != 1:
        raise DiagramError("route-dependent knot class: %s" % sorted(values))
    return values.pop()


def grading_moduli(d: DiagramLike, base: Sequence[str]) -> Tuple[int, int]:
    """(delta_A, delta_M): nonnegative generators of the indeterminacy of
    the two relative gradings at the class of the given base generator."""
    m = _model(d)
    bs = check_generator(m, base)
    delta_a = 0
    delta_m = 0
    for p in periodic_domains(m, pin=None):
        nz, nw = basepoint_multiplicities(m, p)
        da = nz - nw
        # Index of a periodic domain attached at the base generator.
        dm = euler_measure(m, p) + 2 * sum(point_measure(m, p, pt) for pt in bs) \
            - 2 * nw
        if dm != int(dm):
            raise DiagramError("periodic domain has non-integral index %s" % dm)
        delta_a = _gcd(delta_a, da)
        delta_m = _gcd(delta_m, int(dm))
    return delta_a, delta_m


def relative_gradings(d: DiagramLike,
                      generators: Optional[List[Generator]] = None,
                      budget: Optional[int] = None) -> List[Dict]:
    """Per class: base generator, (A, M) offsets for every member relative
    to the base, and the moduli (delta_A, delta_M) the offsets live in.
    Offsets are reduced into [0, delta) when the modulus is nonzero."""
    m = _model(d)
    out = []
    for cls in partition(m, generators=generators, budget=budget):
        members = cls["generators"]
        base = members[0]
        delta_a, delta_m = grading_moduli(m, base)
        offsets = {}
        for g in members:
            if g == base:
                offsets[g] = (0, 0)
                continue
            phi = connecting_domain(m, base, g)
            if phi is None:
                raise DiagramError("generators %s and %s share a class but no "
                                   "domain connects them" % (base, g))
            nz, nw = basepoint_multiplicities(m, phi)
            mu = maslov_index(m, phi, base, g)
            if mu != int(mu):
                raise DiagramError("connecting domain has non-integral index %s" % mu)
            # A(base) - A(g) = nz - nw, M(base) - M(g) = mu - 2 nw.
            a = -(nz - nw)
            mm = -(int(mu) - 2 * nw)
            offsets[g] = (a % delta_a if delta_a else a,
                          mm % delta_m if delta_m else mm)
        out.append({
            "key": cls["key"],
            "base": base,
            "delta_a": delta_a,
            "delta_m": delta_m,
            "offsets": offsets,
        })
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)
