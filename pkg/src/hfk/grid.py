"""Grid diagrams and their mod-2 rectangle complex.

A grid of size n is two permutations giving the column of the O and the X
marker in each row.  Generators are the n! bijections from rows to
columns; the differential counts torus rectangles whose lower-left and
upper-right corners sit on the source generator and whose interior avoids
every marker and every other generator point.  Counting both marker
families gives the fully blocked complex; its homology is the hat version
tensored with (n-1) copies of a known two-dimensional piece, which the
deconvolution below divides out diagonal by diagonal.

Gradings follow the planar point-count formulas: markers live at cell
centers, generators at lattice corners, and both coordinates are doubled
internally so every comparison stays integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Tuple

from .diagram import InvariantError

Table = Dict[Tuple[int, int], int]


class GridError(ValueError):
    """The input is not a grid presentation of a knot."""


@dataclass(frozen=True)
class GridDiagram:
    o: Tuple[int, ...]
    x: Tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.o)
        if n < 2:
            raise GridError("grid needs size at least 2, got %d" % n)
        if len(self.x) != n:
            raise GridError("marker rows disagree: %d O's, %d X's"
                            % (n, len(self.x)))
        for name, perm in (("O", self.o), ("X", self.x)):
            if sorted(perm) != list(range(n)):
                raise GridError("%s row is not a permutation of 0..%d: %s"
                                % (name, n - 1, list(perm)))
        if any(a == b for a, b in zip(self.o, self.x)):
            raise GridError("a row holds both markers in one cell")
        # One knot component: following same row then same column must
        # visit every row in a single cycle.
        o_inv = [0] * n
        for i, c in enumerate(self.o):
            o_inv[c] = i
        seen = 1
        row = o_inv[self.x[0]]
        while row != 0:
            seen += 1
            row = o_inv[self.x[row]]
        if seen != n:
            raise GridError("markers trace a link of more than one component")

    @property
    def n(self) -> int:
        return len(self.o)


def parse_grid(text: str) -> GridDiagram:
    """Two whitespace-separated integer rows; blank lines and text after
    '#' are ignored."""
    rows: List[Tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append(tuple(int(tok) for tok in line.split()))
        except ValueError:
            raise GridError("line %d is not a row of integers: %r"
                            % (lineno, raw))
    if len(rows) != 2:
        raise GridError("expected exactly 2 marker rows, found %d" % len(rows))
    return GridDiagram(o=rows[0], x=rows[1])


def load_grid(path: str) -> GridDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_grid(fh.read())


def grid_to_text(g: GridDiagram) -> str:
    return "%s\n%s\n" % (" ".join(map(str, g.o)), " ".join(map(str, g.x)))


def swap_markers(g: GridDiagram) -> GridDiagram:
    return GridDiagram(o=g.x, x=g.o)


def transpose(g: GridDiagram) -> GridDiagram:
    o_inv = [0] * g.n
    x_inv = [0] * g.n
    for i in range(g.n):
        o_inv[g.o[i]] = i
        x_inv[g.x[i]] = i
    return GridDiagram(o=tuple(o_inv), x=tuple(x_inv))


def _j(p: List[Tuple[int, int]], q: List[Tuple[int, int]]) -> int:
    # Symmetrized strictly-northeast pair count, doubled to stay integral.
    total = 0
    for a in p:
        for b in q:
            if b[0] > a[0] and b[1] > a[1]:
                total += 1
            if a[0] > b[0] and a[1] > b[1]:
                total += 1
    return total


def _gradings(g: GridDiagram, cols: Tuple[int, ...]) -> Tuple[int, int]:
    """(maslov, alexander) of one generator."""
    xpts = [(2 * i, 2 * c) for i, c in enumerate(cols)]
    opts = [(2 * i + 1, 2 * c + 1) for i, c in enumerate(g.o)]
    xmks = [(2 * i + 1, 2 * c + 1) for i, c in enumerate(g.x)]
    m_o2 = _j(xpts, xpts) - 2 * _j(xpts, opts) + _j(opts, opts)
    m_x2 = _j(xpts, xpts) - 2 * _j(xpts, xmks) + _j(xmks, xmks)
    if m_o2 % 2 or m_x2 % 2:
        raise InvariantError("grading formula returned a half-integer")
    m = m_o2 // 2 + 1
    a2 = (m_o2 - m_x2) // 2 - (g.n - 1)
    if a2 % 2:
        raise InvariantError("alexander grading not integral on a knot grid")
    return m, a2 // 2


def _between(v: int, lo: int, hi: int, n: int) -> bool:
    # Strictly inside the cyclic interval walked upward from lo to hi.
    if lo < hi:
        return lo < v < hi
    return v > lo or v < hi


def tilde_differential(g: GridDiagram,
                       gens: Optional[Iterable[Tuple[int, ...]]] = None
                       ) -> Dict[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]:
    """The fully blocked differential: x maps to the generators reached by
    an odd number of empty rectangles (empty of O, X, and generator
    points)."""
    n = g.n
    out = {}
    for cols in (permutations(range(n)) if gens is None else gens):
        hits: Dict[Tuple[int, ...], int] = {}
        for r1 in range(n):
            for r2 in range(n):
                if r1 == r2:
                    continue
                c1, c2 = cols[r1], cols[r2]
                empty = True
                for i in range(n):
                    if _between(i, r1, r2, n) and _between(cols[i], c1, c2, n):
                        empty = False
                        break
                if empty:
                    for marks in (g.o, g.x):
                        # Cell (i, marks[i]) sits inside when its row strip
                        # and column strip both do; cells are offset by a
                        # half, so membership is the closed-open interval.
                        for i in range(n):
                            if _half_between(i, r1, r2, n) \
                                    and _half_between(marks[i], c1, c2, n):
                                empty = False
                                break
                        if not empty:
                            break
                if not empty:
                    continue
                y = list(cols)
                y[r1], y[r2] = c2, c1
                ty = tuple(y)
                hits[ty] = hits.get(ty, 0) ^ 1
        out[cols] = tuple(sorted(y for y, p in hits.items() if p))
    return out


def _half_between(v: int, lo: int, hi: int, n: int) -> bool:
    # Whether cell strip v (spanning v..v+1) lies inside the cyclic
    # interval from lo to hi: its center v + 1/2 must be between.
    if lo < hi:
        return lo <= v < hi
    return v >= lo or v < hi


def tilde_table(g: GridDiagram) -> Table:
    """Homology ranks of the fully blocked complex by (maslov, alexander)."""
    # Marker rows are listed top to bottom, the point-count formulas want
    # heights; reverse once here so every table speaks one convention.
    g = GridDiagram(o=tuple(reversed(g.o)), x=tuple(reversed(g.x)))
    gens = list(permutations(range(g.n)))
    grading = {cols: _gradings(g, cols) for cols in gens}
    diff = tilde_differential(g, gens)
    buckets: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {}
    for cols in gens:
        buckets.setdefault(grading[cols], []).append(cols)
    for k in buckets:
        buckets[k].sort()
    index = {(k, cols): i for k in buckets for i, cols in enumerate(buckets[k])}
    rank_out: Dict[Tuple[int, int], int] = {}
    for (m, a), sources in buckets.items():
        target = (m - 1, a)
        rows = []
        for cols in sources:
            row = 0
            for y in diff[cols]:
                if grading[y] != target:
                    raise InvariantError(
                        "rectangle from %s to %s breaks the grading law"
                        % (cols, y))
                row |= 1 << index[(target, y)]
            rows.append(row)
        rank_out[(m, a)] = _f2_rank(rows)
    table: Table = {}
    for (m, a), members in buckets.items():
        h = len(members) - rank_out[(m, a)] - rank_out.get((m + 1, a), 0)
        if h:
            table[(m, a)] = h
    return table


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


def hat_deconvolve(table: Table, n: int) -> Table:
    """Divide a blocked-rank table by the (n-1)-th power of the known
    two-dimensional factor supported in bidegrees (0,0) and (-1,-1).

    Works one (alexander - maslov) diagonal at a time; a nonzero remainder
    or a negative quotient coefficient means the table was not a blocked
    homology and raises."""
    diagonals: Dict[int, Dict[int, int]] = {}
    for (m, a), r in table.items():
        diagonals.setdefault(a - m, {})[a] = r
    out: Table = {}
    for d, coeffs in diagonals.items():
        quotient = dict(coeffs)
        for _ in range(n - 1):
            floor = min(quotient) if quotient else 0
            reduced: Dict[int, int] = {}
            while quotient:
                top = max(quotient)
                if top < floor:
                    raise InvariantError("blocked table is not divisible by "
                                         "the standard factor")
                c = quotient.pop(top)
                if c == 0:
                    continue
                reduced[top] = c
                low = quotient.get(top - 1, 0) - c
                if low:
                    quotient[top - 1] = low
                elif top - 1 in quotient:
                    del quotient[top - 1]
            quotient = reduced
        for a, c in quotient.items():
            if c < 0:
                raise InvariantError("blocked table is not divisible by the "
                                     "standard factor")
            if c:
                out[(a - d, a)] = c
    return out


def hat_table(g: GridDiagram) -> Table:
    return hat_deconvolve(tilde_table(g), g.n)


def alexander_polynomial(g: GridDiagram) -> Dict[int, int]:
    """Symmetrized Alexander polynomial as exponent -> coefficient, with
    the sign fixed so the value at 1 is +1."""
    table = hat_table(g)
    poly: Dict[int, int] = {}
    for (m, a), r in table.items():
        c = poly.get(a, 0) + (r if m % 2 == 0 else -r)
        if c:
            poly[a] = c
        elif a in poly:
            del poly[a]
    total = sum(poly.values())
    if total not in (1, -1):
        raise InvariantError("alexander polynomial evaluates to %d at 1"
                             % total)
    if total < 0:
        poly = {a: -c for a, c in poly.items()}
    for a, c in poly.items():
        if poly.get(-a, 0) != c:
            raise InvariantError("alexander polynomial is not symmetric: %s"
                                 % poly)
    return poly
