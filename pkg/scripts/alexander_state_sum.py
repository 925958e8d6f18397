"""Alexander polynomial of a grid diagram via the winding-number state sum.

Independent of any Floer-theoretic machinery: draw the knot projection from
the grid (horizontal segments from O to X in each row, vertical segments from
X to O in each column), record the winding number w(i, j) of the projection
around every lattice point, and expand the determinant of the matrix
[t^w(i,j)] as a signed sum over permutations.  Dividing by (1 - t)^(n-1) and
symmetrizing yields the Alexander polynomial.  Used as an oracle by the test
suite; results are frozen there as literal dictionaries.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

Laurent = Dict[int, int]  # exponent -> integer coefficient, zeros omitted


def lmul(p: Laurent, q: Laurent) -> Laurent:
    out: Laurent = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            c = out.get(e, 0) + c1 * c2
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


def ladd(p: Laurent, q: Laurent, sign: int = 1) -> Laurent:
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        elif e in out:
            del out[e]
    return out


def component_count(o_perm: Sequence[int], x_perm: Sequence[int]) -> int:
    """Number of link components drawn by the grid (knots have exactly 1)."""
    n = len(o_perm)
    o_inv = [0] * n
    for row, col in enumerate(o_perm):
        o_inv[col] = row
    seen = [False] * n
    comps = 0
    for start in range(n):
        if seen[start]:
            continue
        comps += 1
        row = start
        while not seen[row]:
            seen[row] = True
            row = o_inv[x_perm[row]]
    return comps


def winding_matrix(o_perm: Sequence[int], x_perm: Sequence[int]) -> List[List[int]]:
    """w(i, j) for lattice points (i, j), 0 <= i, j < n.

    Markings sit at cell centers (col + 1/2, row + 1/2).  The vertical
    segment in column c runs from the X of that column to the O of that
    column; an eastward ray from (i, j) crosses it when c >= i and j lies
    strictly between the two heights, counting +1 for upward segments.
    """
    n = len(o_perm)
    o_inv = [0] * n
    x_inv = [0] * n
    for row, col in enumerate(o_perm):
        o_inv[col] = row
    for row, col in enumerate(x_perm):
        x_inv[col] = row
    w = [[0] * n for _ in range(n)]
    for c in range(n):
        lo, hi = sorted((x_inv[c], o_inv[c]))
        sign = 1 if o_inv[c] > x_inv[c] else -1
        for i in range(0, c + 1):
            for j in range(lo + 1, hi + 1):
                w[i][j] += sign
    return w


def state_sum_determinant(o_perm: Sequence[int], x_perm: Sequence[int]) -> Laurent:
    """det [t^w(i,j)] expanded as a signed sum over permutation states."""
    n = len(o_perm)
    w = winding_matrix(o_perm, x_perm)
    det: Laurent = {}

    # Sign of each permutation is tracked incrementally: placing column `col`
    # in the current row adds one inversion per already-used larger column.
    def expand(row: int, used: int, exp: int, sign: int) -> None:
        nonlocal det
        if row == n:
            det = ladd(det, {exp: sign})
            return
        for col in range(n):
            bit = 1 << col
            if used & bit:
                continue
            flips = bin(used >> col).count("1")
            expand(row + 1, used | bit, exp + w[row][col],
                   sign * (-1 if flips % 2 else 1))

    expand(0, 0, 0, 1)
    return det


def divide_by_one_minus_t(p: Laurent) -> Laurent:
    """Exact division by (1 - t); raises if the division leaves a remainder."""
    if not p:
        return {}
    lo = min(p)
    hi = max(p)
    q: Laurent = {}
    run = 0
    for e in range(lo, hi + 1):
        run += p.get(e, 0)
        if run:
            q[e] = run
    if run != 0:
        raise ValueError("polynomial is not divisible by (1 - t)")
    return q


def alexander_from_grid(o_perm: Sequence[int], x_perm: Sequence[int]) -> Laurent:
    """Symmetrized Alexander polynomial with Delta(1) = 1."""
    n = len(o_perm)
    if sorted(o_perm) != list(range(n)) or sorted(x_perm) != list(range(n)):
        raise ValueError("grid rows must be permutations")
    if any(o_perm[i] == x_perm[i] for i in range(n)):
        raise ValueError("O and X share a cell")
    if component_count(o_perm, x_perm) != 1:
        raise ValueError("grid draws a link, not a knot")
    det = state_sum_determinant(o_perm, x_perm)
    for _ in range(n - 1):
        det = divide_by_one_minus_t(det)
    if not det:
        raise ValueError("state sum vanished; grid is degenerate")
    lo, hi = min(det), max(det)
    if (lo + hi) % 2 != 0:
        raise ValueError("state sum has odd span; cannot symmetrize")
    shift = (lo + hi) // 2
    poly = {e - shift: c for e, c in det.items()}
    at_one = sum(poly.values())
    if at_one == -1:
        poly = {e: -c for e, c in poly.items()}
        at_one = 1
    if at_one != 1:
        raise ValueError("normalized polynomial has Delta(1) = %d" % at_one)
    for e, c in poly.items():
        if poly.get(-e, 0) != c:
            raise ValueError("polynomial is not symmetric under t -> 1/t")
    return poly


def format_laurent(p: Laurent) -> str:
    if not p:
        return "0"
    parts = []
    for e in sorted(p, reverse=True):
        c = p[e]
        mono = "t^%d" % e if e not in (0, 1) else ("t" if e == 1 else "")
        coeff = "" if abs(c) == 1 and mono else str(abs(c))
        parts.append(("+ " if c > 0 else "- ") + (coeff + mono or "1"))
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


if __name__ == "__main__":
    cases = {
        "unknot 2x2": ((1, 0), (0, 1)),
        "unknot 3x3": ((1, 2, 0), (0, 1, 2)),
        "trefoil 5x5": ((1, 2, 3, 4, 0), (4, 0, 1, 2, 3)),
    }
    for name, (o_perm, x_perm) in cases.items():
        print(name, "->", format_laurent(alexander_from_grid(o_perm, x_perm)))
