"""Exact integer matrix routines: Smith normal form, solving, quotients.

Everything here works over Z with plain Python ints (no overflow, no
floats).  Matrices are lists of row lists.  The Smith normal form carries
its unimodular transforms so callers can solve systems, extract kernel
lattices and canonicalize cosets of a sublattice.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]

__all__ = [
    "xgcd",
    "identity",
    "mat_mul",
    "mat_vec",
    "smith_normal_form",
    "solve_integer",
    "kernel_basis",
    "invariant_factors",
    "Quotient",
]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b == g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if c == 0:
                continue
            bk = b[k]
            for j in range(cols):
                oi[j] += c * bk[j]
    return out


def mat_vec(a: Matrix, v: Sequence[int]) -> List[int]:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def smith_normal_form(mat: Matrix) -> Tuple[Matrix, Matrix, Matrix]:
    """Return (d, u, v) with u * mat * v == d, u and v unimodular.

    d is diagonal with nonnegative entries d[0][0] | d[1][1] | ... ; the
    transforms let callers pull solutions and kernels back to the original
    coordinates.  Input is not modified.
    """
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def row_op(i: int, j: int, q: int) -> None:
        # row_i -= q * row_j, mirrored in u
        for k in range(n):
            a[i][k] -= q * a[j][k]
        for k in range(m):
            u[i][k] -= q * u[j][k]

    def col_op(i: int, j: int, q: int) -> None:
        # col_i -= q * col_j, mirrored in v
        for k in range(m):
            a[k][i] -= q * a[k][j]
        for k in range(n):
            v[k][i] -= q * v[k][j]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        # Locate a pivot of smallest absolute value in the trailing block.
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                e = a[i][j]
                if e != 0 and (best is None or abs(e) < best):
                    best = abs(e)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                row_op(i, t, q)
                if a[i][t] != 0:
                    swap_rows(t, i)
                    dirty = True
            for j in range(t + 1, n):
                if a[t][j] == 0:
                    continue
                q = a[t][j] // a[t][t]
                col_op(j, t, q)
                if a[t][j] != 0:
                    swap_cols(t, j)
                    dirty = True
        # Pivot must divide every remaining entry; fold offenders in.
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)
            continue
        if a[t][t] < 0:
            for k in range(n):
                a[t][k] = -a[t][k]
            for k in range(m):
                u[t][k] = -u[t][k]
        t += 1
    return a, u, v


def solve_integer(mat: Matrix, rhs: Sequence[int]) -> Optional[List[int]]:
    """One integer solution x of mat * x == rhs, or None if there is none."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    if m == 0:
        return [0] * n
    d, u, v = smith_normal_form(mat)
    c = mat_vec(u, list(rhs))
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
    return mat_vec(v, y)


def kernel_basis(mat: Matrix) -> List[List[int]]:
    """Basis of the integer kernel lattice {x : mat * x == 0}."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    if m == 0:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    d, _, v = smith_normal_form(mat)
    basis = []
    for j in range(n):
        dj = d[j][j] if j < m else 0
        if dj == 0:
            basis.append([v[i][j] for i in range(n)])
    return basis


def invariant_factors(mat: Matrix, ambient_rank: Optional[int] = None) -> List[int]:
    """Invariant factors of Z^r / column-span(mat), trivial factors dropped.

    r defaults to the row count.  Factors come in divisibility order with
    zeros (free summands) last; an empty list is the trivial group.
    """
    m = len(mat)
    r = m if ambient_rank is None else ambient_rank
    if m and mat[0]:
        d, _, _ = smith_normal_form(mat)
        diag = [d[i][i] for i in range(min(m, len(mat[0])))]
    else:
        diag = []
    rank_hit = len([x for x in diag if x != 0])
    factors = [x for x in diag if x > 1]
    factors.extend([0] * (r - rank_hit))
    return factors


class Quotient:
    """The abelian group Z^r / column-span(gens), with canonical coset reps.

    gens is given as a list of vectors in Z^r (columns of the presentation
    matrix).  Elements are vectors in Z^r; two are equal in the quotient
    exactly when their canonical forms coincide.
    """

    def __init__(self, rank: int, gens: Sequence[Sequence[int]]):
        self.rank = rank
        cols = [list(g) for g in gens]
        if cols:
            mat = [[cols[j][i] for j in range(len(cols))] for i in range(rank)]
        else:
            mat = [[0] for _ in range(rank)] if rank else []
        self._mat = mat
        d, u, _ = smith_normal_form(mat) if rank else ([], [], [])
        self._u = u
        ncols = len(mat[0]) if mat else 0
        self._diag = [d[i][i] if i < ncols else 0 for i in range(rank)]
        self.factors = [x for x in self._diag if x > 1]
        self.factors.extend([0] * len([x for x in self._diag if x == 0]))

    def canonical(self, vec: Sequence[int]) -> Tuple[int, ...]:
        if self.rank == 0:
            return ()
        w = mat_vec(self._u, list(vec))
        out = []
        for i in range(self.rank):
            di = self._diag[i]
            out.append(w[i] % di if di > 0 else w[i])
        return tuple(out)

    def is_zero(self, vec: Sequence[int]) -> bool:
        return all(c == 0 for c in self.canonical(vec))

    def equal(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.canonical(a) == self.canonical(b)

    def neg(self, vec: Sequence[int]) -> List[int]:
        return [-x for x in vec]

    def add(self, a: Sequence[int], b: Sequence[int]) -> List[int]:
        return [x + y for x, y in zip(a, b)]

    def element_order(self, vec: Sequence[int]) -> int:
        """Order of the coset (0 means infinite order)."""
        w = self.canonical(vec)
        order = 1
        for i in range(self.rank):
            di = self._diag[i]
            if di > 0:
                if w[i]:
                    g, _, _ = xgcd(w[i], di)
                    step = di // g
                    order = order * step // xgcd(order, step)[0]
            else:
                if w[i]:
                    return 0
        return order

    def divisible_by_two(self, vec: Sequence[int]) -> bool:
        """True when vec lies in 2 * (Z^r) + span(gens)."""
        if self.rank == 0:
            return True
        aug = [list(row) for row in self._mat]
        for i in range(self.rank):
            aug[i].extend(2 if j == i else 0 for j in range(self.rank))
        return solve_integer(aug, list(vec)) is not None
