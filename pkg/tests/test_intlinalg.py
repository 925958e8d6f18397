"""The integer linear algebra under everything else."""

from hypothesis import given, settings, strategies as st

from hfk.intlinalg import (
    Quotient,
    identity,
    invariant_factors,
    kernel_basis,
    mat_mul,
    mat_vec,
    smith_normal_form,
    solve_integer,
    xgcd,
)

small_int = st.integers(min_value=-9, max_value=9)


def matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(small_int, min_size=n, max_size=n),
                min_size=m, max_size=m)))


def test_xgcd_examples():
    assert xgcd(12, 18) == (6, -1, 1)
    g, x, y = xgcd(0, 0)
    assert g == 0
    g, x, y = xgcd(-4, 6)
    assert g == 2 and -4 * x + 6 * y == 2


@given(small_int, small_int)
def test_xgcd_bezout(a, b):
    g, x, y = xgcd(a, b)
    assert g >= 0
    assert a * x + b * y == g
    if a or b:
        assert a % g == 0 and b % g == 0


@given(matrices())
@settings(max_examples=60)
def test_smith_transforms_multiply_out(mat):
    d, u, v = smith_normal_form(mat)
    assert mat_mul(mat_mul(u, mat), v) == d
    for i in range(len(d)):
        for j in range(len(d[0])):
            if i != j:
                assert d[i][j] == 0
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    nonzero = [x for x in diag if x]
    assert all(x > 0 for x in nonzero)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


@given(matrices())
@settings(max_examples=60)
def test_kernel_vectors_annihilate(mat):
    for vec in kernel_basis(mat):
        assert all(x == 0 for x in mat_vec(mat, vec))


@given(matrices(), st.data())
@settings(max_examples=60)
def test_solve_recovers_known_solution(mat, data):
    n = len(mat[0])
    x = data.draw(st.lists(small_int, min_size=n, max_size=n))
    rhs = mat_vec(mat, x)
    sol = solve_integer(mat, rhs)
    assert sol is not None
    assert mat_vec(mat, sol) == rhs


def test_solve_reports_unsolvable():
    assert solve_integer([[2]], [1]) is None
    assert solve_integer([[1, 0], [0, 0]], [0, 1]) is None


def test_invariant_factors_examples():
    assert invariant_factors([[2, 0], [0, 3]]) == [6]
    assert invariant_factors([[2, 0], [0, 4]]) == [2, 4]
    assert invariant_factors([[0, 0], [0, 0]]) == [0, 0]
    assert invariant_factors([[3]], ambient_rank=2) == [3, 0]
    assert identity(2) == [[1, 0], [0, 1]]


def test_quotient_canonical_forms():
    # Z^2 / <(2,0)> is Z_2 + Z with the free coordinate passed through.
    q = Quotient(2, [[2, 0]])
    assert q.factors == [2, 0]
    assert q.canonical([0, 0]) == (0, 0)
    assert q.canonical([2, 0]) == (0, 0)
    assert not q.is_zero([1, 0])
    assert q.equal([3, 5], q.add([1, 5], [2, 0]))
    assert q.is_zero(q.add([1, 2], q.neg([1, 2])))


def test_quotient_element_orders():
    q = Quotient(2, [[4, 0], [0, 2]])
    assert q.element_order([0, 0]) == 1
    assert q.element_order([1, 0]) == 4
    assert q.element_order([2, 1]) == 2
    free = Quotient(1, [])
    assert free.element_order([1]) == 0


@given(st.lists(st.lists(small_int, min_size=2, max_size=2),
                min_size=1, max_size=3),
       st.lists(small_int, min_size=2, max_size=2),
       st.lists(small_int, min_size=2, max_size=2),
       st.data())
@settings(max_examples=60)
def test_quotient_canonical_well_defined(gens, a, b, data):
    # Shifting a representative by the relation lattice must not move the
    # canonical form of any sum it takes part in.
    q = Quotient(2, gens)
    coeffs = data.draw(st.lists(small_int, min_size=len(gens),
                                max_size=len(gens)))
    a2 = list(a)
    for c, g in zip(coeffs, gens):
        a2 = q.add(a2, [c * x for x in g])
    assert q.equal(a, a2)
    assert q.canonical(q.add(a, b)) == q.canonical(q.add(a2, b))
