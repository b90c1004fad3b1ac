from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from k3disc7.dynkin import root_gram
from k3disc7.lattice import (
    LatticeError,
    det,
    discriminant_form,
    elementary_divisors,
    hermite_normal_form,
    identity,
    inertia,
    integer_kernel,
    inverse,
    mat_mul,
    mat_vec,
    orthogonal_complement,
    overlattice_index,
    rank,
    reflect,
    reflection_matrix,
    signature,
    smith_normal_form,
    solve_int,
    solve_left,
)

small = st.integers(min_value=-6, max_value=6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(square))
def test_det_matches_sympy(m):
    assert det(m) == sympy.Matrix(m).det()
    assert det([[Fraction(x) for x in row] for row in m]) == sympy.Matrix(m).det()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.lists(st.lists(small, min_size=4, max_size=4), min_size=r, max_size=r)))
def test_snf_matches_sympy(m):
    u, d, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, m), v) == d
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    ours = [x for x in elementary_divisors(m) if x]
    theirs = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    theirs = [abs(int(theirs[i, i])) for i in range(min(theirs.shape)) if theirs[i, i]]
    assert ours == theirs
    assert all(b % a == 0 for a, b in zip(ours, ours[1:]))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda r: st.lists(st.lists(small, min_size=4, max_size=4), min_size=r, max_size=r)))
def test_hnf_spans_the_same_lattice(m):
    h, full, u = hermite_normal_form(m, transform=True)
    assert mat_mul(u, m) == full
    assert abs(det(u)) == 1
    assert len(h) == rank(m)
    pivots = [next(j for j, x in enumerate(row) if x) for row in h]
    assert pivots == sorted(set(pivots))
    for i, (row, p) in enumerate(zip(h, pivots)):
        assert row[p] > 0
        assert all(0 <= h[k][p] < row[p] for k in range(i))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=1, max_size=3))
def test_integer_kernel(m):
    ker = integer_kernel(m)
    assert len(ker) == 5 - rank(m)
    for k in ker:
        assert mat_vec(m, k) == [0] * len(m)
    if ker:
        assert all(d == 1 for d in elementary_divisors(ker))


def test_solve_int_against_fraction_inverse():
    a = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    b = identity(3)
    x, d = solve_int(a, b)
    assert d == abs(det(a))
    inv = inverse(a)
    assert [[Fraction(v, d) for v in row] for row in x] == inv
    with pytest.raises(LatticeError):
        solve_int([[1, 2], [2, 4]], b[:2])


def test_solve_left():
    rows = [[1, 0, 1], [0, 1, 1]]
    assert solve_left(rows, [2, 3, 5]) == [2, 3]
    assert solve_left(rows, [1, 1, 1]) is None


def test_signatures():
    assert signature([[0, 1], [1, 0]]) == (1, 1)
    assert inertia(root_gram("E", 8)) == (0, 8, 0)
    assert inertia([[1, 0], [0, 0]]) == (1, 0, 1)


@pytest.mark.parametrize(
    "gram, orders, values",
    [
        ([[2]], (2,), {Fraction(1, 2)}),
        ([[2, -1], [-1, 2]], (3,), {Fraction(2, 3)}),
        ([[2, 1], [1, 4]], (7,), {Fraction(2, 7), Fraction(8, 7), Fraction(4, 7)}),
        ([[-x for x in row] for row in root_gram("E", 8)], (), set()),
    ],
)
def test_discriminant_forms(gram, orders, values):
    d = discriminant_form(gram)
    assert d.orders == orders
    assert d.value_set() == values


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(-3, 3))
def test_discriminant_order_is_abs_det(a, c, b):
    g = [[2 * a, b], [b, 2 * c]]
    if det(g) == 0:
        return
    assert discriminant_form(g).order == abs(det(g))


def test_odd_gram_rejected():
    with pytest.raises(LatticeError):
        discriminant_form([[1]])


gram_u_a2 = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -2, 1], [0, 0, 1, -2]]


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=4, max_size=4), st.lists(small, min_size=4, max_size=4))
def test_reflection_properties(x, r):
    rr = sum(a * sum(g * b for g, b in zip(row, r)) for a, row in zip(r, gram_u_a2))
    if rr == 0:
        return
    y = reflect(x, r, gram_u_a2)
    assert reflect(y, r, gram_u_a2) == [Fraction(v) for v in x]
    nx = sum(a * sum(g * b for g, b in zip(row, x)) for a, row in zip(x, gram_u_a2))
    ny = sum(a * sum(g * b for g, b in zip(row, y)) for a, row in zip(y, gram_u_a2))
    assert nx == ny
    assert reflect(r, r, gram_u_a2) == [-Fraction(v) for v in r]


def test_reflection_matrix_of_root_is_integral():
    m = reflection_matrix([0, 0, 1, 0], gram_u_a2)
    assert all(Fraction(v).denominator == 1 for row in m for v in row)
    assert mat_vec(m, [0, 0, 1, 0]) == [0, 0, -1, 0]


def test_orthogonal_complement_in_hyperbolic_plane():
    perp = orthogonal_complement([[1, 1]], [[0, 1], [1, 0]])
    assert perp in ([[1, -1]], [[-1, 1]])


def test_overlattice_index():
    assert overlattice_index([[4]], [[1]], [[2]]) == 2
    a1a1 = [[-2, 0], [0, -2]]
    d2 = [[-1, 0], [0, -1]]
    assert overlattice_index(a1a1, d2, [[1, 1], [1, -1]]) == 2
    with pytest.raises(LatticeError):
        overlattice_index([[3]], [[1]], [[2]])
