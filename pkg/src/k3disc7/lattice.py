"""Exact arithmetic for integral lattices.

Matrices are lists of rows; entries are ``int`` or ``fractions.Fraction``.
Nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Sequence

Matrix = list[list]
Vector = list


class LatticeError(ValueError):
    pass


# ---------------------------------------------------------------- basics

def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def is_integral(obj) -> bool:
    if isinstance(obj, (list, tuple)):
        return all(is_integral(x) for x in obj)
    return Fraction(obj).denominator == 1


def to_int(obj):
    """Convert a (nested) structure of integral Fractions to ints."""
    if isinstance(obj, (list, tuple)):
        return [to_int(x) for x in obj]
    f = Fraction(obj)
    if f.denominator != 1:
        raise LatticeError(f"non-integral entry {f}")
    return f.numerator


def frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s) if not isinstance(s, float) else _no_float(s)


def _no_float(x):
    raise LatticeError(f"floating point input not accepted: {x!r}")


def check_gram(g: Sequence[Sequence], even: bool = False) -> None:
    n = len(g)
    if any(len(row) != n for row in g):
        raise LatticeError("Gram matrix must be square")
    for i in range(n):
        for j in range(i):
            if g[i][j] != g[j][i]:
                raise LatticeError("Gram matrix must be symmetric")
    if even and any(Fraction(g[i][i]) % 2 for i in range(n)):
        raise LatticeError("Gram matrix is not even")


# ---------------------------------------------------------------- elimination

def det(a: Sequence[Sequence]):
    """Determinant; fraction-free Bareiss elimination for integer input."""
    n = len(a)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in a for x in row):
        m = [list(row) for row in a]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]
    m = [[Fraction(x) for x in row] for row in a]
    d = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            d = -d
        d *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return d


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def _all_int(a: Sequence[Sequence]) -> bool:
    return all(isinstance(x, int) for row in a for x in row)


def bareiss_gauss_jordan(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free Gauss-Jordan on an integer matrix.

    Returns (m, pivots, d): every pivot entry of m equals d, the other entries
    of the pivot columns vanish, and m / d is the reduced row echelon form.
    """
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    prev, r = 1, 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(rows):
            if i != r:
                f = m[i][c]
                m[i] = [(piv * x - f * y) // prev for x, y in zip(m[i], m[r])]
        # earlier pivot rows were scaled along with the rest
        prev = piv
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots, prev


def solve_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """(x, d) with a x = d b for a square nonsingular integer a; d = +-det(a)."""
    n = len(a)
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    m, piv, d = bareiss_gauss_jordan(aug)
    if piv[:n] != list(range(n)):
        raise LatticeError("matrix is singular")
    if d < 0:
        return [[-x for x in row[n:]] for row in m], -d
    return [row[n:] for row in m], d


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    if _all_int(a):
        return len(bareiss_gauss_jordan(a)[1])
    return len(rref(a)[1])


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    if _all_int(a):
        x, d = solve_int(a, identity(n))
        return [[Fraction(v, d) for v in row] for row in x]
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise LatticeError("matrix is singular")
    return [row[n:] for row in m]


def solve(a: Sequence[Sequence], b: Sequence) -> Vector:
    """The unique x with a x = b (a square and nonsingular)."""
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, piv = rref(aug)
    n = len(a[0])
    if piv != list(range(n)):
        raise LatticeError("system is singular or inconsistent")
    return [m[i][n] for i in range(n)]


def solve_left(rows: Sequence[Sequence], target: Sequence) -> Vector | None:
    """Coefficients c with sum c_i rows_i = target, or None; rows independent."""
    k = len(rows)
    aug = [list(col) + [t] for col, t in zip(transpose(rows), target)]
    m, piv = rref(aug)
    if k in piv:
        return None
    if piv != list(range(k)):
        raise LatticeError("rows are linearly dependent")
    return [m[i][k] for i in range(k)]


# ---------------------------------------------------------------- integer normal forms

def hermite_normal_form(a: Sequence[Sequence[int]], transform: bool = False):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows of H (upper echelon, positive pivots, entries above
    each pivot reduced into [0, pivot)).  With ``transform`` also returns a
    unimodular U with U a = H_full, where H_full keeps the zero rows at the
    bottom.
    """
    m = [list(map(int, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = identity(rows) if transform else None
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if m[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(m[i][c]), i))
            if p != r:
                m[r], m[p] = m[p], m[r]
                if u is not None:
                    u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, rows):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if u is not None:
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if all(m[i][c] == 0 for i in range(r, rows)):
            continue
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                if u is not None:
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    h = [row for row in m if any(row)]
    if transform:
        return h, m, u
    return h


def integer_kernel(a: Sequence[Sequence[int]]) -> Matrix:
    """A Z-basis (HNF-reduced rows) of {x in Z^n : a x = 0}."""
    n = len(a[0]) if a else 0
    if not a:
        return identity(n)
    at = transpose(a)
    _, full, u = hermite_normal_form(at, transform=True)
    ker = [u[i] for i in range(n) if not any(full[i])]
    return hermite_normal_form(ker) if ker else []


def smith_normal_form(a: Sequence[Sequence[int]]):
    """(U, D, V) with U a V = D diagonal, U and V unimodular, d_i | d_{i+1}.

    Pivots are chosen as the entry of smallest absolute value (first in
    row-major order on ties).
    """
    m = [list(map(int, row)) for row in a]
    rows, cols = len(m), len(m[0])
    u, v = identity(rows), identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q row_src
        m[dst] = [x - q * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in m:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(rows, cols)):
        while True:
            cand = [(abs(m[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j]]
            if not cand:
                break
            _, pi, pj = min(cand)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = m[t][t]
            clean = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    add_row(i, t, m[i][t] // p)
                    clean = clean and m[i][t] == 0
            for j in range(t + 1, cols):
                if m[t][j]:
                    add_col(j, t, m[t][j] // p)
                    clean = clean and m[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % p), None)
            if bad is None:
                break
            # fold an offending row in so the next pivot is smaller
            m[t] = [x + y for x, y in zip(m[t], m[bad[0]])]
            u[t] = [x + y for x, y in zip(u[t], u[bad[0]])]
        if t < rows and t < cols and m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
    return u, m, v


def elementary_divisors(a: Sequence[Sequence[int]]) -> list[int]:
    _, d, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0])))]


# ---------------------------------------------------------------- quadratic forms

def inertia(g: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix, exactly."""
    m = [[Fraction(x) for x in row] for row in g]
    pos = neg = 0
    n = len(m)
    active = list(range(n))
    while active:
        k = next((i for i in active if m[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # congruence e_i -> e_i + e_j makes the diagonal entry 2 m_ij
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            continue
        piv = m[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            f = m[i][k] / piv
            if f:
                for j in active:
                    m[i][j] -= f * m[k][j]
        for i in active:
            m[i][k] = m[k][i] = Fraction(0)
    return pos, neg, n - pos - neg


def signature(g: Sequence[Sequence]) -> tuple[int, int]:
    p, q, z = inertia(g)
    if z:
        raise LatticeError("degenerate form has no signature")
    return p, q


def inner(u: Sequence, v: Sequence, g: Sequence[Sequence]):
    """u^T g v, exact."""
    if len(u) != len(g) or len(v) != len(g):
        raise LatticeError(f"dimension mismatch: {len(u)}, {len(v)} vs Gram of size {len(g)}")
    total = 0
    for ui, row in zip(u, g):
        if ui:
            total += ui * dot(row, v)
    return Fraction(total) if not isinstance(total, int) else total


def norm(u: Sequence, g: Sequence[Sequence]):
    return inner(u, u, g)


def is_root(r: Sequence, g: Sequence[Sequence]) -> bool:
    """Whether 2r/<r,r> pairs integrally with every basis vector."""
    rr = norm(r, g)
    if rr == 0:
        raise LatticeError("isotropic vector cannot be a root")
    if not is_integral(r):
        raise LatticeError("a root must have integer coordinates")
    pairing = mat_vec(g, r)
    return all((Fraction(2 * x) / rr).denominator == 1 for x in pairing)


def reflect(x: Sequence, r: Sequence, g: Sequence[Sequence]) -> Vector:
    """x - 2 <x,r>/<r,r> r, for any anisotropic rational r."""
    rr = norm(r, g)
    if rr == 0:
        raise LatticeError("cannot reflect in an isotropic vector")
    c = Fraction(2 * inner(x, r, g)) / rr
    return [Fraction(xi) - c * ri for xi, ri in zip(x, r)]


def reflection_matrix(r: Sequence, g: Sequence[Sequence]) -> Matrix:
    """Matrix (acting on column coordinate vectors) of the reflection in r."""
    n = len(g)
    cols = [reflect([int(i == j) for i in range(n)], r, g) for j in range(n)]
    return transpose(cols)


def mod2(x) -> Fraction:
    f = Fraction(x)
    return f - 2 * (f.numerator // (2 * f.denominator))


@dataclass(frozen=True)
class DiscriminantForm:
    """L^dual / L as a product of cyclic groups, with its finite quadratic form.

    ``generators`` are rational coordinate vectors (w.r.t. the lattice basis)
    of elements of L^dual generating the factors, in the order of ``orders``.
    """

    gram: tuple[tuple, ...]
    orders: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    q_values: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def q(self, vec: Sequence) -> Fraction:
        return mod2(inner(vec, vec, self.gram))

    def b(self, u: Sequence, v: Sequence) -> Fraction:
        return Fraction(inner(u, v, self.gram)) % 1

    def element(self, coeffs: Sequence[int]) -> list[Fraction]:
        n = len(self.gram)
        out = [Fraction(0)] * n
        for c, gen in zip(coeffs, self.generators):
            out = [o + c * x for o, x in zip(out, gen)]
        return out

    def elements(self):
        for coeffs in product(*(range(d) for d in self.orders)):
            yield coeffs, self.element(coeffs)

    def value_set(self, include_zero: bool = False) -> set[Fraction]:
        vals = set()
        for coeffs, el in self.elements():
            if any(coeffs) or include_zero:
                vals.add(self.q(el))
        return vals


def discriminant_form(g: Sequence[Sequence[int]]) -> DiscriminantForm:
    check_gram(g, even=True)
    if det(g) == 0:
        raise LatticeError("degenerate Gram matrix")
    _, d, v = smith_normal_form(g)
    n = len(g)
    orders, gens = [], []
    for i in range(n):
        di = abs(d[i][i])
        if di == 1:
            continue
        gen = tuple(Fraction(v[r][i], di) for r in range(n))
        orders.append(di)
        gens.append(gen)
    gram = tuple(tuple(row) for row in g)
    qs = tuple(mod2(inner(x, x, gram)) for x in gens)
    return DiscriminantForm(gram, tuple(orders), tuple(gens), qs)


def orthogonal_complement(basis: Sequence[Sequence[int]], ambient_gram: Sequence[Sequence]) -> Matrix:
    """Integral basis of {x : <x, b_i> = 0 for all i}, primitive in the ambient lattice."""
    if not basis:
        return identity(len(ambient_gram))
    if not is_integral(basis):
        raise LatticeError("basis vectors must be integral")
    if rank(basis) != len(basis):
        raise LatticeError("basis vectors are linearly dependent")
    pairing = [mat_vec(ambient_gram, b) for b in basis]
    denom = 1
    for row in pairing:
        for x in row:
            denom = denom * Fraction(x).denominator // gcd(denom, Fraction(x).denominator)
    pairing = [[to_int(Fraction(x) * denom) for x in row] for row in pairing]
    return integer_kernel(pairing)


def is_primitive(rows: Sequence[Sequence[int]]) -> bool:
    """Whether the Z-span of the rows is saturated in Z^n."""
    if not rows:
        return True
    return all(d == 1 for d in elementary_divisors(rows) if d)


def overlattice_index(sub_gram, super_gram, inclusion: Sequence[Sequence[int]]) -> int:
    """Index of a full-rank sublattice given by ``inclusion`` (rows = sub basis in super coordinates)."""
    if not is_integral(inclusion):
        raise LatticeError("inclusion matrix must be integral")
    if len(inclusion) != len(super_gram) or len(inclusion) != len(sub_gram):
        raise LatticeError("inclusion must be a square full-rank embedding")
    image = mat_mul(mat_mul(inclusion, super_gram), transpose(inclusion))
    if [list(map(Fraction, r)) for r in image] != [list(map(Fraction, r)) for r in sub_gram]:
        raise LatticeError("inclusion does not carry the super Gram to the sub Gram")
    ds, dl = Fraction(det(sub_gram)), Fraction(det(super_gram))
    if dl == 0 or ds == 0:
        raise LatticeError("degenerate lattice")
    ratio = ds / dl
    if ratio.denominator != 1 or ratio < 0 or isqrt(ratio.numerator) ** 2 != ratio.numerator:
        raise LatticeError(f"determinant ratio {ratio} is not a perfect square")
    index = isqrt(ratio.numerator)
    if abs(det(inclusion)) != index:
        raise AssertionError("determinant of inclusion disagrees with the determinant ratio")
    return index
