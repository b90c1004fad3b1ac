"""The Leech lattice inside Z^24 via the Golay code, and the six named vectors.

Coordinates are ordered inf, 0, 1, ..., 22 (the display order of the points),
so ``xi[0]`` is the coordinate at infinity and ``xi[k + 1]`` the coordinate at
the field element k.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .golay import DISPLAY_ORDER, INF, build_steiner_system, point_rank, to_mask
from .lattice import det, hermite_normal_form

K0 = (0, 2, 3, 4, 5, 15, 20, 22)


def _mask_of_positions(positions: Iterable[int]) -> int:
    return to_mask(DISPLAY_ORDER[i] for i in positions)


def is_leech(xi: Sequence[int]) -> bool:
    """The three congruence conditions defining the Leech lattice."""
    if len(xi) != 24:
        return False
    xi = [int(x) for x in xi]
    m = xi[0] % 2
    if any(x % 2 != m for x in xi):
        return False
    code = build_steiner_system()
    for r in range(4):
        cls = _mask_of_positions(i for i, x in enumerate(xi) if x % 4 == r)
        if not code.is_codeword_mask(cls):
            return False
    return sum(xi) % 8 == (4 * m) % 8


class LeechVector(tuple):
    """24 integers that satisfy the Leech conditions (checked on construction)."""

    def __new__(cls, xi: Iterable[int]):
        xi = tuple(int(x) for x in xi)
        if not is_leech(xi):
            raise ValueError(f"not a Leech lattice vector: {xi}")
        return super().__new__(cls, xi)

    def __add__(self, other):
        return LeechVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return LeechVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return LeechVector(-a for a in self)

    def __mul__(self, k: int):
        return LeechVector(k * a for a in self)

    __rmul__ = __mul__

    @property
    def norm(self) -> int:
        return leech_inner(self, self)

    def to_json(self) -> list[int]:
        return list(self)


def leech_inner(a: Sequence[int], b: Sequence[int]):
    """-sum(a_i b_i) / 8; an int whenever both arguments lie in the lattice."""
    s = -sum(x * y for x, y in zip(a, b))
    if s % 8 == 0:
        return s // 8
    return Fraction(s, 8)


def nu(alpha: Iterable[int]) -> tuple[int, ...]:
    """Indicator vector of a set of points (not necessarily in the lattice)."""
    v = [0] * 24
    for x in alpha:
        v[point_rank(x)] = 1
    return tuple(v)


OMEGA = tuple(range(24))


def combo(*terms: tuple[int, Iterable[int]]) -> LeechVector:
    """sum of coef * nu(alpha) over (coef, alpha) pairs, checked for membership."""
    v = [0] * 24
    for coef, alpha in terms:
        for i, x in enumerate(nu(alpha)):
            v[i] += coef * x
    return LeechVector(v)


def named_vectors() -> dict[str, LeechVector]:
    """Y, Z, X, P, Q, T for the fixed octad K0."""
    return {
        "Y": combo((4, [0]), (1, OMEGA)),
        "Z": LeechVector([0] * 24),
        "X": combo((4, [INF]), (1, OMEGA)),
        "P": combo((2, K0)),
        "Q": combo((4, [INF]), (4, [0])),
        "T": combo((1, OMEGA), (-4, [1])),
    }


@lru_cache(maxsize=None)
def leech_basis() -> tuple[tuple[int, ...], ...]:
    """A Z-basis of the lattice, derived (not stored) from generating families.

    The lattice is generated by 2 nu_K over the octads, 4(e_i +- e_j), and
    nu_Omega - 4 e_inf; the basis is the Hermite normal form of these rows.
    """
    rows = [tuple(2 * x for x in nu(o)) for o in build_steiner_system().octads]
    for i in range(23):
        for s in (1, -1):
            r = [0] * 24
            r[i] += 4
            r[i + 1] += 4 * s
            rows.append(tuple(r))
    rows.append(tuple(combo((1, OMEGA), (-4, [INF]))))
    basis = hermite_normal_form(rows)
    if len(basis) != 24:
        raise AssertionError("generating families do not span a rank-24 lattice")
    for b in basis:
        LeechVector(b)
    gram = [[leech_inner(a, b) for b in basis] for a in basis]
    if det(gram) != 1:
        raise AssertionError("lattice basis is not unimodular")
    return tuple(tuple(b) for b in basis)
