"""II_{1,25} = U + Leech, Leech roots and the Weyl vector (1,0;0).

Conway's chamber is never built as a region; everything downstream only
tests pairings against explicit families of Leech roots.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .leech import LeechVector, leech_basis, leech_inner
from .lattice import LatticeError

ZERO24 = (0,) * 24


@dataclass(frozen=True)
class IIVector:
    m: int
    n: int
    lam: LeechVector

    def __post_init__(self):
        if not isinstance(self.lam, LeechVector):
            object.__setattr__(self, "lam", LeechVector(self.lam))

    @property
    def coords(self) -> tuple[int, ...]:
        """26 integers (m, n, xi_inf, xi_0, ..., xi_22)."""
        return (self.m, self.n) + tuple(self.lam)

    @classmethod
    def from_coords(cls, c: Sequence[int]) -> "IIVector":
        return cls(int(c[0]), int(c[1]), LeechVector(c[2:]))

    def __add__(self, other: "IIVector") -> "IIVector":
        return IIVector(self.m + other.m, self.n + other.n, self.lam + other.lam)

    def __sub__(self, other: "IIVector") -> "IIVector":
        return IIVector(self.m - other.m, self.n - other.n, self.lam - other.lam)

    def __neg__(self) -> "IIVector":
        return IIVector(-self.m, -self.n, -self.lam)

    def __mul__(self, k: int) -> "IIVector":
        return IIVector(k * self.m, k * self.n, self.lam * k)

    __rmul__ = __mul__

    @property
    def norm(self):
        return ii_inner(self, self)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "lambda": list(self.lam)}

    @classmethod
    def from_json(cls, obj) -> "IIVector":
        return cls(int(obj["m"]), int(obj["n"]), LeechVector(obj["lambda"]))


def ii_inner(u: IIVector, v: IIVector):
    return u.m * v.n + u.n * v.m + leech_inner(u.lam, v.lam)


def coords_inner(a: Sequence[int], b: Sequence[int]):
    """The II_{1,25} pairing on raw 26-coordinate tuples."""
    return a[0] * b[1] + a[1] * b[0] + leech_inner(a[2:], b[2:])


def leech_root(lam: LeechVector) -> IIVector:
    """(-lam^2/2 - 1, 1; lam), a norm -2 vector pairing to 1 with (1,0;0)."""
    lam = LeechVector(lam)
    lam2 = leech_inner(lam, lam)
    if lam2 % 2:
        raise LatticeError("lambda^2 must be even")
    r = IIVector(-lam2 // 2 - 1, 1, lam)
    if r.norm != -2:
        raise AssertionError("Leech root does not have norm -2")
    return r


def is_leech_root(v: IIVector) -> bool:
    return v.n == 1 and v.m == -leech_inner(v.lam, v.lam) // 2 - 1


def leech_root_pair(r1: IIVector, r2: IIVector):
    """<r1, r2>, asserted against -2 - (lam1 - lam2)^2 / 2."""
    value = ii_inner(r1, r2)
    d = r1.lam - r2.lam
    if value != -2 - Fraction(leech_inner(d, d), 2):
        raise AssertionError("Leech root pairing formula violated")
    return value


def weyl_vector() -> IIVector:
    return IIVector(1, 0, LeechVector(ZERO24))


@lru_cache(maxsize=None)
def ii_basis() -> tuple[tuple[int, ...], ...]:
    """A Z-basis of II_{1,25} in 26-coordinate form: U then a Leech basis."""
    u = ((1, 0) + ZERO24, (0, 1) + ZERO24)
    return u + tuple((0, 0) + b for b in leech_basis())


@lru_cache(maxsize=None)
def ii_gram() -> tuple[tuple[int, ...], ...]:
    b = ii_basis()
    return tuple(tuple(coords_inner(x, y) for y in b) for x in b)
