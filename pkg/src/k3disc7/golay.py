"""The Steiner system S(5,8,24) as the PSL_2(23)-orbit of a base octad, and
the binary Golay code it spans.

Points of the projective line over F_23 are stored as integers 0..23, where
0..22 are field elements and 23 is infinity.  Subsets of the 24 points are
frequently handled as 24-bit masks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable

P = 23
INF = 23
N_POINTS = 24
ALL_MASK = (1 << N_POINTS) - 1

BASE_OCTAD = (INF, 0, 1, 3, 12, 15, 21, 22)

# display order: inf, 0, 1, ..., 22
DISPLAY_ORDER = (INF,) + tuple(range(P))


def point_rank(x: int) -> int:
    """Position of a point in the display order inf, 0, 1, ..., 22."""
    if not 0 <= x <= INF:
        raise ValueError(f"point index out of range: {x}")
    return 0 if x == INF else x + 1


def point_label(x: int) -> str:
    return "inf" if x == INF else str(x)


def parse_point(token) -> int:
    if isinstance(token, str):
        t = token.strip().lower()
        if t in ("inf", "oo", "∞"):
            return INF
        token = int(t)
    x = int(token)
    if not 0 <= x < P:
        raise ValueError(f"not a point of the projective line over F_23: {token!r}")
    return x


def sort_points(points: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(points, key=point_rank))


def to_mask(points: Iterable[int]) -> int:
    m = 0
    for x in points:
        m |= 1 << x
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    return sort_points(i for i in range(N_POINTS) if mask >> i & 1)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _inv(a: int) -> int:
    return pow(a, P - 2, P)


@dataclass(frozen=True)
class Psl23Map:
    """x -> (a x + b) / (c x + d) on the projective line, ad - bc a nonzero square."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        det = (self.a * self.d - self.b * self.c) % P
        if det == 0 or pow(det, (P - 1) // 2, P) != 1:
            raise ValueError("ad - bc must be a nonzero square mod 23")

    def __call__(self, x: int) -> int:
        a, b, c, d = self.a, self.b, self.c, self.d
        if x == INF:
            return INF if c % P == 0 else a * _inv(c) % P
        den = (c * x + d) % P
        if den == 0:
            return INF
        return (a * x + b) * _inv(den) % P

    def permutation(self) -> tuple[int, ...]:
        return tuple(self(x) for x in range(N_POINTS))


# generators of PSL_2(23)
SHIFT = Psl23Map(1, 1, 0, 1)  # x -> x + 1
NEG_INV = Psl23Map(0, -1 % P, 1, 0)  # x -> -1/x


@dataclass(frozen=True, order=True)
class Octad:
    points: tuple[int, ...]

    def __post_init__(self):
        pts = sort_points(set(self.points))
        if len(pts) != 8 or len(self.points) != 8:
            raise ValueError(f"an octad needs 8 distinct points, got {self.points!r}")
        object.__setattr__(self, "points", pts)

    @property
    def mask(self) -> int:
        return to_mask(self.points)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(point_rank(x) for x in self.points)

    def __contains__(self, x: int) -> bool:
        return x in self.points

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return 8

    def __str__(self) -> str:
        return " ".join(point_label(x) for x in self.points)


class GolayCode:
    """Octads of S(5,8,24) together with the F_2-span of their indicator vectors."""

    def __init__(self, octad_masks: Iterable[int]):
        masks = sorted(set(octad_masks), key=lambda m: tuple(point_rank(x) for x in from_mask(m)))
        self.octad_masks: tuple[int, ...] = tuple(masks)
        self.octads: tuple[Octad, ...] = tuple(Octad(from_mask(m)) for m in masks)
        self._octad_set = frozenset(masks)
        self.basis = _f2_basis(masks)
        self.dimension = len(self.basis)

    @cached_property
    def codewords(self) -> frozenset[int]:
        words = [0]
        for b in self.basis:
            words += [w ^ b for w in words]
        return frozenset(words)

    @cached_property
    def _completion(self) -> dict[int, int]:
        table: dict[int, int] = {}
        for m in self.octad_masks:
            pts = [i for i in range(N_POINTS) if m >> i & 1]
            for five in combinations(pts, 5):
                key = to_mask(five)
                if key in table:
                    raise AssertionError("two octads share a 5-subset")
                table[key] = m
        return table

    def weight_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for w in self.codewords:
            k = popcount(w)
            dist[k] = dist.get(k, 0) + 1
        return dict(sorted(dist.items()))

    def is_octad(self, points: Iterable[int]) -> bool:
        return to_mask(points) in self._octad_set

    def is_c_set(self, points: Iterable[int]) -> bool:
        return to_mask(points) in self.codewords

    def is_codeword_mask(self, mask: int) -> bool:
        return mask in self.codewords

    def octad_completion(self, five: Iterable[int]) -> Octad:
        five = set(five)
        if len(five) != 5:
            raise ValueError(f"expected a 5-element subset, got {len(five)} elements")
        return Octad(from_mask(self._completion[to_mask(five)]))

    def octads_where(self, contains=(), excludes=(), meets=None) -> list[Octad]:
        """Octads containing ``contains``, avoiding ``excludes``, and with
        ``meets = (mask_or_points, size)`` prescribing an intersection size."""
        inc = to_mask(contains)
        exc = to_mask(excludes)
        out = []
        for m, o in zip(self.octad_masks, self.octads):
            if m & inc != inc or m & exc:
                continue
            if meets is not None:
                other, size = meets
                om = other if isinstance(other, int) else to_mask(other)
                if popcount(m & om) != size:
                    continue
            out.append(o)
        return out


def _f2_basis(masks: Iterable[int]) -> list[int]:
    pivots: dict[int, int] = {}
    for m in masks:
        v = m
        while v:
            h = v.bit_length() - 1
            if h not in pivots:
                pivots[h] = v
                break
            v ^= pivots[h]
    return [pivots[h] for h in sorted(pivots)]


def _orbit(seed: int, perms: list[tuple[int, ...]]) -> set[int]:
    seen = {seed}
    todo = [seed]
    while todo:
        m = todo.pop()
        for p in perms:
            img = 0
            for i in range(N_POINTS):
                if m >> i & 1:
                    img |= 1 << p[i]
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return seen


@lru_cache(maxsize=None)
def build_steiner_system() -> GolayCode:
    """The 759 octads (orbit of the base octad) and the code they span."""
    orbit = _orbit(to_mask(BASE_OCTAD), [SHIFT.permutation(), NEG_INV.permutation()])
    if len(orbit) != 759:
        raise AssertionError(f"orbit of the base octad has size {len(orbit)}, expected 759")
    return GolayCode(orbit)


def octad_completion(five: Iterable[int]) -> Octad:
    return build_steiner_system().octad_completion(five)


def is_c_set(points: Iterable[int]) -> bool:
    return build_steiner_system().is_c_set(points)
