"""Greedy reduction of vectors of the ample cone into D' by inversion
involutions, and the resulting decomposition of isometries as an involution
word followed by a lifted graph automorphism.

Height of v is <v, w'>.  Applying the inversion of a face r' with
<v, r'> < 0 lowers the height by 2 <w', r'> <v, r'> / <r', r'>, which is
49, 21 or 7 times |<v, r'>| for E7, D7 and A7 faces.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .faces import FaceRoot, enumerate_face_roots, get_face
from .fibrations import LAYOUT, all_inversions
from .ns_embed import build_ns_lattice, weyl_projection
from .symmetry import GraphAutomorphism, Isometry, graph_automorphism_group, lifted_group

STEP_CAP = 10_000
TYPE_ORDER = {"E7": 0, "D7": 1, "A7": 2}
_INT64_SAFE = 2**62


class ReductionError(ValueError):
    pass


class NotInGroupError(ReductionError):
    """Raised when phi(w') does not reduce to w'; ``witness`` is the terminal chamber point."""

    def __init__(self, msg: str, witness: Sequence[int]):
        super().__init__(msg)
        self.witness = tuple(witness)


# ---------------------------------------------------------------- exact integer products

def _bound(a: np.ndarray) -> int:
    return int(max(abs(int(a.max())), abs(int(a.min())))) if a.size else 0


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer product: int64 when it provably cannot overflow, Python ints otherwise."""
    if _bound(a) * _bound(b) * a.shape[-1] < _INT64_SAFE:
        return a.astype(np.int64) @ b.astype(np.int64)
    return a.astype(object) @ b.astype(object)


def as_array(m: Sequence[Sequence[int]]) -> np.ndarray:
    arr = np.array([[int(x) for x in row] for row in m], dtype=object)
    return arr.astype(np.int64) if _bound(arr) < 2**31 else arr


def to_rows(a: np.ndarray) -> Isometry:
    return Isometry.of(a.tolist())


# ---------------------------------------------------------------- data

@dataclass(frozen=True)
class ReductionTrace:
    heights: tuple[int, ...]

    def is_valid(self) -> bool:
        h = self.heights
        return all(a > b for a, b in zip(h, h[1:])) and all(x >= 28 for x in h)


@dataclass(frozen=True)
class GeneratorWord:
    steps: tuple[int, ...]  # face indices, in the order they were applied
    residual: GraphAutomorphism | None = None
    trace: ReductionTrace | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        faces = enumerate_face_roots()
        return {
            "steps": [faces[i].name for i in self.steps],
            "residual": self.residual.cycles() if self.residual is not None else None,
            "trace": list(self.trace.heights) if self.trace else [],
        }


@dataclass(frozen=True)
class _Tables:
    faces: tuple[FaceRoot, ...]  # the 98 A7/D7/E7 faces
    duals: np.ndarray  # 98 x 20, <v, r'> = duals @ v
    curve_duals: np.ndarray  # 28 x 20
    involutions: dict[int, np.ndarray]  # face index -> matrix
    lifts: dict[GraphAutomorphism, np.ndarray]
    by_matrix: dict[tuple, GraphAutomorphism]
    w_prime: np.ndarray
    w_dual: np.ndarray  # 1 x 20, height = w_dual @ v


@lru_cache(maxsize=None)
def _tables() -> _Tables:
    ns = build_ns_lattice()
    faces = tuple(f for f in enumerate_face_roots() if f.rtype in LAYOUT)
    duals = np.array([f.dual for f in faces], dtype=np.int64)
    curve_duals = np.array([ns.dual_coords(c) for c in ns.curves], dtype=np.int64)
    invs = {i: as_array(m) for i, m in all_inversions().items()}
    lifts = {g: as_array(m) for g, m in lifted_group().items()}
    by_matrix = {tuple(m): g for g, m in lifted_group().items()}
    wp, _ = weyl_projection()
    w_dual = np.array([ns.dual_coords(wp)], dtype=np.int64)
    return _Tables(faces, duals, curve_duals, invs, lifts, by_matrix, np.array(wp, dtype=np.int64), w_dual)


def _pairings(rows: np.ndarray, v: np.ndarray) -> list[int]:
    return [int(x) for x in matmul(rows, v.reshape(-1, 1)).ravel()]


def height_decrease(face: FaceRoot, pairing: int) -> int:
    """2 <w', r'> <v, r'> / <r', r'> for a face with <v, r'> = pairing."""
    d = Fraction(2 * face.w_pairing * pairing) / face.norm
    if d.denominator != 1:
        raise ReductionError(f"non-integral height change at face {face.name}")
    return int(d)


def greedy_policy(v: Sequence[int], candidates: Iterable[tuple[FaceRoot, int]]) -> FaceRoot:
    """Pick the face with the largest height decrease; ties go to the type
    order E7 < D7 < A7, then to the smaller face index."""
    cands = list(candidates)
    if not cands:
        raise ReductionError("no candidate faces")
    return min(cands, key=lambda fp: (-height_decrease(*fp), TYPE_ORDER[fp[0].rtype], fp[0].index))[0]


def check_preconditions(v: Sequence[int]) -> None:
    ns = build_ns_lattice()
    if len(v) != ns.rank or not all(isinstance(x, (int, np.integer)) for x in v):
        raise ReductionError(f"expected {ns.rank} integer coordinates")
    v = [int(x) for x in v]
    if ns.inner(v, v) != 28:
        raise ReductionError(f"v^2 = {ns.inner(v, v)}, expected 28")
    wp, _ = weyl_projection()
    if ns.inner(v, wp) <= 0:
        raise ReductionError("v is not in the positive cone of w'")
    bad = [i + 1 for i, c in enumerate(ns.curves) if ns.inner(v, c) <= 0]
    if bad:
        raise ReductionError(f"v is not positive on curves {bad}")


def reduce_vector(v: Sequence[int], check: bool = True) -> tuple[GeneratorWord, tuple[int, ...], ReductionTrace]:
    """Apply inversions greedily until v lies in the closure of D'."""
    if check:
        check_preconditions(v)
    t = _tables()
    cur = np.array([int(x) for x in v], dtype=object)
    cur = cur.astype(np.int64) if _bound(cur) < 2**31 else cur
    height = _pairings(t.w_dual, cur)[0]
    heights, steps = [height], []
    for _ in range(STEP_CAP):
        pairs = _pairings(t.duals, cur)
        cands = [(f, p) for f, p in zip(t.faces, pairs) if p < 0]
        if not cands:
            if any(p <= 0 for p in _pairings(t.curve_duals, cur)):
                raise ReductionError("terminal vector left the ample cone")
            word = GeneratorWord(tuple(steps), None, ReductionTrace(tuple(heights)))
            return word, tuple(int(x) for x in cur), word.trace
        face = greedy_policy(cur, cands)
        drop = height_decrease(face, dict((f.index, p) for f, p in cands)[face.index])
        cur = matmul(t.involutions[face.index], cur.reshape(-1, 1)).ravel()
        new = _pairings(t.w_dual, cur)[0]
        if drop <= 0 or new != height - drop:
            raise ReductionError(f"height identity fails at face {face.name}: {height} -> {new}, drop {drop}")
        height = new
        heights.append(height)
        steps.append(face.index)
    raise ReductionError(f"no termination within {STEP_CAP} steps")


# ---------------------------------------------------------------- decomposition

def _check_isometry(phi: np.ndarray) -> None:
    ns = build_ns_lattice()
    g = np.array(ns.gram, dtype=np.int64)
    if phi.shape != (ns.rank, ns.rank):
        raise ReductionError(f"expected a {ns.rank}x{ns.rank} matrix")
    if not (matmul(matmul(phi.T, g), phi) == g).all():
        raise ReductionError("matrix does not preserve the Gram matrix")


def decompose(phi: Sequence[Sequence[int]] | np.ndarray) -> GeneratorWord:
    """Write phi as (iota_{s_k} ... iota_{s_1})^-1 composed with a lifted graph automorphism."""
    t = _tables()
    phi = phi if isinstance(phi, np.ndarray) else as_array(phi)
    _check_isometry(phi)
    v = matmul(phi, t.w_prime.reshape(-1, 1)).ravel()
    word, terminal, trace = reduce_vector([int(x) for x in v])
    if terminal != tuple(int(x) for x in t.w_prime):
        raise NotInGroupError("not in N x| PGL2(7): phi(w') reduces to another point of D'", terminal)
    rest = phi
    for s in word.steps:
        rest = matmul(t.involutions[s], rest)
    key = tuple(tuple(int(x) for x in row) for row in rest.tolist())
    g = t.by_matrix.get(key)
    if g is None:
        raise ReductionError("residual fixes w' but is not a lifted graph automorphism")
    return GeneratorWord(word.steps, g, trace)


def recompose(word: GeneratorWord) -> np.ndarray:
    """iota_{s_1} ... iota_{s_k} composed with the lift of the residual."""
    t = _tables()
    g = word.residual if word.residual is not None else GraphAutomorphism.identity()
    out = t.lifts[g]
    for s in reversed(word.steps):
        out = matmul(t.involutions[s], out)
    return out


# ---------------------------------------------------------------- words over the generators

Letter = tuple[str, object]  # ("inv", face index) or ("aut", GraphAutomorphism)


def parse_letter(item) -> Letter:
    """A face id (index or name) for an inversion, or cycle notation for an automorphism."""
    if isinstance(item, dict):
        if "face" in item:
            item = item["face"]
        elif "aut" in item:
            item = str(item["aut"]) or "()"
        else:
            raise ValueError(f"unrecognised word letter {item!r}")
    if isinstance(item, bool):
        raise ValueError(f"unrecognised word letter {item!r}")
    if isinstance(item, str) and item.strip().startswith("("):
        g = GraphAutomorphism.from_cycles(item)
        if g not in lifted_group():
            raise ValueError(f"{item} is not an automorphism of the graph")
        return ("aut", g)
    if isinstance(item, (int, str)):
        face = get_face(item)
        if face.rtype not in LAYOUT:
            raise ValueError(f"face {face.name} has no inversion involution")
        return ("inv", face.index)
    raise ValueError(f"unrecognised word letter {item!r}")


def letter_json(letter: Letter):
    kind, x = letter
    return enumerate_face_roots()[x].name if kind == "inv" else x.cycles()


def evaluate_word(letters: Sequence[Letter]) -> np.ndarray:
    """The isometry l_1 o l_2 o ... o l_k."""
    t = _tables()
    out = as_array(Isometry.identity())
    for kind, x in reversed(letters):
        out = matmul(t.involutions[x] if kind == "inv" else t.lifts[x], out)
    return out


def random_word(rng: random.Random, max_len: int = 12) -> list[Letter]:
    t = _tables()
    faces = [f.index for f in t.faces]
    group = graph_automorphism_group()
    n_gens = len(faces) + len(group)
    out = []
    for _ in range(rng.randint(0, max_len)):
        k = rng.randrange(n_gens)
        out.append(("inv", faces[k]) if k < len(faces) else ("aut", group[k - len(faces)]))
    return out


@dataclass
class RoundTripStats:
    words: int = 0
    failures: list[str] = field(default_factory=list)
    max_steps: int = 0
    max_height: int = 28

    @property
    def ok(self) -> bool:
        return not self.failures


def round_trip_suite(n_words: int = 1000, seed: int = 0, max_len: int = 12) -> RoundTripStats:
    """decompose(evaluate(word)) and recompose it, for seeded random words."""
    rng = random.Random(seed)
    stats = RoundTripStats()
    for k in range(n_words):
        letters = random_word(rng, max_len)
        phi = evaluate_word(letters)
        stats.words += 1
        try:
            word = decompose(phi)
        except ReductionError as exc:
            stats.failures.append(f"word {k}: {exc}")
            continue
        h = word.trace.heights
        stats.max_steps = max(stats.max_steps, len(word.steps))
        stats.max_height = max(stats.max_height, h[0])
        if not word.trace.is_valid() or h[-1] != 28:
            stats.failures.append(f"word {k}: bad trace {h}")
        elif not (recompose(word) == phi).all():
            stats.failures.append(f"word {k}: recomposition differs")
    return stats
