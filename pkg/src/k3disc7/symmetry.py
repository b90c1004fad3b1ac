"""Automorphisms of Coxeter's graph, their lifts to isometries of S_X, and the
induced action on the faces of D'."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .faces import FaceRoot, enumerate_face_roots
from .lattice import det, inverse, mat_mul, mat_vec, rank, to_int, transpose
from .ns_embed import CoxeterGraph, build_coxeter_graph, build_ns_lattice


class SymmetryError(AssertionError):
    pass


class GraphAutomorphism(tuple):
    """A permutation of the vertices 1..n; ``g[i]`` is the image of vertex i+1, minus 1."""

    def __call__(self, v: int) -> int:
        return self[v - 1] + 1

    def __mul__(self, other: "GraphAutomorphism") -> "GraphAutomorphism":
        # (self * other)(v) = self(other(v))
        return GraphAutomorphism(self[i] for i in other)

    def inverse(self) -> "GraphAutomorphism":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return GraphAutomorphism(inv)

    @classmethod
    def identity(cls, n: int = 28) -> "GraphAutomorphism":
        return cls(range(n))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycle_list(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for s in range(len(self)):
            if s in seen:
                continue
            cyc, v = [], s
            while v not in seen:
                seen.add(v)
                cyc.append(v + 1)
                v = self[v]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycles(self) -> str:
        cl = self.cycle_list()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cl) or "()"

    @classmethod
    def from_cycles(cls, text: str, n: int = 28) -> "GraphAutomorphism":
        perm = list(range(n))
        body = text.strip()
        if body in ("", "()", "id", "e"):
            return cls(perm)
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"malformed cycle notation: {text!r}")
        seen = set()
        for chunk in body[1:-1].split(")("):
            pts = [int(x) for x in chunk.replace(",", " ").split()]
            if any(not 1 <= x <= n for x in pts) or seen & set(pts) or len(set(pts)) != len(pts):
                raise ValueError(f"malformed cycle notation: {text!r}")
            seen |= set(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                perm[a - 1] = b - 1
        return cls(perm)

    def order(self) -> int:
        return reduce(lcm, (len(c) for c in self.cycle_list()), 1)


def is_automorphism(g: GraphAutomorphism, graph: CoxeterGraph) -> bool:
    return all(tuple(sorted((g(a), g(b)))) in graph.edges for a, b in graph.edges)


def _invariant(graph: CoxeterGraph, v: int) -> tuple:
    return tuple(sorted(Counter(graph.distances_from(v).values()).items()))


def automorphisms(graph: CoxeterGraph) -> list[GraphAutomorphism]:
    """All automorphisms, by backtracking along a BFS order with distance-profile pruning."""
    verts = graph.vertices
    inv = {v: _invariant(graph, v) for v in verts}
    dist = graph.distance_matrix
    order = list(graph.distances_from(verts[0]))  # BFS order from the first vertex
    order += [v for v in verts if v not in order]
    found: list[GraphAutomorphism] = []
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> None:
        if k == len(order):
            found.append(GraphAutomorphism(image[v] - 1 for v in verts))
            return
        v = order[k]
        mapped_nbr = next((u for u in graph.adj[v] if u in image), None)
        pool = graph.adj[image[mapped_nbr]] if mapped_nbr is not None else verts
        for w in sorted(pool):
            if w in used or inv[w] != inv[v]:
                continue
            if any(dist[v][u] != dist[w][image[u]] for u in image):
                continue
            image[v] = w
            used.add(w)
            extend(k + 1)
            del image[v]
            used.discard(w)

    extend(0)
    return sorted(found)


@lru_cache(maxsize=None)
def graph_automorphism_group() -> tuple[GraphAutomorphism, ...]:
    group = automorphisms(build_coxeter_graph())
    if len(group) != 336:
        raise SymmetryError(f"automorphism group has order {len(group)}, expected 336")
    return tuple(group)


def closure(gens: Iterable[GraphAutomorphism], n: int = 28) -> set[GraphAutomorphism]:
    gens = list(gens)
    ident = GraphAutomorphism.identity(n)
    elems = {ident}
    todo = [ident]
    while todo:
        a = todo.pop()
        for g in gens:
            b = g * a
            if b not in elems:
                elems.add(b)
                todo.append(b)
    return elems


def derived_subgroup(group: Sequence[GraphAutomorphism]) -> set[GraphAutomorphism]:
    comms = {a.inverse() * b.inverse() * a * b for a in group for b in group}
    return closure(comms, len(group[0]))


def generating_set(group: Sequence[GraphAutomorphism]) -> list[GraphAutomorphism]:
    """A short generating set, picked greedily by element order then lexicographically."""
    gens: list[GraphAutomorphism] = []
    current = {GraphAutomorphism.identity(len(group[0]))}
    for g in sorted(group, key=lambda g: (-g.order(), g)):
        if g not in current:
            gens.append(g)
            current = closure(gens)
            if len(current) == len(group):
                break
    return gens


# ---------------------------------------------------------------- lifts

class Isometry(tuple):
    """An integral matrix (tuple of rows) acting on basis coordinate columns of S_X."""

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "Isometry":
        return cls(tuple(int(x) for x in row) for row in rows)

    @classmethod
    def identity(cls, n: int = 20) -> "Isometry":
        return cls(tuple(int(i == j) for j in range(n)) for i in range(n))

    def __mul__(self, other: "Isometry") -> "Isometry":
        return Isometry(tuple(r) for r in mat_mul(self, other))

    def apply(self, v: Sequence) -> list:
        return mat_vec(self, v)

    def preserves(self, gram: Sequence[Sequence[int]]) -> bool:
        return mat_mul(mat_mul(transpose(self), gram), self) == [list(r) for r in gram]

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self]


@lru_cache(maxsize=None)
def _curve_frame() -> tuple[tuple[int, ...], list[list[int]], int]:
    """Indices of 20 independent curves, the adjugate of their coordinate matrix, and its determinant."""
    ns = build_ns_lattice()
    chosen: list[int] = []
    for i in range(28):
        trial = chosen + [i]
        if rank([ns.curves[j] for j in trial]) == len(trial):
            chosen = trial
        if len(chosen) == ns.rank:
            break
    cols = transpose([ns.curves[j] for j in chosen])  # columns are curve coordinates
    d = det(cols)
    adj = to_int([[x * d for x in row] for row in inverse(cols)])
    return tuple(chosen), adj, d


def lift_to_isometry(g: GraphAutomorphism) -> Isometry:
    """The linear map of S_X sending C_i to C_g(i)."""
    ns = build_ns_lattice()
    chosen, adj, d = _curve_frame()
    images = transpose([ns.curves[g[j]] for j in chosen])
    num = mat_mul(images, adj)
    if any(x % d for row in num for x in row):
        raise SymmetryError("lift is not integral")
    m = Isometry.of([[x // d for x in row] for row in num])
    for i, c in enumerate(ns.curves):
        if tuple(m.apply(c)) != ns.curves[g[i]]:
            raise SymmetryError("lift does not permute the curves as prescribed")
    if not m.preserves(ns.gram):
        raise SymmetryError("lift is not an isometry")
    return m


@lru_cache(maxsize=None)
def lifted_group() -> dict[GraphAutomorphism, Isometry]:
    return {g: lift_to_isometry(g) for g in graph_automorphism_group()}


def match_graph_automorphism(m: Sequence[Sequence[int]]) -> GraphAutomorphism | None:
    """The graph automorphism whose lift is m, if m permutes the curves."""
    ns = build_ns_lattice()
    index = {c: i for i, c in enumerate(ns.curves)}
    perm = []
    for c in ns.curves:
        img = tuple(mat_vec(m, c))
        if img not in index:
            return None
        perm.append(index[img])
    g = GraphAutomorphism(perm)
    return g if g in lifted_group() else None


# ---------------------------------------------------------------- faces

@lru_cache(maxsize=None)
def _scaled_faces() -> tuple[np.ndarray, dict[tuple[int, ...], int]]:
    """7 r' for every face (integral because S_X^dual / S_X has order 7), as columns."""
    cols = [to_int([7 * x for x in f.coords]) for f in enumerate_face_roots()]
    table = {tuple(c): i for i, c in enumerate(cols)}
    return np.array(cols, dtype=np.int64).T, table


def act_on_face(m: Isometry, f: FaceRoot) -> FaceRoot:
    img = tuple(to_int([7 * x for x in mat_vec(m, f.coords)]))
    idx = _scaled_faces()[1].get(img)
    if idx is None:
        raise SymmetryError(f"image of face {f.name} is not a face")
    return enumerate_face_roots()[idx]


def face_permutation(g: GraphAutomorphism) -> tuple[int, ...]:
    """Indices of the images of all faces under the lift of g."""
    cols, table = _scaled_faces()
    images = np.array(lifted_group()[g], dtype=np.int64) @ cols
    out = []
    for col in images.T.tolist():
        idx = table.get(tuple(col))
        if idx is None:
            raise SymmetryError("image of a face is not a face")
        out.append(idx)
    return tuple(out)


@dataclass(frozen=True)
class OrbitData:
    orbits: list[list[int]]  # face indices, each orbit sorted
    stabilizers: dict[int, list[GraphAutomorphism]]  # orbit representative -> stabilizer


@lru_cache(maxsize=None)
def orbits_on_faces() -> OrbitData:
    group = graph_automorphism_group()
    perms = {g: face_permutation(g) for g in group}
    faces = enumerate_face_roots()
    seen: set[int] = set()
    orbits, stabs = [], {}
    for f in faces:
        if f.index in seen:
            continue
        orbit = sorted({p[f.index] for p in perms.values()})
        seen.update(orbit)
        orbits.append(orbit)
        stabs[f.index] = [g for g, p in perms.items() if p[f.index] == f.index]
    return OrbitData(orbits, stabs)


def element_order_profile(elements: Iterable[GraphAutomorphism]) -> dict[int, int]:
    return dict(sorted(Counter(g.order() for g in elements).items()))


STABILIZER_PROFILES = {
    "D3": {1: 1, 2: 3, 3: 2},
    "A4": {1: 1, 2: 3, 3: 8},
    "S4": {1: 1, 2: 9, 3: 8, 4: 6},
}
