"""Elliptic fibrations attached to the A7, D7 and E7 faces, read off from
Coxeter's graph, and their inversion involutions as isometries of S_X.

For a face with profile P, the curves outside P split into affine diagrams
(reducible fibres) and sections:

    E7: A~17 + 3 sections          (I18 + 6 I1)
    D7: E~6 + A~11 + 3 sections    (IV* + I12 + 4 I1)
    A7: A~7 + 2 D~5 + 4 sections   (I8 + 2 I1* + 2 I1)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .dynkin import affine_components, affine_marks, opposition
from .faces import FaceRoot, enumerate_face_roots, get_face
from .lattice import mat_vec, rank, solve_int, to_int, transpose
from .ns_embed import CoxeterGraph, build_coxeter_graph, build_ns_lattice, weyl_projection
from .symmetry import Isometry


class FibrationError(AssertionError):
    pass


# (diagram types, number of sections) per face type
LAYOUT = {
    "E7": (("A17",), 3),
    "D7": (("E6", "A11"), 3),
    "A7": (("A7", "D5", "D5"), 4),
}


@dataclass(frozen=True)
class AffineDiagram:
    dtype: str  # "A17", "A11", "A7", "D5", "E6" (the affine type, tilde omitted)
    vertices: tuple[int, ...]  # curve numbers, in the order of dynkin.affine_components
    marks: tuple[int, ...]

    def to_json(self) -> dict:
        return {"type": self.dtype + "~", "vertices": list(self.vertices), "marks": list(self.marks)}


def fiber_class(d: AffineDiagram) -> tuple[int, ...]:
    """sum of mark * C_v over the diagram, in NS basis coordinates."""
    ns = build_ns_lattice()
    out = [0] * ns.rank
    for v, m in zip(d.vertices, d.marks):
        out = [o + m * c for o, c in zip(out, ns.curves[v - 1])]
    return tuple(out)


def _curve_dot(v: Sequence[int], curve: int) -> int:
    ns = build_ns_lattice()
    return ns.inner(v, ns.curves[curve - 1])


# ---------------------------------------------------------------- diagram search

def induced_cycles(graph: CoxeterGraph, allowed: Iterable[int], length: int) -> list[tuple[int, ...]]:
    """Induced cycles of a given length inside ``allowed``, each listed once
    (starting at its smallest vertex, second vertex smaller than the last)."""
    allowed = set(allowed)
    adj = {v: graph.adj[v] & allowed for v in allowed}
    out = []

    def grow(path: list[int], on_path: set[int]) -> None:
        last = path[-1]
        if len(path) == length:
            if path[0] in adj[last] and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for w in sorted(adj[last]):
            if w <= path[0] or w in on_path:
                continue
            # no chords: w may touch only the current end (and the start when closing)
            touches = adj[w] & on_path
            if touches - {last, path[0]}:
                continue
            if path[0] in touches and len(path) + 1 != length and len(path) > 1:
                continue
            path.append(w)
            on_path.add(w)
            grow(path, on_path)
            path.pop()
            on_path.discard(w)

    for s in sorted(allowed):
        grow([s], {s})
    return out


def e6_diagrams(graph: CoxeterGraph, allowed: Iterable[int]) -> list[tuple[int, ...]]:
    allowed = set(allowed)
    found = set()
    for c in allowed:
        mids = graph.adj[c] & allowed
        if len(mids) != 3:
            continue
        options = [sorted((graph.adj[m] & allowed) - {c}) for m in sorted(mids)]
        for tips in _choices(options):
            nodes = {c, *mids, *tips}
            if len(nodes) != 7:
                continue
            rec = affine_components(graph.adj, nodes)
            if rec and rec[0] == "E6":
                found.add(tuple(rec[1]))
    return sorted(found)


def d5_diagrams(graph: CoxeterGraph, allowed: Iterable[int]) -> list[tuple[int, ...]]:
    allowed = set(allowed)
    found = set()
    for u, v in graph.edges:
        if u not in allowed or v not in allowed:
            continue
        for a in combinations(sorted((graph.adj[u] & allowed) - {v}), 2):
            for b in combinations(sorted((graph.adj[v] & allowed) - {u}), 2):
                nodes = {u, v, *a, *b}
                if len(nodes) != 6:
                    continue
                rec = affine_components(graph.adj, nodes)
                if rec and rec[0] == "D5":
                    found.add(tuple(rec[1]))
    return sorted(found)


def _choices(options: list[list[int]]):
    if not options:
        yield ()
        return
    for x in options[0]:
        for rest in _choices(options[1:]):
            yield (x,) + rest


def _diagram(kind: str, nodes: Sequence[int]) -> AffineDiagram:
    return AffineDiagram(kind, tuple(nodes), affine_marks(kind, len(nodes)))


@lru_cache(maxsize=None)
def candidate_decompositions(face: FaceRoot) -> list[tuple[list[AffineDiagram], tuple[int, ...]]]:
    """All (diagrams, sections) splittings of the curves outside the profile
    whose fibre classes agree and whose leftover curves meet the fibre once."""
    if face.rtype not in LAYOUT:
        raise FibrationError(f"no fibration for a face of type {face.rtype}")
    graph = build_coxeter_graph()
    rest = set(graph.vertices) - set(face.profile)
    out = []

    def finish(diagrams: list[AffineDiagram]) -> None:
        fibers = {fiber_class(d) for d in diagrams}
        if len(fibers) != 1:
            return
        fiber = next(iter(fibers))
        used = {v for d in diagrams for v in d.vertices}
        sections = tuple(sorted(rest - used))
        if len(sections) != LAYOUT[face.rtype][1]:
            return
        if all(_curve_dot(fiber, s) == 1 for s in sections):
            out.append((diagrams, sections))

    if face.rtype == "E7":
        for cyc in induced_cycles(graph, rest, 18):
            finish([_diagram("A17", cyc)])
    elif face.rtype == "D7":
        for e6 in e6_diagrams(graph, rest):
            for cyc in induced_cycles(graph, rest - set(e6), 12):
                finish([_diagram("E6", e6), _diagram("A11", cyc)])
    else:
        for cyc in induced_cycles(graph, rest, 8):
            left = rest - set(cyc)
            d5s = d5_diagrams(graph, left)
            for d1, d2 in combinations(d5s, 2):
                if set(d1) & set(d2):
                    continue
                finish([_diagram("A7", cyc), _diagram("D5", d1), _diagram("D5", d2)])
    return out


def _canonical_key(split) -> tuple:
    diagrams, _ = split
    return tuple(tuple(sorted(d.vertices)) for d in diagrams)


# ---------------------------------------------------------------- models

@dataclass(frozen=True)
class FibrationModel:
    face: FaceRoot
    fiber_class: tuple[int, ...]
    diagrams: tuple[AffineDiagram, ...]
    sections: tuple[int, ...]
    zero_section: int
    thetas: tuple[tuple[str, tuple[int, ...]], ...]  # (finite type, nodes in Bourbaki order)
    trivial_basis: tuple[tuple[int, ...], ...]  # F, O, then the theta roots
    essential_gen: tuple[Fraction, ...]  # r' in rational basis coordinates
    alternatives: int  # number of valid splittings found for this face

    @property
    def profile(self) -> frozenset[int]:
        return self.face.profile

    def to_json(self) -> dict:
        return {
            "face": self.face.name,
            "type": self.face.rtype,
            "diagrams": [d.to_json() for d in self.diagrams],
            "sections": list(self.sections),
            "zero_section": self.zero_section,
            "profile": sorted(self.profile),
            "fiber_class": list(self.fiber_class),
            "alternatives": self.alternatives,
        }


def _theta(d: AffineDiagram, zero: int) -> tuple[str, tuple[int, ...]]:
    """The fibre root lattice (diagram minus the component meeting the zero
    section) with its nodes listed in Bourbaki order."""
    graph = build_coxeter_graph()
    meet = [v for v in d.vertices if v in graph.adj[zero]]
    if len(meet) != 1:
        raise FibrationError(f"zero section {zero} meets {d.dtype}~ in {meet}")
    v0 = meet[0]
    if d.marks[d.vertices.index(v0)] != 1:
        raise FibrationError("zero section meets a multiple component")
    nodes = list(d.vertices)
    if d.dtype.startswith("A"):
        k = nodes.index(v0)
        return d.dtype, tuple(nodes[k + 1:] + nodes[:k])
    if d.dtype == "D5":
        a0, a1, u, v, b0, b1 = nodes
        if v0 in (b0, b1):
            a0, a1, u, v, b0, b1 = b0, b1, v, u, a0, a1
        other = a1 if v0 == a0 else a0
        return "D5", (other, u, v, b0, b1)
    if d.dtype == "E6":
        c, m1, t1, m2, t2, m3, t3 = nodes
        arms = [(m1, t1), (m2, t2), (m3, t3)]
        i = next(j for j, (_, t) in enumerate(arms) if t == v0)
        (mj, tj), (mk, tk) = [a for j, a in enumerate(arms) if j != i]
        return "E6", (tj, arms[i][0], mj, c, mk, tk)
    raise FibrationError(f"unsupported diagram {d.dtype}")


def build_model(face: FaceRoot, zero_section: int | None = None, split=None) -> FibrationModel:
    splits = candidate_decompositions(face)
    if not splits:
        raise FibrationError(f"no fibration found for face {face.name}")
    if split is None:
        split = min(splits, key=_canonical_key)
    diagrams, sections = split
    zero = sections[0] if zero_section is None else zero_section
    if zero not in sections:
        raise FibrationError(f"{zero} is not a section of this fibration")
    ns = build_ns_lattice()
    fiber = fiber_class(diagrams[0])
    if ns.inner(fiber, fiber) != 0:
        raise FibrationError("fibre class is not isotropic")
    thetas = tuple(_theta(d, zero) for d in diagrams)
    basis = [fiber, tuple(ns.curves[zero - 1])]
    for _, nodes in thetas:
        basis += [tuple(ns.curves[v - 1]) for v in nodes]
    return FibrationModel(face, fiber, tuple(diagrams), sections, zero, thetas, tuple(basis), face.coords, len(splits))


@lru_cache(maxsize=None)
def detect_fibration(face_id) -> FibrationModel:
    face = face_id if isinstance(face_id, FaceRoot) else get_face(face_id)
    return build_model(face)


@dataclass(frozen=True)
class InversionIsometry:
    matrix: Isometry
    face: str


def inversion_isometry(model: FibrationModel) -> InversionIsometry:
    """Identity on <F, O>, opposition on each fibre root lattice, -1 on r'."""
    ns = build_ns_lattice()
    scaled = to_int([7 * x for x in model.essential_gen])
    src = [list(model.fiber_class), list(model.trivial_basis[1])]
    dst = [list(model.fiber_class), list(model.trivial_basis[1])]
    for kind, nodes in model.thetas:
        perm = opposition(kind[0], int(kind[1:]))
        src += [list(ns.curves[v - 1]) for v in nodes]
        dst += [list(ns.curves[nodes[perm[i]] - 1]) for i in range(len(nodes))]
    if rank(src) != 19:
        raise FibrationError(f"trivial lattice has rank {rank(src)}, expected 19")
    src.append(scaled)
    dst.append([-x for x in scaled])
    # M src_i = dst_i for all i, i.e. src M^T = dst
    x, d = solve_int(src, dst)
    num = transpose(x)
    if any(v % d for row in num for v in row):
        raise FibrationError(f"inversion for face {model.face.name} is not integral")
    m = Isometry.of([[v // d for v in row] for row in num])
    return InversionIsometry(m, model.face.name)


@lru_cache(maxsize=None)
def all_inversions() -> dict[int, Isometry]:
    """Face index -> inversion isometry for the 98 A7/D7/E7 faces."""
    out = {}
    for f in enumerate_face_roots():
        if f.rtype in LAYOUT:
            out[f.index] = inversion_isometry(detect_fibration(f)).matrix
    return out


def check_q_reflection(m: Sequence[Sequence[int]], face: FaceRoot) -> bool:
    """iota(r') = -r' and iota(w') = s_{r'}(w')."""
    ns = build_ns_lattice()
    wp, _ = weyl_projection()
    r = list(face.coords)
    if mat_vec(m, r) != [-x for x in r]:
        return False
    c = Fraction(2 * ns.inner(wp, r)) / ns.inner(r, r)
    want = [w - c * x for w, x in zip(wp, r)]
    return mat_vec(m, wp) == want
