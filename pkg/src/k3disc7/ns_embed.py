"""The A6 chain y-z-x-p-q-t in II_{1,25}, its orthogonal complement S_X, the
28 curve classes, Coxeter's graph and the projections of the Weyl vector.

Vectors of S_X are integer coordinate tuples in the fixed basis
``NSBasis.basis``.  Vectors of the dual lattice are given either by rational
basis coordinates or by "dual coordinates" (their pairings with the basis),
which are integers.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .golay import INF, Octad, build_steiner_system
from .lattice import (
    hermite_normal_form,
    integer_kernel,
    inverse,
    mat_vec,
    solve_left,
    to_int,
)
from .leech import K0, combo, named_vectors
from .lorentzian import IIVector, coords_inner, ii_basis, ii_gram, ii_inner, leech_root, weyl_vector

CHAIN_NAMES = ("y", "z", "x", "p", "q", "t")

# the three heptagons of the 3I7 + 3I1 fibration, in cyclic order
HEPTAGONS = (
    (1, 28, 5, 19, 22, 2, 26),
    (14, 10, 24, 16, 12, 15, 9),
    (4, 21, 11, 17, 7, 18, 23),
)


def a6_chain() -> list[IIVector]:
    """The Leech roots y, z, x, p, q, t (in chain order)."""
    nv = named_vectors()
    out = []
    for name in CHAIN_NAMES:
        out.append(leech_root(nv[name.upper()]))
    return out


def chain_gram() -> list[list[int]]:
    ch = a6_chain()
    return [[ii_inner(a, b) for b in ch] for a in ch]


def enumerate_curve_octads() -> list[Octad]:
    """Octads K with inf, 0 in K, 1 not in K and |K & K0| = 4, sorted."""
    out = build_steiner_system().octads_where(contains=(INF, 0), excludes=(1,), meets=(K0, 4))
    if len(out) != 28:
        raise AssertionError(f"expected 28 curve octads, found {len(out)}")
    return out


def curve_roots() -> list[IIVector]:
    return [leech_root(combo((2, k.points))) for k in enumerate_curve_octads()]


@dataclass(frozen=True)
class CoxeterGraph:
    """Vertices 1..28; {i, j} is an edge iff the curve roots pair to 1."""

    n: int
    edges: frozenset[tuple[int, int]]
    adj: dict[int, frozenset[int]] = field(compare=False)

    @property
    def vertices(self) -> list[int]:
        return list(range(1, self.n + 1))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def distances_from(self, s: int) -> dict[int, int]:
        dist = {s: 0}
        todo = deque([s])
        while todo:
            v = todo.popleft()
            for w in self.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    todo.append(w)
        return dist

    @cached_property
    def distance_matrix(self) -> dict[int, dict[int, int]]:
        return {v: self.distances_from(v) for v in self.vertices}

    def distance(self, u: int, v: int) -> int:
        return self.distance_matrix[u][v]

    def girth(self) -> int:
        best = None
        for s in self.vertices:
            dist, parent = {s: 0}, {s: None}
            todo = deque([s])
            while todo:
                v = todo.popleft()
                for w in self.adj[v]:
                    if w not in dist:
                        dist[w], parent[w] = dist[v] + 1, v
                        todo.append(w)
                    elif parent[v] != w:
                        c = dist[v] + dist[w] + 1
                        best = c if best is None else min(best, c)
        return best

    def is_induced_cycle(self, cycle: Sequence[int]) -> bool:
        k = len(cycle)
        want = {tuple(sorted((cycle[i], cycle[(i + 1) % k]))) for i in range(k)}
        have = {e for e in self.edges if e[0] in cycle and e[1] in cycle}
        return len(set(cycle)) == k and have == want

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "adjacency": {str(v): sorted(self.adj[v]) for v in self.vertices}}

    def to_dot(self) -> str:
        lines = ["graph coxeter {"]
        lines += [f"  {v};" for v in self.vertices]
        lines += [f"  {a} -- {b};" for a, b in sorted(self.edges)]
        lines.append("}")
        return "\n".join(lines) + "\n"


def graph_from_gram(gram: Sequence[Sequence[int]]) -> CoxeterGraph:
    n = len(gram)
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] == 1:
                edges.add((i + 1, j + 1))
            elif gram[i][j] != 0:
                raise AssertionError(f"curves {i + 1}, {j + 1} pair to {gram[i][j]}")
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return CoxeterGraph(n, frozenset(edges), {v: frozenset(s) for v, s in adj.items()})


@dataclass
class NSBasis:
    """An integral basis of A6-perp (= S_X) and the 28 curve classes in it."""

    basis: list[tuple[int, ...]]  # 26-coordinate ambient vectors
    gram: list[list[int]]
    curves: list[tuple[int, ...]]  # basis coordinates of C_1 .. C_28
    curve_octads: list[Octad]

    @cached_property
    def gram_inv(self) -> list[list[Fraction]]:
        return inverse(self.gram)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def inner(self, u: Sequence, v: Sequence):
        return sum(ui * sum(g * vj for g, vj in zip(row, v)) for ui, row in zip(u, self.gram) if ui)

    def dual_coords(self, u: Sequence) -> list:
        """Pairings of a (rational) coordinate vector with the basis."""
        return mat_vec(self.gram, u)

    def from_dual(self, d: Sequence) -> list[Fraction]:
        return mat_vec(self.gram_inv, d)

    def to_ambient(self, u: Sequence[int]) -> tuple:
        out = [0] * 26
        for c, b in zip(u, self.basis):
            if c:
                out = [o + c * x for o, x in zip(out, b)]
        return tuple(out)

    def coords_of(self, ambient: Sequence[int]) -> list[int]:
        """Basis coordinates of an ambient vector lying in S_X."""
        c = solve_left(self.basis, list(ambient))
        if c is None:
            raise ValueError("vector is not in the span of S_X")
        return to_int(c)

    def project(self, v: IIVector | Sequence[int]) -> list[int]:
        """Orthogonal projection to S_X (tensor Q), in dual coordinates."""
        coords = v.coords if isinstance(v, IIVector) else tuple(v)
        return [coords_inner(coords, b) for b in self.basis]

    def project_coords(self, v: IIVector | Sequence[int]) -> list[Fraction]:
        return self.from_dual(self.project(v))


@lru_cache(maxsize=None)
def build_ns_lattice() -> NSBasis:
    octads = enumerate_curve_octads()
    roots = [r.coords for r in curve_roots()]
    chain = [c.coords for c in a6_chain()]
    for r in roots:
        if any(coords_inner(r, c) for c in chain):
            raise AssertionError("curve root not orthogonal to the A6 chain")
    basis = [tuple(b) for b in hermite_normal_form(roots)]
    if len(basis) != 20:
        raise AssertionError(f"curve roots span rank {len(basis)}, expected 20")
    gram = [[coords_inner(a, b) for b in basis] for a in basis]
    ns = NSBasis(basis, gram, [], octads)
    ns.curves = [tuple(ns.coords_of(r)) for r in roots]
    return ns


@lru_cache(maxsize=None)
def build_coxeter_graph() -> CoxeterGraph:
    ns = build_ns_lattice()
    gram = [[ns.inner(a, b) for b in ns.curves] for a in ns.curves]
    return graph_from_gram(gram)


def weyl_projection() -> tuple[tuple[int, ...], dict[str, Fraction]]:
    """(w', w'') with w' = sum of the curve classes (basis coordinates) and
    w'' = w - w' as coefficients on the chain roots."""
    wp, wpp = _weyl_projection()
    return wp, dict(wpp)


@lru_cache(maxsize=None)
def _weyl_projection() -> tuple[tuple[int, ...], tuple[tuple[str, Fraction], ...]]:
    ns = build_ns_lattice()
    w = weyl_vector()
    wp = ns.project_coords(w)
    total = [sum(c[i] for c in ns.curves) for i in range(ns.rank)]
    if wp != total:
        raise AssertionError("projection of the Weyl vector is not the sum of the curves")
    wpp = [a - b for a, b in zip(w.coords, ns.to_ambient(total))]
    chain = [c.coords for c in a6_chain()]
    coef = solve_left(chain, wpp)
    if coef is None:
        raise AssertionError("w - w' is not in the span of the chain")
    return tuple(total), tuple(zip(CHAIN_NAMES, coef))


def project_to_ns(v: IIVector) -> list[int]:
    return build_ns_lattice().project(v)


def a6_complement_in_ii() -> list[tuple[int, ...]]:
    """A6-perp computed independently from a Z-basis of II_{1,25}, as 26-coordinate rows (HNF)."""
    basis = ii_basis()
    gram = ii_gram()
    chain_coords = [to_int(solve_left(basis, list(c.coords))) for c in a6_chain()]
    pairing = [mat_vec(gram, c) for c in chain_coords]
    kernel = integer_kernel(pairing)
    ambient = [tuple(sum(k * b[j] for k, b in zip(row, basis)) for j in range(26)) for row in kernel]
    return [tuple(r) for r in hermite_normal_form(ambient)]


# ---------------------------------------------------------------- the 3I7 + 3I1 sublattice

def heptagon_sublattice() -> dict:
    """U + A6^3 inside S_X from the heptagon fibration.

    Returns the sub basis in NS coordinates (F, O, then the three A6 chains)
    and the glue element of S_X / (U + A6^3) read in the A6 discriminant groups.
    """
    ns = build_ns_lattice()
    graph = build_coxeter_graph()
    fiber = [sum(ns.curves[v - 1][i] for v in HEPTAGONS[0]) for i in range(ns.rank)]
    used = {v for h in HEPTAGONS for v in h}
    sections = sorted(v for v in graph.vertices if v not in used)
    zero = sections[0]
    rows = [fiber, list(ns.curves[zero - 1])]
    chains = []
    for h in HEPTAGONS:
        meet = [v for v in h if v in graph.adj[zero]]
        if len(meet) != 1:
            raise AssertionError("zero section must meet each heptagon once")
        k = h.index(meet[0])
        chain = [h[(k + j) % 7] for j in range(1, 7)]
        chains.append(chain)
        rows += [list(ns.curves[v - 1]) for v in chain]
    sub_gram = [[ns.inner(a, b) for b in rows] for a in rows]
    return {"rows": rows, "gram": sub_gram, "sections": sections, "zero": zero, "chains": chains}


def glue_vector() -> tuple[int, int, int]:
    """Components in (Z/7)^3 of a generator of S_X modulo U + A6^3.

    The class of v in the discriminant group of a chain theta_1..theta_6 is
    sum_j j <v, theta_j> mod 7 (fundamental weights omega_j = j omega_1).
    Normalised so the first component is 1.
    """
    ns = build_ns_lattice()
    hs = heptagon_sublattice()
    for i in range(ns.rank):
        e = [int(i == j) for j in range(ns.rank)]
        comps = []
        for chain in hs["chains"]:
            comps.append(sum((j + 1) * ns.inner(e, ns.curves[v - 1]) for j, v in enumerate(chain)) % 7)
        if any(comps):
            if not all(comps):
                raise AssertionError(f"glue element has a trivial component: {comps}")
            inv = pow(comps[0], -1, 7)
            return tuple(c * inv % 7 for c in comps)
    raise AssertionError("S_X coincides with U + A6^3")
