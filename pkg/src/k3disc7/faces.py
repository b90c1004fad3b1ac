"""Leech roots that span a rank-7 root lattice with the A6 chain, and the faces
of the restricted chamber D' they cut out in S_X.

Candidates come from seven closed-form families of Leech vectors, one per
(type, attachment node).  Each candidate is validated independently: Leech
membership, norm, and the Dynkin type of its Gram matrix with the chain.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .dynkin import dynkin_type
from .golay import INF, build_steiner_system, point_label, point_rank
from .leech import K0, OMEGA, LeechVector, combo
from .lorentzian import IIVector, ii_inner, leech_root
from .ns_embed import CHAIN_NAMES, a6_chain, build_coxeter_graph, build_ns_lattice, weyl_projection

TYPES = ("A6A1", "A7", "D7", "E7")
EXPECTED_TYPE = {"A6A1": ["A1", "A6"], "A7": ["A7"], "D7": ["D7"], "E7": ["E7"]}
EXPECTED_COUNTS = {"A6A1": 28, "A7": 14, "D7": 28, "E7": 56}
EXPECTED_SUBCOUNTS = {
    ("A6A1", None): 28,
    ("A7", "t"): 7, ("A7", "y"): 7,
    ("D7", "q"): 14, ("D7", "z"): 14,
    ("E7", "p"): 28, ("E7", "x"): 28,
}
TABLE = {  # type: (norm of r', <w', r'>)
    "A6A1": (Fraction(-2), 1),
    "A7": (Fraction(-8, 7), 4),
    "D7": (Fraction(-4, 7), 6),
    "E7": (Fraction(-2, 7), 7),
}
PROFILE_SIZE = {"A7": 4, "D7": 6, "E7": 7}


class FaceConsistencyError(AssertionError):
    pass


@dataclass(frozen=True)
class FaceRoot:
    index: int
    name: str
    rtype: str
    attach: str | None
    param: tuple  # the octad / point(s) parametrising the family member
    root: IIVector
    dual: tuple[int, ...]  # r' in dual coordinates of the NS basis
    coords: tuple[Fraction, ...]  # r' in rational basis coordinates
    norm: Fraction
    w_pairing: int
    profile: frozenset[int]

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "type": self.rtype,
            "attach": self.attach,
            "lambda": list(self.root.lam),
            "param": [point_label(x) if isinstance(x, int) else [point_label(y) for y in x] for x in self.param],
            "norm": str(self.norm),
            "w_pairing": self.w_pairing,
            "profile": sorted(self.profile),
        }


def _families() -> list[tuple[str, str | None, tuple, LeechVector]]:
    code = build_steiner_system()
    out = []
    for k in code.octads_where(contains=(INF, 0), excludes=(1,), meets=(K0, 4)):
        out.append(("A6A1", None, (k.points,), combo((2, k.points))))
    for k in code.octads_where(contains=(INF, 0, 1), meets=(K0, 4)):
        out.append(("A7", "t", (k.points,), combo((2, k.points))))
    for k in code.octads_where(contains=(INF, 1), excludes=(0,), meets=(K0, 0)):
        out.append(("A7", "y", (k.points,), combo((1, OMEGA), (-2, k.points), (4, [INF]))))
    for pt in sorted(set(range(24)) - set(K0) - {INF, 1}):
        out.append(("D7", "q", (pt,), combo((1, OMEGA), (-4, [pt]))))
    for pt in sorted(set(K0) - {0}):
        for k in code.octads_where(contains=(INF, 0, 1, pt), meets=(K0, 2)):
            out.append(("D7", "z", (pt, k.points), combo((1, OMEGA), (-2, k.points), (4, [INF]), (4, [0]), (4, [pt]))))
    for k in code.octads_where(contains=(INF, 0), excludes=(1,), meets=(K0, 2)):
        out.append(("E7", "p", (k.points,), combo((2, k.points))))
    # the shift sits at 0, not at infinity: only then is the root joined to x alone
    for k in code.octads_where(contains=(0, 1), excludes=(INF,), meets=(K0, 2)):
        out.append(("E7", "x", (k.points,), combo((1, OMEGA), (-2, k.points), (4, [0]))))
    return out


def _param_key(param: tuple) -> tuple:
    return tuple(point_rank(x) if isinstance(x, int) else tuple(map(point_rank, x)) for x in param)


def classify_with_chain(root: IIVector) -> tuple[str, str | None]:
    """Type of the root lattice spanned by the chain and ``root``, and the
    chain node the new root is joined to."""
    chain = a6_chain()
    vecs = chain + [root]
    gram = [[ii_inner(a, b) for b in vecs] for a in vecs]
    types = dynkin_type(gram)
    for label, want in EXPECTED_TYPE.items():
        if types == want:
            nbrs = [CHAIN_NAMES[i] for i in range(6) if gram[6][i]]
            if len(nbrs) > 1:
                raise FaceConsistencyError("candidate joined to several chain nodes")
            return label, (nbrs[0] if nbrs else None)
    raise FaceConsistencyError(f"candidate spans {types} with the chain")


@lru_cache(maxsize=None)
def enumerate_face_roots() -> tuple[FaceRoot, ...]:
    ns = build_ns_lattice()
    wp, _ = weyl_projection()
    curve_ambient = [ns.to_ambient(c) for c in ns.curves]
    raw = _families()
    seen: dict[tuple, str] = {}
    overlaps = []
    records = []
    for rtype, attach, param, lam in raw:
        root = leech_root(lam)
        got = classify_with_chain(root)
        if got != (rtype, attach):
            raise FaceConsistencyError(f"{rtype}({attach}) candidate {param} classified as {got}")
        key = tuple(lam)
        if key in seen:
            overlaps.append((seen[key], f"{rtype}{attach or ''}", param))
        seen[key] = f"{rtype}{attach or ''}"
        records.append((rtype, attach, param, root))
    if overlaps:
        raise FaceConsistencyError(f"candidates in two sub-families: {overlaps}")

    counts = Counter((t, a) for t, a, _, _ in records)
    if dict(counts) != EXPECTED_SUBCOUNTS:
        listing = {f"{t}({a})": n for (t, a), n in sorted(counts.items(), key=str)}
        raise FaceConsistencyError(f"face counts {listing} differ from {EXPECTED_SUBCOUNTS}")

    order = {t: i for i, t in enumerate(TYPES)}
    records.sort(key=lambda r: (order[r[0]], r[1] or "", _param_key(r[2])))
    faces = []
    per_family: Counter = Counter()
    for idx, (rtype, attach, param, root) in enumerate(records):
        per_family[(rtype, attach)] += 1
        dual = tuple(ns.project(root))
        coords = tuple(ns.from_dual(dual))
        norm = sum(c * d for c, d in zip(coords, dual))
        w_pair = sum(w * d for w, d in zip(wp, dual))
        pairings = [ii_inner(root, IIVector.from_coords(c)) for c in curve_ambient]
        if any(p not in (0, 1) for p in pairings) and rtype != "A6A1":
            raise FaceConsistencyError(f"{rtype} root pairs with a curve outside {{0, 1}}")
        profile = frozenset(i + 1 for i, p in enumerate(pairings) if p == 1) if rtype != "A6A1" else frozenset()
        name = f"{rtype}{attach or ''}.{per_family[(rtype, attach)]}"
        faces.append(FaceRoot(idx, name, rtype, attach, param, root, dual, coords, norm, w_pair, profile))
    return tuple(faces)


def faces_of_type(rtype: str) -> list[FaceRoot]:
    return [f for f in enumerate_face_roots() if f.rtype == rtype]


def get_face(ident) -> FaceRoot:
    """Look a face up by global index or by name such as 'E7p.3'."""
    faces = enumerate_face_roots()
    if isinstance(ident, int) or (isinstance(ident, str) and ident.isdigit()):
        i = int(ident)
        if not 0 <= i < len(faces):
            raise KeyError(f"no face with index {i}")
        return faces[i]
    for f in faces:
        if f.name == ident:
            return f
    raise KeyError(f"no face named {ident!r}")


def face_projection(f: FaceRoot) -> tuple[Fraction, ...]:
    return f.coords


def intersection_profile(f: FaceRoot) -> frozenset[int]:
    return f.profile


def edge_distance_stats(profile: Sequence[int]) -> Counter:
    g = build_coxeter_graph()
    return Counter(g.distance(a, b) for a, b in combinations(sorted(profile), 2))


def chamber_test(v: Sequence) -> bool:
    """Whether v lies in the closure of D' (positive norm, right cone component)."""
    ns = build_ns_lattice()
    wp, _ = weyl_projection()
    if ns.inner(v, v) <= 0 or ns.inner(v, wp) <= 0:
        return False
    return all(sum(a * b for a, b in zip(v, f.dual)) >= 0 for f in enumerate_face_roots())
