"""The eleven acceptance criteria, one test each.  Every test prints a single
PASS/FAIL line (visible without -s) and then asserts."""
from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest

from k3disc7.dynkin import root_gram
from k3disc7.faces import edge_distance_stats, enumerate_face_roots, faces_of_type
from k3disc7.fibrations import all_inversions, check_q_reflection, detect_fibration, fiber_class
from k3disc7.golay import BASE_OCTAD, INF, build_steiner_system, octad_completion
from k3disc7.lattice import det, discriminant_form, overlattice_index, rank, signature
from k3disc7.lorentzian import is_leech_root
from k3disc7.ns_embed import (
    HEPTAGONS,
    a6_chain,
    build_coxeter_graph,
    build_ns_lattice,
    chain_gram,
    curve_roots,
    enumerate_curve_octads,
    heptagon_sublattice,
    weyl_projection,
)
from k3disc7.reduction import round_trip_suite
from k3disc7.symmetry import (
    STABILIZER_PROFILES,
    Isometry,
    element_order_profile,
    graph_automorphism_group,
    lifted_group,
    orbits_on_faces,
)

PRINTED_OCTADS = [
    "inf 0 2 3 4 8 9 21", "inf 0 2 3 6 12 16 20", "inf 0 2 3 7 11 13 15", "inf 0 2 3 10 18 19 22",
    "inf 0 2 4 5 6 10 11", "inf 0 2 4 7 17 18 20", "inf 0 2 4 12 14 15 19", "inf 0 2 5 7 9 12 22",
    "inf 0 2 5 8 13 19 20", "inf 0 2 5 15 16 18 21", "inf 0 2 6 8 15 17 22", "inf 0 2 11 14 20 21 22",
    "inf 0 3 4 5 12 13 18", "inf 0 3 4 6 7 14 22", "inf 0 3 4 10 15 16 17", "inf 0 3 5 6 9 15 19",
    "inf 0 3 5 7 10 20 21", "inf 0 3 5 8 11 16 22", "inf 0 3 8 14 15 18 20", "inf 0 3 9 13 17 20 22",
    "inf 0 4 5 9 14 16 20", "inf 0 4 5 17 19 21 22", "inf 0 4 6 13 15 20 21", "inf 0 4 8 10 12 20 22",
    "inf 0 4 9 11 15 18 22", "inf 0 5 10 13 14 15 22", "inf 0 5 11 12 15 17 20", "inf 0 7 15 16 19 20 22",
]


@pytest.fixture
def record(capsys):
    def _record(n: int, title: str, checks: dict) -> None:
        failing = [k for k, ok in checks.items() if not ok]
        status = "PASS" if not failing else "FAIL (" + ", ".join(failing) + ")"
        with capsys.disabled():
            print(f"\n[acceptance] criterion {n:>2} {title}: {status}")
        assert not failing

    return _record


def test_criterion_01_steiner_golay(record):
    code = build_steiner_system()
    unique = True
    for five in combinations(range(24), 5):
        o = octad_completion(five)
        unique &= set(five) <= set(o.points)
    cover = Counter()
    for m in code.octad_masks:
        pts = [i for i in range(24) if m >> i & 1]
        cover.update(frozenset(c) for c in combinations(pts, 5))
    record(1, "Steiner system / Golay code", {
        "759 octads": len(code.octads) == 759,
        "base octad": code.is_octad(BASE_OCTAD) and sorted(BASE_OCTAD) == sorted([INF, 0, 1, 3, 12, 15, 21, 22]),
        "unique completion": unique and len(cover) == 42504 and set(cover.values()) == {1},
        "dimension 12": code.dimension == 12,
        "weights": code.weight_distribution() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1},
    })


def test_criterion_02_named_roots(record):
    chain = a6_chain()
    cartan = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(6)] for i in range(6)]
    record(2, "named roots y-z-x-p-q-t", {
        "Leech roots": all(is_leech_root(r) and r.norm == -2 for r in chain),
        "negated A6 Cartan": chain_gram() == [[-x for x in row] for row in cartan],
    })


def test_criterion_03_curve_octads(record):
    got = [str(k) for k in enumerate_curve_octads()]
    record(3, "curve octads K_1..K_28", {"printed list": got == PRINTED_OCTADS})


def test_criterion_04_coxeter_graph(record):
    g = build_coxeter_graph()
    record(4, "Coxeter graph", {
        "28 vertices": len(g.vertices) == 28,
        "42 edges": len(g.edges) == 42,
        "3-regular": all(g.degree(v) == 3 for v in g.vertices),
        "girth 7": g.girth() == 7,
        "induced heptagons": all(len(h) == 7 and g.is_induced_cycle(h) for h in HEPTAGONS),
    })


def test_criterion_05_weyl_projection(record):
    ns = build_ns_lattice()
    wp, wpp = weyl_projection()
    total = tuple(sum(c[i] for c in ns.curves) for i in range(20))
    record(5, "Weyl vector projection", {
        "w' = sum r_i": wp == total,
        "(w')^2 = 28": ns.inner(wp, wp) == 28,
        "<w', r_j> = 1": all(ns.inner(wp, c) == 1 for c in ns.curves),
        "w''": wpp == {"y": -3, "z": -5, "x": -6, "p": -6, "q": -5, "t": -3},
    })


def test_criterion_06_lattice(record):
    ns = build_ns_lattice()
    hs = heptagon_sublattice()
    gram = hs["gram"]
    blocks_ok = [row[:2] for row in gram[:2]] == [[0, 1], [1, -2]] and all(
        [row[2 + 6 * k: 8 + 6 * k] for row in gram[2 + 6 * k: 8 + 6 * k]] == root_gram("A", 6) for k in range(3)
    )
    off_block_zero = all(
        gram[i][j] == 0
        for i in range(20) for j in range(20)
        if (min(i, j) < 2 <= max(i, j)) or (i >= 2 and j >= 2 and (i - 2) // 6 != (j - 2) // 6)
    )
    disc = discriminant_form(ns.gram)
    record(6, "lattice identification", {
        "rank 20": rank([list(r.coords) for r in curve_roots()]) == 20,
        "|det| 7": abs(det(ns.gram)) == 7,
        "signature (1,19)": signature(ns.gram) == (1, 19),
        "U + 3A6": blocks_ok and off_block_zero,
        "index 7": overlattice_index(gram, ns.gram, hs["rows"]) == 7,
        "Z/7": disc.orders == (7,),
        "q values <-4/7>": disc.value_set() == {Fraction(-4 * k * k, 7) % 2 for k in range(1, 7)},
    })


def test_criterion_07_face_table(record):
    faces = enumerate_face_roots()
    by_type = Counter(f.rtype for f in faces)
    sub = Counter((f.rtype, f.attach) for f in faces)
    norms = {t: {f.norm for f in faces if f.rtype == t} for t in by_type}
    pair = {t: {f.w_pairing for f in faces if f.rtype == t} for t in by_type}
    record(7, "face table", {
        "counts 28/14/28/56": by_type == {"A6A1": 28, "A7": 14, "D7": 28, "E7": 56},
        "sub-cases": sub == {("A6A1", None): 28, ("A7", "t"): 7, ("A7", "y"): 7, ("D7", "q"): 14,
                             ("D7", "z"): 14, ("E7", "p"): 28, ("E7", "x"): 28},
        "norms": norms == {"A6A1": {-2}, "A7": {Fraction(-8, 7)}, "D7": {Fraction(-4, 7)}, "E7": {Fraction(-2, 7)}},
        "pairings": pair == {"A6A1": {1}, "A7": {4}, "D7": {6}, "E7": {7}},
    })


def test_criterion_08_profiles(record):
    def with_octad(rtype, pts):
        return next(f for f in faces_of_type(rtype) if isinstance(f.param[-1], tuple) and set(f.param[-1]) == set(pts))

    a7 = with_octad("A7", [INF, 0, 1, 2, 3, 5, 14, 17])
    d7 = next(f for f in faces_of_type("D7") if f.attach == "q" and f.param == (6,))
    e7 = with_octad("E7", [INF, 0, 3, 13, 14, 16, 19, 21])
    per_vertex = Counter(v for f in faces_of_type("A7") for v in f.profile)
    record(8, "intersection profiles", {
        "A7 example": sorted(a7.profile) == [23, 24, 25, 28],
        "D7 example": sorted(d7.profile) == [2, 5, 11, 14, 16, 23],
        "E7 example": sorted(e7.profile) == [5, 6, 8, 11, 24, 25, 27],
        "sizes 4/6/7": all(len(f.profile) == {"A7": 4, "D7": 6, "E7": 7}[t] for t in ("A7", "D7", "E7") for f in faces_of_type(t)),
        "A7 distances {4^6}": all(edge_distance_stats(f.profile) == {4: 6} for f in faces_of_type("A7")),
        "D7 distances {4^3,3^12}": all(edge_distance_stats(f.profile) == {4: 3, 3: 12} for f in faces_of_type("D7")),
        "two A7 quadruples per vertex": len(per_vertex) == 28 and set(per_vertex.values()) == {2},
    })


def test_criterion_09_symmetry(record):
    ns = build_ns_lattice()
    wp, _ = weyl_projection()
    faces = enumerate_face_roots()
    data = orbits_on_faces()
    orbit_sizes = Counter()
    for o in data.orbits:
        orbit_sizes[faces[o[0]].rtype] += 1
    stabs = {faces[r].rtype: s for r, s in data.stabilizers.items()}
    lifts = lifted_group()
    record(9, "graph automorphisms", {
        "order 336": len(graph_automorphism_group()) == 336,
        "one orbit per type": orbit_sizes == {"A6A1": 1, "A7": 1, "D7": 1, "E7": 1},
        "stabilizer orders 6/12/24": [len(stabs[t]) for t in ("E7", "D7", "A7")] == [6, 12, 24],
        "D3/A4/S4 element orders": [element_order_profile(stabs[t]) for t in ("E7", "D7", "A7")]
        == [STABILIZER_PROFILES[k] for k in ("D3", "A4", "S4")],
        "lifts integral, isometric, fix w'": len(lifts) == 336 and all(
            all(isinstance(x, int) for row in m for x in row) and m.preserves(ns.gram) and tuple(m.apply(wp)) == wp
            for m in lifts.values()
        ),
    })


def test_criterion_10_fibrations(record):
    ns = build_ns_lattice()
    faces = enumerate_face_roots()
    want = {"E7": (21, [18], 3), "D7": (22, [7, 12], 3), "A7": (24, [8, 6, 6], 4)}
    partitions = isotropic = consistent = True
    n = 0
    for f in faces:
        if f.rtype not in want:
            continue
        n += 1
        m = detect_fibration(f)
        partitions &= (28 - len(f.profile), [len(d.vertices) for d in m.diagrams], len(m.sections)) == want[f.rtype]
        isotropic &= ns.inner(m.fiber_class, m.fiber_class) == 0
        consistent &= all(fiber_class(d) == m.fiber_class for d in m.diagrams)
    invs = all_inversions()
    ident = Isometry.identity()
    record(10, "fibrations and inversions", {
        "98 faces": n == 98 and len(invs) == 98,
        "partitions": partitions,
        "isotropic fibers": isotropic,
        "consistent fibers": consistent,
        "integral": all(isinstance(x, int) for m in invs.values() for row in m for x in row),
        "involutive": all(m * m == ident for m in invs.values()),
        "Gram-preserving": all(m.preserves(ns.gram) for m in invs.values()),
        "iota(r') = -r', iota(w') = s(w')": all(check_q_reflection(m, faces[i]) for i, m in invs.items()),
    })


def test_criterion_11_reduction(record):
    stats = round_trip_suite(n_words=1000, seed=0, max_len=12)
    record(11, "reduction round trip (1000 words, seed 0)", {
        "1000 words": stats.words == 1000,
        "all round trips exact, traces decreasing to 28": stats.ok,
    })
