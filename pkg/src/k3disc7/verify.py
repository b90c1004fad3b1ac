"""Machine-checkable claims about the construction, grouped into the eleven
acceptance criteria.  Each check records what was expected and what was
computed; ``run_report`` is what ``k3disc7 verify`` prints."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable

from .dynkin import root_gram
from .faces import (
    EXPECTED_COUNTS,
    EXPECTED_SUBCOUNTS,
    PROFILE_SIZE,
    TABLE,
    TYPES,
    edge_distance_stats,
    enumerate_face_roots,
    faces_of_type,
)
from .fibrations import LAYOUT, all_inversions, check_q_reflection, detect_fibration, fiber_class
from .golay import build_steiner_system, parse_point, to_mask
from .lattice import det, discriminant_form, overlattice_index, rank, signature
from .leech import is_leech
from .lorentzian import is_leech_root
from .ns_embed import (
    CHAIN_NAMES,
    HEPTAGONS,
    a6_chain,
    a6_complement_in_ii,
    build_coxeter_graph,
    build_ns_lattice,
    chain_gram,
    enumerate_curve_octads,
    heptagon_sublattice,
    weyl_projection,
)
from .reduction import round_trip_suite
from .symmetry import (
    STABILIZER_PROFILES,
    Isometry,
    element_order_profile,
    graph_automorphism_group,
    lifted_group,
    orbits_on_faces,
)

CURVE_OCTADS = (  # the list K_1 .. K_28 as printed, display order
    "inf 0 2 3 4 8 9 21", "inf 0 2 3 6 12 16 20", "inf 0 2 3 7 11 13 15", "inf 0 2 3 10 18 19 22",
    "inf 0 2 4 5 6 10 11", "inf 0 2 4 7 17 18 20", "inf 0 2 4 12 14 15 19", "inf 0 2 5 7 9 12 22",
    "inf 0 2 5 8 13 19 20", "inf 0 2 5 15 16 18 21", "inf 0 2 6 8 15 17 22", "inf 0 2 11 14 20 21 22",
    "inf 0 3 4 5 12 13 18", "inf 0 3 4 6 7 14 22", "inf 0 3 4 10 15 16 17", "inf 0 3 5 6 9 15 19",
    "inf 0 3 5 7 10 20 21", "inf 0 3 5 8 11 16 22", "inf 0 3 8 14 15 18 20", "inf 0 3 9 13 17 20 22",
    "inf 0 4 5 9 14 16 20", "inf 0 4 5 17 19 21 22", "inf 0 4 6 13 15 20 21", "inf 0 4 8 10 12 20 22",
    "inf 0 4 9 11 15 18 22", "inf 0 5 10 13 14 15 22", "inf 0 5 11 12 15 17 20", "inf 0 7 15 16 19 20 22",
)

# (type, attachment, octad or point) -> printed profile of that face root
EXAMPLE_PROFILES = (
    ("A7", "t", "inf 0 1 2 3 5 14 17", (23, 24, 25, 28)),
    ("D7", "q", "6", (2, 5, 11, 14, 16, 23)),
    ("E7", "p", "inf 0 3 13 14 16 19 21", (5, 6, 8, 11, 24, 25, 27)),
)

W_DOUBLE_PRIME = {"y": -3, "z": -5, "x": -6, "p": -6, "q": -5, "t": -3}
STABILIZER_TYPE = {"E7": ("D3", 6), "D7": ("A4", 12), "A7": ("S4", 24)}
PARTITIONS = {"E7": (21, (18,), 3), "D7": (22, (7, 12), 3), "A7": (24, (8, 6, 6), 4)}

CRITERIA = {
    1: "Steiner system and Golay code",
    2: "named Leech roots form an A6 chain",
    3: "curve octads",
    4: "Coxeter graph",
    5: "projection of the Weyl vector",
    6: "identification of S_X",
    7: "face table",
    8: "intersection profiles",
    9: "graph automorphisms and their lifts",
    10: "elliptic fibrations and inversion involutions",
    11: "reduction round trip",
}


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=str) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


@dataclass
class Check:
    claim: str
    criterion: int
    location: str
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "criterion": self.criterion,
            "location": self.location,
            "expected": _jsonable(self.expected),
            "computed": _jsonable(self.computed),
            "pass": self.passed,
        }


# ---------------------------------------------------------------- criteria

def criterion_1() -> list[Check]:
    code = build_steiner_system()
    covered = Counter()
    for m in code.octad_masks:
        pts = [i for i in range(24) if m >> i & 1]
        covered.update(to_mask(f) for f in combinations(pts, 5))
    unique = len(covered) == comb(24, 5) and set(covered.values()) == {1}
    return [
        Check("octad_count", 1, "Steiner system", 759, len(code.octads)),
        Check("five_subsets_complete_uniquely", 1, "Steiner system", True, unique),
        Check("golay_dimension", 1, "Golay code", 12, code.dimension),
        Check("golay_weights", 1, "Golay code", {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}, code.weight_distribution()),
    ]


def criterion_2() -> list[Check]:
    chain = a6_chain()
    roots = all(is_leech_root(r) and r.norm == -2 and is_leech(r.lam) for r in chain)
    return [
        Check("chain_are_leech_roots", 2, "A6 chain", True, roots),
        Check("chain_gram", 2, "A6 chain", root_gram("A", 6), chain_gram()),
    ]


def criterion_3() -> list[Check]:
    got = tuple(str(k) for k in enumerate_curve_octads())
    return [Check("curve_octads", 3, "curve list", list(CURVE_OCTADS), list(got))]


def criterion_4() -> list[Check]:
    g = build_coxeter_graph()
    degrees = sorted({g.degree(v) for v in g.vertices})
    return [
        Check("graph_vertices", 4, "Coxeter graph", 28, len(g.vertices)),
        Check("graph_edges", 4, "Coxeter graph", 42, len(g.edges)),
        Check("graph_degrees", 4, "Coxeter graph", [3], degrees),
        Check("graph_girth", 4, "Coxeter graph", 7, g.girth()),
        Check("heptagons_induced", 4, "Coxeter graph", [True] * 3, [g.is_induced_cycle(h) for h in HEPTAGONS]),
    ]


def criterion_5() -> list[Check]:
    ns = build_ns_lattice()
    wp, wpp = weyl_projection()
    total = tuple(sum(c[i] for c in ns.curves) for i in range(ns.rank))
    return [
        Check("w_prime_is_sum_of_curves", 5, "Weyl vector", total, wp),
        Check("w_prime_norm", 5, "Weyl vector", 28, ns.inner(wp, wp)),
        Check("w_prime_curve_pairings", 5, "Weyl vector", [1] * 28, [ns.inner(wp, c) for c in ns.curves]),
        Check("w_double_prime", 5, "Weyl vector", W_DOUBLE_PRIME, {k: wpp[k] for k in CHAIN_NAMES}),
    ]


def criterion_6() -> list[Check]:
    ns = build_ns_lattice()
    hs = heptagon_sublattice()
    sub = hs["gram"]
    a6 = root_gram("A", 6)
    block = [[sub[2 + 6 * k + i][2 + 6 * k + j] for j in range(6)] for k in range(3) for i in range(6)]
    shape_ok = (
        [row[:2] for row in sub[:2]] == [[0, 1], [1, -2]]
        and all(sub[i][j] == 0 for i in range(20) for j in range(20) if (i < 2) != (j < 2) or (i >= 2 and j >= 2 and (i - 2) // 6 != (j - 2) // 6))
        and block == a6 * 3
    )
    disc = discriminant_form(ns.gram)
    q_expected = {Fraction(-4 * k * k, 7) % 2 for k in range(1, 7)}
    return [
        Check("curve_span_rank", 6, "S_X", 20, rank([list(c) for c in ns.curves])),
        Check("abs_det", 6, "S_X", 7, abs(det(ns.gram))),
        Check("signature", 6, "S_X", (1, 19), signature(ns.gram)),
        Check("complement_of_a6", 6, "S_X", [tuple(b) for b in ns.basis], a6_complement_in_ii()),
        Check("u_plus_3a6_gram", 6, "S_X", True, shape_ok),
        Check("u_plus_3a6_index", 6, "S_X", 7, overlattice_index(sub, ns.gram, hs["rows"])),
        Check("discriminant_group", 6, "S_X", (7,), disc.orders),
        Check("discriminant_q_values", 6, "S_X", q_expected, disc.value_set()),
    ]


def table_rows() -> list[dict]:
    rows = []
    for t in TYPES:
        fs = faces_of_type(t)
        rows.append({
            "type": t,
            "count": len(fs),
            "norm": sorted({str(f.norm) for f in fs}),
            "pairing": sorted({f.w_pairing for f in fs}),
        })
    for r in rows:
        r["norm"] = r["norm"][0] if len(r["norm"]) == 1 else r["norm"]
        r["pairing"] = r["pairing"][0] if len(r["pairing"]) == 1 else r["pairing"]
    return rows


def criterion_7() -> list[Check]:
    faces = enumerate_face_roots()
    sub = Counter((f.rtype, f.attach) for f in faces)
    want_rows = [{"type": t, "count": EXPECTED_COUNTS[t], "norm": str(TABLE[t][0]), "pairing": TABLE[t][1]} for t in TYPES]
    return [
        Check("face_counts", 7, "face table", EXPECTED_COUNTS, dict(Counter(f.rtype for f in faces))),
        Check("face_subcounts", 7, "face table",
              {f"{t}({a})" if a else t: n for (t, a), n in EXPECTED_SUBCOUNTS.items()},
              {f"{t}({a})" if a else t: n for (t, a), n in sub.items()}),
        Check("face_table", 7, "face table", want_rows, table_rows()),
    ]


def _find(rtype: str, attach: str, param: str):
    pts = {parse_point(x) for x in param.split()}
    for f in faces_of_type(rtype):
        if f.attach != attach:
            continue
        flat = set()
        for p in f.param:
            flat |= {p} if isinstance(p, int) else set(p)
        if (len(pts) == 1 and f.param[0] == next(iter(pts))) or (len(pts) == 8 and flat == pts):
            return f
    raise KeyError(param)


def criterion_8() -> list[Check]:
    checks = []
    for rtype, attach, param, prof in EXAMPLE_PROFILES:
        f = _find(rtype, attach, param)
        checks.append(Check(f"profile_{rtype}_example", 8, "profiles", list(prof), sorted(f.profile)))
    sizes = {t: sorted({len(f.profile) for f in faces_of_type(t)}) for t in PROFILE_SIZE}
    checks.append(Check("profile_sizes", 8, "profiles", {t: [n] for t, n in PROFILE_SIZE.items()}, sizes))
    a7 = {tuple(sorted(edge_distance_stats(f.profile).items())) for f in faces_of_type("A7")}
    d7 = {tuple(sorted(edge_distance_stats(f.profile).items())) for f in faces_of_type("D7")}
    checks.append(Check("a7_distances", 8, "profiles", {((4, 6),)}, a7))
    checks.append(Check("d7_distances", 8, "profiles", {((3, 12), (4, 3))}, d7))
    per_vertex = Counter(v for f in faces_of_type("A7") for v in f.profile)
    checks.append(Check("a7_quadruples_per_vertex", 8, "profiles", {2}, set(per_vertex[v] for v in range(1, 29))))
    return checks


def criterion_9() -> list[Check]:
    ns = build_ns_lattice()
    group = graph_automorphism_group()
    data = orbits_on_faces()
    faces = enumerate_face_roots()
    orbit_types = sorted((faces[o[0]].rtype, len(o)) for o in data.orbits)
    checks = [
        Check("automorphism_group_order", 9, "symmetry", 336, len(group)),
        Check("orbits_per_type", 9, "symmetry", sorted(EXPECTED_COUNTS.items()), orbit_types),
    ]
    for rep, stab in data.stabilizers.items():
        t = faces[rep].rtype
        if t not in STABILIZER_TYPE:
            continue
        name, order = STABILIZER_TYPE[t]
        checks.append(Check(f"stabilizer_{t}", 9, "symmetry",
                            {"order": order, "elements": STABILIZER_PROFILES[name]},
                            {"order": len(stab), "elements": element_order_profile(stab)}))
    wp, _ = weyl_projection()
    lifts = lifted_group()
    ok = all(m.preserves(ns.gram) and tuple(m.apply(wp)) == wp for m in lifts.values())
    checks.append(Check("lifts_gram_and_w_prime", 9, "symmetry", True, ok and len(lifts) == 336))
    return checks


def criterion_10() -> list[Check]:
    ns = build_ns_lattice()
    parts: dict[str, set] = {t: set() for t in LAYOUT}
    isotropic = consistent = True
    for f in enumerate_face_roots():
        if f.rtype not in LAYOUT:
            continue
        m = detect_fibration(f)
        sizes = tuple(len(d.vertices) for d in m.diagrams)
        parts[f.rtype].add((28 - len(f.profile), sizes, len(m.sections)))
        isotropic &= ns.inner(m.fiber_class, m.fiber_class) == 0
        consistent &= all(fiber_class(d) == m.fiber_class for d in m.diagrams)
    invs = all_inversions()
    ident = Isometry.identity()
    faces = enumerate_face_roots()
    ok = all(m * m == ident and m.preserves(ns.gram) and check_q_reflection(m, faces[i]) for i, m in invs.items())
    want_parts = {t: {p} for t, p in PARTITIONS.items()}
    return [
        Check("diagram_partitions", 10, "fibrations", want_parts, parts),
        Check("fiber_isotropic", 10, "fibrations", True, isotropic),
        Check("fiber_consistent", 10, "fibrations", True, consistent),
        Check("inversion_count", 10, "fibrations", 98, len(invs)),
        Check("inversions_valid", 10, "fibrations", True, ok),
    ]


def criterion_11(n_words: int = 1000, seed: int = 0) -> list[Check]:
    stats = round_trip_suite(n_words, seed)
    return [
        Check("round_trip_words", 11, "reduction", n_words, stats.words),
        Check("round_trip_failures", 11, "reduction", [], stats.failures[:5]),
    ]


def run_checks(n_words: int = 1000, seed: int = 0) -> list[Check]:
    runners: list[Callable[[], list[Check]]] = [
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
    ]
    out = []
    for run in runners:
        out += run()
    out += criterion_11(n_words, seed)
    return out


def run_report(n_words: int = 1000, seed: int = 0) -> dict:
    checks = run_checks(n_words, seed)
    criteria = []
    for k, title in CRITERIA.items():
        mine = [c for c in checks if c.criterion == k]
        criteria.append({"id": k, "title": title, "claims": [c.claim for c in mine], "pass": all(c.passed for c in mine)})
    failing = [c.claim for c in checks if not c.passed]
    return {
        "schema": "1",
        "seed": seed,
        "words": n_words,
        "table": table_rows(),
        "criteria": criteria,
        "checks": [c.to_json() for c in checks],
        "failing": failing,
        "pass": not failing,
    }
