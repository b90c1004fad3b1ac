import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from k3disc7.faces import enumerate_face_roots
from k3disc7.ns_embed import build_coxeter_graph, build_ns_lattice, weyl_projection
from k3disc7.symmetry import (
    STABILIZER_PROFILES,
    GraphAutomorphism,
    Isometry,
    act_on_face,
    closure,
    derived_subgroup,
    element_order_profile,
    face_permutation,
    generating_set,
    graph_automorphism_group,
    is_automorphism,
    lifted_group,
    match_graph_automorphism,
    orbits_on_faces,
)


@pytest.fixture(scope="module")
def group():
    return graph_automorphism_group()


def test_order_matches_networkx(group):
    g = nx.Graph(list(build_coxeter_graph().edges))
    assert sum(1 for _ in GraphMatcher(g, g).isomorphisms_iter()) == 336
    assert len(group) == 336 and len(set(group)) == 336
    assert all(is_automorphism(a, build_coxeter_graph()) for a in group)


def test_group_structure(group):
    assert len(derived_subgroup(group)) == 168
    gens = generating_set(group)
    assert len(closure(gens)) == 336
    orders = element_order_profile(group)
    # PGL_2(7): PSL_2(7) has 1, 21, 56, 42, 48 elements of order 1, 2, 3, 4, 7;
    # the other coset has 28, 56, 84 of order 2, 6, 8
    assert orders == {1: 1, 2: 49, 3: 56, 4: 42, 6: 56, 7: 48, 8: 84}


def test_composition_convention(group):
    a, b = group[5], group[17]
    for v in range(1, 29):
        assert (a * b)(v) == a(b(v))
    assert (a * a.inverse()).is_identity()


def test_cycle_notation_round_trip(group):
    for g in group[:40]:
        assert GraphAutomorphism.from_cycles(g.cycles()) == g
    assert GraphAutomorphism.from_cycles("()").is_identity()
    with pytest.raises(ValueError):
        GraphAutomorphism.from_cycles("(1 2")
    with pytest.raises(ValueError):
        GraphAutomorphism.from_cycles("(1 2)(2 3)")


def test_lifts_are_isometries_fixing_w_prime():
    ns = build_ns_lattice()
    wp, _ = weyl_projection()
    lifts = lifted_group()
    assert len(lifts) == 336
    for g, m in lifts.items():
        assert m.preserves(ns.gram)
        assert tuple(m.apply(wp)) == wp
        assert match_graph_automorphism(m) == g


def test_lift_is_a_homomorphism(group):
    lifts = lifted_group()
    for a, b in [(group[3], group[100]), (group[200], group[7])]:
        assert lifts[a * b] == lifts[a] * lifts[b]


def test_non_automorphism_matrix_is_not_matched():
    m = Isometry.of([[-x for x in row] for row in Isometry.identity()])
    assert match_graph_automorphism(m) is None


def test_face_action_agrees_with_permutation(group):
    faces = enumerate_face_roots()
    g = group[42]
    perm = face_permutation(g)
    m = lifted_group()[g]
    for f in faces[::9]:
        assert act_on_face(m, f).index == perm[f.index]


def test_orbits_and_stabilizers():
    data = orbits_on_faces()
    faces = enumerate_face_roots()
    sizes = sorted((faces[o[0]].rtype, len(o)) for o in data.orbits)
    assert sizes == [("A6A1", 28), ("A7", 14), ("D7", 28), ("E7", 56)]
    want = {"E7": "D3", "D7": "A4", "A7": "S4"}
    for rep, stab in data.stabilizers.items():
        t = faces[rep].rtype
        assert len(stab) * len(next(o for o in data.orbits if rep in o)) == 336
        if t in want:
            assert element_order_profile(stab) == STABILIZER_PROFILES[want[t]]
