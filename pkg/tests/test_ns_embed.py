from fractions import Fraction

import networkx as nx
import pytest

from k3disc7.dynkin import root_gram
from k3disc7.lattice import det, discriminant_form, overlattice_index, signature
from k3disc7.ns_embed import (
    HEPTAGONS,
    a6_complement_in_ii,
    build_coxeter_graph,
    build_ns_lattice,
    chain_gram,
    curve_roots,
    enumerate_curve_octads,
    glue_vector,
    heptagon_sublattice,
    weyl_projection,
)

PRINTED_K1 = "inf 0 2 3 4 8 9 21"
PRINTED_K28 = "inf 0 7 15 16 19 20 22"


@pytest.fixture(scope="module")
def ns():
    return build_ns_lattice()


@pytest.fixture(scope="module")
def graph():
    g = build_coxeter_graph()
    return nx.Graph(list(g.edges))


def test_chain_is_a6():
    assert chain_gram() == root_gram("A", 6)


def test_curve_octads_endpoints():
    octads = [str(k) for k in enumerate_curve_octads()]
    assert len(octads) == 28
    assert octads[0] == PRINTED_K1 and octads[-1] == PRINTED_K28


def test_curve_roots_pair_to_zero_or_one(ns):
    for i, a in enumerate(ns.curves):
        for j, b in enumerate(ns.curves):
            want = -2 if i == j else None
            got = ns.inner(a, b)
            assert got == want if want is not None else got in (0, 1)


def test_lattice_invariants(ns):
    assert len(curve_roots()) == 28
    assert ns.rank == 20
    assert abs(det(ns.gram)) == 7
    assert signature(ns.gram) == (1, 19)


def test_complement_computed_two_ways_agree(ns):
    assert a6_complement_in_ii() == [tuple(b) for b in ns.basis]


def test_graph_against_networkx(graph):
    assert graph.number_of_nodes() == 28
    assert graph.number_of_edges() == 42
    assert {d for _, d in graph.degree()} == {3}
    assert nx.girth(graph) == 7
    assert build_coxeter_graph().girth() == 7


@pytest.mark.parametrize("hept", HEPTAGONS)
def test_printed_heptagons_are_induced(graph, hept):
    sub = graph.subgraph(hept)
    assert sub.number_of_edges() == 7
    assert nx.is_isomorphic(sub, nx.cycle_graph(7))
    assert build_coxeter_graph().is_induced_cycle(hept)


def test_distance_matrix_matches_networkx(graph):
    g = build_coxeter_graph()
    lengths = dict(nx.all_pairs_shortest_path_length(graph))
    assert all(g.distance(u, v) == lengths[u][v] for u in g.vertices for v in g.vertices)


def test_weyl_projection(ns):
    wp, wpp = weyl_projection()
    assert ns.inner(wp, wp) == 28
    assert all(ns.inner(wp, c) == 1 for c in ns.curves)
    assert wpp == {"y": -3, "z": -5, "x": -6, "p": -6, "q": -5, "t": -3}


def test_weyl_vector_in_heptagon_fibration(ns):
    # w' = 3F + O + S_1 + ... + S_6
    hs = heptagon_sublattice()
    fiber = hs["rows"][0]
    sections = [ns.curves[v - 1] for v in hs["sections"]]
    assert len(sections) == 7
    total = [3 * f + sum(s[i] for s in sections) for i, f in enumerate(fiber)]
    assert tuple(total) == weyl_projection()[0]


def test_u_plus_three_a6_has_index_seven(ns):
    hs = heptagon_sublattice()
    gram = hs["gram"]
    assert [row[:2] for row in gram[:2]] == [[0, 1], [1, -2]]
    for k in range(3):
        block = [row[2 + 6 * k: 8 + 6 * k] for row in gram[2 + 6 * k: 8 + 6 * k]]
        assert block == root_gram("A", 6)
    assert overlattice_index(gram, ns.gram, hs["rows"]) == 7


def test_glue_components_are_nonzero_squares():
    glue = glue_vector()
    squares = {k * k % 7 for k in range(1, 7)}
    assert glue[0] == 1
    assert sorted(glue) == [1, 2, 4]  # the printed glue (1,2,4) up to the order of the heptagons
    assert all(c in range(1, 7) for c in glue)
    assert sorted(c * c % 7 for c in glue) == sorted(squares)
    # q(k omega_1) = -6k^2/7 in the negative definite A6; the glue must be isotropic
    assert Fraction(-6 * sum(c * c for c in glue), 7) % 2 == 0


def test_discriminant_form(ns):
    d = discriminant_form(ns.gram)
    assert d.orders == (7,)
    assert d.value_set() == {Fraction(-4 * k * k, 7) % 2 for k in range(1, 7)}
