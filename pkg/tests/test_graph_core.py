from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import corpus, graphs
from nilgraph import catalog
from nilgraph.graph_core import (
    EnumerationBoundExceeded,
    Graph,
    admissible_orders,
    automorphism_group,
    coherent_components,
    edge_classes,
    edge_precedes,
    graph_to_dot,
    induced_edge_data,
    is_admissible,
    is_admissible_class_order,
    isolated_vertices,
    make_automorphism,
    natural_key,
    neighborhoods,
    order_graph,
    quotient_automorphisms,
    quotient_graph,
    quotient_to_dot,
    vertex_precedes,
)


def _sets(classes):
    return [set(c) for c in classes]


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """(a o b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(b)))


def _transposition(g: Graph, v: str, w: str) -> bool:
    vs = g.vertices
    swap = {v: w, w: v}
    return all(g.adjacent(swap.get(a, a), swap.get(b, b)) for a, b in (g.ends(e) for e in g.edges))


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.ends(e) for e in g.edges)
    return h


# --- construction ------------------------------------------------------------


def test_graph_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph.from_edges(["a"], [("a", "a")])
    with pytest.raises(ValueError):
        Graph.from_edges(["a", "b"], [("a", "c")])
    with pytest.raises(ValueError):
        Graph.from_edges(["a", "b"], [("a", "b"), ("b", "a")])


def test_natural_key_sorts_numbered_labels():
    assert sorted(["v10", "v2", "v1"], key=natural_key) == ["v1", "v2", "v10"]


# --- neighbourhoods and preorders --------------------------------------------


def test_neighborhoods():
    g = catalog.figure1_graph()
    assert neighborhoods(g, "v5")[0] == {"v1", "v2", "v6"}
    iso = catalog.two_edges_and_point()
    assert neighborhoods(iso, "v5") == (frozenset(), frozenset({"v5"}))
    assert neighborhoods(catalog.k2_graph(), "v1")[0] == {"v2"}
    with pytest.raises(KeyError):
        neighborhoods(g, "v9")


def test_six_vertex_components_and_relations():
    g = catalog.figure1_graph()
    p = coherent_components(g)
    assert _sets(p.classes) == [{"v1", "v2"}, {"v3", "v4"}, {"v5"}, {"v6"}]
    assert p.relations() == [(0, 2), (1, 2), (1, 3)]


def test_component_examples():
    assert _sets(coherent_components(catalog.edgeless(4)).classes) == [{"v1", "v2", "v3", "v4"}]
    assert _sets(coherent_components(catalog.k2_graph()).classes) == [{"v1", "v2"}]


def test_edge_class_examples():
    g = catalog.figure1_graph()
    m = edge_classes(g)
    labels = sorted(sorted(g.edge_label(e) for e in c) for c in m.classes)
    assert labels == sorted([["{v1,v5}", "{v2,v5}"], ["{v3,v6}", "{v4,v6}"], ["{v1,v2}"], ["{v5,v6}"]])
    assert len(edge_classes(catalog.k2_graph()).classes) == 1
    star = catalog.star(3)
    assert [len(c) for c in edge_classes(star).classes] == [3]


def test_six_vertex_edge_relations_follow_the_definition():
    # the literal edge preorder relates {v1,v2} below {v1,v5}
    g = catalog.figure1_graph()
    assert edge_precedes(g, frozenset({"v1", "v2"}), frozenset({"v1", "v5"}))
    assert edge_precedes(g, frozenset({"v3", "v6"}), frozenset({"v5", "v6"}))


@settings(max_examples=150)
@given(graphs(max_vertices=8))
def test_equivalence_iff_transposition_is_automorphism(g):
    p = coherent_components(g)
    for v, w in itertools.combinations(g.vertices, 2):
        assert (p.class_of[v] == p.class_of[w]) == _transposition(g, v, w)


@settings(max_examples=150)
@given(graphs(max_vertices=8))
def test_class_order_is_a_partial_order_compatible_with_vertices(g):
    p = coherent_components(g)
    r = len(p.classes)
    for i in range(r):
        assert (i, i) in p.order
    for i, j in p.order:
        assert i == j or (j, i) not in p.order
        assert vertex_precedes(g, p.classes[i][0], p.classes[j][0])
        for k in range(r):
            if (j, k) in p.order:
                assert (i, k) in p.order
        assert i <= j  # listed in an admissible order


@settings(max_examples=150)
@given(graphs(max_vertices=8))
def test_edge_classes_biject_with_quotient_edges(g):
    p = coherent_components(g)
    m = edge_classes(g, p)
    q = quotient_graph(g, p, m)
    assert len(set(q.qedges)) == len(m.classes)
    # two edges are equivalent exactly when their endpoints lie in the same pair of classes
    for e, f in itertools.combinations(g.edges, 2):
        same_pair = sorted(p.class_of[v] for v in e) == sorted(p.class_of[v] for v in f)
        assert (m.class_of[e] == m.class_of[f]) == same_pair
    # a loop needs a class of size at least two
    for a in q.loops:
        assert q.sizes[a] >= 2


def test_quotient_examples():
    g = catalog.figure1_graph()
    q = quotient_graph(g)
    assert q.sizes == (2, 2, 1, 1)
    assert sorted(q.qedges) == [(0, 0), (0, 2), (1, 3), (2, 3)]
    assert quotient_graph(catalog.edgeless(3)).qedges == ()
    qc = quotient_graph(catalog.counterexample_graph())
    assert qc.sizes == (2, 2, 2, 1, 1, 1)
    assert sorted(qc.qedges) == [(0, 3), (1, 4), (2, 5), (3, 4), (4, 5)]


# --- admissible orders -------------------------------------------------------


def test_admissible_class_order_validator():
    p = coherent_components(catalog.figure1_graph())
    assert is_admissible_class_order(p, [0, 1, 2, 3])
    assert is_admissible_class_order(p, [1, 0, 2, 3])
    assert not is_admissible_class_order(p, [2, 0, 1, 3])


@settings(max_examples=100)
@given(graphs(max_vertices=8))
def test_order_graph_is_admissible_idempotent_and_label_canonical(g):
    h = order_graph(g)
    assert is_admissible(h)
    assert order_graph(h) == h
    vo, eo = admissible_orders(h)
    assert vo == h.vertices and eo == h.edges
    shuffled = Graph.from_edges(list(reversed(g.vertices)), [g.ends(e) for e in reversed(g.edges)])
    assert order_graph(shuffled) == h
    assert is_admissible(order_graph(g, "input"))


def test_counterexample_listing_is_canonical():
    g = catalog.counterexample_graph()
    assert order_graph(g) == g


# --- automorphisms -----------------------------------------------------------


@pytest.mark.parametrize("g", corpus(), ids=lambda g: f"{len(g.vertices)}v{len(g.edges)}e")
def test_automorphism_count_matches_networkx(g):
    matcher = nx.algorithms.isomorphism.GraphMatcher(_to_nx(g), _to_nx(g))
    assert len(automorphism_group(g)) == sum(1 for _ in matcher.isomorphisms_iter())


def test_automorphism_examples():
    g = catalog.figure1_graph()
    auts = automorphism_group(g)
    assert sorted(a.cycles(g.vertices) for a in auts) == ["()", "(v1 v2)", "(v1 v2)(v3 v4)", "(v3 v4)"]
    ce = catalog.counterexample_graph()
    sigma = make_automorphism(ce, catalog.COUNTEREXAMPLE_SIGMA)
    assert sigma.sigma in {a.sigma for a in automorphism_group(ce)}
    assert len(automorphism_group(catalog.k2_graph())) == 2
    with pytest.raises(EnumerationBoundExceeded):
        automorphism_group(catalog.edgeless(13))


def test_induced_edge_data_examples():
    ce = catalog.counterexample_graph()
    se, eps, _ = induced_edge_data(ce, catalog.COUNTEREXAMPLE_SIGMA)
    assert se == (4, 5, 2, 3, 0, 1, 7, 6)
    assert eps == (1, 1, 1, 1, 1, 1, -1, -1)
    ident = tuple(range(9))
    assert induced_edge_data(ce, ident)[:2] == (tuple(range(8)), (1,) * 8)
    g = catalog.figure1_graph()  # edges listed e1..e6 as {v1,v5}, {v2,v5}, {v3,v6}, {v4,v6}, {v1,v2}, {v5,v6}
    se, eps, _ = induced_edge_data(g, {"v1": "v2", "v2": "v1"})
    assert se == (1, 0, 2, 3, 4, 5)
    assert eps == (1, 1, 1, 1, -1, 1)
    with pytest.raises(ValueError):
        induced_edge_data(g, {"v1": "v6", "v6": "v1"})


@pytest.mark.parametrize("g", corpus(), ids=lambda g: f"{len(g.vertices)}v{len(g.edges)}e")
def test_edge_action_is_a_homomorphism_with_sign_cocycle(g):
    auts = automorphism_group(g)
    for a, b in itertools.product(auts, repeat=2):
        ab = make_automorphism(g, _compose(a.sigma, b.sigma))
        assert ab.sigma_e == _compose(a.sigma_e, b.sigma_e)
        assert ab.p_sigma == _compose(a.p_sigma, b.p_sigma)
        assert ab.epsilon == tuple(b.epsilon[i] * a.epsilon[b.sigma_e[i]] for i in range(len(g.edges)))


@settings(max_examples=60)
@given(graphs(max_vertices=7))
def test_class_action_surjects_onto_quotient_automorphisms(g):
    g = order_graph(g)
    p = coherent_components(g)
    q = quotient_graph(g, p)
    images = {a.p_sigma for a in automorphism_group(g)}
    assert images == set(quotient_automorphisms(q))


# --- isolated vertices and DOT -------------------------------------------------


def test_isolated_vertices():
    iso, stripped = isolated_vertices(catalog.two_edges_and_point())
    assert iso == ("v5",) and len(stripped.vertices) == 4
    iso, stripped = isolated_vertices(catalog.edgeless(3))
    assert len(iso) == 3 and stripped.vertices == ()
    assert isolated_vertices(catalog.figure1_graph())[0] == ()


def test_dot_output():
    g = catalog.figure1_graph()
    dot = graph_to_dot(g, [1, 1, 1, 1, 1, 2])
    assert dot.startswith("graph G {") and '"v5" -- "v6"' in dot and "2" in dot
    p = coherent_components(g)
    qdot = quotient_to_dot(p, quotient_graph(g, p))
    assert "l1 -- l1;" in qdot
