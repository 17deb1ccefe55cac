from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import weighted_graphs
from nilgraph import catalog
from nilgraph.exact_linalg import Matrix
from nilgraph.nilpotent_group import (
    TwoStepPresentation,
    graph_structure,
    heisenberg_matrix,
    presentation_from_graph,
    relation_defects,
    remark_group_H,
    structural_subgroups,
)
from nilgraph.weighted_graph import WeightedGraph


def _presentations():
    return [presentation_from_graph(catalog.heisenberg(n)) for n in (1, 2, 3)] + [
        remark_group_H(),
        presentation_from_graph(catalog.counterexample(3)),
        presentation_from_graph(WeightedGraph.unweighted(catalog.figure1_graph())),
        presentation_from_graph(WeightedGraph.unweighted(catalog.edgeless(2))),
    ]


@pytest.mark.parametrize("p", _presentations(), ids=lambda p: f"n{p.n}m{p.m}")
def test_group_axioms_on_random_triples(p):
    rng = random.Random(p.n * 100 + p.m)
    e = p.identity()
    for _ in range(300):
        a, b, c = (p.random_element(rng, 6) for _ in range(3))
        assert p.multiply(p.multiply(a, b), c) == p.multiply(a, p.multiply(b, c))
        assert p.multiply(a, e) == a == p.multiply(e, a)
        assert p.multiply(a, p.inverse(a)) == e == p.multiply(p.inverse(a), a)
        # two-step: commutators are central
        comm = p.commutator(a, b)
        assert p.multiply(comm, c) == p.multiply(c, comm)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_heisenberg_products_match_matrices(n):
    p = presentation_from_graph(catalog.heisenberg(n))
    rng = random.Random(n)
    for _ in range(200):
        a, b = p.random_element(rng, 15), p.random_element(rng, 15)
        assert heisenberg_matrix(n, p.multiply(a, b)) == heisenberg_matrix(n, a) @ heisenberg_matrix(n, b)
        assert heisenberg_matrix(n, p.inverse(a)) @ heisenberg_matrix(n, a) == Matrix.identity(3)


def test_heisenberg_small_products():
    p = presentation_from_graph(catalog.heisenberg(1))
    v1, v2 = p.x(0), p.x(1)
    prod = p.multiply(v2, v1)
    assert prod.z == (1, 1) and prod.t == (-1,)
    assert p.commutator(v1, v2) == p.y(0)
    sq = p.power(v1, 2)
    assert sq.z == (2, 0) and sq.t == (0,)
    for n in (2, 3):
        pn = presentation_from_graph(catalog.heisenberg(n))
        c = pn.commutator(pn.x(0), pn.x(1))
        assert c.z == (0, 0) and c.t == (n,)


def test_inverse_in_abelian_case():
    p = presentation_from_graph(WeightedGraph.unweighted(catalog.edgeless(3)))
    a = p.element((1, -2, 4))
    assert p.inverse(a).z == (-1, 2, -4)
    assert p.m == 0


def test_presentation_from_counterexample():
    p = presentation_from_graph(catalog.counterexample(4))
    entries = {(i, j): v for (i, j), v in p.constants.items() if any(v)}
    assert len(entries) == 8
    assert entries[(6, 7)] == tuple(4 if l == 6 else 0 for l in range(8))
    assert sum(sum(v) for v in entries.values()) == 4 + 7


def test_group_h_constants():
    h = remark_group_H()
    assert h.c(0, 2) == (1, 0, 0)
    assert h.c(1, 3) == (2, 0, 0)
    assert h.c(0, 1) == (0, 0, 0)
    assert h.c(2, 0) == (-1, 0, 0)


def test_presentation_json_round_trip():
    for p in _presentations():
        q = TwoStepPresentation.from_json(p.to_json())
        assert q.to_json() == p.to_json()


def test_structure_examples():
    for n in (1, 2, 3):
        rep = structural_subgroups(presentation_from_graph(catalog.heisenberg(n)), catalog.heisenberg(n))
        assert rep.center_rank == 1
        assert rep.abelianization_invariants == ((n, 0, 0) if n > 1 else (0, 0))
        assert rep.hirsch == 3 and rep.unweighted_index == n
    ce = catalog.counterexample(1)
    rep = structural_subgroups(presentation_from_graph(ce), ce)
    assert rep.hirsch == 17 and rep.unweighted_index == 1
    assert rep.abelianization_str() == "Z^9"
    flat = WeightedGraph.unweighted(catalog.edgeless(4))
    rep = structural_subgroups(presentation_from_graph(flat), flat)
    assert rep.center_rank == 4 and rep.hirsch == 4


def test_two_edges_and_point_center():
    wg = WeightedGraph.unweighted(catalog.two_edges_and_point())
    rep = structural_subgroups(presentation_from_graph(wg))
    assert rep.center_rank == 3  # the isolated vertex and both edges


@settings(max_examples=80)
@given(weighted_graphs(max_vertices=6))
def test_closed_form_structure_matches_lattice_reduction(wg):
    p = presentation_from_graph(wg)
    reduced = structural_subgroups(p, wg)
    closed = graph_structure(wg)
    assert reduced.abelianization_invariants == closed.abelianization_invariants
    assert reduced.center_rank == closed.center_rank
    assert reduced.hirsch == closed.hirsch
    assert reduced.gamma2_index == closed.gamma2_index
    if wg.graph.edges:
        assert reduced.gamma2_lattice == closed.gamma2_lattice
        assert reduced.sqrt_gamma2_lattice == closed.sqrt_gamma2_lattice


@settings(max_examples=60)
@given(weighted_graphs(max_vertices=6), st.integers(0, 2**32))
def test_center_generators_commute_with_everything(wg, seed):
    p = presentation_from_graph(wg)
    rep = structural_subgroups(p)
    rng = random.Random(seed)
    for z in rep.center_generators:
        a = p.random_element(rng, 4)
        assert p.multiply(z, a) == p.multiply(a, z)


def test_group_h_automorphism_respects_relations():
    h = remark_group_H()
    xs, ys = catalog.remark_H_automorphism(h)
    assert relation_defects(h, xs, ys) == []
    # swapping two x images breaks a relation
    assert relation_defects(h, [xs[1], xs[0], xs[2], xs[3]], ys) != []


def test_dimension_mismatch_raises():
    p = presentation_from_graph(catalog.heisenberg(1))
    with pytest.raises(ValueError):
        p.element((1, 2, 3))
