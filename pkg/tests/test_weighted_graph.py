from __future__ import annotations

import json
import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import weighted_graphs
from nilgraph import catalog
from nilgraph.graph_core import automorphism_group, make_automorphism
from nilgraph.weighted_graph import (
    GraphFormatError,
    WeightedGraph,
    canonical_json,
    class_determinant_divisors,
    counterexample_weights,
    diagonal_determinant_divisor,
    parse_graph,
    preserves_divisors,
    singleton_edges,
    weighted_automorphism_group,
)


def test_parse_defaults_weight_to_one():
    wg = parse_graph('{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c", 3]]}')
    assert wg.weights == (1, 3)
    assert wg.k(("c", "b")) == 3


@pytest.mark.parametrize("text", [
    "[]",
    '{"vertices": ["a"], "edges": [], "extra": 1}',
    '{"vertices": "ab", "edges": []}',
    '{"vertices": ["a", "b"], "edges": [["a", "b", 0]]}',
    '{"vertices": ["a", "b"], "edges": [["a", "b", 1.5]]}',
    '{"vertices": ["a", "b"], "edges": [["a", "c"]]}',
    '{"vertices": ["a", "b"], "edges": [["a"]]}',
    '{"vertices": ["a"], "edges": [["a", "a"]]}',
])
def test_parse_rejects_schema_violations(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


@settings(max_examples=100)
@given(weighted_graphs())
def test_json_round_trip_is_byte_identical(wg):
    text = wg.to_json()
    assert parse_graph(text).to_json() == text
    assert canonical_json(parse_graph(text)) == canonical_json(wg)
    # listing order in the input does not change the canonical text
    obj = json.loads(text)
    obj["vertices"].reverse()
    obj["edges"].reverse()
    assert canonical_json(parse_graph(obj)) == canonical_json(wg)


def test_class_divisor_examples():
    ce = catalog.counterexample(5)
    e7 = frozenset({"v7", "v8"})
    assert class_determinant_divisors(ce, [e7], 1) == 5
    assert [diagonal_determinant_divisor([2, 6], l) for l in (1, 2)] == [2, 12]
    assert all(class_determinant_divisors(catalog.counterexample(1), ce.graph.edges, l) == 1 for l in (1, 2, 3))
    with pytest.raises(ValueError):
        diagonal_determinant_divisor([2, 6], 3)


@given(st.lists(st.integers(1, 30), min_size=1, max_size=5))
def test_divisors_are_products_of_invariant_factors(ws):
    # d_l of a diagonal matrix equals the product of its first l invariant factors
    from nilgraph.exact_linalg import Matrix, smith_normal_form
    diag = smith_normal_form(Matrix.diag(ws)).diagonal
    for l in range(1, len(ws) + 1):
        assert diagonal_determinant_divisor(ws, l) == math.prod(diag[:l])


def test_weighted_group_examples():
    g = catalog.counterexample_graph()
    sigma = make_automorphism(g, catalog.COUNTEREXAMPLE_SIGMA)
    for n in (2, 3):
        sub = weighted_automorphism_group(catalog.counterexample(n))
        assert sigma.sigma not in {a.sigma for a in sub}
        assert len(sub) == 8
    assert len(weighted_automorphism_group(catalog.counterexample(1))) == len(automorphism_group(g)) == 16
    for n in (1, 2, 7):
        assert len(weighted_automorphism_group(catalog.heisenberg(n))) == 2


@settings(max_examples=80)
@given(weighted_graphs(max_vertices=6))
def test_weighted_group_is_a_subgroup_preserving_profiles(wg):
    full = automorphism_group(wg.graph)
    sub = weighted_automorphism_group(wg, full=full)
    perms = {a.sigma for a in sub}
    for a in full:
        assert (a.sigma in perms) == preserves_divisors(wg, a)
    if wg.is_unit:
        assert len(sub) == len(full)


def test_counterexample_weights():
    g = catalog.counterexample_graph()
    assert counterexample_weights(g, ("v7", "v8"), 4) == catalog.counterexample(4)
    p4 = catalog.path4()
    assert counterexample_weights(p4, ("v2", "v3"), 3).weights == (1, 3, 1)
    with pytest.raises(ValueError):
        counterexample_weights(catalog.k2_graph(), ("v1", "v2"), 2)
    with pytest.raises(ValueError):
        counterexample_weights(p4, ("v2", "v3"), 1)
    with pytest.raises(ValueError):
        counterexample_weights(p4, ("v1", "v3"), 2)


def test_singleton_edges():
    ce = catalog.counterexample_graph()
    assert {ce.edge_label(e) for e in singleton_edges(ce)} == {"{v7,v8}", "{v8,v9}"}
    assert singleton_edges(catalog.k2_graph()) == ()


def test_weights_must_be_positive_integers():
    with pytest.raises(ValueError):
        WeightedGraph(catalog.k2_graph(), (0,))
    with pytest.raises(ValueError):
        WeightedGraph(catalog.k2_graph(), (1, 1))
