"""Edge weights, class-level determinant divisors and the weight-compatible automorphism group."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations
from math import gcd, prod
from typing import Any, Iterable, Sequence

from .graph_core import (
    DEFAULT_AUT_BOUND,
    CoherentPartition,
    Edge,
    EdgeClassPartition,
    Graph,
    GraphAutomorphism,
    automorphism_group,
    coherent_components,
    edge_classes,
    order_graph,
)


class GraphFormatError(ValueError):
    """Malformed graph JSON."""


@dataclass(frozen=True)
class WeightedGraph:
    """A graph with a positive integer weight on each edge, aligned with ``graph.edges``."""

    graph: Graph
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != len(self.graph.edges):
            raise ValueError("one weight per edge is required")
        for x in w:
            if isinstance(x, bool) or not isinstance(x, int) or x < 1:
                raise ValueError(f"edge weights must be positive integers, got {x!r}")

    @classmethod
    def unweighted(cls, g: Graph) -> "WeightedGraph":
        return cls(g, (1,) * len(g.edges))

    @classmethod
    def from_mapping(cls, g: Graph, k: dict) -> "WeightedGraph":
        """Weights from a dict keyed by edge (frozenset or pair); missing edges get 1."""
        norm = {frozenset(e): w for e, w in k.items()}
        return cls(g, tuple(norm.get(e, 1) for e in g.edges))

    def k(self, e: Edge) -> int:
        return self.weights[self.graph.edge_pos[frozenset(e)]]

    @property
    def is_unit(self) -> bool:
        return all(w == 1 for w in self.weights)

    def reorder(self, h: Graph) -> "WeightedGraph":
        """Carry the weights over to a reordered copy of the same graph."""
        return WeightedGraph(h, tuple(self.k(e) for e in h.edges))

    def ordered(self, seed: str = "lexicographic") -> "WeightedGraph":
        return self.reorder(order_graph(self.graph, seed))

    @cached_property
    def partitions(self) -> tuple[CoherentPartition, EdgeClassPartition]:
        p = coherent_components(self.graph)
        return p, edge_classes(self.graph, p)

    def to_json_obj(self) -> dict[str, Any]:
        g = self.graph
        return {
            "vertices": list(g.vertices),
            "edges": [[*g.ends(e), w] for e, w in zip(g.edges, self.weights)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


def parse_graph(obj: Any) -> WeightedGraph:
    """Build a weighted graph from the JSON schema {"vertices": [...], "edges": [[a, b, w?], ...]}."""
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise GraphFormatError("graph JSON must be an object")
    extra = set(obj) - {"vertices", "edges"}
    if extra:
        raise GraphFormatError(f"unexpected keys {sorted(extra)}")
    verts = obj.get("vertices")
    edges = obj.get("edges", [])
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise GraphFormatError('"vertices" must be a list of strings')
    if not isinstance(edges, list):
        raise GraphFormatError('"edges" must be a list')
    pairs, weights = [], []
    for item in edges:
        if not isinstance(item, list) or len(item) not in (2, 3):
            raise GraphFormatError(f"edge entry {item!r} must be [a, b] or [a, b, weight]")
        a, b = item[0], item[1]
        w = item[2] if len(item) == 3 else 1
        if not isinstance(a, str) or not isinstance(b, str):
            raise GraphFormatError(f"edge endpoints must be strings: {item!r}")
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise GraphFormatError(f"edge weight must be a positive integer: {item!r}")
        pairs.append((a, b))
        weights.append(w)
    try:
        g = Graph.from_edges(verts, pairs)
        return WeightedGraph(g, tuple(weights))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def canonical_json(wg: WeightedGraph) -> str:
    """JSON text of the graph after putting it into lexicographic admissible order."""
    return wg.ordered("lexicographic").to_json()


def diagonal_determinant_divisor(ws: Sequence[int], l: int) -> int:
    """gcd of all l-fold products of the entries of ws."""
    if not 1 <= l <= len(ws):
        raise ValueError(f"index {l} out of range 1..{len(ws)}")
    return reduce(gcd, (prod(c) for c in combinations(ws, l)), 0)


def class_determinant_divisors(wg: WeightedGraph, mu: Iterable[Edge], l: int) -> int:
    return diagonal_determinant_divisor([wg.k(e) for e in mu], l)


def divisor_profile(ws: Sequence[int]) -> tuple[int, ...]:
    return tuple(diagonal_determinant_divisor(ws, l) for l in range(1, len(ws) + 1))


def class_profiles(wg: WeightedGraph) -> tuple[tuple[int, ...], ...]:
    _, m = wg.partitions
    return tuple(divisor_profile([wg.k(e) for e in c]) for c in m.classes)


def preserves_divisors(wg: WeightedGraph, a: GraphAutomorphism) -> bool:
    """d_l(mu) = d_l(sigma_E(mu)) for every edge class mu and every l."""
    _, m = wg.partitions
    g = wg.graph
    profiles = class_profiles(wg)
    for i, c in enumerate(m.classes):
        image = g.edges[a.sigma_e[g.edge_pos[c[0]]]]
        if profiles[i] != profiles[m.class_of[image]]:
            return False
    return True


def weighted_automorphism_group(wg: WeightedGraph, bound: int = DEFAULT_AUT_BOUND,
                                full: list[GraphAutomorphism] | None = None) -> list[GraphAutomorphism]:
    """The subgroup of Aut(graph) preserving every class-level determinant divisor."""
    full = automorphism_group(wg.graph, bound) if full is None else full
    sub = [a for a in full if preserves_divisors(wg, a)]
    _assert_subgroup(sub)
    return sub


def _compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    return tuple(s[t[i]] for i in range(len(t)))


def _assert_subgroup(auts: list[GraphAutomorphism]) -> None:
    perms = {a.sigma for a in auts}
    if not perms:
        raise AssertionError("automorphism subgroup is empty")
    n = len(next(iter(perms)))
    if tuple(range(n)) not in perms:
        raise AssertionError("identity missing from automorphism subgroup")
    for s in perms:
        inv = [0] * n
        for i, j in enumerate(s):
            inv[j] = i
        if tuple(inv) not in perms:
            raise AssertionError("automorphism subgroup is not closed under inverse")
        for t in perms:
            if _compose(s, t) not in perms:
                raise AssertionError("automorphism subgroup is not closed under composition")


def counterexample_weights(g: Graph, e0: Sequence[str] | Edge, m: int) -> WeightedGraph:
    """Weight m on e0 and 1 elsewhere; e0 must join two singleton coherent components."""
    e0 = frozenset(e0)
    if e0 not in g.edge_pos:
        raise ValueError(f"{sorted(e0)} is not an edge")
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise ValueError("the weight m must be an integer >= 2")
    p = coherent_components(g)
    if any(len(p.classes[p.class_of[v]]) != 1 for v in e0):
        raise ValueError(f"edge {g.edge_label(e0)} has an endpoint in a non-singleton coherent component")
    return WeightedGraph(g, tuple(m if e == e0 else 1 for e in g.edges))


def singleton_edges(g: Graph, p: CoherentPartition | None = None) -> tuple[Edge, ...]:
    """E_0: edges whose endpoints both lie in singleton coherent components."""
    p = p or coherent_components(g)
    single = set(p.singletons())
    return tuple(e for e in g.edges if e <= single)
