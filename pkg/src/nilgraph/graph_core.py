"""Finite simple graphs, coherent components, quotient graphs and automorphisms.

The position of a vertex (edge) in ``Graph.vertices`` (``Graph.edges``) is the
total order ``<`` used everywhere else in the package: matrix rows, the sign of
brackets, inversions of automorphisms.  Use :func:`order_graph` to put a graph
into an admissible order before doing linear algebra on it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Edge = frozenset

DEFAULT_AUT_BOUND = 12


class EnumerationBoundExceeded(ValueError):
    """The graph is too large for exhaustive automorphism enumeration."""


def natural_key(label: str):
    """Sort key comparing digit runs numerically, so v2 < v10."""
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", label))


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(frozenset(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        known = set(self.vertices)
        seen = set()
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"self-loops are not allowed: {sorted(e)}")
            if not e <= known:
                raise ValueError(f"edge {sorted(e)} uses an unknown vertex")
            if e in seen:
                raise ValueError(f"multi-edge {sorted(e)}")
            seen.add(e)

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> "Graph":
        return cls(tuple(vertices), tuple(frozenset(e) for e in edges))

    @cached_property
    def pos(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_pos(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        nb: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, w = tuple(e)
            nb[u].add(w)
            nb[w].add(u)
        return {v: frozenset(s) for v, s in nb.items()}

    def adjacent(self, u: str, w: str) -> bool:
        return w in self.adjacency[u]

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def ends(self, e: Edge) -> tuple[str, str]:
        """Endpoints (v, w) of an edge with v < w."""
        u, w = sorted(e, key=self.pos.__getitem__)
        return u, w

    def edge_label(self, e: Edge) -> str:
        return "{%s,%s}" % self.ends(e)

    def reorder(self, vertex_order: Sequence[str], edge_order: Sequence[Edge] | None = None) -> "Graph":
        if sorted(vertex_order, key=natural_key) != sorted(self.vertices, key=natural_key):
            raise ValueError("vertex order is not a permutation of the vertices")
        edge_order = self.edges if edge_order is None else tuple(frozenset(e) for e in edge_order)
        if set(edge_order) != set(self.edges) or len(edge_order) != len(self.edges):
            raise ValueError("edge order is not a permutation of the edges")
        return Graph(tuple(vertex_order), tuple(edge_order))

    def induced(self, keep: Iterable[str]) -> "Graph":
        keep = set(keep)
        return Graph(tuple(v for v in self.vertices if v in keep),
                     tuple(e for e in self.edges if e <= keep))


def neighborhoods(g: Graph, v: str) -> tuple[frozenset[str], frozenset[str]]:
    """Open and closed neighbourhood of v."""
    if v not in g.pos:
        raise KeyError(f"unknown vertex {v!r}")
    open_nb = g.adjacency[v]
    return open_nb, open_nb | {v}


def vertex_precedes(g: Graph, v: str, w: str) -> bool:
    """v < w in the neighbourhood preorder: open(v) is inside closed(w)."""
    return g.adjacency[v] <= g.adjacency[w] | {w}


def edge_precedes(g: Graph, e: Edge, f: Edge) -> bool:
    v, w = tuple(e)
    a, b = tuple(f)
    p = vertex_precedes
    return (p(g, v, a) and p(g, w, b)) or (p(g, v, b) and p(g, w, a))


def _linearize(n: int, below: set[tuple[int, int]], key) -> list[int]:
    """Topological order of a partial order on range(n), smallest key first among ready items."""
    preds = {j: {i for (i, jj) in below if jj == j and i != j} for j in range(n)}
    placed: list[int] = []
    done: set[int] = set()
    while len(placed) < n:
        ready = [j for j in range(n) if j not in done and preds[j] <= done]
        if not ready:
            raise AssertionError("relation on classes has a cycle")
        nxt = min(ready, key=key)
        placed.append(nxt)
        done.add(nxt)
    return placed


@dataclass(frozen=True)
class CoherentPartition:
    """Coherent components with the induced partial order.

    ``order`` holds the pairs (i, j) with class i below class j, reflexive pairs
    included.
    """

    classes: tuple[tuple[str, ...], ...]
    order: frozenset[tuple[int, int]]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @cached_property
    def class_of(self) -> dict[str, int]:
        return {v: i for i, c in enumerate(self.classes) for v in c}

    def relations(self) -> list[tuple[int, int]]:
        """Strict relations i < j, sorted."""
        return sorted((i, j) for i, j in self.order if i != j)

    def singletons(self) -> tuple[str, ...]:
        return tuple(c[0] for c in self.classes if len(c) == 1)


def coherent_components(g: Graph) -> CoherentPartition:
    """Equivalence classes of the neighbourhood preorder, listed in an admissible order.

    Ties are broken by the position of the first member in ``g.vertices``.
    """
    reps: list[str] = []
    members: dict[str, list[str]] = {}
    for v in g.vertices:
        for r in reps:
            if vertex_precedes(g, v, r) and vertex_precedes(g, r, v):
                members[r].append(v)
                break
        else:
            reps.append(v)
            members[v] = [v]
    raw = [tuple(members[r]) for r in reps]
    below = {(i, j) for i, a in enumerate(raw) for j, b in enumerate(raw)
             if vertex_precedes(g, a[0], b[0])}
    for i, j in below:
        if i != j and (j, i) in below:
            raise AssertionError("class relation is not antisymmetric")
    order = _linearize(len(raw), below, key=lambda i: g.pos[raw[i][0]])
    relabel = {old: new for new, old in enumerate(order)}
    return CoherentPartition(tuple(raw[i] for i in order),
                             frozenset((relabel[i], relabel[j]) for i, j in below))


@dataclass(frozen=True)
class EdgeClassPartition:
    classes: tuple[tuple[Edge, ...], ...]
    order: frozenset[tuple[int, int]]

    @cached_property
    def class_of(self) -> dict[Edge, int]:
        return {e: i for i, c in enumerate(self.classes) for e in c}

    def relations(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i, j in self.order if i != j)


def edge_classes(g: Graph, p: CoherentPartition | None = None) -> EdgeClassPartition:
    """Edge classes E/~ in an admissible order, ties broken by position in ``g.edges``.

    An edge {v,w} lands in the class of all edges joining [v] and [w].
    """
    p = p or coherent_components(g)
    buckets: dict[frozenset[int], list[Edge]] = {}
    for e in g.edges:
        key = frozenset(p.class_of[v] for v in e)
        buckets.setdefault(key, []).append(e)
    raw = list(buckets.values())
    below = {(i, j) for i, a in enumerate(raw) for j, b in enumerate(raw)
             if edge_precedes(g, a[0], b[0])}
    for i, j in below:
        if i != j and (j, i) in below:
            raise AssertionError("edge class relation is not antisymmetric")
    order = _linearize(len(raw), below, key=lambda i: g.edge_pos[raw[i][0]])
    relabel = {old: new for new, old in enumerate(order)}
    return EdgeClassPartition(tuple(tuple(raw[i]) for i in order),
                              frozenset((relabel[i], relabel[j]) for i, j in below))


@dataclass(frozen=True)
class QuotientGraph:
    """Quotient graph on coherent components; qedges[i] corresponds to edge class i.

    Each quotient edge is a pair (a, b) of class indices with a <= b; a == b is a loop.
    """

    sizes: tuple[int, ...]
    qedges: tuple[tuple[int, int], ...]

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(a for a, b in self.qedges if a == b)


def quotient_graph(g: Graph, p: CoherentPartition | None = None,
                   m: EdgeClassPartition | None = None) -> QuotientGraph:
    p = p or coherent_components(g)
    m = m or edge_classes(g, p)
    qedges = []
    for cls in m.classes:
        a, b = sorted(p.class_of[v] for v in cls[0])
        qedges.append((a, b))
    if len(set(qedges)) != len(qedges):
        raise AssertionError("edge classes do not map injectively to quotient edges")
    return QuotientGraph(p.sizes, tuple(qedges))


def admissible_orders(g: Graph) -> tuple[tuple[str, ...], tuple[Edge, ...]]:
    """Total orders on V and E refining the class orders, classes kept contiguous."""
    p = coherent_components(g)
    vorder = tuple(v for c in p.classes for v in c)
    h = g.reorder(vorder, g.edges)
    m = edge_classes(h, coherent_components(h))
    eorder = tuple(e for c in m.classes for e in c)
    return vorder, eorder


def is_admissible_class_order(p: CoherentPartition | EdgeClassPartition, sequence: Sequence[int]) -> bool:
    """True when listing the classes in this sequence respects the partial order."""
    if sorted(sequence) != list(range(len(p.classes))):
        return False
    rank = {c: i for i, c in enumerate(sequence)}
    return all(rank[i] <= rank[j] for i, j in p.order)


def is_admissible(g: Graph) -> bool:
    """Whether the graph's own vertex and edge orders are admissible."""
    p = coherent_components(g)
    vpos = [[g.pos[v] for v in c] for c in p.classes]
    flat = [i for c in vpos for i in sorted(c)]
    if flat != list(range(len(g.vertices))):
        return False
    m = edge_classes(g, p)
    epos = [sorted(g.edge_pos[e] for e in c) for c in m.classes]
    if [i for c in epos for i in c] != list(range(len(g.edges))):
        return False
    # the linearisation is computed from positions, so contiguity in position
    # order is already the admissibility check; re-verify against the relation
    vseq = sorted(range(len(p.classes)), key=lambda i: vpos[i][0])
    eseq = sorted(range(len(m.classes)), key=lambda i: epos[i][0])
    return is_admissible_class_order(p, vseq) and is_admissible_class_order(m, eseq)


def order_graph(g: Graph, seed: str = "lexicographic") -> Graph:
    """Return g with its vertex and edge lists put into a canonical admissible order.

    ``seed`` picks the tie-break: "lexicographic" sorts labels naturally first,
    "input" keeps the given list order.
    """
    if seed == "lexicographic":
        g = g.reorder(sorted(g.vertices, key=natural_key), g.edges)
        vorder, _ = admissible_orders(g)
        g = g.reorder(vorder, g.edges)
        g = g.reorder(vorder, sorted(g.edges, key=lambda e: tuple(g.pos[v] for v in g.ends(e))))
    elif seed != "input":
        raise ValueError(f"unknown order seed {seed!r}")
    vorder, eorder = admissible_orders(g)
    return g.reorder(vorder, eorder)


@dataclass(frozen=True)
class GraphAutomorphism:
    """A vertex permutation with its induced edge data.

    All maps are on positions: ``sigma[i]`` is the position of the image of
    vertex i; ``sigma_e`` likewise on edges; ``p_sigma`` on coherent classes.
    """

    sigma: tuple[int, ...]
    sigma_e: tuple[int, ...]
    epsilon: tuple[int, ...]
    p_sigma: tuple[int, ...]

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.sigma))

    def cycles(self, labels: Sequence[str]) -> str:
        return cycle_string(self.sigma, labels)


def cycle_string(perm: Sequence[int], labels: Sequence[str]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + " ".join(labels[i] for i in cyc) + ")")
    return "".join(parts) or "()"


def _as_position_perm(g: Graph, sigma) -> tuple[int, ...]:
    if isinstance(sigma, Mapping):
        perm = tuple(g.pos[sigma.get(v, v)] for v in g.vertices)
    else:
        perm = tuple(sigma)
    if sorted(perm) != list(range(len(g.vertices))):
        raise ValueError("not a permutation of the vertices")
    return perm


def induced_edge_data(g: Graph, sigma, p: CoherentPartition | None = None
                      ) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """(sigma_E, epsilon_sigma, p(sigma)) for a graph automorphism sigma.

    sigma is a position tuple or a label mapping; inversions are taken with
    respect to the graph's vertex order.
    """
    perm = _as_position_perm(g, sigma)
    p = p or coherent_components(g)
    vs = g.vertices
    sigma_e = []
    eps = []
    for e in g.edges:
        v, w = g.ends(e)
        a, b = perm[g.pos[v]], perm[g.pos[w]]
        img = frozenset((vs[a], vs[b]))
        if img not in g.edge_pos:
            raise ValueError(f"{cycle_string(perm, vs)} is not a graph automorphism")
        sigma_e.append(g.edge_pos[img])
        eps.append(-1 if a > b else 1)
    if len(set(sigma_e)) != len(sigma_e) or len(g.edges) != len(set(frozenset((perm[g.pos[u]] for u in e)) for e in g.edges)):
        raise ValueError("not a graph automorphism")
    p_sigma = []
    for c in p.classes:
        imgs = {p.class_of[vs[perm[g.pos[v]]]] for v in c}
        if len(imgs) != 1:
            raise AssertionError("automorphism does not respect coherent components")
        p_sigma.append(imgs.pop())
    return tuple(sigma_e), tuple(eps), tuple(p_sigma)


def make_automorphism(g: Graph, sigma, p: CoherentPartition | None = None) -> GraphAutomorphism:
    perm = _as_position_perm(g, sigma)
    se, eps, ps = induced_edge_data(g, perm, p)
    return GraphAutomorphism(perm, se, eps, ps)


def automorphism_permutations(g: Graph, bound: int = DEFAULT_AUT_BOUND) -> list[tuple[int, ...]]:
    """All edge-preserving vertex permutations, in lexicographic order of image tuples."""
    n = len(g.vertices)
    if n > bound:
        raise EnumerationBoundExceeded(f"{n} vertices exceed the enumeration bound {bound}")
    vs = g.vertices
    adj = [[g.adjacent(vs[i], vs[j]) for j in range(n)] for i in range(n)]
    deg = [sum(r) for r in adj]
    # neighbour-degree multiset as a cheap invariant for pruning
    sig = [(deg[i], tuple(sorted(deg[j] for j in range(n) if adj[i][j]))) for i in range(n)]
    out: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> None:
        if i == n:
            out.append(tuple(image))
            return
        for j in range(n):
            if used[j] or sig[j] != sig[i]:
                continue
            if any(adj[i][k] != adj[j][image[k]] for k in range(i)):
                continue
            image[i] = j
            used[j] = True
            extend(i + 1)
            used[j] = False
        image[i] = -1

    extend(0)
    return out


def automorphism_group(g: Graph, bound: int = DEFAULT_AUT_BOUND) -> list[GraphAutomorphism]:
    p = coherent_components(g)
    return [make_automorphism(g, perm, p) for perm in automorphism_permutations(g, bound)]


def quotient_automorphisms(q: QuotientGraph) -> list[tuple[int, ...]]:
    """Brute-force automorphisms of the quotient graph (edge- and size-preserving)."""
    r = len(q.sizes)
    edges = set(q.qedges)
    out = []
    for perm in itertools.permutations(range(r)):
        if any(q.sizes[perm[i]] != q.sizes[i] for i in range(r)):
            continue
        if {tuple(sorted((perm[a], perm[b]))) for a, b in edges} == edges:
            out.append(perm)
    return out


def isolated_vertices(g: Graph) -> tuple[tuple[str, ...], Graph]:
    iso = tuple(v for v in g.vertices if not g.adjacency[v])
    return iso, g.induced(v for v in g.vertices if g.adjacency[v])


def _dot_id(label: str) -> str:
    return '"' + label.replace('"', r"\"") + '"'


def graph_to_dot(g: Graph, weights: Sequence[int] | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f"  {_dot_id(v)};")
    for i, e in enumerate(g.edges):
        v, w = g.ends(e)
        attr = f' [label="{weights[i]}"]' if weights is not None else ""
        lines.append(f"  {_dot_id(v)} -- {_dot_id(w)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quotient_to_dot(p: CoherentPartition, q: QuotientGraph, name: str = "Quotient") -> str:
    lines = [f"graph {name} {{"]
    for i, c in enumerate(p.classes):
        members = ",".join(c)
        lines.append(f'  l{i + 1} [label="lambda{i + 1} |{len(c)}| {{{members}}}"];')
    for a, b in q.qedges:
        lines.append(f"  l{a + 1} -- l{b + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
