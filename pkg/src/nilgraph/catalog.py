"""Built-in example graphs and matrices, labelled v1, v2, ... as in the worked examples."""

from __future__ import annotations

from .exact_linalg import Matrix, Poly
from .graph_core import Graph
from .lie_ring import quad_map
from .nilpotent_group import GroupElement, TwoStepPresentation
from .weighted_graph import WeightedGraph


def _v(n: int) -> list[str]:
    return [f"v{i}" for i in range(1, n + 1)]


def figure1_graph() -> Graph:
    """Six vertices with components {v1,v2}, {v3,v4}, {v5}, {v6}; edges listed as e1..e6."""
    return Graph.from_edges(_v(6), [
        ("v1", "v5"), ("v2", "v5"), ("v3", "v6"), ("v4", "v6"), ("v1", "v2"), ("v5", "v6"),
    ])


def k2_graph() -> Graph:
    return Graph.from_edges(["v1", "v2"], [("v1", "v2")])


def heisenberg(n: int = 1) -> WeightedGraph:
    """K2 with weight n; its group is H_n."""
    return WeightedGraph(k2_graph(), (n,))


def path4() -> Graph:
    return Graph.from_edges(_v(4), [("v1", "v2"), ("v2", "v3"), ("v3", "v4")])


def star(leaves: int = 3) -> Graph:
    return Graph.from_edges(["c"] + [f"l{i}" for i in range(1, leaves + 1)],
                            [("c", f"l{i}") for i in range(1, leaves + 1)])


def edgeless(n: int) -> Graph:
    return Graph.from_edges(_v(n), [])


def two_edges_and_point() -> Graph:
    """Two disjoint edges plus an isolated vertex; its group is Z x H_1 x H_1."""
    return Graph.from_edges(_v(5), [("v1", "v2"), ("v3", "v4")])


def counterexample_graph() -> Graph:
    """Nine vertices, edges e1..e8 in their admissible order."""
    return Graph.from_edges(_v(9), [
        ("v1", "v7"), ("v2", "v7"), ("v3", "v8"), ("v4", "v8"),
        ("v5", "v9"), ("v6", "v9"), ("v7", "v8"), ("v8", "v9"),
    ])


def counterexample(n: int = 1) -> WeightedGraph:
    """Weight n on e7 = {v7, v8} and 1 elsewhere."""
    g = counterexample_graph()
    return WeightedGraph(g, tuple(n if i == 6 else 1 for i in range(len(g.edges))))


COUNTEREXAMPLE_SIGMA = {"v1": "v5", "v5": "v1", "v2": "v6", "v6": "v2", "v7": "v9", "v9": "v7"}

_A = [[2, 1], [1, 1]]


def _blocks(layout: list[list], sizes: list[int]) -> Matrix:
    """Assemble a matrix from a grid of blocks; 0 means a zero block, 1 an identity, -1 minus identity."""
    n = sum(sizes)
    rows = [[0] * n for _ in range(n)]
    offs = [sum(sizes[:i]) for i in range(len(sizes))]
    for bi, brow in enumerate(layout):
        for bj, blk in enumerate(brow):
            if isinstance(blk, int):
                if blk == 0:
                    continue
                blk = [[blk if i == j else 0 for j in range(sizes[bj])] for i in range(sizes[bi])]
            for i, r in enumerate(blk):
                for j, x in enumerate(r):
                    rows[offs[bi] + i][offs[bj] + j] = x
    return Matrix(rows, n)


def counterexample_B() -> Matrix:
    """The 9x9 matrix B = P(sigma) diag(I, A, A, 1, -1, -1) with A = [[2,1],[1,1]]."""
    return _blocks([
        [0, 0, _A, 0, 0, 0],
        [0, _A, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, -1],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 0, 1, 0, 0],
    ], [2, 2, 2, 1, 1, 1])


def counterexample_C() -> Matrix:
    """The 8x8 matrix of the induced map on gamma_2 in the edge basis."""
    neg_a = [[-x for x in r] for r in _A]
    return _blocks([
        [0, 0, neg_a, 0, 0],
        [0, neg_a, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [0, 0, 0, 0, -1],
        [0, 0, 0, 1, 0],
    ], [2, 2, 2, 1, 1])


def _p(*highest_first: int) -> Poly:
    return Poly.from_highest(highest_first)


def counterexample_B_charpoly_factors() -> list[Poly]:
    return [_p(1, -3, 1), _p(1, 0, -3, 0, 1), _p(1, 1), _p(1, 0, 1)]


def counterexample_C_charpoly_factors() -> list[Poly]:
    return [_p(1, 3, 1), _p(1, 0, 3, 0, 1), _p(1, 0, 1)]


def remark_H_automorphism(p: TwoStepPresentation) -> tuple[list[GroupElement], list[GroupElement]]:
    """Images x1 -> x1^-1 x2, x2 -> x1^2 x2^-1, x3 -> x3^-1 x4, x4 -> x3^2 x4^-1,
    y1 -> y1^3 y2^-2, y2 -> y1^-4 y2^3, y3 -> y3^-1, as group elements."""
    xs = [
        p.word([("x", 0, -1), ("x", 1, 1)]),
        p.word([("x", 0, 2), ("x", 1, -1)]),
        p.word([("x", 2, -1), ("x", 3, 1)]),
        p.word([("x", 2, 2), ("x", 3, -1)]),
    ]
    ys = [
        p.word([("y", 0, 3), ("y", 1, -2)]),
        p.word([("y", 0, -4), ("y", 1, 3)]),
        p.word([("y", 2, -1)]),
    ]
    return xs, ys


def remark_H_deg1() -> Matrix:
    return Matrix([[-1, 2, 0, 0], [1, -1, 0, 0], [0, 0, -1, 2], [0, 0, 1, -1]])


def remark_H_deg2() -> Matrix:
    return Matrix([[3, -4, 0], [-2, 3, 0], [0, 0, -1]])


def remark_quad_map(d: int = 2) -> Matrix:
    """x1 -> v1+v4, x2 -> sqrt(d)(v1-v4), x3 -> v2+v3, x4 -> sqrt(d)(v2-v3); columns are images."""
    return quad_map([
        [(1, 0), (0, 0), (0, 0), (1, 0)],
        [(0, 1), (0, 0), (0, 0), (0, -1)],
        [(0, 0), (1, 0), (1, 0), (0, 0)],
        [(0, 0), (0, 1), (0, -1), (0, 0)],
    ], d)


GRAPHS = {
    "figure1": lambda: WeightedGraph.unweighted(figure1_graph()),
    "heisenberg": lambda: heisenberg(1),
    "k2": lambda: heisenberg(1),
    "path4": lambda: WeightedGraph.unweighted(path4()),
    "counterexample": lambda: counterexample(1),
    "star3": lambda: WeightedGraph.unweighted(star(3)),
    "two-edges-point": lambda: WeightedGraph.unweighted(two_edges_and_point()),
}
