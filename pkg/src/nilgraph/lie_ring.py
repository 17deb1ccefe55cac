"""Class-2 graded Lie rings and the degree-2 action of degree-1 maps.

Degree-1 coordinates follow the vertex (or x-generator) order.  Degree-2
coordinates follow the edge (or y-generator) order in one of three charts:

* ``"Ek"``: basis e^{k(e)} of gamma_2, so [v, w] = e-hat for an edge e = {v, w}, v < w;
* ``"E"``: basis e of the isolator of gamma_2, so [v, w] = k(e) e-hat;
* ``"generic"``: the y-basis of an abstract presentation.

Matrices act on column vectors; column j holds the image of basis vector j.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .exact_linalg import Matrix, QuadScalar, as_matrix, det, inverse, is_squarefree, rref
from .graph_core import (
    DEFAULT_AUT_BOUND,
    CoherentPartition,
    Graph,
    GraphAutomorphism,
    automorphism_group,
    coherent_components,
    cycle_string,
)
from .nilpotent_group import TwoStepPresentation
from .weighted_graph import WeightedGraph, weighted_automorphism_group

CHARTS = ("E", "Ek", "generic")


@dataclass(frozen=True)
class GradedLie2:
    deg1_names: tuple[str, ...]
    deg2_names: tuple[str, ...]
    chart: str
    table: Mapping[tuple[int, int], tuple[int, ...]]
    graph: WeightedGraph | None = None

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise ValueError(f"unknown chart {self.chart!r}")
        n, m = len(self.deg1_names), len(self.deg2_names)
        clean = {}
        for (i, j), vec in dict(self.table).items():
            if not 0 <= i < j < n or len(vec) != m:
                raise ValueError(f"bad bracket table entry at ({i}, {j})")
            if any(vec):
                clean[(i, j)] = tuple(vec)
        object.__setattr__(self, "table", clean)

    @property
    def dim1(self) -> int:
        return len(self.deg1_names)

    @property
    def dim2(self) -> int:
        return len(self.deg2_names)

    @classmethod
    def from_presentation(cls, p: TwoStepPresentation) -> "GradedLie2":
        return cls(p.x_names, p.y_names, "generic", p.constants)

    @classmethod
    def from_graph(cls, wg: WeightedGraph | Graph, chart: str = "Ek") -> "GradedLie2":
        if isinstance(wg, Graph):
            wg = WeightedGraph.unweighted(wg)
        if chart not in ("E", "Ek"):
            raise ValueError("graph Lie rings use the E or Ek chart")
        g = wg.graph
        m = len(g.edges)
        table = {}
        for l, e in enumerate(g.edges):
            v, w = g.ends(e)
            vec = [0] * m
            vec[l] = wg.weights[l] if chart == "E" else 1
            table[(g.pos[v], g.pos[w])] = tuple(vec)
        names = tuple("{%s,%s}" % g.ends(e) for e in g.edges)
        return cls(g.vertices, names, chart, table, wg)

    def bracket_basis(self, i: int, j: int) -> tuple[int, ...]:
        if i < j:
            return self.table.get((i, j), (0,) * self.dim2)
        if i > j:
            return tuple(-x for x in self.table.get((j, i), (0,) * self.dim2))
        return (0,) * self.dim2

    def structure_matrix(self) -> Matrix:
        """Columns are the brackets of basis pairs i < j in lexicographic order."""
        cols = [self.bracket_basis(i, j) for i, j in combinations(range(self.dim1), 2)]
        return Matrix([[c[l] for c in cols] for l in range(self.dim2)], len(cols))


def bracket_deg1(L: GradedLie2, u: Sequence, w: Sequence) -> tuple:
    """[u, w] for degree-1 vectors, expanded bilinearly from the bracket table."""
    if len(u) != L.dim1 or len(w) != L.dim1:
        raise ValueError(f"degree-1 vectors must have length {L.dim1}")
    out = [0] * L.dim2
    for (i, j), vec in L.table.items():
        f = u[i] * w[j] - u[j] * w[i]
        if f:
            for l, c in enumerate(vec):
                if c:
                    out[l] = out[l] + f * c
    return tuple(Matrix([out]).rows[0]) if out else ()


def _minor(rows: Sequence[Sequence], r1: int, r2: int, c1: int, c2: int):
    a, b = rows[r1], rows[r2]
    return a[c1] * b[c2] - a[c2] * b[c1]


def _graph_minor_matrix(L: GradedLie2, b: Matrix) -> Matrix:
    """C[e', e] = 2x2 minor of B on rows (v', w') and columns (v, w), both ordered."""
    g = L.graph.graph
    ends = [(g.pos[v], g.pos[w]) for v, w in map(g.ends, g.edges)]
    rows = b.rows
    return Matrix([[_minor(rows, r1, r2, c1, c2) for (c1, c2) in ends] for (r1, r2) in ends], len(ends))


def weight_diagonal(wg: WeightedGraph) -> Matrix:
    return Matrix.diag(list(wg.weights))


def chart_conjugate(wg: WeightedGraph, c: Matrix) -> Matrix:
    """D(k) C D(k)^-1, exact over QQ."""
    ks = wg.weights
    return Matrix([[Fraction(ks[i]) * c[i, j] / ks[j] for j in range(c.ncols)] for i in range(c.nrows)], c.ncols)


@dataclass(frozen=True)
class Deg2Solution:
    matrix: Matrix
    consistent: bool
    witness: tuple[int, int] | None


def solve_deg2_map(src: GradedLie2, dst: GradedLie2, b: Matrix) -> Deg2Solution:
    """The degree-2 map F with F([x_i, x_j]) = [B x_i, B x_j], when it exists.

    F is fixed by a set of basis brackets spanning degree 2 of src; the other
    brackets are then checked.  Raises ValueError when src's degree 2 is not
    spanned by brackets.
    """
    b = as_matrix(b)
    if b.shape != (dst.dim1, src.dim1):
        raise ValueError(f"map has shape {b.shape}, expected {(dst.dim1, src.dim1)}")
    pairs = list(combinations(range(src.dim1), 2))
    s = src.structure_matrix()
    if src.dim2 == 0:
        targets = [bracket_deg1(dst, b.col(i), b.col(j)) for i, j in pairs]
        bad = next((pr for pr, t in zip(pairs, targets) if any(t)), None)
        return Deg2Solution(Matrix([], 0) if dst.dim2 == 0 else Matrix([[]] * dst.dim2, 0), bad is None, bad)
    _, piv = rref(s)
    if len(piv) != src.dim2:
        raise ValueError("degree 2 is not spanned by brackets of degree-1 elements")
    images = {pr: bracket_deg1(dst, b.col(pr[0]), b.col(pr[1])) for pr in pairs}
    t_piv = Matrix([[images[pairs[c]][l] for c in piv] for l in range(dst.dim2)], len(piv))
    f = t_piv @ inverse(s.submatrix(range(src.dim2), piv))
    for k, pr in enumerate(pairs):
        if f.apply(s.col(k)) != tuple(Matrix([images[pr]]).rows[0]):
            return Deg2Solution(f, False, pr)
    return Deg2Solution(f, True, None)


def induced_deg2_matrix(L: GradedLie2, b, chart: str | None = None) -> Matrix:
    """Matrix of the degree-2 map induced by the degree-1 matrix B.

    Graph Lie rings use 2x2 minors of B directly (Ek chart) and conjugate by
    D(k) for the E chart.  Generic rings solve for the map from the bracket
    table.  Non-edge brackets are not checked here; see
    :func:`check_graded_endomorphism`.
    """
    b = as_matrix(b)
    if b.shape != (L.dim1, L.dim1):
        raise ValueError(f"expected a {L.dim1}x{L.dim1} matrix, got {b.shape}")
    chart = chart or L.chart
    if L.graph is None:
        if chart != "generic":
            raise ValueError("abstract Lie rings only have the generic chart")
        return solve_deg2_map(L, L, b).matrix
    c = _graph_minor_matrix(L, b)
    if chart == "Ek":
        return c
    if chart == "E":
        return chart_conjugate(L.graph, c)
    raise ValueError(f"graph Lie rings have charts E and Ek, not {chart!r}")


@dataclass(frozen=True)
class GradedCheck:
    ok: bool
    C: Matrix | None
    reason: str | None = None
    witness: tuple | None = None


def _unimodular(m: Matrix) -> bool:
    return m.is_integral() and det(m) in (1, -1)


def check_graded_endomorphism(L: GradedLie2, b) -> GradedCheck:
    """Does B induce an automorphism of the integral Lie ring (hence of the group)?

    For graphs every non-edge {v, w} must have [Bv, Bw] = 0, i.e. every edge-row
    minor on columns (v, w) vanishes; then C must lie in GL(ZZ).
    """
    b = as_matrix(b)
    if b.shape != (L.dim1, L.dim1):
        raise ValueError(f"expected a {L.dim1}x{L.dim1} matrix, got {b.shape}")
    if not _unimodular(b):
        return GradedCheck(False, None, "degree-1 matrix is not unimodular")
    if L.graph is None:
        sol = solve_deg2_map(L, L, b)
        if not sol.consistent:
            i, j = sol.witness
            return GradedCheck(False, sol.matrix, "bracket relation violated",
                               (L.deg1_names[i], L.deg1_names[j]))
        c = sol.matrix
    else:
        g = L.graph.graph
        ends = [(g.pos[v], g.pos[w]) for v, w in map(g.ends, g.edges)]
        for i, j in combinations(range(L.dim1), 2):
            if g.adjacent(g.vertices[i], g.vertices[j]):
                continue
            for l, (r1, r2) in enumerate(ends):
                if _minor(b.rows, r1, r2, i, j):
                    return GradedCheck(False, None, "non-edge bracket does not vanish",
                                       (g.vertices[i], g.vertices[j], L.deg2_names[l]))
        c = induced_deg2_matrix(L, b, "Ek")
    if c.nrows and not _unimodular(c):
        return GradedCheck(False, c, "degree-2 matrix is not in GL(Z)")
    return GradedCheck(True, c)


@dataclass(frozen=True)
class IntegralityCheck:
    ok: bool
    conjugate: Matrix
    witness: tuple[int, int] | None = None


def weighted_integrality(wg: WeightedGraph, c) -> IntegralityCheck:
    """Whether D(k) C D(k)^-1 is integral; C is in the Ek chart."""
    c = as_matrix(c)
    m = len(wg.weights)
    if c.shape != (m, m):
        raise ValueError(f"expected a {m}x{m} matrix, got {c.shape}")
    conj = chart_conjugate(wg, c)
    for i in range(m):
        for j in range(m):
            x = conj[i, j]
            if isinstance(x, Fraction):
                return IntegralityCheck(False, conj, (i, j))
    return IntegralityCheck(True, conj)


@dataclass(frozen=True)
class Membership:
    member: bool
    p_sigma: tuple[int, ...] | None
    sigmas: tuple[tuple[int, ...], ...] = ()

    def sigma_strings(self, labels: Sequence[str]) -> list[str]:
        return [cycle_string(s, labels) for s in self.sigmas]


def block_shape_ok(g: Graph, p: CoherentPartition, n_mat: Matrix) -> bool:
    """Nonzero entries only at (u, v) with [u] below [v]; invertible diagonal class blocks."""
    cls = [p.class_of[v] for v in g.vertices]
    for u in range(n_mat.nrows):
        for v in range(n_mat.ncols):
            if n_mat[u, v] != 0 and (cls[u], cls[v]) not in p.order:
                return False
    for c in p.classes:
        idx = [g.pos[v] for v in c]
        if det(n_mat.submatrix(idx, idx)) == 0:
            return False
    return True


def g_gamma_membership(g: Graph | WeightedGraph, m, bound: int = DEFAULT_AUT_BOUND,
                       auts: list[GraphAutomorphism] | None = None) -> Membership:
    """Is M = P(sigma) N with sigma a (weighted) graph automorphism and N block upper triangular?

    With a WeightedGraph sigma ranges over the weight-compatible subgroup.
    Every admissible sigma must induce the same permutation of coherent
    components; that permutation is returned.
    """
    if isinstance(g, WeightedGraph):
        wg, graph = g, g.graph
        auts = auts if auts is not None else weighted_automorphism_group(wg, bound)
    else:
        graph = g
        auts = auts if auts is not None else automorphism_group(graph, bound)
    m = as_matrix(m)
    n = len(graph.vertices)
    if m.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {m.shape}")
    p = coherent_components(graph)
    hits = []
    for a in auts:
        # P(sigma)^-1 M: row u of the product is row sigma(u) of M
        n_mat = Matrix([m.row(a.sigma[u]) for u in range(n)], n)
        if block_shape_ok(graph, p, n_mat):
            hits.append(a)
    if not hits:
        return Membership(False, None)
    induced = {a.p_sigma for a in hits}
    if len(induced) != 1:
        raise AssertionError("admissible permutations induce different permutations of coherent components")
    return Membership(True, induced.pop(), tuple(a.sigma for a in hits))


def quad_map(columns: Sequence[Sequence[tuple[int, int]]], d: int) -> Matrix:
    """Matrix over QQ(sqrt d) from columns of (rational part, sqrt-d part) integer pairs."""
    if not is_squarefree(d):
        raise ValueError(f"d={d} is not square-free")
    rows = len(columns[0])
    return Matrix([[QuadScalar(col[r][0], col[r][1], d) for col in columns] for r in range(rows)], len(columns))


def quad_ext_iso_check(src: GradedLie2, dst: GradedLie2, f) -> bool:
    """Does the degree-1 map f extend to a graded Lie algebra isomorphism src -> dst over its field?"""
    f = as_matrix(f)
    if src.dim1 != dst.dim1:
        raise ValueError("degree-1 dimensions differ")
    if f.shape != (dst.dim1, src.dim1):
        raise ValueError(f"map has shape {f.shape}, expected {(dst.dim1, src.dim1)}")
    d = f.quad_d()
    if d is not None and not is_squarefree(d):
        raise ValueError(f"d={d} is not square-free")
    if det(f) == 0:
        return False
    if src.dim2 != dst.dim2:
        return False
    sol = solve_deg2_map(src, dst, f)
    if not sol.consistent:
        return False
    return src.dim2 == 0 or det(sol.matrix) != 0


def random_unimodular(rng: random.Random, n: int, steps: int = 6, bound: int = 2) -> Matrix:
    """Random element of GL_n(ZZ) as a product of signed permutations and elementary moves."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n >= 2:
            i, j = rng.sample(range(n), 2)
            q = rng.randint(-bound, bound)
            rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
        if rng.random() < 0.3:
            k = rng.randrange(n)
            rows[k] = [-a for a in rows[k]]
        if n >= 2 and rng.random() < 0.3:
            i, j = rng.sample(range(n), 2)
            rows[i], rows[j] = rows[j], rows[i]
    return Matrix(rows, n)


def random_graded_automorphism(g: Graph, rng: random.Random, auts: list[GraphAutomorphism] | None = None,
                               unipotent_steps: int = 3, bound: int = 2) -> Matrix:
    """Random P(sigma) * blockdiag(GL(ZZ) per class) * transvections I + t E_uv with u below v."""
    auts = auts if auts is not None else automorphism_group(g)
    p = coherent_components(g)
    n = len(g.vertices)
    sigma = rng.choice(auts)
    block = [[0] * n for _ in range(n)]
    for c in p.classes:
        idx = [g.pos[v] for v in c]
        u = random_unimodular(rng, len(idx))
        for a, i in enumerate(idx):
            for b_, j in enumerate(idx):
                block[i][j] = u[a, b_]
    m = Matrix(block, n)
    cls = [p.class_of[v] for v in g.vertices]
    allowed = [(u, v) for u in range(n) for v in range(n)
               if u != v and cls[u] != cls[v] and (cls[u], cls[v]) in p.order]
    for _ in range(unipotent_steps):
        if not allowed:
            break
        u, v = rng.choice(allowed)
        t = rng.randint(-bound, bound)
        e = [[int(i == j) + (t if (i, j) == (u, v) else 0) for j in range(n)] for i in range(n)]
        m = m @ Matrix(e, n)
    return Matrix.permutation(sigma.sigma) @ m
