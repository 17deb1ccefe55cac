"""Automorphism validation, the eigenvalue-1 finiteness verdict, R-infinity certificates and witness search.

An automorphism of G_{Gamma(k)} is handled through its pair of matrices: B on
the abelianization modulo torsion (vertex basis) and C on gamma_2 (the
e^{k(e)} basis).  The Reidemeister number R(phi) is finite exactly when
neither B nor C has eigenvalue 1.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .exact_linalg import (
    Matrix,
    Poly,
    as_matrix,
    companion,
    determinant_divisors,
    has_eigenvalue_one,
    nullspace,
    primitive_integer_vector,
    resultant,
    reversed_poly,
)
from .graph_core import (
    DEFAULT_AUT_BOUND,
    Edge,
    Graph,
    GraphAutomorphism,
    automorphism_group,
    automorphism_permutations,
    coherent_components,
    cycle_string,
    make_automorphism,
    quotient_graph,
)
from .lie_ring import GradedLie2, check_graded_endomorphism, weighted_integrality
from .weighted_graph import (
    WeightedGraph,
    singleton_edges,
    weighted_automorphism_group,
)

DEFAULT_BUDGET = 3
DEFAULT_MAX_CANDIDATES = 200_000


# ---------------------------------------------------------------------------
# validation and verdict


class AutomorphismRejected(ValueError):
    """B does not define an automorphism of G_{Gamma(k)}; ``gate`` names the failed check."""

    def __init__(self, gate: str, message: str, witness: Any = None, C: Matrix | None = None):
        super().__init__(f"{gate}: {message}")
        self.gate = gate
        self.witness = witness
        self.C = C


@dataclass(frozen=True)
class AutomorphismPair:
    wg: WeightedGraph
    B: Matrix
    C: Matrix
    C_E: Matrix

    def combined(self) -> Matrix:
        return Matrix.block_diag(self.B, self.C)


def validate_automorphism(wg: WeightedGraph | Graph, b) -> AutomorphismPair:
    """Check that B induces an automorphism of G_{Gamma(k)}.

    Gates, in order: shape, unimodularity of B, vanishing brackets on
    non-edges, C in GL(ZZ), integrality of D(k) C D(k)^-1.
    """
    if isinstance(wg, Graph):
        wg = WeightedGraph.unweighted(wg)
    b = as_matrix(b)
    n = len(wg.graph.vertices)
    if b.shape != (n, n):
        raise AutomorphismRejected("shape", f"expected a {n}x{n} matrix, got {b.shape}")
    if not b.is_integral():
        raise AutomorphismRejected("unimodular", "B has non-integer entries")
    check = check_graded_endomorphism(GradedLie2.from_graph(wg, "Ek"), b)
    if not check.ok:
        gate = {
            "degree-1 matrix is not unimodular": "unimodular",
            "non-edge bracket does not vanish": "non_edge",
            "degree-2 matrix is not in GL(Z)": "degree2",
        }[check.reason]
        raise AutomorphismRejected(gate, check.reason, check.witness, check.C)
    integ = weighted_integrality(wg, check.C)
    if not integ.ok:
        i, j = integ.witness
        edges = wg.graph.edges
        raise AutomorphismRejected(
            "integrality",
            f"D(k) C D(k)^-1 has entry {integ.conjugate[i, j]} at "
            f"({wg.graph.edge_label(edges[i])}, {wg.graph.edge_label(edges[j])})",
            (i, j), check.C)
    return AutomorphismPair(wg, b, check.C, integ.conjugate)


@dataclass(frozen=True)
class RVerdict:
    finite: bool
    eigen_one_witness: tuple[int, ...] | None = None
    b_has_one: bool = False
    c_has_one: bool = False


def r_verdict(pair: AutomorphismPair) -> RVerdict:
    """R(phi) is finite iff 1 is an eigenvalue of neither B nor C."""
    b1 = has_eigenvalue_one(pair.B)
    c1 = pair.C.nrows > 0 and has_eigenvalue_one(pair.C)
    if not (b1 or c1):
        return RVerdict(True)
    m = pair.combined()
    kern = nullspace(m - Matrix.identity(m.nrows))
    return RVerdict(False, primitive_integer_vector(kern[0]), b1, c1)


def verdict_for(g: Graph, b, k: Sequence[int] | None = None) -> tuple[AutomorphismPair, RVerdict]:
    wg = WeightedGraph(g, tuple(k)) if k is not None else WeightedGraph.unweighted(g)
    pair = validate_automorphism(wg, b)
    return pair, r_verdict(pair)


# ---------------------------------------------------------------------------
# bounds and classification


def nilpotency_bounds(g: Graph) -> tuple[int, int]:
    """(xi, Xi): minima over quotient edges of |l1|+|l2| and of c(l1, l2); loops count 2|l|."""
    if not g.edges:
        raise ValueError("the bounds need at least one edge")
    q = quotient_graph(g)
    xi = Xi = None
    for a, b in q.qedges:
        sa, sb = q.sizes[a], q.sizes[b]
        if a == b:
            lo = hi = 2 * sa
        else:
            lo = sa + sb
            hi = max(2 * sa + sb, sa + 2 * sb)
        xi = lo if xi is None else min(xi, lo)
        Xi = hi if Xi is None else min(Xi, hi)
    return xi, Xi


CASE_STATEMENTS = {
    "i": "G_Gamma does NOT have R-infinity",
    "ii": "weights exist making R-infinity hold",
    "iii": "R-infinity certified",
}


@dataclass(frozen=True)
class Classification:
    case: str
    V0: tuple[str, ...]
    E0: tuple[Edge, ...]
    gamma0: Graph

    @property
    def statement(self) -> str:
        return CASE_STATEMENTS[self.case]


def classify_main_theorem(g: Graph) -> Classification:
    """Case i: no edge between singleton components; iii: all components singletons and
    some edge; ii: otherwise.  When both ii and iii apply, iii is reported."""
    p = coherent_components(g)
    v0 = p.singletons()
    v0 = tuple(v for v in g.vertices if v in set(v0))
    gamma0 = g.induced(v0)
    e0 = singleton_edges(g, p)
    if not e0:
        case = "i"
    elif len(v0) == len(g.vertices):
        case = "iii"
    else:
        case = "ii"
    return Classification(case, v0, e0, gamma0)


# ---------------------------------------------------------------------------
# certificates


class PreconditionError(ValueError):
    pass


class CertificateRefused(ValueError):
    """The certifier cannot issue a certificate; ``sigma`` is the obstruction when there is one."""

    def __init__(self, message: str, sigma: tuple[int, ...] | None = None, labels: Sequence[str] = ()):
        super().__init__(message)
        self.sigma = sigma
        self.labels = tuple(labels)

    def sigma_string(self) -> str | None:
        return None if self.sigma is None else cycle_string(self.sigma, self.labels)


def graph_hash(wg: WeightedGraph) -> str:
    return hashlib.sha256(wg.to_json().encode()).hexdigest()


@dataclass(frozen=True)
class RInftyCertificate:
    kind: str
    graph_hash: str
    graph: dict
    claim: str
    evidence: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict[str, Any]:
        return {"kind": self.kind, "graph_hash": self.graph_hash, "graph": self.graph,
                "claim": self.claim, "evidence": self.evidence}

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_obj(), indent=indent)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RInftyCertificate":
        return cls(obj["kind"], obj["graph_hash"], obj["graph"], obj["claim"], obj.get("evidence", {}))


def _pinned_transcript(wg: WeightedGraph, auts: list[GraphAutomorphism], e0: Edge) -> list[dict]:
    g = wg.graph
    i0 = g.edge_pos[e0]
    return [{"sigma": list(a.sigma), "cycles": a.cycles(g.vertices), "fixes_e0": a.sigma_e[i0] == i0}
            for a in auts]


def certify_weighted_rinfty(wg: WeightedGraph, bound: int = DEFAULT_AUT_BOUND) -> RInftyCertificate:
    """Certificate that G_{Gamma(k)} has R-infinity because every weight-compatible
    graph automorphism fixes some edge e0 between singleton components.

    Edges of E_0 are tried in edge order.  Refusal names the first automorphism
    moving the first candidate edge.
    """
    g = wg.graph
    e0s = singleton_edges(g)
    if not e0s:
        raise PreconditionError("no edge joins two singleton coherent components")
    auts = weighted_automorphism_group(wg, bound)
    for e0 in e0s:
        transcript = _pinned_transcript(wg, auts, e0)
        if all(t["fixes_e0"] for t in transcript):
            return RInftyCertificate(
                "pinned_edge", graph_hash(wg), wg.to_json_obj(),
                "G_Gamma(k) has the R-infinity property",
                {"e0": list(g.ends(e0)), "automorphisms": transcript,
                 "weighted_group_order": len(auts),
                 "justification": "every weight-compatible graph automorphism fixes an edge between "
                                  "two singleton coherent components, so every group automorphism "
                                  "has eigenvalue 1 on the rational graded Lie algebra"})
    i0 = g.edge_pos[e0s[0]]
    bad = next(a for a in auts if a.sigma_e[i0] != i0)
    raise CertificateRefused(
        f"{bad.cycles(g.vertices)} moves {g.edge_label(e0s[0])}; no edge of E_0 is fixed by all "
        f"weight-compatible automorphisms", bad.sigma, g.vertices)


def certify(wg: WeightedGraph | Graph, bound: int = DEFAULT_AUT_BOUND) -> RInftyCertificate:
    """Best available certificate: transposition-free, pinned edge, or the negative bounds certificate."""
    if isinstance(wg, Graph):
        wg = WeightedGraph.unweighted(wg)
    g = wg.graph
    cls = classify_main_theorem(g)
    if cls.case == "iii":
        return RInftyCertificate(
            "transposition_free", graph_hash(wg), wg.to_json_obj(),
            "G_Gamma(k) has the R-infinity property for every weight function",
            {"coherent_components": [list(c) for c in coherent_components(g).classes],
             "edge_count": len(g.edges)})
    if cls.E0:
        return certify_weighted_rinfty(wg, bound)
    if wg.is_unit and g.edges and not cls.V0:
        xi, Xi = nilpotency_bounds(g)
        return RInftyCertificate(
            "bounds", graph_hash(wg), wg.to_json_obj(),
            "G_Gamma does NOT have the R-infinity property",
            {"xi": xi, "Xi": Xi, "singleton_vertices": []})
    raise CertificateRefused(f"no certificate applies (case {cls.case})")


def verify_certificate(cert: RInftyCertificate | dict, wg: WeightedGraph | None = None,
                       bound: int = DEFAULT_AUT_BOUND) -> bool:
    """Re-derive every claim of a certificate through independent code paths."""
    from .weighted_graph import parse_graph

    if isinstance(cert, dict):
        cert = RInftyCertificate.from_json_obj(cert)
    wg = wg or parse_graph(cert.graph)
    if graph_hash(wg) != cert.graph_hash or wg.to_json_obj() != cert.graph:
        return False
    g = wg.graph
    n = len(g.vertices)
    if cert.kind == "transposition_free":
        if not g.edges:
            return False
        # no transposition (v w) preserves the edge set
        for i, j in itertools.combinations(range(n), 2):
            perm = list(range(n))
            perm[i], perm[j] = j, i
            img = {frozenset(g.vertices[perm[g.pos[v]]] for v in e) for e in g.edges}
            if img == set(g.edges):
                return False
        return True
    if cert.kind == "pinned_edge":
        e0 = frozenset(cert.evidence["e0"])
        if e0 not in g.edge_pos:
            return False
        p = coherent_components(g)
        if any(len(p.classes[p.class_of[v]]) != 1 for v in e0):
            return False
        _, m = wg.partitions
        perms = []
        for perm in automorphism_permutations(g, bound):
            a = make_automorphism(g, perm, p)
            ok = True
            for cls_ in m.classes:
                img = m.classes[m.class_of[g.edges[a.sigma_e[g.edge_pos[cls_[0]]]]]]
                dk = Matrix.diag([wg.k(e) for e in cls_])
                dk_img = Matrix.diag([wg.k(e) for e in img])
                if any(determinant_divisors(dk, l) != determinant_divisors(dk_img, l)
                       for l in range(1, len(cls_) + 1)):
                    ok = False
                    break
            if ok:
                perms.append(a)
        transcript = _pinned_transcript(wg, perms, e0)
        return transcript == cert.evidence["automorphisms"] and all(t["fixes_e0"] for t in transcript)
    if cert.kind == "bounds":
        if not wg.is_unit or not g.edges:
            return False
        p = coherent_components(g)
        if any(len(c) == 1 for c in p.classes):
            return False
        xi, Xi = nilpotency_bounds(g)
        return xi >= 4 and [xi, Xi] == [cert.evidence["xi"], cert.evidence["Xi"]]
    return False


# ---------------------------------------------------------------------------
# witness search


def polynomial_pool(degree: int, budget: int = DEFAULT_BUDGET) -> list[Poly]:
    """Monic integer polynomials with root product -1, no root +-1 and no two roots multiplying to 1.

    Degree 2 gives x^2 - m x - 1 for m = 1..budget; higher degrees use
    x^d - m x^{d-1} + (-1)^{d+1}.  The root conditions are checked with
    resultants, so no floating point is involved.
    """
    out = []
    for m in range(1, budget + 1):
        coeffs = [0] * (degree + 1)
        coeffs[degree] = 1
        coeffs[degree - 1] = -m
        coeffs[0] = (-1) ** (degree + 1)
        p = Poly(coeffs)
        if p(1) == 0 or p(-1) == 0:
            continue
        if resultant(p, reversed_poly(p)) == 0:
            continue
        out.append(p)
    # pairwise: no root of one is the reciprocal of a root of another
    keep = []
    for p in out:
        if all(resultant(p, reversed_poly(q)) != 0 for q in keep):
            keep.append(p)
    return keep


@dataclass(frozen=True)
class Candidate:
    sigma: GraphAutomorphism
    blocks: tuple[Matrix, ...]
    labels: tuple[str, ...]
    B: Matrix


def _block_options(size: int, budget: int) -> list[tuple[str, Matrix]]:
    if size == 1:
        return [("-1", Matrix([[-1]])), ("1", Matrix([[1]]))]
    pool = polynomial_pool(size, budget)
    opts = [(f"companion({p})", companion(p)) for p in pool]
    opts.append(("I", Matrix.identity(size)))
    opts.append(("-I", Matrix.diag([-1] * size)))
    # squares have determinant 1; [[2,1],[1,1]] is the square of companion(x^2 - x - 1)
    opts += [(f"companion({p})^2", companion(p) @ companion(p)) for p in pool]
    return opts


def candidate_generator(wg: WeightedGraph, budget: int = DEFAULT_BUDGET, full_group: bool = False,
                        bound: int = DEFAULT_AUT_BOUND) -> Iterator[Candidate]:
    """Candidates P(sigma) * blockdiag(A_lambda) in canonical order.

    sigma runs over Aut(Gamma(k)) (all of Aut(Gamma) with ``full_group``) in
    lexicographic order, so the identity comes first; blocks run over the
    product of per-class options in class order.
    """
    g = wg.graph
    p = coherent_components(g)
    auts = automorphism_group(g, bound) if full_group else weighted_automorphism_group(wg, bound)
    options = [_block_options(len(c), budget) for c in p.classes]
    idx = [[g.pos[v] for v in c] for c in p.classes]
    n = len(g.vertices)
    for a in auts:
        for choice in itertools.product(*options):
            # row sigma(i) of P(sigma) N is row i of N
            rows = [[0] * n for _ in range(n)]
            for (_, blk), pos in zip(choice, idx):
                for r, i in enumerate(pos):
                    out = rows[a.sigma[i]]
                    for c, j in enumerate(pos):
                        out[j] = blk.rows[r][c]
            yield Candidate(a, tuple(b for _, b in choice), tuple(lbl for lbl, _ in choice),
                            Matrix(rows, n))


@dataclass(frozen=True)
class SearchResult:
    found: bool
    pair: AutomorphismPair | None
    verdict: RVerdict | None
    candidate: Candidate | None
    tried: int
    rejected: int
    exhausted: bool

    def report(self, labels: Sequence[str]) -> str:
        if self.found:
            return (f"finite-R witness after {self.tried} candidates: sigma = "
                    f"{self.candidate.sigma.cycles(labels)}, blocks = {list(self.candidate.labels)}")
        how = "search space exhausted" if self.exhausted else "candidate cap reached"
        return f"no finite-R witness among {self.tried} candidates ({how}); inconclusive"


def finite_r_witness_search(wg: WeightedGraph | Graph, budget: int = DEFAULT_BUDGET,
                            max_candidates: int = DEFAULT_MAX_CANDIDATES,
                            bound: int = DEFAULT_AUT_BOUND) -> SearchResult:
    """First candidate (canonical order) that validates and has finite Reidemeister number."""
    if isinstance(wg, Graph):
        wg = WeightedGraph.unweighted(wg)
    tried = rejected = 0
    for cand in candidate_generator(wg, budget, bound=bound):
        if tried >= max_candidates:
            return SearchResult(False, None, None, None, tried, rejected, False)
        tried += 1
        # an eigenvalue 1 of B already forces infinite R; skip the costlier checks
        if has_eigenvalue_one(cand.B):
            continue
        try:
            pair = validate_automorphism(wg, cand.B)
        except AutomorphismRejected:
            rejected += 1
            continue
        v = r_verdict(pair)
        if v.finite:
            return SearchResult(True, pair, v, cand, tried, rejected, False)
    return SearchResult(False, None, None, None, tried, rejected, True)
