"""Regenerate the worked examples as pass/fail checks with their intermediate values."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable

from . import catalog
from .exact_linalg import Matrix, Poly, char_poly, has_eigenvalue_one
from .graph_core import (
    automorphism_group,
    coherent_components,
    edge_classes,
    make_automorphism,
    order_graph,
    quotient_graph,
)
from .lie_ring import GradedLie2, check_graded_endomorphism, g_gamma_membership, quad_ext_iso_check
from .nilpotent_group import (
    heisenberg_matrix,
    presentation_from_graph,
    relation_defects,
    remark_group_H,
    structural_subgroups,
)
from .reidemeister import (
    AutomorphismRejected,
    CertificateRefused,
    certify,
    certify_weighted_rinfty,
    classify_main_theorem,
    finite_r_witness_search,
    nilpotency_bounds,
    r_verdict,
    validate_automorphism,
)
from .weighted_graph import WeightedGraph, counterexample_weights, weighted_automorphism_group


@dataclass
class Transcript:
    name: str
    lines: list[str] = field(default_factory=list)
    results: list[tuple[str, bool]] = field(default_factory=list)

    def note(self, text: str) -> None:
        self.lines.append(f"  {text}")

    def check(self, label: str, ok: bool, detail: str = "") -> bool:
        ok = bool(ok)
        self.results.append((label, ok))
        self.lines.append(f"  [{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))
        return ok

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.results)

    def render(self) -> str:
        head = f"== {self.name}: {'PASS' if self.ok else 'FAIL'} =="
        return "\n".join([head, *self.lines])


def _product(polys: list[Poly]) -> Poly:
    return reduce(lambda a, b: a * b, polys)


def reproduce_figure1() -> Transcript:
    t = Transcript("figure1")
    g = catalog.figure1_graph()
    p = coherent_components(g)
    t.note(f"coherent components: {[list(c) for c in p.classes]}")
    t.check("components", [set(c) for c in p.classes] ==
            [{"v1", "v2"}, {"v3", "v4"}, {"v5"}, {"v6"}])
    t.check("class relations", p.relations() == [(0, 2), (1, 2), (1, 3)],
            ", ".join(f"l{i + 1} < l{j + 1}" for i, j in p.relations()))
    m = edge_classes(g, p)
    got = sorted(sorted(g.edge_label(e) for e in c) for c in m.classes)
    t.note(f"edge classes: {got}")
    t.check("edge classes", got == sorted([["{v1,v5}", "{v2,v5}"], ["{v3,v6}", "{v4,v6}"],
                                           ["{v1,v2}"], ["{v5,v6}"]]))
    q = quotient_graph(g, p, m)
    t.note(f"quotient sizes {q.sizes}, edges {[(a + 1, b + 1) for a, b in q.qedges]}")
    t.check("one self-loop", q.loops == (0,))
    auts = automorphism_group(g)
    t.check("automorphism group order 4", len(auts) == 4, str([a.cycles(g.vertices) for a in auts]))
    return t


def reproduce_heisenberg(trials: int = 200, seed: int = 0) -> Transcript:
    t = Transcript("heisenberg")
    rng = random.Random(seed)
    for n in (1, 2, 3):
        wg = catalog.heisenberg(n)
        p = presentation_from_graph(wg)
        agree = 0
        for _ in range(trials):
            a, b = p.random_element(rng, 20), p.random_element(rng, 20)
            if heisenberg_matrix(n, p.multiply(a, b)) == heisenberg_matrix(n, a) @ heisenberg_matrix(n, b):
                agree += 1
        t.check(f"n={n}: products agree with the matrix representation", agree == trials, f"{agree}/{trials}")
        rep = structural_subgroups(p, wg)
        expected = (n, 0, 0) if n > 1 else (0, 0)
        t.check(f"n={n}: abelianization", rep.abelianization_invariants == expected, rep.abelianization_str())
        t.check(f"n={n}: index", rep.unweighted_index == n, str(rep.unweighted_index))
        comm = p.commutator(p.x(0), p.x(1))
        t.check(f"n={n}: [v1,v2] = e^{n}", comm.z == (0, 0) and comm.t == (n,), str(comm))
    return t


def reproduce_counterexample(ns: tuple[int, ...] = (2, 3, 4, 5)) -> Transcript:
    t = Transcript("main-counterexample")
    wg1 = catalog.counterexample(1)
    g = wg1.graph
    t.check("listed order is the canonical admissible order", order_graph(g) == g)
    auts = automorphism_group(g)
    t.check("|Aut(Gamma)| = 16", len(auts) == 16, str(len(auts)))
    sigma = make_automorphism(g, catalog.COUNTEREXAMPLE_SIGMA)
    t.note(f"sigma = {sigma.cycles(g.vertices)}")
    t.check("sigma_E = (e1 e5)(e2 e6)(e7 e8)", sigma.sigma_e == (4, 5, 2, 3, 0, 1, 7, 6))
    t.check("epsilon = -1 exactly on e7, e8", sigma.epsilon == (1,) * 6 + (-1, -1))
    b = catalog.counterexample_B()
    b_factored = Matrix.permutation(sigma.sigma) @ Matrix.block_diag(
        Matrix.identity(2), Matrix([[2, 1], [1, 1]]), Matrix([[2, 1], [1, 1]]), Matrix.diag([1, -1, -1]))
    t.check("B = P(sigma) diag(I, A, A, 1, -1, -1)", b == b_factored)
    pair = validate_automorphism(wg1, b)
    t.check("C matches the displayed matrix", pair.C == catalog.counterexample_C(), "\n" + pair.C.pretty())
    pb, pc = char_poly(pair.B), char_poly(pair.C)
    t.check("char poly of B", pb == _product(catalog.counterexample_B_charpoly_factors()), str(pb))
    t.check("char poly of C", pc == _product(catalog.counterexample_C_charpoly_factors()), str(pc))
    verdict = r_verdict(pair)
    t.check("k = 1: R(phi) finite", verdict.finite)
    mem = g_gamma_membership(g, b)
    t.check("B lies in the block-shape group with p(sigma) of sigma",
            mem.member and mem.p_sigma == sigma.p_sigma, str(mem.p_sigma))
    try:
        certify_weighted_rinfty(wg1)
        t.check("k = 1: certifier refuses", False)
    except CertificateRefused as exc:
        t.check("k = 1: certifier refuses with sigma", exc.sigma == sigma.sigma, exc.sigma_string())
    for n in ns:
        wg = counterexample_weights(g, ("v7", "v8"), n)
        try:
            validate_automorphism(wg, b)
            t.check(f"n={n}: B rejected", False)
        except AutomorphismRejected as exc:
            t.check(f"n={n}: B rejected at the integrality gate", exc.gate == "integrality", str(exc))
        sub = weighted_automorphism_group(wg, full=auts)
        e7 = g.edge_pos[frozenset(("v7", "v8"))]
        t.check(f"n={n}: |Aut(Gamma(k))| = 8, all fix e7",
                len(sub) == 8 and all(a.sigma_e[e7] == e7 for a in sub), str(len(sub)))
        cert = certify_weighted_rinfty(wg)
        t.check(f"n={n}: pinned-edge certificate issued", cert.kind == "pinned_edge")
        rep = structural_subgroups(presentation_from_graph(wg), wg)
        t.check(f"n={n}: index of G_Gamma in G_Gamma(k) is {n}", rep.unweighted_index == n)
    return t


def reproduce_remark_quadext() -> Transcript:
    t = Transcript("remark-quadext")
    src = GradedLie2.from_presentation(remark_group_H())
    dst = GradedLie2.from_graph(catalog.path4(), "E")
    t.check("isomorphism over QQ(sqrt 2)", quad_ext_iso_check(src, dst, catalog.remark_quad_map(2)))
    t.check("no isomorphism after substituting sqrt 3",
            not quad_ext_iso_check(src, dst, catalog.remark_quad_map(3)))
    cls = classify_main_theorem(catalog.path4())
    t.check("path graph is transposition-free", cls.case == "iii")
    return t


def reproduce_remark_h_finite() -> Transcript:
    t = Transcript("remark-H-finiteR")
    h = remark_group_H()
    t.note(f"structure constants: {h.to_json_obj()['c']}")
    xs, ys = catalog.remark_H_automorphism(h)
    t.check("generator images respect every relation", relation_defects(h, xs, ys) == [])
    b1, b2 = catalog.remark_H_deg1(), catalog.remark_H_deg2()
    check = check_graded_endomorphism(GradedLie2.from_presentation(h), b1)
    t.check("induced degree-2 matrix equals the y-images", check.ok and check.C == b2)
    p1, p2 = char_poly(b1), char_poly(b2)
    t.check("char poly degree 1 = (x^2+2x-1)^2", p1 == Poly.from_highest([1, 2, -1]) ** 2, str(p1))
    t.check("char poly degree 2 = (x^2-6x+1)(x+1)",
            p2 == Poly.from_highest([1, -6, 1]) * Poly.from_highest([1, 1]), str(p2))
    t.check("no eigenvalue 1", p1(1) != 0 and p2(1) != 0 and not has_eigenvalue_one(Matrix.block_diag(b1, b2)),
            f"p1(1) = {p1(1)}, p2(1) = {p2(1)}")
    return t


def reproduce_path4() -> Transcript:
    t = Transcript("path4")
    g = catalog.path4()
    cls = classify_main_theorem(g)
    t.check("case iii", cls.case == "iii")
    cert = certify(g)
    t.check("transposition-free certificate", cert.kind == "transposition_free")
    t.check("bounds (2, 3)", nilpotency_bounds(g) == (2, 3), str(nilpotency_bounds(g)))
    res = finite_r_witness_search(g)
    t.check("no finite-R witness", not res.found, res.report(g.vertices))
    rep = structural_subgroups(presentation_from_graph(WeightedGraph.unweighted(g)))
    t.check("Hirsch number 7", rep.hirsch == 7)
    return t


REPRODUCERS: dict[str, Callable[[], Transcript]] = {
    "figure1": reproduce_figure1,
    "heisenberg": reproduce_heisenberg,
    "main-counterexample": reproduce_counterexample,
    "remark-quadext": reproduce_remark_quadext,
    "remark-H-finiteR": reproduce_remark_h_finite,
    "path4": reproduce_path4,
}


def reproduce(example_id: str) -> Transcript:
    try:
        fn = REPRODUCERS[example_id]
    except KeyError:
        raise KeyError(f"unknown example id {example_id!r}; choose from {', '.join(REPRODUCERS)}") from None
    return fn()


__all__ = ["REPRODUCERS", "Transcript", "reproduce"]
