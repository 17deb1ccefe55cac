"""Command-line interface: ``nilgraph <command> ...``.

Graph arguments accept a JSON file path, ``-`` for stdin, inline JSON text or
``catalog:<name>`` for a built-in example.  Matrix arguments accept a file path
or inline JSON holding a row-major array.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from .exact_linalg import Matrix, determinant_divisors, smith_normal_form
from .graph_core import (
    EnumerationBoundExceeded,
    coherent_components,
    edge_classes,
    graph_to_dot,
    is_admissible,
    isolated_vertices,
    order_graph,
    quotient_graph,
    quotient_to_dot,
)
from .nilpotent_group import presentation_from_graph, structural_subgroups
from .reidemeister import (
    DEFAULT_BUDGET,
    DEFAULT_MAX_CANDIDATES,
    AutomorphismRejected,
    CertificateRefused,
    PreconditionError,
    RInftyCertificate,
    certify,
    classify_main_theorem,
    finite_r_witness_search,
    nilpotency_bounds,
    r_verdict,
    validate_automorphism,
    verify_certificate,
)
from .reproduce import REPRODUCERS, reproduce
from .weighted_graph import (
    GraphFormatError,
    WeightedGraph,
    canonical_json,
    parse_graph,
    weighted_automorphism_group,
)
from .graph_core import automorphism_group


class UsageError(Exception):
    pass


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    stripped = arg.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return arg
    path = Path(arg)
    if not path.exists():
        raise UsageError(f"no such file: {arg}")
    return path.read_text()


def load_graph(arg: str, seed: str) -> WeightedGraph:
    if arg.startswith("catalog:"):
        name = arg.split(":", 1)[1]
        if name not in catalog.GRAPHS:
            raise UsageError(f"unknown catalog graph {name!r}; choose from {', '.join(catalog.GRAPHS)}")
        wg = catalog.GRAPHS[name]()
    else:
        try:
            wg = parse_graph(_read_text(arg))
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON: {exc}") from exc
    return wg.ordered(seed)


def load_matrix(arg: str) -> Matrix:
    try:
        data = json.loads(_read_text(arg))
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid matrix JSON: {exc}") from exc
    if isinstance(data, dict) and "matrix" in data:
        data = data["matrix"]
    try:
        return Matrix.from_json(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid matrix: {exc}") from exc


def _emit(args, payload: dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _edges(wg: WeightedGraph, edges) -> list[str]:
    return [wg.graph.edge_label(e) for e in edges]


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    wg = load_graph(args.graph, args.order_seed)
    g = wg.graph
    p = coherent_components(g)
    m = edge_classes(g, p)
    q = quotient_graph(g, p, m)
    iso, _ = isolated_vertices(g)
    payload = {
        "vertices": list(g.vertices),
        "edges": [[*g.ends(e), w] for e, w in zip(g.edges, wg.weights)],
        "coherent_components": [list(c) for c in p.classes],
        "component_relations": [[i + 1, j + 1] for i, j in p.relations()],
        "edge_classes": [_edges(wg, c) for c in m.classes],
        "edge_class_relations": [[i + 1, j + 1] for i, j in m.relations()],
        "quotient": {"sizes": list(q.sizes), "edges": [[a + 1, b + 1] for a, b in q.qedges]},
        "admissible": is_admissible(g),
        "isolated_vertices": list(iso),
        "hirsch": len(g.vertices) + len(g.edges),
        "canonical_json": canonical_json(wg),
    }
    lines = [
        f"vertex order: {' < '.join(g.vertices)}",
        f"edge order:   {' < '.join(_edges(wg, g.edges))}",
        "coherent components:",
        *[f"  lambda{i + 1} = {{{', '.join(c)}}}  (size {len(c)})" for i, c in enumerate(p.classes)],
        "component relations: " + (", ".join(f"lambda{i + 1} < lambda{j + 1}" for i, j in p.relations()) or "none"),
        "edge classes:",
        *[f"  mu{i + 1} = {{{', '.join(_edges(wg, c))}}}" for i, c in enumerate(m.classes)],
        "edge class relations: " + (", ".join(f"mu{i + 1} < mu{j + 1}" for i, j in m.relations()) or "none"),
        "quotient edges: " + (", ".join(
            f"lambda{a + 1}" + (" (loop)" if a == b else f"-lambda{b + 1}") for a, b in q.qedges) or "none"),
        f"isolated vertices: {', '.join(iso) or 'none'}",
        f"Hirsch number: {payload['hirsch']}",
    ]
    if args.dot:
        lines += ["", graph_to_dot(g, None if wg.is_unit else wg.weights), quotient_to_dot(p, q)]
        payload["dot"] = {"graph": graph_to_dot(g, None if wg.is_unit else wg.weights),
                          "quotient": quotient_to_dot(p, q)}
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_quotient(args) -> int:
    wg = load_graph(args.graph, args.order_seed)
    p = coherent_components(wg.graph)
    q = quotient_graph(wg.graph, p)
    if args.dot and not args.json:
        print(quotient_to_dot(p, q), end="")
        return 0
    payload = {"components": [list(c) for c in p.classes], "sizes": list(q.sizes),
               "edges": [[a + 1, b + 1] for a, b in q.qedges], "loops": [a + 1 for a in q.loops]}
    text = "\n".join([f"lambda{i + 1} |{len(c)}| = {{{', '.join(c)}}}" for i, c in enumerate(p.classes)] +
                     [f"lambda{a + 1} -- lambda{b + 1}" for a, b in q.qedges])
    _emit(args, payload, text)
    return 0


def cmd_aut(args) -> int:
    wg = load_graph(args.graph, args.order_seed)
    g = wg.graph
    full = automorphism_group(g, args.bound)
    sub = weighted_automorphism_group(wg, args.bound, full=full)
    keep = {a.sigma for a in sub}

    def row(a):
        return {"sigma": a.cycles(g.vertices), "sigma_E": [i + 1 for i in a.sigma_e],
                "epsilon": list(a.epsilon), "p_sigma": [i + 1 for i in a.p_sigma],
                "weight_compatible": a.sigma in keep}
    rows = [row(a) for a in full]
    payload = {"order": len(full), "weighted_order": len(sub), "automorphisms": rows}
    text = [f"|Aut| = {len(full)}, weight-compatible: {len(sub)}"]
    for r in rows:
        mark = "*" if r["weight_compatible"] else " "
        text.append(f" {mark} {r['sigma']:<30} sigma_E={r['sigma_E']} eps={r['epsilon']}")
    _emit(args, payload, "\n".join(text))
    return 0


def cmd_check(args) -> int:
    wg = load_graph(args.graph, args.order_seed)
    b = load_matrix(args.matrix)
    try:
        pair = validate_automorphism(wg, b)
    except AutomorphismRejected as exc:
        payload = {"valid": False, "gate": exc.gate, "reason": str(exc),
                   "C": exc.C.to_json() if exc.C is not None else None}
        _emit(args, payload, f"invalid ({exc.gate}): {exc}")
        return 0
    v = r_verdict(pair)
    payload = {"valid": True, "C": pair.C.to_json(), "C_E": pair.C_E.to_json(), "finite": v.finite,
               "witness": list(v.eigen_one_witness) if v.eigen_one_witness else None}
    text = [f"valid automorphism; vertex order {' < '.join(wg.graph.vertices)}",
            "C (gamma_2, e^k basis):", pair.C.pretty(),
            f"Reidemeister number: {'finite' if v.finite else 'infinite'}"]
    if not v.finite:
        text.append(f"eigenvalue-1 vector: {list(v.eigen_one_witness)}")
    _emit(args, payload, "\n".join(text))
    return 0


def cmd_rinf(args) -> int:
    wg = load_graph(args.graph, args.order_seed)
    g = wg.graph
    cls = classify_main_theorem(g)
    payload: dict[str, Any] = {"case": cls.case, "statement": cls.statement, "V0": list(cls.V0),
                               "E0": _edges(wg, cls.E0)}
    text = [f"case ({cls.case}): {cls.statement}",
            f"V0 = {{{', '.join(cls.V0)}}}", f"E0 = {{{', '.join(_edges(wg, cls.E0))}}}"]
    try:
        cert = certify(wg, args.bound)
        payload["certificate"] = cert.kind
        text.append(f"certificate for these weights: {cert.kind} ({cert.claim})")
    except (CertificateRefused, PreconditionError) as exc:
        payload["certificate"] = None
        payload["refusal"] = str(exc)
        text.append(f"no certificate for these weights: {exc}")
    _emit(args, payload, "\n".join(text))
    return 0


def cmd_bounds(args) -> int:
    wg = load_graph(args.graph, args.order_seed)
    xi, Xi = nilpotency_bounds(wg.graph)
    _emit(args, {"xi": xi, "Xi": Xi}, f"xi = {xi}, Xi = {Xi}")
    return 0


def cmd_certify(args) -> int:
    if args.verify:
        cert = RInftyCertificate.from_json_obj(json.loads(_read_text(args.verify)))
        wg = parse_graph(cert.graph)
        ok = verify_certificate(cert, wg, args.bound)
        _emit(args, {"verified": ok, "kind": cert.kind}, f"certificate {cert.kind}: {'verified' if ok else 'FAILED'}")
        return 0 if ok else 1
    if not args.graph:
        raise UsageError("certify needs a graph or --verify FILE")
    wg = load_graph(args.graph, args.order_seed)
    try:
        cert = certify(wg, args.bound)
    except (CertificateRefused, PreconditionError) as exc:
        sigma = getattr(exc, "sigma_string", lambda: None)()
        _emit(args, {"certificate": None, "refusal": str(exc), "sigma": sigma}, f"refused: {exc}")
        return 1
    print(cert.to_json())
    return 0


def cmd_search(args) -> int:
    wg = load_graph(args.graph, args.order_seed)
    res = finite_r_witness_search(wg, args.budget, args.max_candidates, args.bound)
    payload: dict[str, Any] = {"found": res.found, "tried": res.tried, "exhausted": res.exhausted}
    text = [res.report(wg.graph.vertices)]
    if res.found:
        payload.update({"sigma": res.candidate.sigma.cycles(wg.graph.vertices),
                        "blocks": list(res.candidate.labels),
                        "B": res.pair.B.to_json(), "C": res.pair.C.to_json()})
        text += ["B:", res.pair.B.pretty(), "C:", res.pair.C.pretty()]
    _emit(args, payload, "\n".join(text))
    return 0


def cmd_snf(args) -> int:
    m = load_matrix(args.matrix)
    if not m.is_integral():
        raise UsageError("snf needs an integer matrix")
    res = smith_normal_form(m)
    k = min(m.shape)
    divs = [determinant_divisors(m, l) for l in range(1, k + 1)]
    payload = {"diagonal": list(res.diagonal), "S": res.S.to_json(), "U": res.U.to_json(),
               "V": res.V.to_json(), "determinant_divisors": divs}
    text = [f"diagonal: {list(res.diagonal)}", f"determinant divisors: {divs}",
            "U:", res.U.pretty(), "V:", res.V.pretty()]
    _emit(args, payload, "\n".join(text))
    return 0


def cmd_structure(args) -> int:
    wg = load_graph(args.graph, args.order_seed)
    rep = structural_subgroups(presentation_from_graph(wg), wg)
    obj = rep.to_json_obj()
    text = [f"abelianization: {rep.abelianization_str()}", f"Hirsch number: {rep.hirsch}",
            f"center rank: {rep.center_rank}", f"index of G_Gamma: {rep.unweighted_index}"]
    _emit(args, obj, "\n".join(text))
    return 0


def cmd_reproduce(args) -> int:
    ids = list(REPRODUCERS) if args.example == "all" else [args.example]
    ok = True
    payload = {}
    texts = []
    for ex in ids:
        try:
            t = reproduce(ex)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from exc
        ok &= t.ok
        payload[ex] = {"ok": t.ok, "checks": [{"label": lbl, "ok": good} for lbl, good in t.results]}
        texts.append(t.render())
    _emit(args, payload, "\n\n".join(texts))
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--order-seed", choices=["lexicographic", "input"], default="lexicographic",
                        help="tie-break for the admissible vertex and edge orders")
    common.add_argument("--bound", type=int, default=12, help="vertex bound for automorphism enumeration")

    ap = argparse.ArgumentParser(prog="nilgraph", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_, **extra):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("graph", **extra)
        sp.set_defaults(func=fn)
        return sp

    sp = graph_cmd("analyze", cmd_analyze, "components, edge classes, quotient, orders, Hirsch number")
    sp.add_argument("--dot", action="store_true", help="append DOT renderings")
    sp = graph_cmd("quotient", cmd_quotient, "quotient graph")
    sp.add_argument("--dot", action="store_true", help="print DOT only")
    graph_cmd("aut", cmd_aut, "automorphisms with induced edge data")
    sp = graph_cmd("check", cmd_check, "validate a vertex-level matrix and decide finiteness of R")
    sp.add_argument("matrix")
    graph_cmd("rinf", cmd_rinf, "classify the graph and try to certify R-infinity")
    graph_cmd("bounds", cmd_bounds, "nilpotency index bounds xi and Xi")
    graph_cmd("structure", cmd_structure, "center, gamma_2, abelianization, Hirsch number")
    sp = graph_cmd("certify", cmd_certify, "emit or verify an R-infinity certificate", nargs="?")
    sp.add_argument("--verify", metavar="FILE", help="re-verify a certificate JSON file")
    sp = graph_cmd("search", cmd_search, "search for an automorphism with finite Reidemeister number")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="size of the polynomial pool")
    sp.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)

    sp = sub.add_parser("snf", parents=[common], help="Smith normal form and determinant divisors")
    sp.add_argument("matrix")
    sp.set_defaults(func=cmd_snf)
    sp = sub.add_parser("reproduce", parents=[common], help="re-run a worked example")
    sp.add_argument("example", choices=[*REPRODUCERS, "all"])
    sp.set_defaults(func=cmd_reproduce)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphFormatError, EnumerationBoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
