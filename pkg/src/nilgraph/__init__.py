"""Exact computations with 2-step nilpotent groups attached to edge-weighted graphs."""

from __future__ import annotations

from .exact_linalg import Matrix, Poly, QuadScalar, char_poly, det, smith_normal_form
from .graph_core import Graph, automorphism_group, coherent_components, edge_classes, order_graph, quotient_graph
from .lie_ring import GradedLie2, g_gamma_membership, induced_deg2_matrix, quad_ext_iso_check
from .nilpotent_group import TwoStepPresentation, presentation_from_graph, structural_subgroups
from .reidemeister import (
    certify,
    classify_main_theorem,
    finite_r_witness_search,
    nilpotency_bounds,
    r_verdict,
    validate_automorphism,
    verify_certificate,
)
from .weighted_graph import WeightedGraph, parse_graph, weighted_automorphism_group

__version__ = "0.1.0"

__all__ = [
    "GradedLie2", "Graph", "Matrix", "Poly", "QuadScalar", "TwoStepPresentation", "WeightedGraph",
    "automorphism_group", "certify", "char_poly", "classify_main_theorem", "coherent_components", "det",
    "edge_classes", "finite_r_witness_search", "g_gamma_membership", "induced_deg2_matrix", "nilpotency_bounds",
    "order_graph", "parse_graph", "presentation_from_graph", "quad_ext_iso_check", "quotient_graph",
    "r_verdict", "smith_normal_form", "structural_subgroups", "validate_automorphism", "verify_certificate",
    "weighted_automorphism_group",
]
