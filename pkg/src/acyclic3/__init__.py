"""Acyclic edge coloring of 3-sparse graphs with Delta+1 (or Delta+2) colors."""

from ._backend import BACKEND
from .coloring import (
    BichromaticCycle,
    BichromaticPath,
    ColoringError,
    Palette,
    PartialColoring,
    ProperViolation,
    Verdict,
    candidate_colors,
    color_exchange,
    critical_path_exists,
    is_acyclic_coloring,
    is_valid_color,
    max_bichromatic_path,
    valid_colors,
    verify_acyclic,
    verify_proper,
)
from .extender import CaseStall, Exhausted, ExtensionTrace, TraceEvent, extend, fallback_bounded_search
from .generators import (
    GenerationError,
    SplitMix64,
    gen_biregular_3_delta,
    gen_corpus_instance,
    gen_named,
    gen_random_3sparse,
)
from .graph import (
    Graph,
    GraphError,
    PeelOrder,
    PeelStall,
    build_graph,
    connected_components,
    edge_degree,
    has_qualifying_edge,
    is_three_sparse,
    peel_order,
)
from .oracle import BudgetExceeded, OracleResult, all_acyclic_colorings, exact_aci
from .solver import (
    NoQualifyingEdge,
    NotThreeSparse,
    SolveResult,
    SolverAbort,
    SolveStats,
    acyclic_color,
    color_count,
    used_palette,
)

__all__ = [name for name in dir() if not name.startswith("_")]
