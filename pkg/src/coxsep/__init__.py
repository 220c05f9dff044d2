"""Finite alternating and symmetric quotients of right-angled Coxeter groups
that separate a chosen finite set of elements from a convex-cocompact subgroup."""

from .core import (
    Core,
    CoreError,
    HypothesisFailure,
    InvariantBreach,
    NotBounding,
    OrbitInconclusive,
    SubgroupSpec,
    bounding_hyperplanes,
    delete,
    delete_edge,
    expand,
    grow_tail,
    parabolic_core,
    reduce_to_point,
    trivial_core,
    verify_core,
    words_core,
)
from .graph import SimplicialGraph, check_hypotheses, complement, cycle_graph, double, path_graph
from .pipeline import (
    BudgetExhausted,
    Config,
    QuotientReport,
    SeparationRequest,
    export_dot,
    guard_product,
    raag_separate,
    separate,
)
from .quotient import (
    PermutationAction,
    apply_parity_lemma,
    apply_squares_lemma,
    build_action,
    fix_parities,
    parity_table,
    tail_parity_delta,
)
from .words import RACG, Reflection

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "Config",
    "Core",
    "CoreError",
    "HypothesisFailure",
    "InvariantBreach",
    "NotBounding",
    "OrbitInconclusive",
    "PermutationAction",
    "QuotientReport",
    "RACG",
    "Reflection",
    "SeparationRequest",
    "SimplicialGraph",
    "SubgroupSpec",
    "apply_parity_lemma",
    "apply_squares_lemma",
    "bounding_hyperplanes",
    "build_action",
    "check_hypotheses",
    "complement",
    "cycle_graph",
    "delete",
    "delete_edge",
    "double",
    "expand",
    "export_dot",
    "fix_parities",
    "grow_tail",
    "guard_product",
    "parabolic_core",
    "parity_table",
    "path_graph",
    "raag_separate",
    "reduce_to_point",
    "separate",
    "tail_parity_delta",
    "trivial_core",
    "verify_core",
    "words_core",
]
