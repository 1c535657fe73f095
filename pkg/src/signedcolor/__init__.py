"""Signed-graph colorings, signed edge-labelings and 2-factors on plane graphs."""

from .coloring import BudgetExceeded, ColorSet, brute_force_coloring, chromatic_number, is_proper, solve_coloring
from .constructions import (
    build_counterexample,
    build_gadget,
    build_tutte_fragment,
    build_tutte_graph,
    contract_all,
    replace_vertices,
    search_negative_placements,
    verify_no_consistent_two_factor,
)
from .factors import TwoFactor, enumerate_two_factors, is_consistent
from .graph import (
    ContradictionError,
    EmbeddingError,
    InputError,
    SignedGraph,
    VertexSignedGraph,
    dual,
    switch,
    trace_faces,
)
from .labeling import (
    coloring_to_labeling,
    is_strong_labeling,
    is_weak_labeling,
    labeling_to_coloring,
    signature_from_negative_vertices,
    solve_strong_labeling,
    solve_weak_labeling,
)

__version__ = "0.1.0"
