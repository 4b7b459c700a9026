"""digrev: directed-multigraph cycle reversal at finite scale.

Core ideas: any finite digraph can be driven to dichromatic number at
most two by reversing directed cycles; a linear order certifies the bound
through forward-edge fractions; the set of edges a sequence flips is
always balanced, and balance is the exact reachability criterion between
orientations; reversing a maximum edge-disjoint path system as a raw flip
separates its endpoints, which no reversion sequence can do.
"""

from ._backend import BACKEND
from .connectivity import FlipReport, PathSystem, edge_connectivity, flip_separation, menger_system, reverse_edge_set
from .dichromatic import (
    Coloring,
    OrderCertificate,
    ReduceResult,
    check_order_certificate,
    chi,
    coloring_from_certificate,
    count_forward,
    find_order_certificate,
    reduce_dichromatic,
    verify_coloring,
)
from .errors import DigrevError, InputError, InternalError, ResourceLimitError, ValidationError
from .graph import (
    Cut,
    Digraph,
    DirectedCycle,
    DirectedPath,
    EdgeId,
    from_json,
    gen_ladder,
    gen_random,
    gen_tournament,
    out_edges,
    reachable_vertex,
    simple_cycles,
    strong_components,
    to_dot,
    to_json,
)
from .reversion import (
    Difference,
    Effect,
    ReversionSequence,
    apply,
    canonicalize,
    cycle_decompose,
    difference,
    effect_on,
    invert,
    is_eulerian,
    reachable,
    replace_segments,
    validate,
)
from .structural import (
    OrientationClasses,
    StagedFlip,
    TwoChainResult,
    flip_path_staged,
    flip_path_system_staged,
    orientation_space_oracle,
    scatter_check,
    tournament_two_chain,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Coloring",
    "Cut",
    "Difference",
    "Digraph",
    "DigrevError",
    "DirectedCycle",
    "DirectedPath",
    "EdgeId",
    "Effect",
    "FlipReport",
    "InputError",
    "InternalError",
    "OrderCertificate",
    "OrientationClasses",
    "PathSystem",
    "ReduceResult",
    "ResourceLimitError",
    "ReversionSequence",
    "StagedFlip",
    "TwoChainResult",
    "ValidationError",
    "apply",
    "canonicalize",
    "check_order_certificate",
    "chi",
    "coloring_from_certificate",
    "count_forward",
    "cycle_decompose",
    "difference",
    "edge_connectivity",
    "effect_on",
    "find_order_certificate",
    "flip_path_staged",
    "flip_path_system_staged",
    "flip_separation",
    "from_json",
    "gen_ladder",
    "gen_random",
    "gen_tournament",
    "invert",
    "is_eulerian",
    "menger_system",
    "orientation_space_oracle",
    "out_edges",
    "reachable",
    "reachable_vertex",
    "reduce_dichromatic",
    "replace_segments",
    "reverse_edge_set",
    "scatter_check",
    "simple_cycles",
    "strong_components",
    "to_dot",
    "to_json",
    "tournament_two_chain",
    "validate",
    "verify_coloring",
]
