"""Growth schedules: grow a target graph from one vertex in slots.

Each slot every existing vertex may spawn one child, edges are activated
between the child and vertices within distance d - 1 of its parent, and
excess edges are deleted again.  The package synthesizes such schedules,
simulates and validates them, computes lower bounds and checks small cases
exhaustively.
"""

from ._backend import BACKEND
from .basic import (
    clique_maintaining_schedule,
    clique_schedule,
    improved_clique_schedule,
    path_schedule,
    star_schedule,
    star_spanning_schedule,
    trimming_schedule,
)
from .bounds import (
    binomial_tree,
    chromatic_number,
    clique_number,
    g_bipart,
    g_full,
    hardness_gadget,
    min_edge_difference,
    slot_lower_bound,
)
from .composite import Phase, colored_schedule, planar_schedule, tree_decompose, tree_schedule
from .errors import (
    CapExceeded,
    FormatError,
    GraphError,
    GrowthError,
    ScheduleError,
    TargetMismatch,
    UnsupportedSize,
)
from .graph import Coloring, Graph, degeneracy_coloring, degeneracy_ordering
from .graph_io import emit_dot, emit_graph, parse_graph
from .kernels import Matching, TwoSatFormula, max_matching, two_sat
from .oracle import connected_graphs, min_excess_with_budget, min_slots_zero_excess
from .schedule import (
    Generation,
    Metrics,
    Schedule,
    Slot,
    Trace,
    check_properties,
    normalize_deletions,
    simulate,
    validate,
)
from .schedule_io import emit_schedule, parse_schedule
from .zero_excess import candidate_set, constant_excess_schedule, elimination_schedule, fast_growth

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapExceeded",
    "Coloring",
    "FormatError",
    "Generation",
    "Graph",
    "GraphError",
    "GrowthError",
    "Matching",
    "Metrics",
    "Phase",
    "Schedule",
    "ScheduleError",
    "Slot",
    "TargetMismatch",
    "Trace",
    "TwoSatFormula",
    "UnsupportedSize",
    "binomial_tree",
    "candidate_set",
    "check_properties",
    "chromatic_number",
    "clique_maintaining_schedule",
    "clique_number",
    "clique_schedule",
    "colored_schedule",
    "connected_graphs",
    "constant_excess_schedule",
    "degeneracy_coloring",
    "degeneracy_ordering",
    "elimination_schedule",
    "emit_dot",
    "emit_graph",
    "emit_schedule",
    "fast_growth",
    "g_bipart",
    "g_full",
    "hardness_gadget",
    "improved_clique_schedule",
    "max_matching",
    "min_edge_difference",
    "min_excess_with_budget",
    "min_slots_zero_excess",
    "normalize_deletions",
    "parse_graph",
    "parse_schedule",
    "path_schedule",
    "planar_schedule",
    "simulate",
    "slot_lower_bound",
    "star_schedule",
    "star_spanning_schedule",
    "trimming_schedule",
    "tree_decompose",
    "tree_schedule",
    "two_sat",
    "validate",
]
