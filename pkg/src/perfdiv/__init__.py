"""Perfect divisibility of graphs, weighted and unweighted, checked exhaustively."""

from .divisibility import (
    DivisibilityVerdict,
    PerfectDivision,
    find_minimal_non_divisible,
    find_perfect_division,
    is_perfectly_divisible,
    is_perfectly_weight_divisible_bounded,
    verify_division,
)
from .equivalence import (
    CliqueSubstitutionContext,
    SearchProvider,
    build_context,
    check_equivalence,
    divide_for_weight,
    lift_division,
    project_division,
    reduce_weight_step,
)
from .graph import Graph, complement, find_homogeneous_sets, induced_subgraph, substitute
from .graph6 import emit_graph6, parse_graph6
from .rng import random_weights
from .search import (
    Certificate,
    chromatic_number,
    is_perfect,
    is_perfect_definitional,
    max_clique_weight,
    weight_less_than,
    weight_restrict,
)

__version__ = "0.1.0"
