"""Bootstrap percolation on hypercubes.

Bit-parallel closure engine, reward-guided local search for small
percolating sets, covering-design constructions, an exact lower bound,
and text formats for moving candidate sets between tools.
"""

from .analysis import (
    ParseError,
    SetReport,
    emit_training_line,
    emit_tuple_format,
    export_corpus,
    export_trace,
    independence_check,
    parse_candidate_line,
    parse_tuple_format,
    summarize,
)
from .constructions import (
    BoundReport,
    brute_force_min,
    exact_lower_bound,
    three_level_construction,
    two_level_construction,
)
from .covers import CoverFamily, coverage_counts, exact_cover_search, greedy_cover
from .cube import (
    MAX_DIMENSION,
    PercConfig,
    VertexSet,
    make_config,
    neighbors,
    vertices_of_weight,
    weight,
)
from .percolation import (
    ClosureTrace,
    closure,
    closure_mask,
    percolates,
    step,
    step_mask,
    step_reference,
)
from .search import (
    PoolEntry,
    SearchDatabase,
    SearchParams,
    local_search,
    random_start,
    refine,
    reward,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DIMENSION",
    "BoundReport",
    "ClosureTrace",
    "CoverFamily",
    "ParseError",
    "PercConfig",
    "PoolEntry",
    "SearchDatabase",
    "SearchParams",
    "SetReport",
    "VertexSet",
    "brute_force_min",
    "closure",
    "closure_mask",
    "coverage_counts",
    "emit_training_line",
    "emit_tuple_format",
    "exact_cover_search",
    "exact_lower_bound",
    "export_corpus",
    "export_trace",
    "greedy_cover",
    "independence_check",
    "local_search",
    "make_config",
    "neighbors",
    "parse_candidate_line",
    "parse_tuple_format",
    "percolates",
    "random_start",
    "refine",
    "reward",
    "step",
    "step_mask",
    "step_reference",
    "summarize",
    "sweep",
    "three_level_construction",
    "two_level_construction",
    "vertices_of_weight",
    "weight",
]
