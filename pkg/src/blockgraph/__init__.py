"""Exact solvers for maximum induced C-block subgraphs of sP3-free graphs,
with feedback vertex set and even cycle transversal as instances."""

from .errors import (
    BlockGraphError,
    BudgetExceededError,
    ClassViolationError,
    ParseError,
    SizeCapError,
    TrivialComponentError,
)
from .graphs import (
    Graph,
    connected_components,
    format_graph,
    girth,
    induced_subgraph,
    parse_graph,
)
from .recognition import (
    BlockClassSpec,
    ComplexityStatus,
    are_isomorphic,
    complexity_status,
    contains_induced_linear_forest,
    has_even_cycle,
    is_biconnected,
    is_c_block_graph,
    parse_block_class,
)
from .solver import (
    ProblemSpec,
    SkeletonGuess,
    SolutionCandidate,
    complete,
    enumerate_skeleton_guesses,
    min_transversal,
    solve,
    solve_with_stats,
)

__version__ = "0.1.0"

__all__ = [
    "BlockClassSpec",
    "BlockGraphError",
    "BudgetExceededError",
    "ClassViolationError",
    "ComplexityStatus",
    "Graph",
    "ParseError",
    "ProblemSpec",
    "SizeCapError",
    "SkeletonGuess",
    "SolutionCandidate",
    "TrivialComponentError",
    "are_isomorphic",
    "complete",
    "complexity_status",
    "connected_components",
    "contains_induced_linear_forest",
    "enumerate_skeleton_guesses",
    "format_graph",
    "girth",
    "has_even_cycle",
    "induced_subgraph",
    "is_biconnected",
    "is_c_block_graph",
    "min_transversal",
    "parse_block_class",
    "parse_graph",
    "solve",
    "solve_with_stats",
    "__version__",
]
