"""Balanced clustering: balance indices, multiset structure estimates,
exact and heuristic search."""

from .errors import (
    BalclustError,
    EnumerationCapExceeded,
    EstimateMismatchError,
    HeuristicInfeasible,
    InstanceError,
    SolutionError,
    SpecError,
)
from .indices import (
    ClusterSummary,
    IndexReport,
    ReferenceParams,
    evaluate_solution,
    method1_indices,
    method2_indices,
    proximity_matrix,
    summarize_cluster,
    summarize_solution,
)
from .instance import (
    ClusteringSolution,
    Element,
    Instance,
    WeightedGraph,
    load_instance,
    parse_instance,
    validate_solution,
)
from .lattice import (
    Dominance,
    MultisetEstimate,
    dominance_compare,
    enumerate_scale,
    proximity,
    structure_estimate,
)
from .optimize import (
    ObjectiveTerm,
    ProblemSpec,
    check_feasible,
    enumerate_partitions,
    local_search_improve,
    solve_exact,
    solve_pareto,
)
from .team import TeamInstance, TeamSpec, evaluate_teams, kernel_heuristic

__version__ = "0.1.0"

__all__ = [
    "BalclustError",
    "ClusterSummary",
    "ClusteringSolution",
    "Dominance",
    "Element",
    "EnumerationCapExceeded",
    "EstimateMismatchError",
    "HeuristicInfeasible",
    "IndexReport",
    "Instance",
    "InstanceError",
    "MultisetEstimate",
    "ObjectiveTerm",
    "ProblemSpec",
    "ReferenceParams",
    "SolutionError",
    "SpecError",
    "TeamInstance",
    "TeamSpec",
    "WeightedGraph",
    "check_feasible",
    "dominance_compare",
    "enumerate_partitions",
    "enumerate_scale",
    "evaluate_solution",
    "evaluate_teams",
    "kernel_heuristic",
    "load_instance",
    "local_search_improve",
    "method1_indices",
    "method2_indices",
    "parse_instance",
    "proximity",
    "proximity_matrix",
    "solve_exact",
    "solve_pareto",
    "structure_estimate",
    "summarize_cluster",
    "summarize_solution",
    "validate_solution",
]
