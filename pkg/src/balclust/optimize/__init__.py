from .enumerate import count_partitions, enumerate_partitions
from .exact import (
    DEFAULT_CAP,
    ParetoPoint,
    ParetoResult,
    SolveResult,
    pareto_filter,
    search_size,
    solve_exact,
    solve_pareto,
)
from .local_search import LocalSearchResult, local_search_improve
from .problem import (
    Bound,
    Feasibility,
    ObjectiveTerm,
    ProblemSpec,
    check_feasible,
    load_problem,
    objective_vector,
    term_values,
)

__all__ = [
    "Bound",
    "DEFAULT_CAP",
    "Feasibility",
    "LocalSearchResult",
    "ObjectiveTerm",
    "ParetoPoint",
    "ParetoResult",
    "ProblemSpec",
    "SolveResult",
    "check_feasible",
    "count_partitions",
    "enumerate_partitions",
    "load_problem",
    "local_search_improve",
    "objective_vector",
    "pareto_filter",
    "search_size",
    "solve_exact",
    "solve_pareto",
    "term_values",
]
