"""Exception hierarchy shared by every balclust module."""

from __future__ import annotations


class BalclustError(Exception):
    """Base class for all errors raised by the package."""


class InstanceError(BalclustError, ValueError):
    """A malformed or invalid instance document.

    ``path`` names the offending field, e.g. ``elements[3].weight``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class SolutionError(BalclustError, ValueError):
    """A candidate cluster list that is not a partition of the element set.

    ``kind`` is one of ``overlap``, ``coverage``, ``unknown``, ``empty``.
    """

    def __init__(self, kind: str, message: str, element: int | None = None):
        self.kind = kind
        self.element = element
        super().__init__(message)


class EstimateMismatchError(BalclustError, ValueError):
    """Two multiset estimates live on different scales."""


class SpecError(BalclustError, ValueError):
    """An invalid problem or team specification."""


class EnumerationCapExceeded(BalclustError):
    """The exact search space is larger than the configured cap."""

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(
            f"search space has {count} partitions, cap is {cap}; "
            "raise --cap or use local search"
        )


class HeuristicInfeasible(BalclustError):
    """The kernel heuristic could not build a feasible team assignment."""
