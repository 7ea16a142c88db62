"""Cluster summaries and balance/unbalance indices of a clustering solution.

Two families are computed.  Difference indices take the spread (max minus
min) of a per-cluster parameter across clusters.  Reference indices take the
largest absolute deviation of that parameter from a reference cluster
profile.  The structure variants measure distance on the estimate scale
instead of subtracting numbers.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Any, Mapping, Sequence

from .errors import EstimateMismatchError, SpecError
from .instance import ClusteringSolution, Instance
from .lattice import MultisetEstimate, proximity, structure_estimate

__all__ = [
    "ClusterSummary",
    "ReferenceParams",
    "DifferenceIndices",
    "ReferenceIndices",
    "IndexReport",
    "summarize_cluster",
    "summarize_solution",
    "intra_edge_weight",
    "proximity_matrix",
    "method1_indices",
    "method2_indices",
    "evaluate_solution",
]


@dataclass(frozen=True)
class ClusterSummary:
    size: int
    total_weight: float
    intra_edge_weight: float
    estimate: MultisetEstimate


@dataclass(frozen=True)
class ReferenceParams:
    size: float
    weight: float
    edge_weight: float
    estimate: MultisetEstimate

    def __post_init__(self) -> None:
        for name in ("size", "weight", "edge_weight"):
            if getattr(self, name) < 0:
                raise SpecError(f"reference {name} must be non-negative")

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "ReferenceParams":
        try:
            return cls(
                float(doc["size"]),
                float(doc["weight"]),
                float(doc["edge_weight"]),
                MultisetEstimate(tuple(doc["estimate"])),
            )
        except KeyError as exc:
            raise SpecError(f"reference is missing {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise SpecError(f"invalid reference: {exc}") from None

    def to_dict(self) -> dict[str, Any]:
        return {
            "size": self.size,
            "weight": self.weight,
            "edge_weight": self.edge_weight,
            "estimate": list(self.estimate.counts),
        }


@dataclass(frozen=True)
class DifferenceIndices:
    card: int
    weight: float
    edge: float
    struct: int


@dataclass(frozen=True)
class ReferenceIndices:
    card: float
    weight: float
    edge: float
    struct: int


@dataclass(frozen=True)
class IndexReport:
    b_card: int
    b_weight: float
    b_edge: float
    b_struct: int
    ref_card: float | None = None
    ref_weight: float | None = None
    ref_edge: float | None = None
    ref_struct: int | None = None

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


def intra_edge_weight(inst: Instance, members: Sequence[int]) -> float:
    """Sum of edge weights over unordered pairs inside ``members``."""
    total = 0.0
    for a, b in combinations(sorted(members), 2):
        total += inst.graph.weight(a, b)
    return total


def summarize_cluster(inst: Instance, sol: ClusteringSolution, index: int) -> ClusterSummary:
    members = sol.cluster(index)
    weight = 0.0
    for j in members:
        weight += inst.weight(j)
    return ClusterSummary(
        size=len(members),
        total_weight=weight,
        intra_edge_weight=intra_edge_weight(inst, members),
        estimate=structure_estimate(inst, sol, index),
    )


def summarize_solution(inst: Instance, sol: ClusteringSolution) -> list[ClusterSummary]:
    return [summarize_cluster(inst, sol, i) for i in range(1, sol.n_clusters + 1)]


def proximity_matrix(summaries: Sequence[ClusterSummary]) -> list[list[int]]:
    return [[proximity(a.estimate, b.estimate) for b in summaries] for a in summaries]


def method1_indices(
    inst: Instance,
    sol: ClusteringSolution,
    summaries: Sequence[ClusterSummary] | None = None,
) -> DifferenceIndices:
    s = summaries if summaries is not None else summarize_solution(inst, sol)
    sizes = [c.size for c in s]
    weights = [c.total_weight for c in s]
    edges = [c.intra_edge_weight for c in s]
    # No lattice max/min exists in general; the structure spread is the
    # largest pairwise step distance.
    struct = max(
        (proximity(a.estimate, b.estimate) for a, b in combinations(s, 2)),
        default=0,
    )
    return DifferenceIndices(
        card=max(sizes) - min(sizes),
        weight=max(weights) - min(weights),
        edge=max(edges) - min(edges),
        struct=struct,
    )


def method2_indices(
    inst: Instance,
    sol: ClusteringSolution,
    ref: ReferenceParams,
    summaries: Sequence[ClusterSummary] | None = None,
) -> ReferenceIndices:
    s = summaries if summaries is not None else summarize_solution(inst, sol)
    padded = max(c.size for c in s)
    if ref.estimate.dim != inst.type_count + 1:
        raise EstimateMismatchError(
            f"reference estimate {ref.estimate} needs {inst.type_count + 1} components"
        )
    if ref.estimate.total != padded:
        raise EstimateMismatchError(
            f"reference estimate {ref.estimate} sums to {ref.estimate.total}, "
            f"solution estimates are padded to {padded}"
        )
    return ReferenceIndices(
        card=max(abs(c.size - ref.size) for c in s),
        weight=max(abs(c.total_weight - ref.weight) for c in s),
        edge=max(abs(c.intra_edge_weight - ref.edge_weight) for c in s),
        struct=max(proximity(c.estimate, ref.estimate) for c in s),
    )


def evaluate_solution(
    inst: Instance, sol: ClusteringSolution, ref: ReferenceParams | None = None
) -> IndexReport:
    summaries = summarize_solution(inst, sol)
    d = method1_indices(inst, sol, summaries)
    if ref is None:
        return IndexReport(d.card, d.weight, d.edge, d.struct)
    r = method2_indices(inst, sol, ref, summaries)
    return IndexReport(d.card, d.weight, d.edge, d.struct, r.card, r.weight, r.edge, r.struct)
