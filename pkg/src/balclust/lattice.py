"""Multiset structure estimates and the poset-like scale they live on.

An estimate counts cluster members per ordered type (type 1 first) plus a
trailing "empty" component that pads every cluster up to the largest cluster
size of its solution.  Estimates with k components summing to n form the
scale P^{k,n}; one Hasse step moves a single unit between adjacent levels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterator, Sequence

from .errors import EstimateMismatchError
from .instance import ClusteringSolution, Instance

__all__ = [
    "MultisetEstimate",
    "ScaleNode",
    "Dominance",
    "structure_estimate",
    "solution_estimates",
    "proximity",
    "dominance_compare",
    "enumerate_scale",
    "scale_to_dot",
]


@dataclass(frozen=True, order=True)
class MultisetEstimate:
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if not counts:
            raise ValueError("estimate needs at least one component")
        if any(c < 0 for c in counts):
            raise ValueError(f"negative component in {counts}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def of(cls, *counts: int) -> "MultisetEstimate":
        return cls(tuple(counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def dim(self) -> int:
        return len(self.counts)

    def prefix_sums(self) -> tuple[int, ...]:
        return tuple(accumulate(self.counts))

    def repad(self, total: int) -> "MultisetEstimate":
        """Same type counts with the last (empty) component adjusted to ``total``."""
        head = self.counts[:-1]
        pad = total - sum(head)
        if pad < 0:
            raise EstimateMismatchError(
                f"cannot pad {self} to total {total}: real types already sum to {sum(head)}"
            )
        return MultisetEstimate(head + (pad,))

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.counts)) + ")"


def structure_estimate(inst: Instance, sol: ClusteringSolution, index: int) -> MultisetEstimate:
    """Estimate of cluster ``index`` (1-based), padded to the largest cluster size."""
    members = sol.cluster(index)
    counts = [0] * (inst.type_count + 1)
    for j in members:
        counts[inst.type_of(j) - 1] += 1
    counts[-1] = max(sol.sizes) - len(members)
    return MultisetEstimate(tuple(counts))


def solution_estimates(inst: Instance, sol: ClusteringSolution) -> list[MultisetEstimate]:
    return [structure_estimate(inst, sol, i) for i in range(1, sol.n_clusters + 1)]


def _check_pair(e1: MultisetEstimate, e2: MultisetEstimate) -> None:
    if e1.dim != e2.dim:
        raise EstimateMismatchError(f"dimension mismatch: {e1} has {e1.dim}, {e2} has {e2.dim}")
    if e1.total != e2.total:
        raise EstimateMismatchError(f"total mismatch: {e1} sums to {e1.total}, {e2} to {e2.total}")


def proximity(e1: MultisetEstimate, e2: MultisetEstimate) -> int:
    """Minimal number of Hasse steps between two estimates of one scale.

    Moving a unit from level g to g+1 changes exactly the g-th prefix sum by
    one, so the step count is the L1 distance between prefix-sum vectors.
    """
    _check_pair(e1, e2)
    return sum(abs(a - b) for a, b in zip(e1.prefix_sums(), e2.prefix_sums()))


class Dominance(enum.Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def dominance_compare(e1: MultisetEstimate, e2: MultisetEstimate) -> Dominance:
    _check_pair(e1, e2)
    if e1 == e2:
        return Dominance.EQUAL
    diffs = [a - b for a, b in zip(e1.prefix_sums(), e2.prefix_sums())]
    if all(d >= 0 for d in diffs):
        return Dominance.GREATER
    if all(d <= 0 for d in diffs):
        return Dominance.LESS
    return Dominance.INCOMPARABLE


@dataclass(frozen=True)
class ScaleNode:
    estimate: MultisetEstimate
    lower: tuple[MultisetEstimate, ...]
    upper: tuple[MultisetEstimate, ...]

    @property
    def neighbors(self) -> tuple[MultisetEstimate, ...]:
        return self.upper + self.lower


def _compositions(k: int, n: int) -> Iterator[tuple[int, ...]]:
    # descending lexicographic: (n,0,..,0) first
    if k == 1:
        yield (n,)
        return
    for head in range(n, -1, -1):
        for tail in _compositions(k - 1, n - head):
            yield (head,) + tail


def _step_down(counts: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    for g in range(len(counts) - 1):
        if counts[g] > 0:
            c = list(counts)
            c[g] -= 1
            c[g + 1] += 1
            yield tuple(c)


def _step_up(counts: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    for g in range(1, len(counts)):
        if counts[g] > 0:
            c = list(counts)
            c[g] -= 1
            c[g - 1] += 1
            yield tuple(c)


def enumerate_scale(k: int, n: int) -> list[ScaleNode]:
    """All estimates of P^{k,n} with their Hasse neighbours, top element first."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    nodes = []
    for counts in _compositions(k, n):
        nodes.append(
            ScaleNode(
                MultisetEstimate(counts),
                tuple(MultisetEstimate(c) for c in _step_down(counts)),
                tuple(MultisetEstimate(c) for c in _step_up(counts)),
            )
        )
    return nodes


def scale_to_dot(nodes: Sequence[ScaleNode], name: str = "scale") -> str:
    """Hasse diagram in Graphviz DOT; edges point from the larger estimate down."""
    ids = {node.estimate: f"n{i}" for i, node in enumerate(nodes)}
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=ellipse];"]
    for node in nodes:
        lines.append(f'  {ids[node.estimate]} [label="{node.estimate}"];')
    for node in nodes:
        for low in node.lower:
            lines.append(f"  {ids[node.estimate]} -> {ids[low]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
