"""First-improvement local search with relocate and swap moves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..errors import SpecError
from ..instance import ClusteringSolution, Instance
from .problem import ProblemSpec, check_feasible, objective_vector

__all__ = ["LocalSearchResult", "local_search_improve"]

_EPS = 1e-9


@dataclass(frozen=True)
class LocalSearchResult:
    solution: ClusteringSolution
    value: float
    evaluations: int
    trace: tuple[float, ...]  # objective after each accepted move, start first


def _moves(sol: ClusteringSolution) -> Iterator[list[list[int]]]:
    clusters = sol.as_lists()
    owner = {j: c for c, members in enumerate(clusters) for j in members}
    n = len(owner)
    # relocate: ascending element id, then ascending target cluster
    for j in range(1, n + 1):
        src = owner[j]
        for dst in range(len(clusters)):
            if dst == src:
                continue
            cand = [list(c) for c in clusters]
            cand[src].remove(j)
            cand[dst].append(j)
            yield [c for c in cand if c]
    # swap: ascending pairs from different clusters
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            ca, cb = owner[a], owner[b]
            if ca == cb:
                continue
            cand = [list(c) for c in clusters]
            cand[ca][cand[ca].index(a)] = b
            cand[cb][cand[cb].index(b)] = a
            yield cand


def local_search_improve(
    inst: Instance,
    start: ClusteringSolution,
    spec: ProblemSpec,
    budget: int = 100_000,
) -> LocalSearchResult:
    """Improve ``start`` until no relocate/swap move helps or ``budget`` move
    evaluations are spent.  Only feasible moves are accepted."""
    if spec.is_multi:
        raise SpecError("local search takes exactly one scalar objective")
    if not check_feasible(inst, start, spec):
        raise SpecError("local search needs a feasible start solution")
    sign = -1.0 if spec.objectives[0].direction == "max" else 1.0

    def score(s: ClusteringSolution) -> float:
        return sign * objective_vector(inst, s, spec)[0]

    current = start
    cur = score(current)
    trace = [sign * cur]
    evaluations = 0
    improved = True
    while improved and evaluations < budget:
        improved = False
        for groups in _moves(current):
            if evaluations >= budget:
                break
            evaluations += 1
            cand = ClusteringSolution.from_labels(_labels(groups, inst.n))
            if not check_feasible(inst, cand, spec):
                continue
            val = score(cand)
            if val < cur - _EPS:
                current, cur = cand, val
                trace.append(sign * cur)
                improved = True
                break
    return LocalSearchResult(current, sign * cur, evaluations, tuple(trace))


def _labels(groups: list[list[int]], n: int) -> list[int]:
    out = [0] * n
    for c, members in enumerate(groups):
        for j in members:
            out[j - 1] = c
    return out
