"""Exhaustive single- and multi-objective search over enumerated partitions.

The search space is cut into (segment, prefix) chunks.  Each chunk is
reduced on its own; chunk results are merged with comparisons that only
depend on values and the RGS label encoding, so the outcome does not depend
on how many worker processes ran the chunks.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from ..errors import EnumerationCapExceeded, SpecError
from ..instance import ClusteringSolution, Instance
from .batch import compute_stats, feasible_mask, objective_matrix
from .enumerate import Segment, chunk_prefixes, plan_segments, segment_labels
from .problem import ProblemSpec, criteria_matrix

__all__ = [
    "DEFAULT_CAP",
    "SolveResult",
    "ParetoPoint",
    "ParetoResult",
    "search_size",
    "solve_exact",
    "solve_pareto",
    "pareto_filter",
]

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class SolveResult:
    status: str  # "optimal" or "infeasible"
    solution: ClusteringSolution | None
    value: float | None
    enumerated: int
    feasible: int


@dataclass(frozen=True)
class ParetoPoint:
    solution: ClusteringSolution
    values: tuple[float, ...]


@dataclass(frozen=True)
class ParetoResult:
    points: tuple[ParetoPoint, ...]
    enumerated: int
    feasible: int
    labels: tuple[str, ...] = field(default=())

    @property
    def status(self) -> str:
        return "optimal" if self.points else "infeasible"


def _segments(inst: Instance, spec: ProblemSpec) -> list[Segment]:
    return plan_segments(inst.n, spec.lambda_range(inst.n), spec.size_range(inst.n), spec.card_bound())


def search_size(inst: Instance, spec: ProblemSpec) -> int:
    """Number of partitions the exact search will enumerate."""
    return sum(seg.count(inst.n) for seg in _segments(inst, spec))


def _needs_skill(spec: ProblemSpec) -> bool:
    return spec.skill_floor is not None or any(t.index == "skill" for t in spec.objectives)


def _validate(inst: Instance, spec: ProblemSpec, cap: int) -> list[tuple[Segment, tuple[int, ...]]]:
    if inst.n > 127:
        raise SpecError("exact search supports at most 127 elements")
    if _needs_skill(spec):
        crit = criteria_matrix(inst)
        if crit is None:
            raise SpecError("skill terms need a criteria matrix in the instance")
        if spec.skill_floor is not None and len(spec.skill_floor) != crit.shape[1]:
            raise SpecError("skill_floor length differs from the number of criteria")
    ref = spec.reference
    if ref is not None and ref.estimate.dim != inst.type_count + 1:
        raise SpecError(f"reference estimate needs {inst.type_count + 1} components")
    total = search_size(inst, spec)
    if total > cap:
        raise EnumerationCapExceeded(total, cap)
    return [(seg, p) for seg in _segments(inst, spec) for p in chunk_prefixes(inst.n, seg)]


def _evaluate_chunk(inst: Instance, spec: ProblemSpec, seg: Segment, prefix: tuple[int, ...]):
    labels = segment_labels(inst.n, seg, prefix)
    if not len(labels):
        return labels, None, None, np.zeros(0, dtype=bool)
    st = compute_stats(inst, labels, seg.lam_hi, _needs_skill(spec))
    ok = feasible_mask(st, spec)
    values, keyed = objective_matrix(st, spec)
    return labels, values, keyed, ok


def _best_chunk(args) -> tuple[int, int, Any]:
    inst, spec, seg, prefix = args
    labels, values, keyed, ok = _evaluate_chunk(inst, spec, seg, prefix)
    n_ok = int(ok.sum())
    if not n_ok:
        return len(labels), 0, None
    idx = np.flatnonzero(ok)
    col = keyed[idx, 0]
    # first minimum in a chunk is its lexicographically smallest row
    best = idx[int(np.argmin(col))]
    return len(labels), n_ok, (float(keyed[best, 0]), tuple(int(x) for x in labels[best]), float(values[best, 0]))


def _front_chunk(args) -> tuple[int, int, list]:
    inst, spec, seg, prefix = args
    labels, values, keyed, ok = _evaluate_chunk(inst, spec, seg, prefix)
    n_ok = int(ok.sum())
    if not n_ok:
        return len(labels), 0, []
    idx = np.flatnonzero(ok)
    uniq, first = np.unique(keyed[idx], axis=0, return_index=True)
    keep = pareto_filter(uniq)
    out = []
    for u in keep:
        row = idx[first[u]]
        out.append((tuple(float(x) for x in keyed[row]), tuple(int(x) for x in labels[row]),
                    tuple(float(x) for x in values[row])))
    return len(labels), n_ok, out


def _run(fn: Callable, tasks: Sequence, workers: int) -> Iterable:
    if workers <= 1 or len(tasks) <= 1:
        return map(fn, tasks)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def pareto_filter(points: np.ndarray) -> list[int]:
    """Indices of rows not dominated by another row (all columns minimised).

    Rows must be distinct.  Ascending lexicographic order guarantees every
    dominator of a row is visited before it.
    """
    pts = np.asarray(points, dtype=np.float64)
    if not len(pts):
        return []
    order = np.lexsort(pts.T[::-1])
    front: list[int] = []
    for i in order:
        p = pts[i]
        if front:
            f = pts[front]
            if np.any(np.all(f <= p, axis=1)):
                continue
        front.append(int(i))
    return sorted(front, key=lambda k: tuple(pts[k]))


def solve_exact(inst: Instance, spec: ProblemSpec, cap: int = DEFAULT_CAP, workers: int = 1) -> SolveResult:
    """Optimise a single scalar objective by full enumeration.

    Ties go to the lexicographically smallest RGS encoding.
    """
    if spec.is_multi:
        raise SpecError("solve_exact takes exactly one scalar objective; use solve_pareto")
    tasks = [(inst, spec, seg, p) for seg, p in _validate(inst, spec, cap)]
    enumerated = feasible = 0
    best = None
    for n_rows, n_ok, cand in _run(_best_chunk, tasks, workers):
        enumerated += n_rows
        feasible += n_ok
        if cand is not None and (best is None or cand[:2] < best[:2]):
            best = cand
    if best is None:
        return SolveResult("infeasible", None, None, enumerated, feasible)
    return SolveResult("optimal", ClusteringSolution.from_labels(best[1]), best[2], enumerated, feasible)


def solve_pareto(inst: Instance, spec: ProblemSpec, cap: int = DEFAULT_CAP, workers: int = 1) -> ParetoResult:
    """All Pareto-nondominated objective vectors with one canonical solution
    (smallest RGS encoding) per vector."""
    tasks = [(inst, spec, seg, p) for seg, p in _validate(inst, spec, cap)]
    enumerated = feasible = 0
    merged: dict[tuple[float, ...], tuple[tuple[int, ...], tuple[float, ...]]] = {}
    for n_rows, n_ok, cands in _run(_front_chunk, tasks, workers):
        enumerated += n_rows
        feasible += n_ok
        for key, labels, values in cands:
            if key not in merged or labels < merged[key][0]:
                merged[key] = (labels, values)
    keys = sorted(merged)
    front = pareto_filter(np.array(keys)) if keys else []
    points = tuple(
        ParetoPoint(ClusteringSolution.from_labels(merged[keys[i]][0]), merged[keys[i]][1])
        for i in front
    )
    return ParetoResult(points, enumerated, feasible, objective_labels(inst, spec))


def objective_labels(inst: Instance, spec: ProblemSpec) -> tuple[str, ...]:
    out = []
    for t in spec.objectives:
        if t.index == "skill":
            m = criteria_matrix(inst).shape[1]
            out.extend(f"{t.label}[{q + 1}]" for q in range(m))
        else:
            out.append(t.label)
    return tuple(out)
