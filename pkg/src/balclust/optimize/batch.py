"""Vectorised objective and feasibility evaluation over blocks of label rows."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..instance import Instance
from .problem import ProblemSpec, criteria_matrix

_DECIMALS = 9


@dataclass
class BatchStats:
    active: np.ndarray      # (N, L) bool
    sizes: np.ndarray       # (N, L)
    wsum: np.ndarray        # (N, L)
    vsum: np.ndarray        # (N, L)
    prefix: np.ndarray      # (N, L, T) cumulative type counts, real types only
    zero_pairs: np.ndarray  # (N,)
    skill: np.ndarray | None  # (N, L, m)


def compute_stats(inst: Instance, labels: np.ndarray, n_clusters: int, need_skill: bool) -> BatchStats:
    sizes, wsum, vsum, counts, zeros = kernels.cluster_stats(
        labels, n_clusters, inst.weights, inst.types, inst.type_count, inst.adjacency
    )
    skill = None
    if need_skill:
        crit = criteria_matrix(inst)
        skill = kernels.cluster_max(labels, n_clusters, crit)
    return BatchStats(sizes > 0, sizes, wsum, vsum, np.cumsum(counts, axis=2), zeros, skill)


def _spread(x: np.ndarray, active: np.ndarray) -> np.ndarray:
    hi = np.where(active, x, -np.inf).max(axis=1)
    lo = np.where(active, x, np.inf).min(axis=1)
    return hi - lo


def _worst(x: np.ndarray, active: np.ndarray) -> np.ndarray:
    return np.where(active, x, np.inf).min(axis=1)


def _deviation(x: np.ndarray, active: np.ndarray, target: float) -> np.ndarray:
    return np.where(active, np.abs(x - target), -np.inf).max(axis=1)


def _struct_diameter(st: BatchStats) -> np.ndarray:
    # equal padded totals make the last prefix sum identical, so only the
    # real-type prefix sums contribute to the step distance
    p = st.prefix
    d = np.abs(p[:, :, None, :] - p[:, None, :, :]).sum(axis=3)
    pair = st.active[:, :, None] & st.active[:, None, :]
    return np.where(pair, d, 0).max(axis=(1, 2)).astype(np.float64)


def _struct_ref(st: BatchStats, ref_prefix: np.ndarray) -> np.ndarray:
    d = np.abs(st.prefix - ref_prefix[None, None, :]).sum(axis=2)
    return np.where(st.active, d, -1).max(axis=1).astype(np.float64)


def selector_values(st: BatchStats, index: str, method: str, spec: ProblemSpec) -> np.ndarray:
    """(N,) values, or (N, m) for skill."""
    if index == "skill":
        return np.where(st.active[:, :, None], st.skill, np.iinfo(np.int64).max).min(axis=1)
    param = {"card": st.sizes.astype(np.float64), "weight": st.wsum, "edge": st.vsum}.get(index)
    if method == "diff":
        return _struct_diameter(st) if index == "struct" else _spread(param, st.active)
    if method == "worst":
        return _worst(param, st.active)
    ref = spec.reference
    if index == "struct":
        return _struct_ref(st, np.cumsum(ref.estimate.counts[:-1]))
    target = {"card": ref.size, "weight": ref.weight, "edge": ref.edge_weight}[index]
    return _deviation(param, st.active, target)


def feasible_mask(st: BatchStats, spec: ProblemSpec) -> np.ndarray:
    ok = np.ones(st.sizes.shape[0], dtype=bool)
    for b in spec.constraints:
        v = selector_values(st, b.index, b.method, spec)
        if b.max is not None:
            ok &= v <= b.max + 1e-9
        if b.min is not None:
            ok &= v >= b.min - 1e-9
    if spec.skill_floor is not None:
        floor = np.asarray(spec.skill_floor)[None, None, :]
        meets = (st.skill >= floor).all(axis=2) | ~st.active
        ok &= meets.all(axis=1)
    if spec.forbid_zero_pairs:
        ok &= st.zero_pairs == 0
    return ok


def objective_matrix(st: BatchStats, spec: ProblemSpec) -> tuple[np.ndarray, np.ndarray]:
    """Objective values (N, d) and the same values oriented for minimisation
    and rounded for exact comparison."""
    cols, signs = [], []
    for t in spec.objectives:
        v = selector_values(st, t.index, t.method, spec).astype(np.float64)
        if v.ndim == 1:
            v = v[:, None]
        cols.append(v)
        signs.extend([-1.0 if t.direction == "max" else 1.0] * v.shape[1])
    values = np.concatenate(cols, axis=1)
    keyed = np.round(values * np.asarray(signs)[None, :], _DECIMALS) + 0.0
    return values, keyed
