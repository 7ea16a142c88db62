"""Set-partition enumeration with block-count and block-size limits.

Partitions are restricted-growth strings (RGS): element 1 gets label 0 and
every later element reuses a label or opens the next one.  RGS order equals
the lexicographic order of canonical solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator

import numpy as np

from .. import kernels
from ..instance import ClusteringSolution

__all__ = [
    "Segment",
    "count_partitions",
    "enumerate_partitions",
    "plan_segments",
    "chunk_prefixes",
]


@lru_cache(maxsize=None)
def _count(m: int, k: int, lo: int, hi: int) -> int:
    if m == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    # choose the block holding the smallest remaining element
    return sum(comb(m - 1, s - 1) * _count(m - s, k - 1, lo, hi) for s in range(lo, min(hi, m) + 1))


def count_partitions(n: int, lam_range: tuple[int, int], size_range: tuple[int, int] = (1, 10**9)) -> int:
    """Exact number of partitions of n labelled elements with block count and
    block sizes in the given inclusive ranges."""
    lo, hi = max(size_range[0], 1), min(size_range[1], n)
    return sum(_count(n, k, lo, hi) for k in range(max(lam_range[0], 1), min(lam_range[1], n) + 1))


@dataclass(frozen=True)
class Segment:
    """One enumeration call.  When ``min_size`` is set, only partitions whose
    smallest block has exactly that size are kept."""

    lam_lo: int
    lam_hi: int
    size_lo: int
    size_hi: int
    min_size: int | None = None

    def count(self, n: int) -> int:
        return count_partitions(n, (self.lam_lo, self.lam_hi), (self.size_lo, self.size_hi))


def plan_segments(n: int, lam_range: tuple[int, int], size_range: tuple[int, int],
                  card_bound: float | None = None) -> list[Segment]:
    """Split the search space so a cardinality-spread bound prunes block sizes.

    With spread <= c, every partition with smallest block a has all blocks in
    [a, a + c]; enumerating one window per (lambda, a) and keeping rows whose
    smallest block is exactly a covers each partition once.
    """
    lam_lo, lam_hi = lam_range
    s_lo, s_hi = size_range
    if card_bound is None:
        return [Segment(lam_lo, lam_hi, s_lo, s_hi)]
    spread = int(card_bound + 1e-9)
    out = []
    for lam in range(lam_lo, lam_hi + 1):
        for a in range(s_lo, s_hi + 1):
            top = min(a + spread, s_hi)
            if lam * a <= n <= lam * top:
                out.append(Segment(lam, lam, a, top, a))
    return out


def chunk_prefixes(n: int, seg: Segment, target: int = 20000) -> list[tuple[int, ...]]:
    """Split a segment into RGS prefixes, in lexicographic order."""
    total = seg.count(n)
    if total <= target or n <= 2:
        return [()]
    depth = 1
    while depth < n - 1 and total / _bell_bound(depth, seg.lam_hi) > target:
        depth += 1
    rows = kernels.enumerate_labels(depth, 1, seg.lam_hi, 1, seg.size_hi)
    return [tuple(int(x) for x in r) for r in rows]


def _bell_bound(depth: int, lam_hi: int) -> int:
    return count_partitions(depth, (1, lam_hi))


def segment_labels(n: int, seg: Segment, prefix: tuple[int, ...] = ()) -> np.ndarray:
    rows = kernels.enumerate_labels(n, seg.lam_lo, seg.lam_hi, seg.size_lo, seg.size_hi, prefix)
    if seg.min_size is not None and len(rows):
        keep = _min_block(rows, seg.lam_hi) == seg.min_size
        rows = rows[keep]
    return rows


def _min_block(rows: np.ndarray, lam_hi: int) -> np.ndarray:
    sizes = np.zeros((rows.shape[0], lam_hi), dtype=np.int64)
    for c in range(lam_hi):
        sizes[:, c] = (rows == c).sum(axis=1)
    sizes[sizes == 0] = np.iinfo(np.int64).max
    return sizes.min(axis=1)


def enumerate_partitions(
    n: int,
    lam_range: tuple[int, int] = (1, 10**9),
    size_range: tuple[int, int] = (1, 10**9),
) -> Iterator[ClusteringSolution]:
    """Yield every partition of elements 1..n with block count and sizes in
    range, canonical and in lexicographic order.  Infeasible ranges yield
    nothing."""
    seg = Segment(max(lam_range[0], 1), min(lam_range[1], n),
                  max(size_range[0], 1), min(size_range[1], n))
    if seg.lam_lo > seg.lam_hi or seg.size_lo > seg.size_hi:
        return
    for prefix in chunk_prefixes(n, seg):
        for row in segment_labels(n, seg, prefix):
            yield ClusteringSolution.from_labels(row)
