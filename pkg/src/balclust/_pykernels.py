"""Pure-Python kernels; reference behaviour for the compiled ``_ckernels``.

Both modules expose the same three functions with identical outputs,
including floating-point summation order.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def _apply_prefix(prefix, n, lam_hi, size_hi, labels, sizes):
    k = 0
    for i, lab in enumerate(prefix):
        lab = int(lab)
        if lab < 0 or lab > k or lab >= lam_hi or i >= n:
            return -1
        if lab == k:
            k += 1
        if sizes[lab] >= size_hi:
            return -1
        sizes[lab] += 1
        labels[i] = lab
    return k


def enumerate_labels(
    n: int,
    lam_lo: int,
    lam_hi: int,
    size_lo: int,
    size_hi: int,
    prefix: Sequence[int] = (),
) -> np.ndarray:
    """Every restricted-growth string of length ``n`` extending ``prefix`` whose
    block count lies in [lam_lo, lam_hi] and block sizes in [size_lo, size_hi],
    in lexicographic order.  Shape (N, n), dtype int8."""
    rows: list[list[int]] = []
    lam_hi = min(lam_hi, n)
    size_lo = max(size_lo, 1)
    if n < 1 or lam_lo > lam_hi or size_lo > size_hi or lam_hi * size_hi < n:
        return np.zeros((0, n), dtype=np.int8)
    labels = [0] * n
    sizes = [0] * (lam_hi + 1)
    k0 = _apply_prefix(prefix, n, lam_hi, size_hi, labels, sizes)
    if k0 < 0:
        return np.zeros((0, n), dtype=np.int8)
    short0 = sum(max(0, size_lo - sizes[b]) for b in range(k0))

    def rec(i: int, k: int, short: int) -> None:
        # short: members still missing from open blocks below size_lo
        if short + max(0, lam_lo - k) * size_lo > n - i:
            return
        if i == n:
            rows.append(labels.copy())
            return
        top = k + 1 if k < lam_hi else k
        for lab in range(top):
            s = sizes[lab]
            if s >= size_hi:
                continue
            labels[i] = lab
            sizes[lab] = s + 1
            if lab == k:
                rec(i + 1, k + 1, short + size_lo - 1)
            else:
                rec(i + 1, k, short - 1 if s < size_lo else short)
            sizes[lab] = s

    rec(len(prefix), k0, short0)
    if not rows:
        return np.zeros((0, n), dtype=np.int8)
    return np.array(rows, dtype=np.int8)


def cluster_stats(labels, n_clusters, weights, types, n_types, adj):
    """Per-cluster size, weight sum, intra-pair edge sum, type counts, and the
    number of same-cluster pairs with zero edge weight, for each row."""
    labels = np.asarray(labels)
    N, n = labels.shape
    L = n_clusters
    w = [float(x) for x in weights]
    t = [int(x) for x in types]
    a = [[float(x) for x in row] for row in np.asarray(adj)]
    sizes = np.zeros((N, L), dtype=np.int64)
    wsum = np.zeros((N, L), dtype=np.float64)
    vsum = np.zeros((N, L), dtype=np.float64)
    counts = np.zeros((N, L, n_types), dtype=np.int64)
    zeros = np.zeros(N, dtype=np.int64)
    for r in range(N):
        lab = [int(x) for x in labels[r]]
        sz = [0] * L
        ws = [0.0] * L
        vs = [0.0] * L
        ct = [[0] * n_types for _ in range(L)]
        z = 0
        for i in range(n):
            c = lab[i]
            sz[c] += 1
            ws[c] += w[i]
            ct[c][t[i]] += 1
        for i in range(n):
            ci = lab[i]
            row = a[i]
            for j in range(i + 1, n):
                if lab[j] == ci:
                    v = row[j]
                    vs[ci] += v
                    if v == 0.0:
                        z += 1
        sizes[r] = sz
        wsum[r] = ws
        vsum[r] = vs
        counts[r] = ct
        zeros[r] = z
    return sizes, wsum, vsum, counts, zeros


def cluster_max(labels, n_clusters, criteria):
    """Componentwise maximum of member criteria rows per cluster."""
    labels = np.asarray(labels)
    crit = np.asarray(criteria, dtype=np.int64)
    N, n = labels.shape
    m = crit.shape[1]
    out = np.zeros((N, n_clusters, m), dtype=np.int64)
    rows = [[int(x) for x in crit[i]] for i in range(n)]
    for r in range(N):
        acc = [[0] * m for _ in range(n_clusters)]
        for i in range(n):
            cur = acc[int(labels[r, i])]
            src = rows[i]
            for q in range(m):
                if src[q] > cur[q]:
                    cur[q] = src[q]
        out[r] = acc
    return out
