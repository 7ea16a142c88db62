# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for partition enumeration and per-cluster aggregation.

Drop-in replacement for ``balclust._pykernels``; outputs are identical,
summation order included.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef struct Walk:
    int n
    int lam_lo
    int lam_hi
    int size_lo
    int size_hi
    int *labels
    int *sizes
    signed char *out
    Py_ssize_t count


cdef void _rec(Walk *w, int i, int k, int short) noexcept nogil:
    cdef int lab, s, top, need, c
    need = w.lam_lo - k
    if need < 0:
        need = 0
    if short + need * w.size_lo > w.n - i:
        return
    if i == w.n:
        if w.out != NULL:
            for c in range(w.n):
                w.out[w.count * w.n + c] = <signed char>w.labels[c]
        w.count += 1
        return
    top = k + 1 if k < w.lam_hi else k
    for lab in range(top):
        s = w.sizes[lab]
        if s >= w.size_hi:
            continue
        w.labels[i] = lab
        w.sizes[lab] = s + 1
        if lab == k:
            _rec(w, i + 1, k + 1, short + w.size_lo - 1)
        elif s < w.size_lo:
            _rec(w, i + 1, k, short - 1)
        else:
            _rec(w, i + 1, k, short)
        w.sizes[lab] = s


def enumerate_labels(int n, int lam_lo, int lam_hi, int size_lo, int size_hi, prefix=()):
    cdef Walk w
    cdef int i, lab, k, short
    cdef int start = len(prefix)
    if lam_hi > n:
        lam_hi = n
    if size_lo < 1:
        size_lo = 1
    if n < 1 or lam_lo > lam_hi or size_lo > size_hi or lam_hi * size_hi < n or start > n:
        return np.zeros((0, max(n, 0)), dtype=np.int8)
    w.n = n
    w.lam_lo = lam_lo
    w.lam_hi = lam_hi
    w.size_lo = size_lo
    w.size_hi = size_hi
    w.labels = <int *>malloc(n * sizeof(int))
    w.sizes = <int *>malloc((lam_hi + 1) * sizeof(int))
    if w.labels == NULL or w.sizes == NULL:
        free(w.labels)
        free(w.sizes)
        raise MemoryError()
    try:
        for i in range(lam_hi + 1):
            w.sizes[i] = 0
        k = 0
        for i in range(start):
            lab = int(prefix[i])
            if lab < 0 or lab > k or lab >= lam_hi or w.sizes[lab] >= size_hi:
                return np.zeros((0, n), dtype=np.int8)
            if lab == k:
                k += 1
            w.sizes[lab] += 1
            w.labels[i] = lab
        short = 0
        for i in range(k):
            if w.sizes[i] < size_lo:
                short += size_lo - w.sizes[i]
        # counting pass, then a filling pass into an exact-size buffer
        w.out = NULL
        w.count = 0
        with nogil:
            _rec(&w, start, k, short)
        result = np.empty((w.count, n), dtype=np.int8)
        if w.count:
            w.out = <signed char *>cnp.PyArray_DATA(result)
            w.count = 0
            with nogil:
                _rec(&w, start, k, short)
        return result
    finally:
        free(w.labels)
        free(w.sizes)


def cluster_stats(labels, int n_clusters, weights, types, int n_types, adj):
    cdef const cnp.int8_t[:, ::1] lab = np.ascontiguousarray(labels, dtype=np.int8)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const cnp.int64_t[::1] t = np.ascontiguousarray(types, dtype=np.int64)
    cdef const double[:, ::1] a = np.ascontiguousarray(adj, dtype=np.float64)
    cdef Py_ssize_t N = lab.shape[0]
    cdef Py_ssize_t n = lab.shape[1]
    cdef Py_ssize_t L = n_clusters
    sizes_arr = np.zeros((N, L), dtype=np.int64)
    wsum_arr = np.zeros((N, L), dtype=np.float64)
    vsum_arr = np.zeros((N, L), dtype=np.float64)
    counts_arr = np.zeros((N, L, n_types), dtype=np.int64)
    zeros_arr = np.zeros(N, dtype=np.int64)
    cdef cnp.int64_t[:, ::1] sizes = sizes_arr
    cdef double[:, ::1] wsum = wsum_arr
    cdef double[:, ::1] vsum = vsum_arr
    cdef cnp.int64_t[:, :, ::1] counts = counts_arr
    cdef cnp.int64_t[::1] zeros = zeros_arr
    cdef Py_ssize_t r, i, j
    cdef int ci
    cdef double v
    with nogil:
        for r in range(N):
            for i in range(n):
                ci = lab[r, i]
                sizes[r, ci] += 1
                wsum[r, ci] += w[i]
                counts[r, ci, t[i]] += 1
            for i in range(n):
                ci = lab[r, i]
                for j in range(i + 1, n):
                    if lab[r, j] == ci:
                        v = a[i, j]
                        vsum[r, ci] += v
                        if v == 0.0:
                            zeros[r] += 1
    return sizes_arr, wsum_arr, vsum_arr, counts_arr, zeros_arr


def cluster_max(labels, int n_clusters, criteria):
    cdef const cnp.int8_t[:, ::1] lab = np.ascontiguousarray(labels, dtype=np.int8)
    cdef const cnp.int64_t[:, ::1] crit = np.ascontiguousarray(criteria, dtype=np.int64)
    cdef Py_ssize_t N = lab.shape[0]
    cdef Py_ssize_t n = lab.shape[1]
    cdef Py_ssize_t m = crit.shape[1]
    out_arr = np.zeros((N, n_clusters, m), dtype=np.int64)
    cdef cnp.int64_t[:, :, ::1] out = out_arr
    cdef Py_ssize_t r, i, q
    cdef int ci
    with nogil:
        for r in range(N):
            for i in range(n):
                ci = lab[r, i]
                for q in range(m):
                    if crit[i, q] > out[r, ci, q]:
                        out[r, ci, q] = crit[i, q]
    return out_arr
