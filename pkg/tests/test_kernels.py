import os
import subprocess
import sys
from itertools import product

import numpy as np
import pytest

from balclust import _pykernels, kernels

try:
    from balclust import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
BACKENDS.append(pytest.param(_ckernels, id="cython", marks=pytest.mark.skipif(_ckernels is None, reason="extension not built")))


def brute_rgs(n, lam_lo, lam_hi, lo, hi):
    """Filter every label vector down to the restricted-growth ones."""
    out = []
    for labels in product(range(n), repeat=n):
        top = -1
        ok = True
        for lab in labels:
            if lab > top + 1:
                ok = False
                break
            top = max(top, lab)
        if not ok:
            continue
        sizes = np.bincount(labels)
        if lam_lo <= len(sizes) <= lam_hi and sizes.min() >= lo and sizes.max() <= hi:
            out.append(labels)
    return sorted(out)


CASES = [(5, 1, 5, 1, 5), (6, 2, 3, 1, 6), (6, 3, 3, 2, 2), (7, 2, 4, 2, 3), (1, 1, 1, 1, 1), (5, 4, 5, 2, 5)]


@pytest.mark.parametrize("impl", BACKENDS)
@pytest.mark.parametrize("case", CASES)
def test_enumeration_matches_brute_force(impl, case):
    got = impl.enumerate_labels(*case)
    assert got.dtype == np.int8
    assert [tuple(r) for r in got.tolist()] == brute_rgs(*case)


@pytest.mark.parametrize("impl", BACKENDS)
def test_prefix_restricts_to_subtree(impl):
    full = impl.enumerate_labels(6, 1, 6, 1, 6)
    sub = impl.enumerate_labels(6, 1, 6, 1, 6, prefix=(0, 1))
    expected = [r for r in full.tolist() if r[:2] == [0, 1]]
    assert sub.tolist() == expected
    assert len(sub) == 151
    assert len(impl.enumerate_labels(6, 1, 6, 1, 6, prefix=(1,))) == 0


@pytest.mark.skipif(_ckernels is None, reason="extension not built")
def test_backends_agree_on_aggregates():
    rng = np.random.default_rng(7)
    n, lam = 9, 3
    labels = _pykernels.enumerate_labels(n, lam, lam, 2, 4)
    weights = rng.uniform(0, 5, n).round(1)
    types = rng.integers(0, 3, n)
    adj = np.triu(rng.uniform(0, 3, (n, n)).round(1) * (rng.random((n, n)) < 0.5), 1)
    adj = adj + adj.T
    crit = rng.integers(0, 4, (n, 4))
    py = _pykernels.cluster_stats(labels, lam, weights, types, 3, adj)
    cy = _ckernels.cluster_stats(labels, lam, weights, types, 3, adj)
    for a, b in zip(py, cy):
        assert np.array_equal(a, b)
    assert np.array_equal(_pykernels.cluster_max(labels, lam, crit), _ckernels.cluster_max(labels, lam, crit))
    assert np.array_equal(_pykernels.enumerate_labels(n, 2, 4, 2, 5), _ckernels.enumerate_labels(n, 2, 4, 2, 5))


@pytest.mark.parametrize("impl", BACKENDS)
def test_cluster_stats_by_hand(impl):
    labels = np.array([[0, 0, 1, 1]], dtype=np.int8)
    adj = np.zeros((4, 4))
    adj[0, 1] = adj[1, 0] = 2.5
    adj[2, 3] = adj[3, 2] = 0.0
    sizes, wsum, vsum, counts, zeros = impl.cluster_stats(labels, 2, np.array([1.0, 2.0, 3.0, 4.0]), np.array([0, 1, 1, 1]), 2, adj)
    assert sizes.tolist() == [[2, 2]]
    assert wsum.tolist() == [[3.0, 7.0]]
    assert vsum.tolist() == [[2.5, 0.0]]
    assert counts.tolist() == [[[1, 1], [0, 2]]]
    assert zeros.tolist() == [1]


def test_backend_selection_env():
    env = dict(os.environ, BALCLUST_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "from balclust import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND == ("cython" if kernels.compiled_available() and os.environ.get("BALCLUST_BACKEND") != "python" else "python")
