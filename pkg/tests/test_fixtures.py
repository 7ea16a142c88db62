from itertools import combinations

import numpy as np
import pytest

from balclust.instance import load_json
from balclust.optimize import load_problem, search_size, solve_exact, solve_pareto
from balclust.optimize.exact import DEFAULT_CAP


def blocks_3444(n=15):
    """Every partition of 0..n-1 into one block of 3 and three of 4, as an
    (N, 4, 4) array of member indices padded with -1."""
    rows = []
    for triple in combinations(range(n), 3):
        rest = [j for j in range(n) if j not in triple]
        first = rest[0]
        for a in combinations(rest[1:], 3):
            block_a = (first,) + a
            rem = [j for j in rest if j not in block_a]
            for b in combinations(rem[1:], 3):
                block_b = (rem[0],) + b
                block_c = tuple(j for j in rem if j not in block_b)
                rows.append((triple + (-1,), block_a, block_b, block_c))
    return np.array(rows, dtype=np.int64)


@pytest.fixture(scope="module")
def fig10_blocks(fig10):
    blocks = blocks_3444()
    mask = blocks >= 0
    idx = np.where(mask, blocks, 0)
    w = np.where(mask, fig10.weights[idx], 0.0).sum(axis=2)
    adj = fig10.adjacency
    v = np.zeros(w.shape)
    for p, q in combinations(range(4), 2):
        ok = mask[:, :, p] & mask[:, :, q]
        v += np.where(ok, adj[idx[:, :, p], idx[:, :, q]], 0.0)
    types = fig10.types
    counts = np.stack([(np.where(mask, types[idx], -1) == t).sum(axis=2) for t in range(3)], axis=2)
    return blocks, w, v, np.cumsum(counts, axis=2)


@pytest.mark.parametrize("k", range(1, 7))
def test_problem_fixtures_fit_the_default_cap(fig10, k):
    spec = load_problem(f"problem{k}.json")
    assert 0 < search_size(fig10, spec) <= DEFAULT_CAP


def test_search_space_of_card_bounded_problems(fig10_blocks):
    assert len(fig10_blocks[0]) == 2627625


@pytest.mark.slow
def test_problem2_optimum(fig10, fig10_blocks):
    blocks, w, v, pre = fig10_blocks
    struct = np.abs(pre[:, :, None, :] - pre[:, None, :, :]).sum(axis=3).max(axis=(1, 2))
    spread = (w.max(axis=1) - w.min(axis=1)).round(9)
    best = spread[struct <= 4].min()
    res = solve_exact(fig10, load_problem("problem2.json"))
    assert res.status == "optimal"
    assert res.value == pytest.approx(best, abs=1e-9)


@pytest.mark.slow
def test_problem6_front(fig10, fig10_blocks):
    blocks, w, v, pre = fig10_blocks
    ref = load_json("ref_xprime.json")
    ref_pre = np.cumsum(ref["estimate"][:-1])
    ok = np.abs(pre - ref_pre).sum(axis=2).max(axis=1) <= 2
    pts = np.stack([(w.max(axis=1) - w.min(axis=1)), np.abs(v - ref["edge_weight"]).max(axis=1)], axis=1)
    pts = np.unique(pts[ok].round(9), axis=0)
    front = {tuple(p) for p in pts if not np.any(np.all(pts <= p, axis=1) & np.any(pts < p, axis=1))}
    got = solve_pareto(fig10, load_problem("problem6.json"))
    assert {tuple(round(x, 9) for x in p.values) for p in got.points} == front
