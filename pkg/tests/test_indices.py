import random

import pytest

from balclust.errors import EstimateMismatchError
from balclust.indices import (
    ReferenceParams,
    evaluate_solution,
    intra_edge_weight,
    method1_indices,
    method2_indices,
    summarize_solution,
)
from balclust.instance import ClusteringSolution, instance_from_dict, validate_solution
from balclust.lattice import MultisetEstimate


@pytest.fixture
def small():
    # two types; weights chosen so every index is easy to follow by hand
    return instance_from_dict({
        "type_count": 2,
        "elements": [
            {"id": 1, "weight": 1.0, "type": 1},
            {"id": 2, "weight": 2.0, "type": 1},
            {"id": 3, "weight": 3.0, "type": 2},
            {"id": 4, "weight": 4.0, "type": 2},
            {"id": 5, "weight": 5.0, "type": 1},
        ],
        "edges": [[1, 2, 1.5], [1, 3, 2.0], [2, 3, 0.5], [4, 5, 4.0], [3, 4, 9.0]],
        "solutions": {"s": [[1, 2, 3], [4, 5]]},
    })


def test_summaries(small):
    a, b = summarize_solution(small, small.solution("s"))
    assert (a.size, a.total_weight, a.intra_edge_weight) == (3, 6.0, 4.0)
    assert (b.size, b.total_weight, b.intra_edge_weight) == (2, 9.0, 4.0)
    assert a.estimate.counts == (2, 1, 0)
    assert b.estimate.counts == (1, 1, 1)


def test_difference_indices(small):
    d = method1_indices(small, small.solution("s"))
    assert (d.card, d.weight, d.edge) == (1, 3.0, 0.0)
    # prefix sums (2,3) vs (1,2)
    assert d.struct == 2


def test_reference_indices(small):
    ref = ReferenceParams(2, 7.0, 3.0, MultisetEstimate.of(1, 2, 0))
    r = method2_indices(small, small.solution("s"), ref)
    assert (r.card, r.weight, r.edge) == (1, 2.0, 1.0)
    # (2,1,0) vs (1,2,0): prefix (2,3) vs (1,3); (1,1,1) vs (1,2,0): (1,2) vs (1,3)
    assert r.struct == 1


def test_reference_scale_must_match(small):
    sol = small.solution("s")
    with pytest.raises(EstimateMismatchError):
        method2_indices(small, sol, ReferenceParams(2, 7.0, 3.0, MultisetEstimate.of(1, 1, 0)))
    with pytest.raises(EstimateMismatchError):
        method2_indices(small, sol, ReferenceParams(2, 7.0, 3.0, MultisetEstimate.of(1, 1, 0, 1)))


def test_single_cluster_has_zero_spread(small):
    rep = evaluate_solution(small, validate_solution(small, [[1, 2, 3, 4, 5]]))
    assert (rep.b_card, rep.b_weight, rep.b_edge, rep.b_struct) == (0, 0.0, 0.0, 0)
    assert rep.ref_card is None


def test_reference_roundtrip():
    ref = ReferenceParams(4, 12.0, 15.0, MultisetEstimate.of(1, 1, 2, 0))
    assert ReferenceParams.from_dict(ref.to_dict()) == ref


def random_instance(rng, n, types):
    elements = [{"id": j, "weight": round(rng.uniform(0, 5), 1), "type": rng.randint(1, types)} for j in range(1, n + 1)]
    edges = [[a, b, round(rng.uniform(0, 3), 1)] for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < 0.4]
    return instance_from_dict({"type_count": types, "elements": elements, "edges": edges})


@pytest.mark.parametrize("seed", range(20))
def test_indices_ignore_cluster_order(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 10)
    inst = random_instance(rng, n, 3)
    sol = ClusteringSolution.from_labels([rng.randrange(3) for _ in range(n)])
    shuffled = list(sol.clusters)
    rng.shuffle(shuffled)
    a = evaluate_solution(inst, sol)
    b = evaluate_solution(inst, validate_solution(inst, shuffled))
    assert a.b_card == b.b_card and a.b_struct == b.b_struct
    assert a.b_weight == pytest.approx(b.b_weight)
    assert a.b_edge == pytest.approx(b.b_edge)


@pytest.mark.parametrize("seed", range(20))
def test_intra_weight_partitions_total(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(2, 10)
    inst = random_instance(rng, n, 2)
    sol = ClusteringSolution.from_labels([rng.randrange(2) for _ in range(n)])
    inside = sum(intra_edge_weight(inst, c) for c in sol.clusters)
    members = {j: c for c, ms in enumerate(sol.clusters) for j in ms}
    between = sum(v for a, b, v in inst.graph.edges if members[a] != members[b])
    assert inside + between == pytest.approx(sum(v for _, _, v in inst.graph.edges))
