import json

import numpy as np
import pytest

from balclust.errors import InstanceError, SolutionError
from balclust.instance import (
    ClusteringSolution,
    dump_instance,
    instance_from_dict,
    load_instance,
    parse_instance,
    validate_solution,
)


def doc(**over):
    base = {
        "type_count": 2,
        "elements": [
            {"id": 1, "weight": 1.5, "type": 1},
            {"id": 2, "weight": 2.0, "type": 2},
            {"id": 3, "weight": 0.5, "type": 1},
        ],
        "edges": [[1, 2, 3.0], [3, 2, 1.0]],
        "solutions": {"s": [[2, 1], [3]]},
    }
    base.update(over)
    return base


def test_roundtrip_preserves_everything():
    inst = instance_from_dict(doc(name="tiny"))
    again = parse_instance(dump_instance(inst))
    assert again == inst
    assert again.digest() == inst.digest()
    assert again.extra["name"] == "tiny"


def test_arrays_and_lookup():
    inst = instance_from_dict(doc())
    assert inst.n == 3
    assert list(inst.types) == [0, 1, 0]
    assert inst.graph.weight(2, 1) == 3.0
    assert inst.graph.weight(1, 3) == 0.0
    adj = inst.adjacency
    assert np.array_equal(adj, adj.T)
    assert adj[1, 2] == 1.0
    with pytest.raises(ValueError):
        inst.weights[0] = 9.0


def test_stored_solution_keeps_cluster_order():
    sol = instance_from_dict(doc(solutions={"s": [[3], [2, 1]]})).solution("s")
    assert sol.clusters == ((3,), (1, 2))
    assert sol.cluster(2) == (1, 2)
    assert sol.labels == (0, 0, 1)
    assert sol == ClusteringSolution.from_labels([0, 0, 1])
    assert hash(sol) == hash(sol.canonical())


def test_unknown_solution_lists_names():
    inst = instance_from_dict(doc())
    with pytest.raises(KeyError, match="known: s"):
        inst.solution("nosuch")


@pytest.mark.parametrize(
    "over, path",
    [
        ({"elements": [{"id": 1, "weight": 1, "type": 1}, {"id": 1, "weight": 1, "type": 1}]}, "elements[1].id"),
        ({"elements": [{"id": 1, "weight": -1, "type": 1}]}, "elements[0].weight"),
        ({"elements": [{"id": 1, "weight": 1, "type": 3}]}, "elements[0].type"),
        ({"edges": [[1, 1, 2.0]]}, "edges[0]"),
        ({"edges": [[1, 2, 2.0], [2, 1, 3.0]]}, "edges[1]"),
        ({"edges": [[1, 9, 2.0]]}, "edges[0][1]"),
        ({"type_count": 0}, "type_count"),
    ],
)
def test_schema_errors_name_the_field(over, path):
    over.setdefault("solutions", {})
    with pytest.raises(InstanceError) as info:
        instance_from_dict(doc(**over))
    assert info.value.path == path


def test_malformed_json():
    with pytest.raises(InstanceError, match="malformed JSON"):
        parse_instance("{nope")


@pytest.mark.parametrize(
    "clusters, kind",
    [
        ([[1, 2], [2, 3]], "overlap"),
        ([[1, 2]], "coverage"),
        ([[1, 2, 3, 4]], "unknown"),
        ([[1, 2, 3], []], "empty"),
    ],
)
def test_validate_solution_rejects(clusters, kind):
    inst = instance_from_dict(doc())
    with pytest.raises(SolutionError) as info:
        validate_solution(inst, clusters)
    assert info.value.kind == kind


def test_bundled_fixtures_load(fig4, fig10, students):
    assert fig4.n == 39 and fig4.solution("fig4").sizes == (5, 5, 6, 5, 4, 7, 7)
    assert fig10.n == 15 and len(fig10.graph) == 26
    assert students.n == 13


def test_load_from_path(tmp_path):
    p = tmp_path / "x.json"
    p.write_text(json.dumps(doc()))
    assert load_instance(p).n == 3
    with pytest.raises(FileNotFoundError):
        load_instance(tmp_path / "missing.json")
