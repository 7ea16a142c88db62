import io
import json
import subprocess
import sys

import pytest

from balclust.cli import run_cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_evaluate_text_has_tables_and_errata():
    code, out, _ = run("evaluate", "fig10.json", "--solution", "xprime", "--reference", "ref_xprime.json")
    assert code == 0
    assert "intra edge weight" in out and "ref_weight" in out
    assert "note: cluster 3 intra_edge_weight computed 14.3, published 15.4" in out


def test_evaluate_json():
    code, out, _ = run("evaluate", "fig10.json", "--solution", "xprime", "--reference", "ref_xprime.json", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["indices"]["b_card"] == 1
    assert doc["indices"]["ref_weight"] == 4.7
    assert [c["size"] for c in doc["clusters"]] == [4, 3, 4, 4]
    assert {e["where"] for e in doc["errata"]} == {
        "proximity(1,2)", "cluster 3 intra_edge_weight", "cluster 4 intra_edge_weight", "b_edge"}


def test_text_contains_every_json_number():
    _, text, _ = run("evaluate", "fig10.json", "--solution", "xdprime", "--reference", "ref_xdprime.json")
    _, raw, _ = run("evaluate", "fig10.json", "--solution", "xdprime", "--reference", "ref_xdprime.json", "--json")
    doc = json.loads(raw)
    for c in doc["clusters"]:
        for key in ("size", "weight", "intra_edge_weight"):
            assert str(c[key]) in text
    for v in doc["indices"].values():
        assert str(v) in text


def test_unknown_solution_is_input_error():
    code, out, err = run("evaluate", "fig10.json", "--solution", "nosuch")
    assert code == 1 and out == ""
    assert "unknown solution 'nosuch'" in err


@pytest.mark.parametrize("argv", [["bogus"], ["evaluate", "fig10.json"], ["lattice", "--types", "x", "--size", "2"],
                                  ["evaluate", "missing.json", "--solution", "a"]])
def test_input_errors_exit_1(argv):
    code, _, err = run(*argv)
    assert code == 1
    assert err


def test_schema_violation_is_input_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"type_count": 1, "elements": [{"id": 1, "weight": -2, "type": 1}]}))
    code, _, err = run("evaluate", str(bad), "--solution", "x")
    assert code == 1 and "elements[0].weight" in err


def test_lattice_dot_has_35_nodes():
    code, out, _ = run("lattice", "--types", "4", "--size", "4", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("[label=") == 35


def test_lattice_json():
    _, out, _ = run("lattice", "--types", "3", "--size", "2", "--format", "json")
    doc = json.loads(out)
    assert len(doc["nodes"]) == 6 and len(doc["edges"]) == 6


def small_instance(tmp_path):
    doc = {
        "type_count": 2,
        "elements": [{"id": j, "weight": float(j % 4 + 1), "type": j % 2 + 1} for j in range(1, 11)],
        "edges": [[a, b, float((a * b) % 5)] for a in range(1, 11) for b in range(a + 1, 11) if (a + b) % 3 == 0],
        "solutions": {"start": [[1, 2, 3, 4, 5], [6, 7, 8, 9, 10]]},
    }
    p = tmp_path / "inst.json"
    p.write_text(json.dumps(doc))
    return str(p)


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_solve_and_pareto(tmp_path):
    inst = small_instance(tmp_path)
    spec = write(tmp_path, "s.json", {"objectives": [{"index": "weight"}], "lambda": 3})
    code, out, _ = run("solve", inst, "--spec", spec, "--json")
    assert code == 0 and json.loads(out)["status"] == "optimal"
    spec2 = write(tmp_path, "p.json", {"objectives": [{"index": "weight"}, {"index": "edge"}], "lambda_max": 3})
    code, out, _ = run("pareto", inst, "--spec", spec2, "--json")
    assert code == 0 and json.loads(out)["front"]


def test_exit_codes_infeasible_and_cap(tmp_path):
    inst = small_instance(tmp_path)
    spec = write(tmp_path, "s.json", {"objectives": [{"index": "weight"}], "lambda": 3, "size_min": 4})
    assert run("solve", inst, "--spec", spec)[0] == 2
    assert run("pareto", inst, "--spec", spec)[0] == 2
    spec = write(tmp_path, "c.json", {"objectives": [{"index": "weight"}]})
    code, _, err = run("solve", inst, "--spec", spec, "--cap", "10")
    assert code == 3 and "cap" in err


def test_local_search_mode(tmp_path):
    inst = small_instance(tmp_path)
    spec = write(tmp_path, "s.json", {"objectives": [{"index": "weight"}], "lambda": 2})
    code, out, _ = run("solve", inst, "--spec", spec, "--local-search", "start", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["method"] == "local-search"
    assert doc["trace"] == sorted(doc["trace"], reverse=True)


def test_workers_leave_json_byte_identical(tmp_path):
    inst = small_instance(tmp_path)
    spec = write(tmp_path, "p.json", {"objectives": [{"index": "weight"}, {"index": "card"}], "lambda_max": 4})
    outs = {run("pareto", inst, "--spec", spec, "--json", "--workers", str(w))[1] for w in (1, 2, 4)}
    assert len(outs) == 1
    spec1 = write(tmp_path, "s.json", {"objectives": [{"index": "edge"}], "lambda_max": 4})
    outs = {run("solve", inst, "--spec", spec1, "--json", "--workers", str(w))[1] for w in (1, 3)}
    assert len(outs) == 1


def test_team_modes():
    code, out, _ = run("team", "students.json", "--spec", "team_spec.json", "--heuristic", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["kernels"] == [1, 3, 6, 9] and doc["feasible"]
    code, out, _ = run("team", "students.json", "--spec", "team_spec.json", "--evaluate", "published", "--json")
    doc = json.loads(out)
    assert code == 0 and [t["compat"] for t in doc["teams"]] == [8, 8, 8, 15]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "balclust.cli", "lattice", "--types", "2", "--size", "1", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "(1,0) > (0,1)\n(0,1)\n"
