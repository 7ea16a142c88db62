"""Report assembly (JSON-ready dicts) and plain-text rendering."""

from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

from .indices import (
    IndexReport,
    ReferenceParams,
    evaluate_solution,
    proximity_matrix,
    summarize_solution,
)
from .instance import ClusteringSolution, Instance
from .optimize.exact import ParetoResult, SolveResult
from .optimize.local_search import LocalSearchResult
from .team import TeamInstance, TeamReport

_INDEX_ROWS = (
    ("b_card", "cardinality spread"),
    ("b_weight", "weight spread"),
    ("b_edge", "intra-edge weight spread"),
    ("b_struct", "structure spread (steps)"),
    ("ref_card", "cardinality deviation from reference"),
    ("ref_weight", "weight deviation from reference"),
    ("ref_edge", "intra-edge weight deviation from reference"),
    ("ref_struct", "structure distance to reference (steps)"),
)


def num(x: Any) -> Any:
    """Round floats for stable output; integers pass through."""
    if isinstance(x, float):
        r = round(x, 9)
        return int(r) if r.is_integer() and abs(r) < 2**53 else r
    return x


def to_json(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _instance_header(inst: Instance) -> dict[str, Any]:
    return {
        "name": inst.extra.get("name", ""),
        "digest": inst.digest(),
        "n": inst.n,
        "type_count": inst.type_count,
        "edges": len(inst.graph),
    }


def _errata(inst: Instance, name: str, clusters: list[dict], indices: dict, prox: list[list[int]]) -> list[dict]:
    notes = []
    for entry in inst.extra.get("errata", []):
        if entry.get("solution") != name:
            continue
        if "cluster" in entry:
            where = f"cluster {entry['cluster']} {entry['field']}"
            computed = clusters[entry["cluster"] - 1][entry["field"]]
        elif "index" in entry:
            where = entry["index"]
            computed = indices.get(entry["index"])
            if computed is None:
                continue
        elif "proximity" in entry:
            a, b = entry["proximity"]
            where = f"proximity({a},{b})"
            computed = prox[a - 1][b - 1]
        else:
            continue
        published = entry["published"]
        if abs(float(computed) - float(published)) > 1e-9:
            notes.append({
                "where": where,
                "published": published,
                "computed": computed,
                "note": entry.get("note", ""),
            })
    return notes


def evaluate_report(
    inst: Instance,
    sol: ClusteringSolution,
    name: str = "",
    ref: ReferenceParams | None = None,
) -> dict[str, Any]:
    summaries = summarize_solution(inst, sol)
    report: IndexReport = evaluate_solution(inst, sol, ref)
    clusters = [
        {
            "index": i,
            "members": list(members),
            "size": s.size,
            "weight": num(s.total_weight),
            "intra_edge_weight": num(s.intra_edge_weight),
            "estimate": list(s.estimate.counts),
        }
        for i, (members, s) in enumerate(zip(sol.clusters, summaries), 1)
    ]
    indices = {k: num(v) for k, v in report.as_dict().items() if v is not None}
    prox = proximity_matrix(summaries)
    return {
        "command": "evaluate",
        "instance": _instance_header(inst),
        "solution": {"name": name, "clusters": sol.as_lists()},
        "reference": ref.to_dict() if ref is not None else None,
        "clusters": clusters,
        "proximity": prox,
        "indices": indices,
        "errata": _errata(inst, name, clusters, indices, prox),
    }


def _table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> list[str]:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
    out = [line, "-" * len(line)]
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return out


def _estimate(counts: Sequence[int]) -> str:
    return "(" + ",".join(map(str, counts)) + ")"


def render_evaluate(doc: dict[str, Any]) -> str:
    inst = doc["instance"]
    lines = [f"instance {inst['name'] or '?'} ({inst['digest']}): n={inst['n']}, types={inst['type_count']}, edges={inst['edges']}"]
    sol = doc["solution"]
    lines.append(f"solution {sol['name'] or '?'}: {len(sol['clusters'])} clusters")
    lines.append("")
    lines += _table(
        ["cluster", "members", "size", "weight", "intra edge weight", "estimate"],
        [
            [c["index"], ",".join(map(str, c["members"])), c["size"], c["weight"],
             c["intra_edge_weight"], _estimate(c["estimate"])]
            for c in doc["clusters"]
        ],
    )
    lines.append("")
    lines.append("proximity between cluster estimates")
    k = len(doc["proximity"])
    lines += _table([""] + [str(i) for i in range(1, k + 1)],
                    [[i] + row for i, row in enumerate(doc["proximity"], 1)])
    if doc["reference"] is not None:
        r = doc["reference"]
        lines.append("")
        lines.append(
            f"reference: size {num(r['size'])}, weight {num(r['weight'])}, "
            f"edge weight {num(r['edge_weight'])}, estimate {_estimate(r['estimate'])}"
        )
    lines.append("")
    lines += _table(
        ["index", "description", "value"],
        [[key, desc, doc["indices"][key]] for key, desc in _INDEX_ROWS if key in doc["indices"]],
    )
    for note in doc["errata"]:
        lines.append(
            f"note: {note['where']} computed {note['computed']}, published {note['published']}"
            + (f" ({note['note']})" if note["note"] else "")
        )
    return "\n".join(lines) + "\n"


def solve_report(inst: Instance, spec_name: str, labels: Sequence[str], result: SolveResult,
                 local: LocalSearchResult | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "command": "solve",
        "instance": _instance_header(inst),
        "spec": spec_name,
        "objective": list(labels),
        "status": result.status,
        "value": num(result.value) if result.value is not None else None,
        "solution": result.solution.as_lists() if result.solution else None,
        "enumerated": result.enumerated,
        "feasible": result.feasible,
    }
    if local is not None:
        doc["local_search"] = {
            "value": num(local.value),
            "solution": local.solution.as_lists(),
            "evaluations": local.evaluations,
            "trace": [num(v) for v in local.trace],
        }
    return doc


def local_report(inst: Instance, spec_name: str, labels: Sequence[str], start: str,
                 local: LocalSearchResult) -> dict[str, Any]:
    return {
        "command": "solve",
        "method": "local-search",
        "instance": _instance_header(inst),
        "spec": spec_name,
        "objective": list(labels),
        "start": start,
        "status": "improved" if len(local.trace) > 1 else "local-optimum",
        "value": num(local.value),
        "solution": local.solution.as_lists(),
        "evaluations": local.evaluations,
        "trace": [num(v) for v in local.trace],
    }


def pareto_report(inst: Instance, spec_name: str, result: ParetoResult) -> dict[str, Any]:
    return {
        "command": "pareto",
        "instance": _instance_header(inst),
        "spec": spec_name,
        "objectives": list(result.labels),
        "status": result.status,
        "front": [
            {"values": [num(v) for v in p.values], "solution": p.solution.as_lists()}
            for p in result.points
        ],
        "enumerated": result.enumerated,
        "feasible": result.feasible,
    }


def render_solve(doc: dict[str, Any]) -> str:
    lines = [f"instance {doc['instance']['name'] or '?'} ({doc['instance']['digest']}), spec {doc['spec'] or '?'}"]
    if doc.get("method") == "local-search":
        lines.append(f"local search from {doc['start']}: {doc['status']} after {doc['evaluations']} move evaluations")
        lines.append(f"objective {', '.join(doc['objective'])} = {doc['value']}")
        lines.append("trace: " + " -> ".join(map(str, doc["trace"])))
        lines.append("solution: " + _clusters(doc["solution"]))
        return "\n".join(lines) + "\n"
    lines.append(f"status: {doc['status']} ({doc['feasible']} feasible of {doc['enumerated']} enumerated)")
    if doc["solution"] is not None:
        lines.append(f"objective {', '.join(doc['objective'])} = {doc['value']}")
        lines.append("solution: " + _clusters(doc["solution"]))
    if "local_search" in doc:
        ls = doc["local_search"]
        lines.append(f"local search: {ls['value']} after {ls['evaluations']} evaluations")
    return "\n".join(lines) + "\n"


def render_pareto(doc: dict[str, Any]) -> str:
    lines = [f"instance {doc['instance']['name'] or '?'} ({doc['instance']['digest']}), spec {doc['spec'] or '?'}"]
    lines.append(f"status: {doc['status']} ({doc['feasible']} feasible of {doc['enumerated']} enumerated)")
    lines.append(f"{len(doc['front'])} nondominated objective vectors")
    lines += _table(
        doc["objectives"] + ["solution"],
        [p["values"] + [_clusters(p["solution"])] for p in doc["front"]],
    )
    return "\n".join(lines) + "\n"


def _clusters(clusters: Sequence[Sequence[int]]) -> str:
    return " | ".join("{" + ",".join(map(str, c)) + "}" for c in clusters)


def team_report(ti: TeamInstance, mode: str, sol: ClusteringSolution, rep: TeamReport,
                kernels: Sequence[int] | None = None) -> dict[str, Any]:
    return {
        "command": "team",
        "mode": mode,
        "instance": _instance_header(ti.instance),
        "kernels": list(kernels) if kernels is not None else None,
        "teams": [
            {
                "members": list(t.members),
                "skill": list(t.skill),
                "compat": t.compat,
                "size_ok": t.size_ok,
                "skill_ok": t.skill_ok,
                "compatible": t.compatible,
            }
            for t in rep.teams
        ],
        "b_card": rep.b_card,
        "b_edge": rep.b_edge,
        "worst_compat": rep.worst_compat,
        "worst_skill": list(rep.worst_skill),
        "feasible": rep.feasible,
    }


def render_team(doc: dict[str, Any]) -> str:
    lines = [f"team design ({doc['mode']}) on {doc['instance']['name'] or '?'}"]
    if doc["kernels"] is not None:
        lines.append("kernels: " + ", ".join(f"a{k}" for k in doc["kernels"]))
    lines += _table(
        ["team", "members", "skill", "compat", "size ok", "skill ok", "compatible"],
        [
            [i, ",".join(map(str, t["members"])), _estimate(t["skill"]), t["compat"],
             t["size_ok"], t["skill_ok"], t["compatible"]]
            for i, t in enumerate(doc["teams"], 1)
        ],
    )
    lines.append(f"b_card = {doc['b_card']}, b_edge = {doc['b_edge']}, worst compat = {doc['worst_compat']}, "
                 f"worst skill = {_estimate(doc['worst_skill'])}, feasible = {doc['feasible']}")
    return "\n".join(lines) + "\n"
