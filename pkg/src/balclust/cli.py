"""Command-line front end: ``balclust {evaluate,solve,pareto,team,lattice}``."""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
import time
from typing import Sequence, TextIO

from . import report
from .errors import (
    BalclustError,
    EnumerationCapExceeded,
    HeuristicInfeasible,
)
from .indices import ReferenceParams
from .instance import load_instance, load_json
from .lattice import enumerate_scale, scale_to_dot
from .optimize import DEFAULT_CAP, load_problem, local_search_improve, solve_exact, solve_pareto
from .optimize.exact import objective_labels
from .team import (
    TeamInstance,
    estimate_team_count,
    evaluate_teams,
    kernel_heuristic,
    load_team_spec,
    select_kernels,
    team_problem,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_CAP = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which we reserve for infeasibility
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="balclust", description="Balanced clustering: evaluation and exact search.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("evaluate", help="balance indices of a stored solution")
    ev.add_argument("instance")
    ev.add_argument("--solution", required=True, help="solution name inside the instance file")
    ev.add_argument("--reference", help="reference parameters JSON")
    ev.add_argument("--json", action="store_true")

    for name, helptext in (("solve", "single-objective exact search"), ("pareto", "Pareto front by enumeration")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("instance")
        sp.add_argument("--spec", required=True, help="problem spec JSON")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration guard (partitions)")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--timing", action="store_true", help="print wall time on stderr")
        if name == "solve":
            sp.add_argument("--local-search", metavar="START",
                            help="improve the named stored solution instead of enumerating")
            sp.add_argument("--budget", type=int, default=100_000, help="local search move evaluations")

    tm = sub.add_parser("team", help="team formation")
    tm.add_argument("instance")
    tm.add_argument("--spec", required=True, help="team spec JSON")
    mode = tm.add_mutually_exclusive_group()
    mode.add_argument("--heuristic", dest="mode", action="store_const", const="heuristic")
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--pareto", dest="mode", action="store_const", const="pareto")
    mode.add_argument("--evaluate", metavar="SOLUTION", help="check a stored team assignment")
    tm.add_argument("--with-skill", action="store_true", help="add the worst skill vector to the Pareto criteria")
    tm.add_argument("--cap", type=int, default=DEFAULT_CAP)
    tm.add_argument("--workers", type=int, default=1)
    tm.add_argument("--json", action="store_true")
    tm.set_defaults(mode="heuristic")

    la = sub.add_parser("lattice", help="scale of multiset estimates")
    la.add_argument("--types", type=int, required=True, help="number of levels, the empty slot included")
    la.add_argument("--size", type=int, required=True, help="total multiplicity")
    la.add_argument("--format", choices=("dot", "json", "text"), default="dot")
    return p


def _emit(out: TextIO, doc: dict, as_json: bool, render) -> None:
    out.write(report.to_json(doc) if as_json else render(doc))


def _cmd_evaluate(args, out: TextIO) -> int:
    inst = load_instance(args.instance)
    sol = inst.solution(args.solution)
    ref = ReferenceParams.from_dict(load_json(args.reference)) if args.reference else None
    _emit(out, report.evaluate_report(inst, sol, args.solution, ref), args.json, report.render_evaluate)
    return EXIT_OK


def _cmd_solve(args, out: TextIO, err: TextIO) -> int:
    inst = load_instance(args.instance)
    spec = load_problem(args.spec)
    labels = objective_labels(inst, spec)
    t0 = time.perf_counter()
    if args.local_search:
        res = local_search_improve(inst, inst.solution(args.local_search), spec, args.budget)
        doc = report.local_report(inst, spec.name, labels, args.local_search, res)
        ok = True
    else:
        result = solve_exact(inst, spec, args.cap, args.workers)
        doc = report.solve_report(inst, spec.name, labels, result)
        ok = result.solution is not None
    _timing(args, err, t0)
    _emit(out, doc, args.json, report.render_solve)
    return EXIT_OK if ok else EXIT_INFEASIBLE


def _cmd_pareto(args, out: TextIO, err: TextIO) -> int:
    inst = load_instance(args.instance)
    spec = load_problem(args.spec)
    t0 = time.perf_counter()
    result = solve_pareto(inst, spec, args.cap, args.workers)
    _timing(args, err, t0)
    _emit(out, report.pareto_report(inst, spec.name, result), args.json, report.render_pareto)
    return EXIT_OK if result.points else EXIT_INFEASIBLE


def _timing(args, err: TextIO, t0: float) -> None:
    if args.timing:
        err.write(f"wall time {time.perf_counter() - t0:.3f} s\n")


def _cmd_team(args, out: TextIO) -> int:
    ti = TeamInstance.from_instance(load_instance(args.instance))
    spec = load_team_spec(args.spec)
    if args.evaluate:
        sol = ti.instance.solution(args.evaluate)
        rep = evaluate_teams(ti, sol, spec)
        _emit(out, report.team_report(ti, "evaluate", sol, rep), args.json, report.render_team)
        return EXIT_OK if rep.feasible else EXIT_INFEASIBLE
    if args.mode == "heuristic":
        kernels = select_kernels(ti, spec, estimate_team_count(ti.n, spec))
        sol = kernel_heuristic(ti, spec)
        doc = report.team_report(ti, "heuristic", sol, evaluate_teams(ti, sol, spec), kernels)
        _emit(out, doc, args.json, report.render_team)
        return EXIT_OK
    ginst = ti.graph_instance()
    if args.mode == "exact":
        result = solve_exact(ginst, team_problem(spec, "exact"), args.cap, args.workers)
        if result.solution is None:
            raise HeuristicInfeasible("no partition satisfies the team constraints")
        doc = report.team_report(ti, "exact", result.solution, evaluate_teams(ti, result.solution, spec))
        doc["enumerated"] = result.enumerated
        _emit(out, doc, args.json, report.render_team)
        return EXIT_OK
    front = solve_pareto(ginst, team_problem(spec, "pareto", args.with_skill), args.cap, args.workers)
    if not front.points:
        raise HeuristicInfeasible("no partition satisfies the team constraints")
    doc = {
        "command": "team",
        "mode": "pareto",
        "objectives": list(front.labels),
        "enumerated": front.enumerated,
        "feasible": front.feasible,
        "front": [
            {"values": [report.num(v) for v in p.values],
             **report.team_report(ti, "pareto", p.solution, evaluate_teams(ti, p.solution, spec))}
            for p in front.points
        ],
    }
    if args.json:
        out.write(report.to_json(doc))
    else:
        out.write(f"{len(doc['front'])} nondominated team assignments over {', '.join(doc['objectives'])}\n")
        for point in doc["front"]:
            out.write(f"\nvalues {point['values']}\n")
            out.write(report.render_team(point))
    return EXIT_OK


def _cmd_lattice(args, out: TextIO) -> int:
    nodes = enumerate_scale(args.types, args.size)
    if args.format == "dot":
        out.write(scale_to_dot(nodes, f"P_{args.types}_{args.size}"))
    elif args.format == "json":
        doc = {
            "types": args.types,
            "size": args.size,
            "nodes": [list(nd.estimate.counts) for nd in nodes],
            "edges": [
                [list(nd.estimate.counts), list(low.counts)] for nd in nodes for low in nd.lower
            ],
        }
        out.write(report.to_json(doc))
    else:
        for nd in nodes:
            below = " ".join(str(e) for e in nd.lower)
            out.write(f"{nd.estimate} > {below}\n" if below else f"{nd.estimate}\n")
    return EXIT_OK


def run_cli(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "evaluate":
            return _cmd_evaluate(args, out)
        if args.command == "solve":
            return _cmd_solve(args, out, err)
        if args.command == "pareto":
            return _cmd_pareto(args, out, err)
        if args.command == "team":
            return _cmd_team(args, out)
        return _cmd_lattice(args, out)
    except EnumerationCapExceeded as exc:
        err.write(f"balclust: {exc}\n")
        return EXIT_CAP
    except HeuristicInfeasible as exc:
        err.write(f"balclust: infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    except (BalclustError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        err.write(f"balclust: {msg}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
