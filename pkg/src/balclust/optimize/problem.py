"""Problem specifications: objectives, bounds, and feasibility of one solution.

An objective or constraint selects a per-solution quantity by ``index``
(card, weight, edge, struct, skill) and ``method``:

``diff``
    spread across clusters (max minus min; struct uses the step diameter)
``ref``
    largest absolute deviation from the reference cluster profile
``worst``
    the smallest per-cluster value (skill yields a componentwise vector)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Mapping, Sequence

import numpy as np

from ..errors import SpecError
from ..indices import ReferenceParams, method1_indices, summarize_solution
from ..instance import ClusteringSolution, Instance, load_json
from ..lattice import MultisetEstimate, proximity

__all__ = [
    "ObjectiveTerm",
    "Bound",
    "ProblemSpec",
    "Feasibility",
    "criteria_matrix",
    "term_values",
    "objective_vector",
    "check_feasible",
    "load_problem",
]

INDICES = ("card", "weight", "edge", "struct", "skill")
METHODS = ("diff", "ref", "worst")
DIRECTIONS = ("min", "max")


def _check_selector(index: str, method: str, where: str) -> None:
    if index not in INDICES:
        raise SpecError(f"{where}: unknown index {index!r}")
    if method not in METHODS:
        raise SpecError(f"{where}: unknown method {method!r}")
    if index == "struct" and method == "worst":
        raise SpecError(f"{where}: struct has no worst-cluster value")
    if index == "skill" and method != "worst":
        raise SpecError(f"{where}: skill only supports method 'worst'")


@dataclass(frozen=True)
class ObjectiveTerm:
    index: str
    method: str = "diff"
    direction: str = "min"

    def __post_init__(self) -> None:
        _check_selector(self.index, self.method, "objective")
        if self.direction not in DIRECTIONS:
            raise SpecError(f"objective: unknown direction {self.direction!r}")

    @property
    def label(self) -> str:
        return f"{self.direction} {self.method}:{self.index}"


@dataclass(frozen=True)
class Bound:
    index: str
    method: str = "diff"
    max: float | None = None
    min: float | None = None

    def __post_init__(self) -> None:
        _check_selector(self.index, self.method, "constraint")
        if self.index == "skill":
            raise SpecError("constraint: use skill_floor for skill bounds")
        if self.max is None and self.min is None:
            raise SpecError(f"constraint on {self.method}:{self.index} has no bound")
        for b in (self.max, self.min):
            if b is not None and b < 0:
                raise SpecError("constraint bounds must be non-negative")

    @property
    def label(self) -> str:
        return f"{self.method}:{self.index}"


@dataclass(frozen=True)
class ProblemSpec:
    objectives: tuple[ObjectiveTerm, ...]
    constraints: tuple[Bound, ...] = ()
    lambda_min: int | None = None
    lambda_max: int | None = None
    n_clusters: int | None = None
    size_min: int | None = None
    size_max: int | None = None
    reference: ReferenceParams | None = None
    skill_floor: tuple[int, ...] | None = None
    forbid_zero_pairs: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not self.objectives:
            raise SpecError("at least one objective is required")
        uses_ref = any(t.method == "ref" for t in (*self.objectives, *self.constraints))
        if uses_ref and self.reference is None:
            raise SpecError("reference-based terms need a reference")
        for name in ("lambda_min", "lambda_max", "n_clusters", "size_min", "size_max"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise SpecError(f"{name} must be at least 1")
        if self.size_min and self.size_max and self.size_min > self.size_max:
            raise SpecError("size_min exceeds size_max")
        if self.lambda_min and self.lambda_max and self.lambda_min > self.lambda_max:
            raise SpecError("lambda_min exceeds lambda_max")

    @property
    def is_multi(self) -> bool:
        return len(self.objectives) > 1 or self.objectives[0].index == "skill"

    def lambda_range(self, n: int) -> tuple[int, int]:
        lo, hi = 1, n
        if self.lambda_min:
            lo = max(lo, self.lambda_min)
        if self.lambda_max:
            hi = min(hi, self.lambda_max)
        if self.n_clusters:
            lo, hi = max(lo, self.n_clusters), min(hi, self.n_clusters)
        return lo, hi

    def size_range(self, n: int) -> tuple[int, int]:
        return self.size_min or 1, min(self.size_max or n, n)

    def card_bound(self) -> float | None:
        bounds = [b.max for b in self.constraints if b.index == "card" and b.method == "diff" and b.max is not None]
        return min(bounds) if bounds else None

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any], name: str = "") -> "ProblemSpec":
        if not isinstance(doc, Mapping):
            raise SpecError("problem spec must be a JSON object")
        try:
            objectives = tuple(
                ObjectiveTerm(o["index"], o.get("method", "diff"), o.get("direction", "min"))
                for o in doc.get("objectives", [])
            )
            constraints = tuple(
                Bound(c["index"], c.get("method", "diff"), c.get("max"), c.get("min"))
                for c in doc.get("constraints", [])
            )
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed objective or constraint: {exc}") from None
        ref = doc.get("reference")
        floor = doc.get("skill_floor")
        return cls(
            objectives=objectives,
            constraints=constraints,
            lambda_min=doc.get("lambda_min"),
            lambda_max=doc.get("lambda_max"),
            n_clusters=doc.get("lambda"),
            size_min=doc.get("size_min"),
            size_max=doc.get("size_max"),
            reference=ReferenceParams.from_dict(ref) if ref is not None else None,
            skill_floor=tuple(floor) if floor is not None else None,
            forbid_zero_pairs=bool(doc.get("forbid_zero_pairs", False)),
            name=name or doc.get("name", ""),
        )

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "objectives": [
                {"index": t.index, "method": t.method, "direction": t.direction}
                for t in self.objectives
            ],
            "constraints": [
                {k: v for k, v in (("index", b.index), ("method", b.method), ("max", b.max), ("min", b.min)) if v is not None}
                for b in self.constraints
            ],
        }
        for key, value in (
            ("lambda_min", self.lambda_min),
            ("lambda_max", self.lambda_max),
            ("lambda", self.n_clusters),
            ("size_min", self.size_min),
            ("size_max", self.size_max),
        ):
            if value is not None:
                doc[key] = value
        if self.reference is not None:
            doc["reference"] = self.reference.to_dict()
        if self.skill_floor is not None:
            doc["skill_floor"] = list(self.skill_floor)
        if self.forbid_zero_pairs:
            doc["forbid_zero_pairs"] = True
        return doc


def load_problem(path: str) -> ProblemSpec:
    doc = load_json(path)
    return ProblemSpec.from_dict(doc, name=doc.get("name", "") if isinstance(doc, dict) else "")


def criteria_matrix(inst: Instance) -> np.ndarray | None:
    """Per-element criteria grades carried in the instance document, if any."""
    raw = inst.extra.get("criteria")
    if raw is None:
        return None
    arr = np.asarray(raw, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != inst.n:
        raise SpecError(f"criteria must have one row per element ({inst.n})")
    return arr


def _ref_struct(estimates: Sequence[MultisetEstimate], ref: MultisetEstimate) -> int:
    # both sides re-padded to a common total before measuring
    total = max(estimates[0].total, sum(ref.counts[:-1]))
    target = ref.repad(total)
    return max(proximity(e.repad(total), target) for e in estimates)


def term_values(inst: Instance, sol: ClusteringSolution, index: str, method: str,
                ref: ReferenceParams | None = None) -> tuple[float, ...]:
    """Value of one selector on one solution (a 1-tuple except for skill)."""
    if index == "skill":
        crit = criteria_matrix(inst)
        if crit is None:
            raise SpecError("skill terms need a criteria matrix in the instance")
        teams = [crit[[j - 1 for j in c]].max(axis=0) for c in sol.clusters]
        return tuple(int(x) for x in np.min(teams, axis=0))
    summaries = summarize_solution(inst, sol)
    if method == "diff":
        d = method1_indices(inst, sol, summaries)
        return (float(getattr(d, index)),)
    if method == "ref":
        if ref is None:
            raise SpecError("reference-based term without a reference")
        if index == "struct":
            if ref.estimate.dim != inst.type_count + 1:
                raise SpecError(f"reference estimate needs {inst.type_count + 1} components")
            return (float(_ref_struct([s.estimate for s in summaries], ref.estimate)),)
        field_of = {"card": ("size", "size"), "weight": ("total_weight", "weight"),
                    "edge": ("intra_edge_weight", "edge_weight")}[index]
        target = getattr(ref, field_of[1])
        return (max(abs(getattr(s, field_of[0]) - target) for s in summaries),)
    field_name = {"card": "size", "weight": "total_weight", "edge": "intra_edge_weight"}[index]
    return (float(min(getattr(s, field_name) for s in summaries)),)


def objective_vector(inst: Instance, sol: ClusteringSolution, spec: ProblemSpec) -> tuple[float, ...]:
    out: list[float] = []
    for t in spec.objectives:
        out.extend(term_values(inst, sol, t.index, t.method, spec.reference))
    return tuple(out)


@dataclass(frozen=True)
class Feasibility:
    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def check_feasible(inst: Instance, sol: ClusteringSolution, spec: ProblemSpec) -> Feasibility:
    violations: list[str] = []
    lam = sol.n_clusters
    lo, hi = spec.lambda_range(inst.n)
    if lam < lo or lam > hi:
        violations.append(f"cluster count {lam} outside [{lo}, {hi}]")
    sizes = sol.sizes
    if spec.size_min is not None and min(sizes) < spec.size_min:
        violations.append(f"cluster size {min(sizes)} below size_min {spec.size_min}")
    if spec.size_max is not None and max(sizes) > spec.size_max:
        violations.append(f"cluster size {max(sizes)} above size_max {spec.size_max}")
    for b in spec.constraints:
        (value,) = term_values(inst, sol, b.index, b.method, spec.reference)
        if b.max is not None and value > b.max + 1e-9:
            violations.append(f"{b.label} = {value:g} exceeds {b.max:g}")
        if b.min is not None and value < b.min - 1e-9:
            violations.append(f"{b.label} = {value:g} below {b.min:g}")
    if spec.skill_floor is not None:
        crit = criteria_matrix(inst)
        if crit is None:
            raise SpecError("skill_floor needs a criteria matrix in the instance")
        floor = np.asarray(spec.skill_floor)
        for idx, members in enumerate(sol.clusters, 1):
            skill = crit[[j - 1 for j in members]].max(axis=0)
            if np.any(skill < floor):
                violations.append(
                    f"cluster {idx} skill {tuple(int(x) for x in skill)} "
                    f"does not dominate {tuple(spec.skill_floor)}"
                )
    if spec.forbid_zero_pairs:
        for idx, members in enumerate(sol.clusters, 1):
            for a, b in combinations(members, 2):
                if inst.graph.weight(a, b) == 0.0:
                    violations.append(f"cluster {idx} pairs incompatible elements {a} and {b}")
                    break
    return Feasibility(not violations, tuple(violations))


def spec_from_json(text: str) -> ProblemSpec:
    return ProblemSpec.from_dict(json.loads(text))

