"""Multi-skill team formation on top of the balanced clustering machinery.

Each element (student) carries ordinal grades on several criteria and a
pairwise compatibility grade with every other element; grade 0 marks an
incompatible pair.  A team's skill vector is the componentwise maximum of
its members' grades, and its compatibility total is the pair sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Mapping, Sequence

from .errors import HeuristicInfeasible, InstanceError, SpecError
from .instance import ClusteringSolution, Instance, WeightedGraph, load_json, load_instance
from .optimize.problem import ObjectiveTerm, ProblemSpec

__all__ = [
    "GRADE_MAX",
    "CriteriaMatrix",
    "CompatibilityRelation",
    "TeamSpec",
    "TeamInstance",
    "TeamSummary",
    "TeamReport",
    "team_skill",
    "team_compat",
    "estimate_team_count",
    "select_kernels",
    "kernel_heuristic",
    "evaluate_teams",
    "team_problem",
    "load_team_instance",
    "load_team_spec",
]

GRADE_MAX = 3


@dataclass(frozen=True)
class CriteriaMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise InstanceError("criteria", "must have one row per element")
        m = len(self.rows[0])
        for i, row in enumerate(self.rows):
            path = f"criteria[{i}]"
            if len(row) != m or m == 0:
                raise InstanceError(path, f"expected {m} grades")
            if any(not 0 <= g <= GRADE_MAX for g in row):
                raise InstanceError(path, f"grades must lie in 0..{GRADE_MAX}")
            if not any(g > 0 for g in row):
                raise InstanceError(path, "needs at least one positive grade")

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def row(self, j: int) -> tuple[int, ...]:
        return self.rows[j - 1]


@dataclass(frozen=True)
class CompatibilityRelation:
    n: int
    grades: Mapping[tuple[int, int], int]

    def grade(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        return self.grades.get((a, b), 0)

    def as_graph(self) -> WeightedGraph:
        return WeightedGraph(tuple((a, b, float(g)) for (a, b), g in sorted(self.grades.items()) if g > 0))

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Sequence[int]]) -> "CompatibilityRelation":
        grades: dict[tuple[int, int], int] = {}
        for i, t in enumerate(triples):
            path = f"compatibility[{i}]"
            if len(t) != 3:
                raise InstanceError(path, "must be [id1, id2, grade]")
            a, b, g = (int(x) for x in t)
            if a == b:
                raise InstanceError(path, f"self pair on element {a}")
            if not (1 <= a <= n and 1 <= b <= n):
                raise InstanceError(path, "unknown element id")
            if not 0 <= g <= GRADE_MAX:
                raise InstanceError(path, f"grade must lie in 0..{GRADE_MAX}")
            key = (min(a, b), max(a, b))
            if key in grades and grades[key] != g:
                raise InstanceError(path, f"asymmetric grades for {a}-{b}")
            grades[key] = g
        return cls(n, grades)


@dataclass(frozen=True)
class TeamSpec:
    size_min: int
    size_max: int
    skill_floor: tuple[int, ...]
    forbid_zero_pairs: bool = True
    kernel_criteria: tuple[int, ...] = ()  # 1-based criterion numbers, most important first

    def __post_init__(self) -> None:
        if self.size_min < 1 or self.size_min > self.size_max:
            raise SpecError("team sizes need 1 <= size_min <= size_max")
        if any(not 0 <= g <= GRADE_MAX for g in self.skill_floor):
            raise SpecError(f"skill floor grades must lie in 0..{GRADE_MAX}")

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "TeamSpec":
        try:
            return cls(
                size_min=int(doc["size_min"]),
                size_max=int(doc["size_max"]),
                skill_floor=tuple(int(g) for g in doc["skill_floor"]),
                forbid_zero_pairs=bool(doc.get("forbid_zero_pairs", True)),
                kernel_criteria=tuple(int(c) for c in doc.get("kernel_criteria", ())),
            )
        except KeyError as exc:
            raise SpecError(f"team spec is missing {exc.args[0]!r}") from None


@dataclass(frozen=True)
class TeamInstance:
    instance: Instance
    criteria: CriteriaMatrix
    compat: CompatibilityRelation

    @property
    def n(self) -> int:
        return self.instance.n

    @classmethod
    def from_instance(cls, inst: Instance) -> "TeamInstance":
        raw_c = inst.extra.get("criteria")
        if raw_c is None:
            raise InstanceError("criteria", "missing (team instances need a criteria block)")
        if len(raw_c) != inst.n:
            raise InstanceError("criteria", f"expected {inst.n} rows, got {len(raw_c)}")
        criteria = CriteriaMatrix(tuple(tuple(int(g) for g in row) for row in raw_c))
        compat = CompatibilityRelation.from_triples(inst.n, inst.extra.get("compatibility", []))
        return cls(inst, criteria, compat)

    def graph_instance(self) -> Instance:
        """The instance with compatibility grades as its edge weights."""
        return self.instance.with_graph(self.compat.as_graph())


def load_team_instance(path: str) -> TeamInstance:
    return TeamInstance.from_instance(load_instance(path))


def load_team_spec(path: str) -> TeamSpec:
    return TeamSpec.from_dict(load_json(path))


def team_skill(cm: CriteriaMatrix, team: Iterable[int]) -> tuple[int, ...]:
    rows = [cm.row(j) for j in team]
    if not rows:
        raise ValueError("team is empty")
    return tuple(max(col) for col in zip(*rows))


def team_compat(cr: CompatibilityRelation, team: Iterable[int]) -> int:
    return sum(cr.grade(a, b) for a, b in combinations(sorted(team), 2))


def _dominates(vec: Sequence[int], floor: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(vec, floor))


# -- heuristic ---------------------------------------------------------------


def estimate_team_count(n: int, spec: TeamSpec) -> int:
    lam = max(1, round(n / spec.size_max))
    while lam * spec.size_max < n:
        lam += 1
    if lam * spec.size_min > n:
        raise HeuristicInfeasible(
            f"no team count fits {n} elements with sizes {spec.size_min}..{spec.size_max}"
        )
    return lam


def select_kernels(ti: TeamInstance, spec: TeamSpec, count: int) -> list[int]:
    """Seed elements: Pareto-best on the kernel criteria, trimmed or topped up
    by grade sum on those criteria (ties to the smaller id)."""
    crit = spec.kernel_criteria or tuple(range(1, ti.criteria.m + 1))
    if any(not 1 <= c <= ti.criteria.m for c in crit):
        raise SpecError(f"kernel criteria must lie in 1..{ti.criteria.m}")
    proj = {j: tuple(ti.criteria.row(j)[c - 1] for c in crit) for j in range(1, ti.n + 1)}

    def dominated(j: int) -> bool:
        return any(
            k != j and _dominates(proj[k], proj[j]) and proj[k] != proj[j] for k in proj
        )

    def rank(j: int) -> tuple[int, int]:
        return (-sum(proj[j]), j)

    front = sorted((j for j in proj if not dominated(j)), key=rank)
    if len(front) >= count:
        return sorted(front[:count])
    rest = sorted((j for j in proj if j not in front), key=rank)
    return sorted(front + rest[: count - len(front)])


def kernel_heuristic(ti: TeamInstance, spec: TeamSpec) -> ClusteringSolution:
    """Build teams around kernels, then grow them by compatibility.

    Growth always serves the weakest team: the smallest one, then the one with
    the lowest compatibility total, then the lowest index.  It receives the
    unassigned element with the largest compatibility sum towards its members
    (smaller id on ties).  Moves that would exceed size_max, pair incompatible
    elements, or leave too few elements to bring other teams up to size_min
    are skipped.
    """
    n = ti.n
    lam = estimate_team_count(n, spec)
    kernels = select_kernels(ti, spec, lam)
    teams = [[k] for k in kernels]
    unassigned = [j for j in range(1, n + 1) if j not in kernels]
    grade = ti.compat.grade

    def admissible(t: int, j: int) -> bool:
        team = teams[t]
        if len(team) >= spec.size_max:
            return False
        if spec.forbid_zero_pairs and any(grade(j, m) == 0 for m in team):
            return False
        deficit = sum(max(0, spec.size_min - len(u)) for i, u in enumerate(teams) if i != t)
        return len(unassigned) - 1 >= deficit

    while unassigned:
        order = sorted(range(lam), key=lambda t: (len(teams[t]), team_compat(ti.compat, teams[t]), t))
        for t in order:
            cands = [j for j in unassigned if admissible(t, j)]
            if cands:
                pick = min(cands, key=lambda j: (-sum(grade(j, m) for m in teams[t]), j))
                teams[t].append(pick)
                unassigned.remove(pick)
                break
        else:
            raise HeuristicInfeasible(
                f"no admissible team for remaining elements {unassigned}"
            )

    for t, team in enumerate(teams, 1):
        if len(team) < spec.size_min:
            raise HeuristicInfeasible(f"team {t} ends below size_min")
        skill = team_skill(ti.criteria, team)
        if not _dominates(skill, spec.skill_floor):
            raise HeuristicInfeasible(
                f"team {sorted(team)} skill {skill} does not dominate {spec.skill_floor}"
            )
    return ClusteringSolution.from_labels(_labels(teams, n))


def _labels(teams: list[list[int]], n: int) -> list[int]:
    out = [0] * n
    for t, team in enumerate(teams):
        for j in team:
            out[j - 1] = t
    return out


# -- evaluation --------------------------------------------------------------


@dataclass(frozen=True)
class TeamSummary:
    members: tuple[int, ...]
    skill: tuple[int, ...]
    compat: int
    size_ok: bool
    skill_ok: bool
    compatible: bool


@dataclass(frozen=True)
class TeamReport:
    teams: tuple[TeamSummary, ...]
    b_card: int
    b_edge: int
    worst_compat: int
    worst_skill: tuple[int, ...]

    @property
    def feasible(self) -> bool:
        return all(t.size_ok and t.skill_ok and t.compatible for t in self.teams)


def evaluate_teams(ti: TeamInstance, sol: ClusteringSolution, spec: TeamSpec) -> TeamReport:
    teams = []
    for members in sol.clusters:
        skill = team_skill(ti.criteria, members)
        zero = any(ti.compat.grade(a, b) == 0 for a, b in combinations(members, 2))
        teams.append(
            TeamSummary(
                members=members,
                skill=skill,
                compat=team_compat(ti.compat, members),
                size_ok=spec.size_min <= len(members) <= spec.size_max,
                skill_ok=_dominates(skill, spec.skill_floor),
                compatible=not (spec.forbid_zero_pairs and zero),
            )
        )
    sizes = [len(t.members) for t in teams]
    eps = [t.compat for t in teams]
    worst_skill = tuple(min(col) for col in zip(*(t.skill for t in teams)))
    return TeamReport(tuple(teams), max(sizes) - min(sizes), max(eps) - min(eps), min(eps), worst_skill)


def team_problem(spec: TeamSpec, mode: str = "pareto", with_skill: bool = False) -> ProblemSpec:
    """Problem spec for the exact solvers on ``TeamInstance.graph_instance()``.

    ``exact`` maximises the worst team compatibility; ``pareto`` pairs the
    cardinality spread with it (and optionally the worst skill vector).
    """
    worst_edge = ObjectiveTerm("edge", "worst", "max")
    if mode == "exact":
        objectives: tuple[ObjectiveTerm, ...] = (worst_edge,)
    elif mode == "pareto":
        objectives = (ObjectiveTerm("card", "diff", "min"), worst_edge)
        if with_skill:
            objectives += (ObjectiveTerm("skill", "worst", "max"),)
    else:
        raise SpecError(f"unknown team mode {mode!r}")
    return ProblemSpec(
        objectives=objectives,
        size_min=spec.size_min,
        size_max=spec.size_max,
        skill_floor=spec.skill_floor,
        forbid_zero_pairs=spec.forbid_zero_pairs,
        name=f"team-{mode}",
    )

