"""Elements, the weighted relation graph, and clustering solutions.

Element ids are 1-based in documents and in every public structure; the
0-based form only appears in label arrays (``ClusteringSolution.labels``)
and adjacency matrices handed to the numeric kernels.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import InstanceError, SolutionError

__all__ = [
    "Element",
    "WeightedGraph",
    "Instance",
    "ClusteringSolution",
    "parse_instance",
    "instance_from_dict",
    "instance_to_dict",
    "dump_instance",
    "load_instance",
    "load_json",
    "validate_solution",
    "fixture_path",
]

_RESERVED = {"type_count", "elements", "edges", "solutions"}


@dataclass(frozen=True)
class Element:
    id: int
    weight: float
    type: int


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted graph; each edge stored once as ``(a, b, v)`` with a < b."""

    edges: tuple[tuple[int, int, float], ...] = ()

    def weight(self, a: int, b: int) -> float:
        if a > b:
            a, b = b, a
        return self._lookup.get((a, b), 0.0)

    @cached_property
    def _lookup(self) -> dict[tuple[int, int], float]:
        return {(a, b): v for a, b, v in self.edges}

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True, eq=False)
class ClusteringSolution:
    """A partition X_1..X_lambda.

    Members are sorted ascending inside each cluster; the cluster order is
    kept as given so stored solutions retain their published numbering.
    Equality and hashing ignore cluster order.  Build through
    :func:`validate_solution` or :meth:`from_labels`; the constructor itself
    does not check coverage.
    """

    clusters: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clusters", tuple(tuple(sorted(c)) for c in self.clusters))

    def canonical(self) -> "ClusteringSolution":
        """Same partition with clusters ordered by their smallest member."""
        return ClusteringSolution(_canonical(self.clusters))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClusteringSolution):
            return NotImplemented
        return _canonical(self.clusters) == _canonical(other.clusters)

    def __hash__(self) -> int:
        return hash(_canonical(self.clusters))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "ClusteringSolution":
        """Build from a 0-based label per element (element id = position + 1)."""
        groups: dict[int, list[int]] = {}
        for pos, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(pos + 1)
        return cls(_canonical(groups.values()))

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.clusters)

    @property
    def n_elements(self) -> int:
        return sum(self.sizes)

    @property
    def labels(self) -> tuple[int, ...]:
        """Restricted-growth label string (0-based cluster index per element)."""
        out = [0] * self.n_elements
        for idx, members in enumerate(_canonical(self.clusters)):
            for m in members:
                out[m - 1] = idx
        return tuple(out)

    def cluster(self, index: int) -> tuple[int, ...]:
        """Cluster by 1-based index."""
        if not 1 <= index <= len(self.clusters):
            raise IndexError(f"cluster index {index} outside 1..{len(self.clusters)}")
        return self.clusters[index - 1]

    def as_lists(self) -> list[list[int]]:
        return [list(c) for c in self.clusters]


def _canonical(groups: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    clusters = [tuple(sorted(g)) for g in groups]
    clusters.sort(key=lambda c: c[0])
    return tuple(clusters)


@dataclass(frozen=True, eq=False)
class Instance:
    elements: tuple[Element, ...]
    graph: WeightedGraph
    type_count: int
    solutions: Mapping[str, ClusteringSolution] = field(default_factory=dict)
    extra: Mapping[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def ids(self) -> range:
        return range(1, len(self.elements) + 1)

    def element(self, j: int) -> Element:
        return self.elements[j - 1]

    def weight(self, j: int) -> float:
        return self.elements[j - 1].weight

    def type_of(self, j: int) -> int:
        return self.elements[j - 1].type

    @cached_property
    def weights(self) -> np.ndarray:
        arr = np.array([e.weight for e in self.elements], dtype=np.float64)
        arr.flags.writeable = False
        return arr

    @cached_property
    def types(self) -> np.ndarray:
        """0-based type index per element."""
        arr = np.array([e.type - 1 for e in self.elements], dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @cached_property
    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=np.float64)
        for a, b, v in self.graph.edges:
            adj[a - 1, b - 1] = adj[b - 1, a - 1] = v
        adj.flags.writeable = False
        return adj

    def solution(self, name: str) -> ClusteringSolution:
        try:
            return self.solutions[name]
        except KeyError:
            known = ", ".join(sorted(self.solutions)) or "none"
            raise KeyError(f"unknown solution {name!r} (known: {known})") from None

    def with_graph(self, graph: WeightedGraph) -> "Instance":
        return Instance(self.elements, graph, self.type_count, self.solutions, self.extra)

    def digest(self) -> str:
        payload = json.dumps(instance_to_dict(self), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.graph.edges == other.graph.edges
            and self.type_count == other.type_count
            and dict(self.solutions) == dict(other.solutions)
            and dict(self.extra) == dict(other.extra)
        )

    __hash__ = None  # type: ignore[assignment]


def validate_solution(inst: Instance, clusters: Iterable[Iterable[int]]) -> ClusteringSolution:
    """Check that ``clusters`` partition the instance's ids."""
    n = inst.n
    owner: dict[int, int] = {}
    groups = []
    for idx, raw in enumerate(clusters):
        members = list(raw)
        if not members:
            raise SolutionError("empty", f"cluster {idx + 1} is empty")
        for j in members:
            if isinstance(j, bool) or not isinstance(j, (int, np.integer)):
                raise SolutionError("unknown", f"cluster {idx + 1}: id {j!r} is not an integer")
            j = int(j)
            if not 1 <= j <= n:
                raise SolutionError("unknown", f"cluster {idx + 1}: unknown element id {j}", j)
            if j in owner:
                raise SolutionError(
                    "overlap",
                    f"element {j} appears in clusters {owner[j] + 1} and {idx + 1}",
                    j,
                )
            owner[j] = idx
        groups.append(members)
    if not groups:
        raise SolutionError("empty", "solution has no clusters")
    missing = [j for j in range(1, n + 1) if j not in owner]
    if missing:
        raise SolutionError("coverage", f"element {missing[0]} is not in any cluster", missing[0])
    return ClusteringSolution(tuple(tuple(sorted(g)) for g in groups))


# -- documents ---------------------------------------------------------------


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceError(path, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise InstanceError(path, "must be finite")
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError(path, f"expected an integer, got {value!r}")
    return value


def instance_from_dict(doc: Mapping[str, Any]) -> Instance:
    if not isinstance(doc, Mapping):
        raise InstanceError("", "document must be a JSON object")
    if "type_count" not in doc:
        raise InstanceError("type_count", "missing")
    type_count = _integer(doc["type_count"], "type_count")
    if type_count < 1:
        raise InstanceError("type_count", "must be positive")

    raw_elements = doc.get("elements")
    if not isinstance(raw_elements, list) or not raw_elements:
        raise InstanceError("elements", "must be a non-empty list")
    by_id: dict[int, Element] = {}
    for i, raw in enumerate(raw_elements):
        path = f"elements[{i}]"
        if not isinstance(raw, Mapping):
            raise InstanceError(path, "must be an object")
        for key in ("id", "weight", "type"):
            if key not in raw:
                raise InstanceError(f"{path}.{key}", "missing")
        j = _integer(raw["id"], f"{path}.id")
        w = _number(raw["weight"], f"{path}.weight")
        t = _integer(raw["type"], f"{path}.type")
        if j in by_id:
            raise InstanceError(f"{path}.id", f"duplicate id {j}")
        if w < 0:
            raise InstanceError(f"{path}.weight", f"negative weight {w}")
        if not 1 <= t <= type_count:
            raise InstanceError(f"{path}.type", f"type {t} outside 1..{type_count}")
        by_id[j] = Element(j, w, t)
    n = len(by_id)
    if sorted(by_id) != list(range(1, n + 1)):
        raise InstanceError("elements", f"ids must be exactly 1..{n}")
    elements = tuple(by_id[j] for j in range(1, n + 1))

    edges: dict[tuple[int, int], float] = {}
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise InstanceError("edges", "must be a list")
    for i, raw in enumerate(raw_edges):
        path = f"edges[{i}]"
        if not isinstance(raw, list) or len(raw) != 3:
            raise InstanceError(path, "must be [id1, id2, weight]")
        a = _integer(raw[0], f"{path}[0]")
        b = _integer(raw[1], f"{path}[1]")
        v = _number(raw[2], f"{path}[2]")
        for k, end in ((0, a), (1, b)):
            if not 1 <= end <= n:
                raise InstanceError(f"{path}[{k}]", f"unknown element id {end}")
        if a == b:
            raise InstanceError(path, f"self-loop on element {a}")
        if v < 0:
            raise InstanceError(f"{path}[2]", f"negative edge weight {v}")
        key = (min(a, b), max(a, b))
        if key in edges and edges[key] != v:
            raise InstanceError(
                path, f"asymmetric edge {a}-{b}: weights {edges[key]} and {v}"
            )
        edges[key] = v
    graph = WeightedGraph(tuple((a, b, edges[(a, b)]) for a, b in sorted(edges)))

    skeleton = Instance(elements, graph, type_count)
    solutions: dict[str, ClusteringSolution] = {}
    raw_solutions = doc.get("solutions", {})
    if not isinstance(raw_solutions, Mapping):
        raise InstanceError("solutions", "must be an object")
    for name, clusters in raw_solutions.items():
        if not isinstance(clusters, list) or not all(isinstance(c, list) for c in clusters):
            raise InstanceError(f"solutions.{name}", "must be a list of id lists")
        try:
            solutions[name] = validate_solution(skeleton, clusters)
        except Exception as exc:
            raise InstanceError(f"solutions.{name}", str(exc)) from exc

    extra = {k: v for k, v in doc.items() if k not in _RESERVED}
    return Instance(elements, graph, type_count, solutions, extra)


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError("", f"malformed JSON: {exc}") from exc
    return instance_from_dict(doc)


def instance_to_dict(inst: Instance) -> dict[str, Any]:
    doc: dict[str, Any] = dict(inst.extra)
    doc["type_count"] = inst.type_count
    doc["elements"] = [{"id": e.id, "weight": e.weight, "type": e.type} for e in inst.elements]
    doc["edges"] = [[a, b, v] for a, b, v in inst.graph.edges]
    if inst.solutions:
        doc["solutions"] = {k: s.as_lists() for k, s in inst.solutions.items()}
    return doc


def dump_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2)


def fixture_path(name: str) -> Path:
    """Resolve a bundled fixture by file name (``.json`` optional)."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("balclust") / "data" / name))


def _resolve(path: str | Path) -> Path:
    p = Path(path)
    if p.exists():
        return p
    bundled = fixture_path(p.name)
    if p.parent == Path(".") and bundled.exists():
        return bundled
    raise FileNotFoundError(f"no such file: {path}")


def load_json(path: str | Path) -> Any:
    """Read a JSON file, falling back to bundled fixtures for bare names."""
    p = _resolve(path)
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InstanceError("", f"{p}: malformed JSON: {exc}") from exc


def load_instance(path: str | Path) -> Instance:
    return instance_from_dict(load_json(path))
