"""Brute-force reference implementations used only by the tests.

Nothing here imports the solver code paths: partitions come from a plain
recursive generator and every index is recomputed from raw element data.
"""

from itertools import accumulate, combinations

ROUND = 9


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def rgs(clusters, n):
    order = sorted(clusters, key=min)
    lab = [0] * n
    for c, members in enumerate(order):
        for j in members:
            lab[j - 1] = c
    return tuple(lab)


class Raw:
    """Plain dict/list view of an instance document."""

    def __init__(self, doc):
        self.n = len(doc["elements"])
        self.types = doc["type_count"]
        self.w = {e["id"]: e["weight"] for e in doc["elements"]}
        self.t = {e["id"]: e["type"] for e in doc["elements"]}
        self.v = {}
        for a, b, x in doc.get("edges", []):
            self.v[frozenset((a, b))] = x

    def edge(self, c):
        return sum(self.v.get(frozenset(p), 0.0) for p in combinations(c, 2))

    def prefix(self, c):
        counts = [sum(1 for j in c if self.t[j] == g) for g in range(1, self.types + 1)]
        return list(accumulate(counts))


def value(raw, clusters, index, method, ref):
    if index == "struct":
        pre = [raw.prefix(c) for c in clusters]
        if method == "diff":
            return max((sum(abs(x - y) for x, y in zip(p, q)) for p, q in combinations(pre, 2)), default=0)
        rp = list(accumulate(ref["estimate"][:-1]))
        return max(sum(abs(x - y) for x, y in zip(p, rp)) for p in pre)
    param = {
        "card": lambda c: len(c),
        "weight": lambda c: sum(raw.w[j] for j in c),
        "edge": raw.edge,
    }[index]
    vals = [param(c) for c in clusters]
    if method == "diff":
        return max(vals) - min(vals)
    if method == "worst":
        return min(vals)
    target = {"card": ref["size"], "weight": ref["weight"], "edge": ref["edge_weight"]}[index]
    return max(abs(x - target) for x in vals)


def feasible(raw, clusters, spec):
    lam = len(clusters)
    lo = max(spec.get("lambda_min", 1), spec.get("lambda", 1))
    hi = min(spec.get("lambda_max", raw.n), spec.get("lambda", raw.n))
    if not lo <= lam <= hi:
        return False
    sizes = [len(c) for c in clusters]
    if min(sizes) < spec.get("size_min", 1) or max(sizes) > spec.get("size_max", raw.n):
        return False
    for b in spec.get("constraints", []):
        x = value(raw, clusters, b["index"], b["method"], spec.get("reference"))
        if "max" in b and x > b["max"] + 1e-9:
            return False
        if "min" in b and x < b["min"] - 1e-9:
            return False
    return True


def oriented(raw, clusters, spec):
    out = []
    for o in spec["objectives"]:
        x = value(raw, clusters, o["index"], o["method"], spec.get("reference"))
        out.append(round(-x if o["direction"] == "max" else x, ROUND) + 0.0)
    return tuple(out)


def feasible_rows(doc, spec):
    raw = Raw(doc)
    for part in set_partitions(list(range(1, raw.n + 1))):
        if feasible(raw, part, spec):
            yield oriented(raw, part, spec), rgs(part, raw.n)


def best(doc, spec):
    """(oriented value, RGS) of the optimum with the smallest RGS, or None."""
    return min(feasible_rows(doc, spec), default=None)


def front(doc, spec):
    """{vector: smallest RGS} over the nondominated feasible vectors."""
    first = {}
    for vec, lab in feasible_rows(doc, spec):
        if vec not in first or lab < first[vec]:
            first[vec] = lab
    vecs = list(first)
    keep = {}
    for v in vecs:
        dominated = any(u != v and all(a <= b for a, b in zip(u, v)) for u in vecs)
        if not dominated:
            keep[v] = first[v]
    return keep
