"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--rows 20000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from balclust import _pykernels
from balclust.instance import load_instance

try:
    from balclust import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=20000, help="label rows fed to the aggregation kernels")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    inst = load_instance("fig10.json")
    crit = np.random.default_rng(0).integers(0, 4, (inst.n, 4))
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    labels = (_ckernels or _pykernels).enumerate_labels(inst.n, 4, 4, 3, 4, prefix=(0, 0))[: args.rows]

    cases = {
        "enumerate n=13 lambda=4 sizes 3..4": lambda k: k.enumerate_labels(13, 4, 4, 3, 4),
        f"cluster_stats on {len(labels)} rows (n=15)": lambda k: k.cluster_stats(
            labels, 4, inst.weights, inst.types, inst.type_count, inst.adjacency),
        f"cluster_max on {len(labels)} rows (n=15, m=4)": lambda k: k.cluster_max(labels, 4, crit),
    }
    print(f"{'kernel':<44}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for title, call in cases.items():
        timings, outputs = [], []
        for _, mod in backends:
            t, out = best_of(lambda: call(mod), args.repeat)
            timings.append(t)
            outputs.append(out)
        if len(outputs) == 2:
            a, b = outputs
            same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
            assert same, f"backends disagree on {title}"
        speed = f"{timings[0] / timings[1]:>9.1f}x" if len(timings) == 2 else f"{'-':>10}"
        print(f"{title:<44}" + "".join(f"{t:>11.3f}s" for t in timings) + speed)
    if _ckernels is None:
        print("compiled extension not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
