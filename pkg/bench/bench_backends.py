"""Benchmark the compiled kernels against the pure-Python twins.

Run with:  python3 bench/bench_backends.py
"""
from __future__ import annotations

import random
import statistics
import time

from dividing_lines import _kernels_py

try:
    from dividing_lines import _kernels_c
except ImportError:
    _kernels_c = None


def make_instances(seed: int = 7, count: int = 40):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        nr = rng.randint(8, 12)
        nc = rng.randint(8, 12)
        ge = [rng.getrandbits(nr) for _ in range(nc)]
        le = [rng.getrandbits(nc) for _ in range(nr)]
        n = rng.randint(14, 20)
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        vals = [[rng.choice([0.0, 0.5, 1.0]) for _ in range(nc)] for _ in range(nr)]
        lo = [rng.getrandbits(nr) for _ in range(nc)]
        hi = [rng.getrandbits(nr) for _ in range(nc)]
        lor = [rng.getrandbits(nc) for _ in range(nr)]
        hir = [rng.getrandbits(nc) for _ in range(nr)]
        members = list(range(nr))
        out.append((nr, nc, ge, le, adj, vals, lo, hi, lor, hir, members))
    return out


def run_backend(mod, instances, budget=3 * 10**5):
    checks: list[object] = []
    timings: dict[str, float] = {}

    def timed(name, fn):
        t0 = time.perf_counter()
        for args in instances:
            checks.append(fn(*args))
        timings[name] = time.perf_counter() - t0

    timed("ladder", lambda nr, nc, ge, le, *rest: mod.ladder_search(ge, le, budget))
    timed("clique", lambda nr, nc, ge, le, adj, *rest: mod.clique_search(adj, budget))
    timed(
        "alternation_iii",
        lambda nr, nc, ge, le, adj, vals, *rest: mod.alternation_iii_search(
            vals, 0.5, nr, nc, budget
        ),
    )
    timed(
        "shatter",
        lambda nr, nc, ge, le, adj, vals, lo, hi, *rest: mod.shatter_dim_search(
            lo, hi, nr, 3, budget
        ),
    )
    timed(
        "dk_distinct",
        lambda nr, nc, ge, le, adj, vals, lo, hi, lor, hir, members: mod.dk_count_distinct(
            lor, hir, members, 2
        ),
    )
    return timings, checks


def main() -> None:
    instances = make_instances()
    py_times, py_results = run_backend(_kernels_py, instances)
    print(f"{'kernel':<16} {'python':>10} {'cython':>10} {'speedup':>9}")
    if _kernels_c is None:
        for name, t in py_times.items():
            print(f"{name:<16} {t:>9.3f}s {'n/a':>10} {'n/a':>9}")
        print("compiled extension not available")
        return
    c_times, c_results = run_backend(_kernels_c, instances)
    assert py_results == c_results, "backends disagree"
    for name in py_times:
        ratio = py_times[name] / c_times[name] if c_times[name] > 0 else float("inf")
        print(f"{name:<16} {py_times[name]:>9.3f}s {c_times[name]:>9.3f}s {ratio:>8.1f}x")
    geo = statistics.geometric_mean(
        py_times[n] / c_times[n] for n in py_times if c_times[n] > 0
    )
    print(f"geometric mean speedup: {geo:.1f}x (identical results on all instances)")


if __name__ == "__main__":
    main()
