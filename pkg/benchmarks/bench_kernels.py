#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python reference.

Runs the acceptance-scale workloads (1e5-step propagator integrations,
~1.6e4-step geodesic integrations) on every available backend and prints
a timing table.  Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import math
import time

from entropath.kernels import available_backends

PROPAGATOR_CASES = [
    ("constant", (0, 1.0, 0.0, -2.0, 1.0, 10.0, 1e-4, 100)),
    ("oscillatory", (1, 1.0, 2 / math.pi, -2.0, 1.0, 10.0, 1e-4, 100)),
    ("power-law", (2, 1.0, 2 / math.pi, -2.0, 1.0, 10.0, 1e-4, 100)),
    ("exponential", (3, 1.0, 2 / math.pi, -2.0, 1.0, 10.0, 1e-4, 100)),
]

GEODESIC_CASES = [
    ("constant", (0, 0.0, 0.0, 1.0, 0.0, 10.0, 1e-4, 100)),
    ("oscillatory", (1, 2 / math.pi, 0.0, 1.0, 0.0, math.pi / 2, 1e-4, 100)),
    ("power-law", (2, 2 / math.pi, 0.0, 1.0, 0.0, math.pi / 2, 1e-4, 100)),
    ("exponential", (3, 2 / math.pi, 0.0, 1.0, 0.0, math.pi / 2, 1e-4, 100)),
]


def best_of(fn, args, repeats):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    opts = parser.parse_args()

    backends = available_backends()
    names = sorted(backends)  # 'compiled' before 'reference' when both exist
    print(f"backends: {', '.join(names)}   (best of {opts.repeats})\n")
    header = f"{'kernel':<12}{'case':<14}" + "".join(f"{n:>14}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for kernel, cases in (("propagator", PROPAGATOR_CASES), ("geodesic", GEODESIC_CASES)):
        for case, args in cases:
            times = {}
            for name in names:
                fn = getattr(backends[name], f"{kernel}_rk4")
                times[name] = best_of(fn, args, opts.repeats)
            row = f"{kernel:<12}{case:<14}" + "".join(f"{times[n] * 1e3:>12.2f}ms" for n in names)
            if len(names) == 2:
                row += f"{times['reference'] / times['compiled']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
