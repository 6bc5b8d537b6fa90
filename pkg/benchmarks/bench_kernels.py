"""Benchmark the compiled kernels against the pure-Python fallback.

Times the Pfaffian elimination (real and complex) and wedge powers on
both backends and prints the speedup.  Run after an editable install:

    python benchmarks/bench_kernels.py
"""

import argparse
import time

import numpy as np

from wirtinger import _kernels_py
from wirtinger.exterior import Multivector, wedge

try:
    from wirtinger import _kernels_cy
except ImportError:
    _kernels_cy = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_pfaffian(backend, matrices):
    def run():
        for a in matrices:
            backend.pfaffian_r(a.copy())

    return run


def bench_pfaffian_complex(backend, matrices):
    def run():
        for a in matrices:
            backend.pfaffian_c(a.copy())

    return run


def bench_wedge(backend, tables, count):
    keys_a, vals_a = tables

    def run():
        keys, vals = keys_a, vals_a
        for _ in range(count):
            merged = backend.wedge_rr(keys, vals, keys_a, vals_a)
            if not merged:
                break
            keys = np.fromiter(merged.keys(), dtype=np.uint64, count=len(merged))
            vals = np.fromiter(merged.values(), dtype=np.float64, count=len(merged))

    return run


def two_form_tables(dim, rng):
    b = rng.standard_normal((dim, dim))
    a = b - b.T
    mv = Multivector(dim, {(i, j): a[i, j] for i in range(dim) for j in range(i + 1, dim)})
    table = mv.terms()
    keys = []
    vals = []
    for key, value in table.items():
        mask = 0
        for idx in key:
            mask |= 1 << idx
        keys.append(mask)
        vals.append(value)
    return np.array(keys, dtype=np.uint64), np.array(vals, dtype=np.float64)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--batch", type=int, default=200, help="matrices per timing batch")
    args = parser.parse_args()
    rng = np.random.default_rng(0)

    if _kernels_cy is None:
        print("compiled kernels unavailable; only timing the python backend")
    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("compiled", _kernels_cy))

    print(f"{'benchmark':<28} " + " ".join(f"{name:>12}" for name, _ in backends) + f" {'speedup':>9}")

    def report(label, runs):
        times = [_time(run, args.repeat) for run in runs]
        row = f"{label:<28} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f" {times[0] / times[1]:>8.1f}x"
        print(row)

    for dim in (4, 8, 16, 32, 48):
        mats = []
        for _ in range(args.batch):
            b = rng.standard_normal((dim, dim))
            mats.append(np.ascontiguousarray(b - b.T))
        report(
            f"pfaffian real {dim}x{dim} x{args.batch}",
            [bench_pfaffian(impl, mats) for _, impl in backends],
        )

    for dim in (4, 12, 24):
        mats = []
        for _ in range(args.batch):
            b = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            mats.append(np.ascontiguousarray(b - b.T))
        report(
            f"pfaffian complex {dim}x{dim} x{args.batch}",
            [bench_pfaffian_complex(impl, mats) for _, impl in backends],
        )

    for dim, power in ((8, 4), (10, 5)):
        tables = two_form_tables(dim, rng)
        report(
            f"wedge power dim {dim} k={power}",
            [bench_wedge(impl, tables, power - 1) for _, impl in backends],
        )

    # sanity: both backends agree on one instance
    b = rng.standard_normal((12, 12))
    a = np.ascontiguousarray(b - b.T)
    values = [impl.pfaffian_r(a.copy()) for _, impl in backends]
    spread = max(values) - min(values)
    print(f"backend agreement on a 12x12 pfaffian: spread {spread:.3e}")


if __name__ == "__main__":
    main()
