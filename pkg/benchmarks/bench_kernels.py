"""Time the numba kernels against the pure-numpy fallback.

Usage: python3 benchmarks/bench_kernels.py

The workloads mirror the hot paths of the audits: single planarity checks
on one value table, and batched coefficient-space sweeps. Both backends
run on identical inputs regardless of PLANAR2_NO_NUMBA, so the table
below is the real backend gap on this machine.
"""

import time

import numpy as np

import planar2 as p2
from planar2 import kernels


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_single_checks(n: int, rows: int):
    spec = p2.field(n)
    rng = np.random.default_rng(0)
    tables = [rng.integers(0, spec.order, spec.order).astype(np.int64)
              for _ in range(rows)]
    # one planar table so at least one full pass happens
    t2 = p2.tower(n // 2, 2)
    c = sorted(x.bits for x in p2.norm_trace_zero_set(t2))[1]
    tables.append(p2.DOPoly(t2, [(c, 0, n // 2)]).value_table())

    def run(check):
        for fv in tables:
            check(fv, spec.log, spec.exp)

    out = {"numpy": _time(lambda: run(kernels.planar_check_numpy))}
    if kernels.HAVE_NUMBA:
        run(kernels.planar_check_numba)  # compile outside the timer
        out["numba"] = _time(lambda: run(kernels.planar_check_numba))
    return out


def bench_sweep(n: int, width: int, rows: int):
    spec = p2.field(n)
    rng = np.random.default_rng(1)
    m = n // 2
    exps = [(1 << (m + i)) + (1 << i) for i in range(width)]
    pows = np.stack([spec.pow_table(e) for e in exps])
    coeffs = rng.integers(0, spec.order, (rows, width)).astype(np.int64)
    out = {"numpy": _time(lambda: kernels.planar_sweep_numpy(pows, coeffs, spec.log, spec.exp))}
    if kernels.HAVE_NUMBA:
        kernels.planar_sweep_numba(pows, coeffs, spec.log, spec.exp)
        out["numba"] = _time(lambda: kernels.planar_sweep_numba(pows, coeffs, spec.log, spec.exp))
    return out


def main():
    print(f"active backend: {kernels.backend()}  (numba available: {kernels.HAVE_NUMBA})")
    print()
    print(f"{'workload':<44} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    rows = [
        ("check x64 tables, GF(2^8)", bench_single_checks(8, 64)),
        ("check x16 tables, GF(2^12)", bench_single_checks(12, 16)),
        ("sweep 4096 binomials, GF(2^6)", bench_sweep(6, 2, 4096)),
        ("sweep 65536 trinomials, GF(2^6)", bench_sweep(6, 3, 65536)),
        ("sweep 4096 trinomials, GF(2^8)", bench_sweep(8, 3, 4096)),
    ]
    for name, res in rows:
        numpy_t = res["numpy"]
        if "numba" in res:
            ratio = numpy_t / res["numba"] if res["numba"] > 0 else float("inf")
            print(f"{name:<44} {numpy_t:>9.3f}s {res['numba']:>9.3f}s {ratio:>8.1f}x")
        else:
            print(f"{name:<44} {numpy_t:>9.3f}s {'-':>10} {'-':>9}")


if __name__ == "__main__":
    main()
