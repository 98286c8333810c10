#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure NumPy fallback.

Run:  python3 benchmarks/bench_kernels.py [--repeat N]

Covers the hot paths that dominate the Monte Carlo test batteries: scalar
tail-probability kernels, the Jacobi eigensolver, the small-design OLS
core, and an end-to-end ADF battery through the public API under each
backend.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from trendindex.kernels import _pykernels

try:
    from trendindex.kernels import _ckernels
except ImportError:
    _ckernels = None


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_backends(repeat):
    rng = np.random.default_rng(0)
    corr = rng.normal(size=(34, 34))
    corr = corr @ corr.T / 34
    x = rng.normal(size=(100, 27))
    y = rng.normal(size=100)
    gamma_args = [(float(a), float(v)) for a, v in rng.uniform(0.5, 80, (2000, 2))]
    beta_args = [
        (float(a), float(b), float(u))
        for a, b, u in np.column_stack(
            [rng.uniform(0.5, 60, (2000, 2)), rng.random(2000)]
        )
    ]

    cases = [
        ("reg_gamma_q x2000", lambda m: [m.reg_gamma_q(a, v) for a, v in gamma_args]),
        ("reg_beta x2000", lambda m: [m.reg_beta(a, b, u) for a, b, u in beta_args]),
        ("jacobi_eigh 34x34", lambda m: m.jacobi_eigh(corr)),
        ("ols_core 100x27", lambda m: m.ols_core(x, y)),
    ]

    backends = [("pure", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))

    width = max(len(name) for name, _ in cases)
    header = f"{'kernel'.ljust(width)}  " + "  ".join(
        f"{name:>10}" for name, _ in backends
    )
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in cases:
        times = [timeit(lambda m=mod: fn(m), repeat) for _, mod in backends]
        row = f"{name.ljust(width)}  " + "  ".join(f"{t * 1e3:9.2f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:7.1f}x"
        print(row)


def bench_adf_battery(repeat):
    # full ADF battery through the public API, backend chosen by env var
    code = (
        "import numpy as np, time\n"
        "from trendindex.unitroot import AdfSpec, adf_test\n"
        "from trendindex.kernels import active_backend\n"
        "rng = np.random.default_rng(7)\n"
        "walks = np.cumsum(rng.normal(size=(200, 100)), axis=1)\n"
        "spec = AdfSpec()\n"
        "start = time.perf_counter()\n"
        "for row in walks: adf_test(row, spec)\n"
        "print(f'{active_backend()}:{time.perf_counter() - start:.4f}')\n"
    )
    results = {}
    for env_value in ("", "1"):
        env = dict(os.environ)
        if env_value:
            env["TRENDINDEX_PURE"] = env_value
        else:
            env.pop("TRENDINDEX_PURE", None)
        out = subprocess.run(
            [sys.executable, "-c", code], capture_output=True, text=True, env=env
        )
        backend, elapsed = out.stdout.strip().split(":")
        results[backend] = float(elapsed)
    print()
    print("ADF battery, 200 series x auto-lag search (public API):")
    for backend, elapsed in results.items():
        print(f"  {backend:>7}: {elapsed * 1e3:8.1f} ms")
    if len(results) == 2 and "cython" in results:
        print(f"  speedup: {results['pure'] / results['cython']:.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled backend not built; timing the pure backend only\n")
    bench_backends(args.repeat)
    bench_adf_battery(args.repeat)


if __name__ == "__main__":
    main()
