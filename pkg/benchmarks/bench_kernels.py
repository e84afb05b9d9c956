#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the numpy fallback.

Run after building the extension in place:

    python setup.py build_ext --inplace
    python benchmarks/bench_kernels.py [--repeat 7]

The selector honors TTFORMS_KERNELS, so this script imports both modules
directly and times identical workloads.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ttforms._kernels import fallback

try:
    from ttforms._kernels import _core as compiled
except ImportError:
    compiled = None


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    rng = np.random.default_rng(42)
    n = 4096
    lam = np.sort(rng.uniform(0.01, 50.0, n))
    coef = rng.normal(size=n) + 1j * rng.normal(size=n)
    spin = np.round(rng.uniform(-20, 20, n))
    nu = rng.uniform(-40.0, 40.0, n)
    d = 1.1 + 0.3j
    d1s = rng.uniform(0.5, 2.0, 256)
    d2s = rng.uniform(-1.0, 1.0, 256)
    t, w = np.polynomial.hermite.hermgauss(80)
    return [
        ("deformed_holo_terms (n=4096)",
         lambda mod: mod.deformed_holo_terms(lam, coef, 0.17, d, 0.5)),
        ("deformed_real_terms (n=4096, weighted)",
         lambda mod: mod.deformed_real_terms(lam, spin, coef, 0.1, 1.1, 0.3, 1.0, True)),
        ("shifted_theta_terms (n=4096)",
         lambda mod: mod.shifted_theta_terms(nu, 0.2, d, 0.5)),
        ("real_grid_eval (4096 terms x 256 pts)",
         lambda mod: mod.real_grid_eval(lam, spin, coef, d1s, d2s)),
        ("eisenstein_real_grid (M=60, 16 pts)",
         lambda mod: mod.eisenstein_real_grid(2.0 + 0j, d1s[:16], d2s[:16], 60)),
        ("eisenstein_deformed_sum (M=40, order 80)",
         lambda mod: mod.eisenstein_deformed_sum(4.0, 0.1, d, 40, t, w)),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=7)
    args = parser.parse_args()

    if compiled is None:
        print("compiled kernels not built; run `python setup.py build_ext --inplace` first")

    header = f"{'workload':46s} {'fallback':>12s} {'compiled':>12s} {'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for name, fn in workloads():
        t_py = best_of(lambda: fn(fallback), args.repeat)
        if compiled is not None:
            t_c = best_of(lambda: fn(compiled), args.repeat)
            print(f"{name:46s} {t_py * 1e3:10.3f}ms {t_c * 1e3:10.3f}ms {t_py / t_c:8.1f}x")
        else:
            print(f"{name:46s} {t_py * 1e3:10.3f}ms {'-':>12s} {'-':>9s}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
