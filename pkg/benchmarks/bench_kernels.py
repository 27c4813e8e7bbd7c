#!/usr/bin/env python3
"""Throughput benchmark: compiled kernel vs pure-numpy reference.

Times the batch sum-secrecy-rate evaluation on random inputs for both
backends and prints points/second plus the speedup. Run from the repo root:

    python3 benchmarks/bench_kernels.py [batch_size]
"""

from __future__ import annotations

import sys
import time

import numpy as np

from twrsec.kernels import _reference

try:
    from twrsec.kernels import _fast
except ImportError:
    _fast = None


def bench(impl, args, repeats: int = 7) -> float:
    impl.sum_secrecy_batch(*args)  # warm up
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        impl.sum_secrecy_batch(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000
    rng = np.random.default_rng(0)
    beta = rng.uniform(0.01, 0.99, size=n)
    w = rng.dirichlet(np.ones(3), size=n) * 100.0
    args = (beta, w[:, 0], w[:, 1], w[:, 2],
            0.6647, 2.9152, 1.3289, 0.5, 1.0, 0.02, 0.0, 0.05)

    t_ref = bench(_reference, args)
    print(f"{'backend':<10}{'batch':>12}{'time [ms]':>12}{'Mpts/s':>10}")
    print(f"{'reference':<10}{n:>12}{t_ref * 1e3:>12.2f}{n / t_ref / 1e6:>10.1f}")
    if _fast is None:
        print("compiled backend not built; install with the extension to compare")
        return
    t_fast = bench(_fast, args)
    print(f"{'cython':<10}{n:>12}{t_fast * 1e3:>12.2f}{n / t_fast / 1e6:>10.1f}")

    ref_vals = _reference.sum_secrecy_batch(*args)
    fast_vals = _fast.sum_secrecy_batch(*args)
    err = float(np.max(np.abs(ref_vals - fast_vals)))
    print(f"speedup: {t_ref / t_fast:.2f}x   max |diff|: {err:.2e}")


if __name__ == "__main__":
    main()
