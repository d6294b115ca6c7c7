"""Compare the compiled and pure-python kernel backends.

Run:  python3 benchmarks/bench_kernels.py [--runs N]

Both backends are exercised on identical inputs; the script reports wall
time per call and verifies the outputs match bitwise (the backends promise
identical float association, not just closeness).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cidnsim._kernels import _pure

try:
    from cidnsim._kernels import _core
except ImportError:
    _core = None


def _time(fn, args, runs: int) -> float:
    best = float("inf")
    for _ in range(runs):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_walk(runs: int) -> None:
    rng = np.random.default_rng(1)
    n = 100_000
    u = rng.random((n, 64))
    state = np.zeros(n)
    args = (u, state, 0.75, float(np.log(1 / 3)), float(np.log(3)),
            float(np.log(0.05 / 0.9)), float(np.log(9.5)))
    t_pure = _time(_pure.walk_chunk, args, runs)
    print(f"walk_chunk      pure     {t_pure * 1e3:8.2f} ms")
    if _core is not None:
        t_core = _time(_core.walk_chunk, args, runs)
        print(f"walk_chunk      compiled {t_core * 1e3:8.2f} ms  "
              f"({t_pure / t_core:.1f}x)")
        a = _pure.walk_chunk(*args)
        b = _core.walk_chunk(*args)
        for x, y in zip(a, b):
            assert np.array_equal(np.asarray(x), np.asarray(y))
        print("walk_chunk      outputs bitwise identical")


def bench_consult(runs: int) -> None:
    rng = np.random.default_rng(2)
    n = 200_000
    bits = (rng.random((n, 9)) < 0.4).astype(np.uint8)
    inc_pos = np.full((n, 9), np.log(3.0))
    inc_neg = np.full((n, 9), np.log(1 / 3))
    args = (bits, inc_pos, inc_neg, float(np.log(0.05 / 0.9)),
            float(np.log(9.5)), 0.0)
    t_pure = _time(_pure.consult_paths, args, runs)
    print(f"consult_paths   pure     {t_pure * 1e3:8.2f} ms")
    if _core is not None:
        t_core = _time(_core.consult_paths, args, runs)
        print(f"consult_paths   compiled {t_core * 1e3:8.2f} ms  "
              f"({t_pure / t_core:.1f}x)")
        a = _pure.consult_paths(*args)
        b = _core.consult_paths(*args)
        for x, y in zip(a, b):
            assert np.array_equal(np.asarray(x), np.asarray(y))
        print("consult_paths   outputs bitwise identical")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=5)
    args = parser.parse_args()
    if _core is None:
        print("compiled backend not available; timing pure backend only")
    bench_walk(args.runs)
    bench_consult(args.runs)


if __name__ == "__main__":
    main()
