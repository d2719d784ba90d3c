"""Time the numba kernels against their NumPy counterparts.

    python benchmarks/bench_kernels.py [--repeat 5]

The first numba call compiles (or loads the on-disk cache); it is timed
separately and excluded from the steady-state figures.
"""
import argparse
import time

import numpy as np

from transrad import kernels
from transrad._accel import HAVE_NUMBA
from transrad.samplers import random_pair


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    T, A = (np.ascontiguousarray(M) for M in random_pair(2, rng))
    alphas = np.linspace(0, np.pi / 2, 720)
    betas = np.linspace(0, 2 * np.pi, 720, endpoint=False)
    yield ("grid 720x720 (n=2)",
           lambda: kernels.grid_max_deviation_numpy(T, A, alphas, betas, False, 1e-12),
           lambda: kernels.grid_max_deviation_numba(T, A, alphas, betas, False, 1e-12))

    T4, A4 = (np.ascontiguousarray(M) for M in random_pair(4, rng))
    F = rng.standard_normal((10_000, 4)) + 1j * rng.standard_normal((10_000, 4))
    F = np.ascontiguousarray(F / np.linalg.norm(F, axis=1)[:, None])
    yield ("batch deviation 10k (n=4)",
           lambda: kernels.batch_deviation_numpy(T4, A4, F, False, 1e-12),
           lambda: kernels.batch_deviation_numba(T4, A4, F, False, 1e-12))

    x, y = rng.standard_normal(100_000), rng.standard_normal(100_000)
    yield ("welzl 100k points",
           lambda: kernels.welzl_numpy(x, y, 1e-12),
           lambda: kernels.welzl_numba(x, y, 1e-12))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':28s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'first call':>11s} {'speedup':>8s}")
    for name, np_fn, nb_fn in cases(rng):
        t0 = time.perf_counter()
        nb_fn()
        first = time.perf_counter() - t0
        t_np = best_of(np_fn, args.repeat)
        t_nb = best_of(nb_fn, args.repeat)
        print(f"{name:28s} {1e3 * t_np:11.2f} {1e3 * t_nb:11.2f} {1e3 * first:11.1f} "
              f"{t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
