"""Benchmark the numba-jitted hot kernels against the pure-numpy fallbacks.

Run with: python benchmarks/bench_kernels.py [--shots N] [--eig-batch N]
"""
import argparse
import time

import numpy as np

from clickstats import DetectorConfig, StateSpec, build_photon_distribution
from clickstats._kernels import (NUMBA_ENABLED, _jacobi_eigh_impl,
                                 _physical_sample_numpy, jacobi_eigh,
                                 physical_sample)


def timeit(fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_sampler(shots):
    jpd = build_photon_distribution(StateSpec.tmsv(np.sqrt(0.2)))
    cfg = DetectorConfig(8, 0.5, 1e-4)
    pflat = jpd.probs.ravel() / jpd.probs.sum()
    args = (pflat, jpd.probs.shape[1], cfg.bins, cfg.bins,
            cfg.efficiency, cfg.efficiency, cfg.dark_click, cfg.dark_click,
            shots, 42)
    physical_sample(*args)  # warm up / jit compile
    t_active = timeit(physical_sample, *args)
    t_numpy = timeit(_physical_sample_numpy, *args)
    return t_active, t_numpy


def bench_jacobi(batch):
    rng = np.random.default_rng(0)
    mats = rng.normal(size=(batch, 5, 5))
    mats = (mats + mats.transpose(0, 2, 1)) / 2

    def run(solver):
        for m in mats:
            solver(np.ascontiguousarray(m), 1e-14, 64)

    run(jacobi_eigh)  # warm up
    t_active = timeit(run, jacobi_eigh)
    t_python = timeit(run, _jacobi_eigh_impl)
    return t_active, t_python


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shots", type=int, default=10**6)
    parser.add_argument("--eig-batch", type=int, default=5000)
    args = parser.parse_args()

    label = "numba" if NUMBA_ENABLED else "fallback (numba disabled)"
    print(f"active backend: {label}\n")

    t_active, t_numpy = bench_sampler(args.shots)
    print(f"physical sampler, {args.shots} shots:")
    print(f"  active backend : {t_active * 1e3:8.1f} ms")
    print(f"  numpy fallback : {t_numpy * 1e3:8.1f} ms")

    t_active, t_python = bench_jacobi(args.eig_batch)
    print(f"jacobi eigensolver, {args.eig_batch} 5x5 matrices:")
    print(f"  active backend : {t_active * 1e3:8.1f} ms")
    print(f"  python fallback: {t_python * 1e3:8.1f} ms")


if __name__ == "__main__":
    main()
