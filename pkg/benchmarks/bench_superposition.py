"""Benchmark the 4-d superposition-integral kernel: numba jit vs pure numpy.

Runs both backends on the same grids and reports wall time, speedup, and the
difference between the two sums (they agree to roundoff; the summation orders
differ).  The first jit call includes compilation unless a cached build is on
disk.

Representative results (one core of a sandbox container, numba 0.66,
numpy 2.2); both paths spend nearly all their time in the complex exp, so
the jit win is modest:

    nodes   numpy_s    numba_s    speedup   |delta|
    32      0.059      0.034      1.73      5.0e-12
    48      0.279      0.165      1.69      1.7e-10
    64      0.823      0.509      1.62      1.5e-09

Usage: python benchmarks/bench_superposition.py [--nodes 32 48 64]
"""

import argparse
import time

import numpy as np

from qsuperpose.kernels import (
    NUMBA_AVAILABLE,
    superposition_sum_numba,
    superposition_sum_numpy,
    trapezoid_weights,
)
from qsuperpose.params import ScaledParams, squeeze_coeffs

ALPHA = 0.35 + 0.2j
PARAMS = ScaledParams(0.6, 0.4)


def time_backend(fn, x, w, u, v, a, repeats=3):
    best = np.inf
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn(x, w, u, v, a, ALPHA.real, ALPHA.imag)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--nodes", type=int, nargs="*", default=[32, 48, 64])
    parser.add_argument("--extent", type=float, default=8.0)
    args = parser.parse_args()

    u, v = squeeze_coeffs(PARAMS)
    if not NUMBA_AVAILABLE:
        print("numba not importable; timing the numpy fallback only")
    else:
        # warm up: compile (or load the cached build) outside the timed runs
        xw = np.linspace(-args.extent, args.extent, 16)
        superposition_sum_numba(xw, trapezoid_weights(16), u, v, PARAMS.a, 0.0, 0.0)

    print(f"{'nodes':<8}{'numpy_s':<11}{'numba_s':<11}{'speedup':<10}|delta|")
    for n in args.nodes:
        x = np.linspace(-args.extent, args.extent, n)
        w = trapezoid_weights(n)
        t_np, val_np = time_backend(superposition_sum_numpy, x, w, u, v, PARAMS.a)
        if NUMBA_AVAILABLE:
            t_nb, val_nb = time_backend(superposition_sum_numba, x, w, u, v, PARAMS.a)
            delta = abs(val_nb[0] - val_np[0])
            print(f"{n:<8}{t_np:<11.3f}{t_nb:<11.3f}{t_np / t_nb:<10.2f}{delta:.1e}")
        else:
            print(f"{n:<8}{t_np:<11.3f}{'-':<11}{'-':<10}-")


if __name__ == "__main__":
    main()
