"""Time the variance pair sum with the compiled and the numpy kernels.

    python benchmarks/bench_kernels.py [--x 0.1 1 10] [--repeat 3]

The node sets are the ones the variance oracle uses, so the timings are
those of a real verification run.
"""
import argparse
import time

from casimir_fluct import _kernels
from casimir_fluct.oracle.variance import VARIANCE_GRID, variance_natural_quadrature


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=float, nargs="+", default=[0.1, 0.3, 1.0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"selected backend: {_kernels.BACKEND}")
    print(f"{'x':>6} {'nodes':>7} {'python_s':>10} {'compiled_s':>11} {'speedup':>8} {'rel_diff':>9}")
    for x in args.x:
        t_py, (v_py, n) = best_of(
            lambda: variance_natural_quadrature(x, VARIANCE_GRID, kernel=_kernels.py.variance_pair_sum),
            args.repeat)
        if _kernels.BACKEND == "cython":
            t_c, (v_c, _) = best_of(lambda: variance_natural_quadrature(x, VARIANCE_GRID), args.repeat)
            print(f"{x:6g} {n:7d} {t_py:10.3f} {t_c:11.3f} {t_py / t_c:8.1f} "
                  f"{abs(v_c / v_py - 1):9.1e}")
        else:
            print(f"{x:6g} {n:7d} {t_py:10.3f} {'n/a':>11} {'n/a':>8} {'n/a':>9}")


if __name__ == "__main__":
    main()
