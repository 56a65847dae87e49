"""Benchmark the numba kernels against the pure-Python/numpy fallback.

Run ``python -m rydsurf.benchmark``: the parent process times whichever
backend is active here, then re-launches itself with RYDSURF_NO_NUMBA=1 to
time the fallback, and prints the comparison.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_cases(points, gamma_n):
    from . import _kernels
    from .oracle import GridSpec, solve_bound_states

    grid = GridSpec(u_max=32.0, points=points)

    # warm-up triggers jit compilation on the numba path
    solve_bound_states(GridSpec(u_max=32.0, points=1000), 0.0, count=1)
    _kernels.gamma_upper_array(3.0, np.linspace(0.0, 50.0, 64))

    z = np.linspace(0.0, 200.0, gamma_n)
    timings = {
        "backend": "numba" if _kernels.USE_NUMBA else "numpy",
        "eigensolver_s": _time(lambda: solve_bound_states(grid, 0.0237, count=2)),
        "gamma_upper_s": _time(lambda: _kernels.gamma_upper_array(2.9526, z)),
        "points": points,
        "gamma_n": gamma_n,
    }
    return timings


def main(argv=None):
    parser = argparse.ArgumentParser(prog="python -m rydsurf.benchmark")
    parser.add_argument("--points", type=int, default=20000)
    parser.add_argument("--gamma-n", type=int, default=200000)
    parser.add_argument("--single", action="store_true",
                        help="time only the currently active backend, emit JSON")
    args = parser.parse_args(argv)

    mine = run_cases(args.points, args.gamma_n)
    if args.single:
        json.dump(mine, sys.stdout)
        sys.stdout.write("\n")
        return 0

    env = dict(os.environ, RYDSURF_NO_NUMBA="1")
    proc = subprocess.run(
        [sys.executable, "-m", "rydsurf.benchmark", "--single",
         "--points", str(args.points), "--gamma-n", str(args.gamma_n)],
        env=env, capture_output=True, text=True, check=True,
    )
    other = json.loads(proc.stdout)
    first, second = (mine, other) if mine["backend"] == "numba" else (other, mine)
    print(f"grid points: {args.points}, gamma samples: {args.gamma_n}")
    for key, label in (("eigensolver_s", "eigensolver"), ("gamma_upper_s", "gamma_upper")):
        ratio = second[key] / first[key]
        print(
            f"{label:12s}  numba {first[key]:.4f} s   "
            f"numpy {second[key]:.4f} s   speedup {ratio:.1f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
