#!/usr/bin/env python3
"""Benchmark the compiled solver backend against the pure-Python fallback.

Times the SPD tridiagonal kernel directly (in-process, both backends) and
the end-to-end J / threshold computations (subprocesses, so each backend is
selected at import as in normal use).

Usage: python benchmarks/bench_backends.py
"""

import os
import subprocess
import sys
import time
import timeit

import numpy as np


def bench_kernel():
    from bfamily import _core_py

    try:
        from bfamily import _core
    except ImportError:
        print("compiled extension not built; kernel comparison skipped")
        return

    print(f"{'n':>8} {'cython':>12} {'python':>12} {'speedup':>9}")
    rng = np.random.default_rng(0)
    for n in (256, 1024, 4096, 16384):
        off = rng.standard_normal(n - 1)
        diag = np.abs(rng.standard_normal(n)) + 2.0
        diag[:-1] += np.abs(off)
        diag[1:] += np.abs(off)
        rhs = rng.standard_normal(n)
        reps = max(20, 200_000 // n)

        t_c = min(timeit.repeat(lambda: _core.spd_solve(diag, off, rhs),
                                number=reps, repeat=5)) / reps
        t_p = min(timeit.repeat(lambda: _core_py.spd_solve(diag, off, rhs),
                                number=reps, repeat=5)) / reps
        print(f"{n:>8} {t_c * 1e6:>10.1f}us {t_p * 1e6:>10.1f}us {t_p / t_c:>8.2f}x")


END_TO_END = {
    "compute_j(2, 1)": "from bfamily import compute_j; compute_j(2.0, 1.0)",
    "compute_beta_b(2)": "from bfamily import compute_beta_b; compute_beta_b(2.0)",
    "sweep(1.3, 3, 10)": "from bfamily import sweep; sweep(1.3, 3.0, 10)",
}


def bench_end_to_end():
    print(f"\n{'task':>20} {'cython':>10} {'python':>10}")
    for label, body in END_TO_END.items():
        times = {}
        for backend in ("cython", "python"):
            env = dict(os.environ, BFAMILY_BACKEND=backend)
            code = f"import time; t0=time.perf_counter(); {body}; " \
                   f"print(time.perf_counter()-t0)"
            out = subprocess.run([sys.executable, "-c", code], env=env,
                                 capture_output=True, text=True)
            if out.returncode != 0:
                times[backend] = None
                continue
            times[backend] = float(out.stdout.strip())
        c, p = times.get("cython"), times.get("python")
        fmt = lambda t: f"{t:>9.3f}s" if t is not None else "      n/a"
        print(f"{label:>20} {fmt(c)} {fmt(p)}")


if __name__ == "__main__":
    print("# solver kernel (SPD tridiagonal solve, best of 5)")
    bench_kernel()
    print("\n# end to end (one cold run per backend, includes import)")
    bench_end_to_end()
