"""Compare the numba kernels with the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--max-n 20] [--repeat 3]

The enumeration timings run both paths in this process.  The annealing
timing runs a child interpreter per path, since the path is fixed at import
through STEERBOUND_DISABLE_NUMBA.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from steerbound import _kernels
from steerbound._accel import DISABLE_ENV
from steerbound.optimizer import random_set

ANNEAL_SNIPPET = """
import time
from steerbound.optimizer import AnnealingConfig, anneal
cfg = AnnealingConfig({n}, seed=1, restarts=1, sweeps_per_temperature={sweeps})
anneal(AnnealingConfig(2, seed=0, restarts=1, sweeps_per_temperature=1))  # compile
t = time.perf_counter()
r = anneal(cfg)
print(time.perf_counter() - t, r.best_bound)
"""


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_scan(max_n, repeat):
    print(f"{'N':>3} {'numba max_sq':>14} {'numba scan':>12} {'numpy scan':>12} {'speedup':>8}")
    _kernels.gray_max_sq(random_set(4, 0).directions)
    _kernels.gray_scan(random_set(4, 0).directions)
    for n in range(8, max_n + 1, 2):
        B = random_set(n, n).directions
        t_fast, v_fast = best_of(lambda: _kernels.gray_max_sq(B), repeat)
        t_scan, (v_scan, m_scan) = best_of(lambda: _kernels.gray_scan(B), repeat)
        t_np, (v_np, m_np) = best_of(lambda: _kernels.numpy_scan(B), repeat)
        assert m_scan == m_np and abs(v_scan - v_np) <= 1e-9 * v_np and abs(v_fast - v_np) <= 1e-9 * v_np
        print(f"{n:>3} {t_fast * 1e3:>12.3f}ms {t_scan * 1e3:>10.3f}ms {t_np * 1e3:>10.3f}ms {t_np / t_scan:>7.1f}x")


def bench_anneal(n, sweeps):
    print(f"\nanneal N={n}, one restart, {sweeps} sweeps per temperature")
    code = ANNEAL_SNIPPET.format(n=n, sweeps=sweeps)
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, **{DISABLE_ENV: flag})
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        seconds, bound = out.stdout.split()
        print(f"  {label:<6} {float(seconds):8.3f}s  bound {float(bound):.12g}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=20)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--anneal-n", type=int, default=6)
    parser.add_argument("--anneal-sweeps", type=int, default=5)
    args = parser.parse_args()
    np.set_printoptions(precision=6)
    bench_scan(args.max_n, args.repeat)
    bench_anneal(args.anneal_n, args.anneal_sweeps)


if __name__ == "__main__":
    main()
