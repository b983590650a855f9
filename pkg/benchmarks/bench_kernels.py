"""Timing comparison: compiled kernels vs the numpy fallback.

Both backends are imported directly, so the comparison runs regardless of
which one the package selected. Results are exact-equal by contract; this
script also asserts that while timing.

Run: python3 benchmarks/bench_kernels.py [--n 4096] [--repeat 3]
"""
import argparse
import math
import time

import numpy as np

from pairlab.kernels import _numpy_backend

try:
    from pairlab.kernels import _fast
except ImportError:
    _fast = None


def best_time(fn, args, repeat):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def row(name, args, repeat, check_close=False):
    t_np, r_np = best_time(getattr(_numpy_backend, name), args, repeat)
    if _fast is None:
        print(f"{name:18s} numpy {t_np * 1e3:9.2f} ms   (compiled backend unavailable)")
        return
    t_cy, r_cy = best_time(getattr(_fast, name), args, repeat)
    if check_close:
        assert math.isclose(float(r_np), float(r_cy), rel_tol=1e-12), (r_np, r_cy)
    elif isinstance(r_np, np.ndarray):
        assert (r_np == r_cy).all()
    else:
        assert r_np == r_cy, (r_np, r_cy)
    print(f"{name:18s} numpy {t_np * 1e3:9.2f} ms   cython {t_cy * 1e3:9.2f} ms"
          f"   speedup {t_np / t_cy:6.2f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4096, help="set size")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    squares = np.arange(1, args.n + 1, dtype=np.int64) ** 2
    span = int(squares[-1] - squares[0])
    rng = np.random.default_rng(0)
    sparse = np.cumsum(rng.integers(1, 50, args.n, dtype=np.int64))

    print(f"n = {args.n}, repeat = {args.repeat}")
    row("diff_counts_dense", (sparse, int(sparse[-1] - sparse[0])), args.repeat)
    row("energy_from_diffs", (squares, 350_000_000), args.repeat)
    theta = 2.0 * math.pi / args.n
    row("abs_cc_partial", (theta, 3, 5, 1, 2_000_000), args.repeat,
        check_close=True)


if __name__ == "__main__":
    main()
