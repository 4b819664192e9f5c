"""Row-reduction timings for the compiled and numpy kernels.

    python3 benchmarks/bench_kernels.py [--sizes 20 40 80] [--repeat 5]
"""

import argparse
import time

import numpy as np

from frobstrat import _kernels
from frobstrat.algebra import get_field


def bench(kernel, F, n, repeat, rng):
    mats = [rng.integers(0, F.q, size=(n, n), dtype=np.int64) for _ in range(repeat)]
    t = time.perf_counter()
    for M in mats:
        R = M.copy()
        if F.m == 1:
            kernel.rref_prime(R, F.p)
        else:
            kernel.rref_zech(R, F.exp_arr, F.log_arr, F.zech_arr, F.q)
    return (time.perf_counter() - t) / repeat


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 40, 80])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    names = ["python"] + (["cython"] if _kernels.compiled is not None else [])
    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'field':>8} {'n':>4} " + " ".join(f"{nm:>10}" for nm in names))
    for p, m in ((3, 1), (3, 2), (5, 2)):
        F = get_field(p, m)
        for n in args.sizes:
            rng = np.random.default_rng(n)
            times = [bench(_kernels.backend(nm), F, n, args.repeat, rng) for nm in names]
            print(f"{f'F_{p}^{m}':>8} {n:>4} " + " ".join(f"{1e3 * t:9.2f}ms" for t in times))


if __name__ == "__main__":
    main()
