"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload is run under both backends; results are checked for equality
before timings are reported.
"""

import argparse
import time

import numpy as np

from qinv import invariants, kernels, wchars
from qinv.qseries import euler_product

WORKLOADS = {
    "jones r=4 n=10 (accumulate)": lambda: invariants.jones_numerator(4, 3, 5, 10),
    "wchar r=4 (3,5) T=150 (box+accumulate)": lambda: wchars.lattice_sum(wchars.WCharParams(4, 3, 5), 150),
    "limit r=3 (3,4) T=400": lambda: wchars.lattice_sum(wchars.WCharParams(3, 3, 4), 400),
    "euler^3 T=2000 (mul_trunc)": lambda: euler_product(2000) ** 3,
}


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def raw_accumulate(n_points=20000, seed=0):
    rng = np.random.default_rng(seed)
    pts = rng.integers(-40, 41, size=(n_points, 4), dtype=np.int64)
    lins = rng.integers(-20, 21, size=(24, 4), dtype=np.int64)
    consts = rng.integers(-50, 51, size=24, dtype=np.int64)
    signs = rng.choice(np.array([-1, 1], dtype=np.int64), size=24)
    return lambda: kernels.accumulate(pts, 1, lins, consts, signs, -2000, 40000)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    try:
        kernels.use_backend("cython")
    except ImportError:
        print("compiled kernels not built; nothing to compare")
        return 1

    work = dict(WORKLOADS)
    work["raw accumulate 20k x 24"] = raw_accumulate()
    print(f"{'workload':42s} {'cython':>10s} {'python':>10s} {'speedup':>8s}")
    for name, fn in work.items():
        kernels.use_backend("cython")
        tc, rc = best_of(fn, args.repeat)
        kernels.use_backend("python")
        tp, rp = best_of(fn, args.repeat)
        same = np.array_equal(rc, rp) if isinstance(rc, np.ndarray) else rc == rp
        assert same, f"backends disagree on {name}"
        print(f"{name:42s} {tc * 1e3:9.1f}ms {tp * 1e3:9.1f}ms {tp / tc:7.1f}x")
    kernels.use_backend("cython")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
