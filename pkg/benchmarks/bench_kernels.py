"""Time the numba and numpy reduction kernels, and a full Cauchy-Pompeiu run.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The end-to-end comparison runs each path in a fresh interpreter, because the
kernel choice is made once at import time from ELCAUCHY_DISABLE_NUMBA.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from elcauchy import _kernels

END_TO_END = """
import time
from elcauchy import Disk, ElComplex, QuadratureSpec, SmoothNonHolo, cauchy_pompeiu, make_params
p = make_params(2.0, 1.0)
spec = QuadratureSpec({n_theta}, {n_r})
f = SmoothNonHolo("x2_plus_iy")
cauchy_pompeiu(f, Disk(1.0), ElComplex(0.2, 0.1), p, QuadratureSpec(8, 4))  # warm up
t = time.perf_counter()
for _ in range({repeat}):
    rep = cauchy_pompeiu(f, Disk(1.0), ElComplex(0.2, 0.1), p, spec)
print((time.perf_counter() - t) / {repeat}, rep.abs_error)
"""


def bench_kernels(sizes, repeat):
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'n':>10}{'numpy [ms]':>14}{'numba [ms]':>14}{'speedup':>10}")
    for n in sizes:
        args = [rng.normal(size=n) for _ in range(5)] + [2.0, 1.0]
        for name in ("weighted_product_sum", "tilde_kernel_sum"):
            row = []
            for table in (_kernels.numpy_kernels, _kernels.numba_kernels):
                fn = table[name]
                fn(*args)  # compile / warm caches
                row.append(min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat)) * 1e3)
            print(f"{name:<22}{n:>10}{row[0]:>14.3f}{row[1]:>14.3f}{row[0] / row[1]:>10.2f}")


def bench_end_to_end(n_theta, n_r, repeat):
    print(f"\ncauchy_pompeiu on Disk(1), spec ({n_theta}, {n_r}), mean of {repeat}")
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, ELCAUCHY_DISABLE_NUMBA=flag)
        code = END_TO_END.format(n_theta=n_theta, n_r=n_r, repeat=repeat)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        seconds, err = out.stdout.split()
        print(f"  {label:<6} {float(seconds) * 1e3:9.2f} ms   abs_error {float(err):.2e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="1000,100000,4000000")
    args = ap.parse_args()
    if _kernels.numba_kernels is None:
        sys.exit("numba is not installed; nothing to compare")
    bench_kernels([int(s) for s in args.sizes.split(",")], args.repeat)
    bench_end_to_end(2048, 256, args.repeat)


if __name__ == "__main__":
    main()
