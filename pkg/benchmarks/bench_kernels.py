"""Compare the numba and numpy matrix kernels, and the pure-Python fallback.

    python benchmarks/bench_kernels.py [--reps N]

Times single mul / inv / quotient-eq on byte strings and a batched matmul.
The first numba call per signature compiles; a warm-up pass excludes that.
"""

import argparse
import random
import time

import numpy as np

from bbgroup.bbcore import _GenericOps, center_scalars, encode_matrix, mat_inv
from bbgroup.ffield import GF
from bbgroup.kernels import SmallMatrixOps

CASES = [(GF(7), 3), (GF(5, 2), 3), (GF(2, 8), 2), (GF(3, 3), 4)]


def random_matrix(F, d, rng):
    while True:
        m = [[F.random(rng) for _ in range(d)] for _ in range(d)]
        if mat_inv(F, m) is not None:
            return m


def timed(fn, reps):
    fn()
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps * 1e6


def bench_case(F, d, reps):
    rng = random.Random(0)
    xs = [encode_matrix(F, random_matrix(F, d, rng)) for _ in range(64)]
    scalars = center_scalars(F, d)
    impls = {
        "numba": SmallMatrixOps(F, d, scalars, impl="numba"),
        "numpy": SmallMatrixOps(F, d, scalars, impl="numpy"),
        "python": _GenericOps(F, d, scalars),
    }
    return {name: bench_ops(ops, xs, reps) for name, ops in impls.items()}


def bench_ops(ops, xs, reps):
    it = iter(range(10**12))

    def pick():
        return xs[next(it) % len(xs)]

    row = {
        "mul": timed(lambda: ops.mul(pick(), pick()), reps),
        "inv": timed(lambda: ops.inv(pick()), reps),
        "eq": timed(lambda: ops.eq(pick(), pick()), reps),
    }
    if hasattr(ops, "batch_matmul"):
        mats = np.stack([ops.decode(x) for x in xs] * 16)
        b = ops.decode(xs[0])
        row["batch1024"] = timed(lambda: ops.batch_matmul(mats, b), max(1, reps // 50))
    return row


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=2000)
    args = ap.parse_args()
    print(f"{'field':>10} {'d':>2} {'impl':>7} {'mul_us':>9} {'inv_us':>9} {'eq_us':>9} {'batch1024_us':>13}")
    for F, d in CASES:
        label = f"GF({F.p}^{F.n})"
        for name, r in bench_case(F, d, args.reps).items():
            batch = f"{r['batch1024']:13.1f}" if "batch1024" in r else f"{'-':>13}"
            print(f"{label:>10} {d:>2} {name:>7} {r['mul']:9.2f} {r['inv']:9.2f} {r['eq']:9.2f} {batch}")


if __name__ == "__main__":
    main()
