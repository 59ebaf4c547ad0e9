"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Micro: one ``lincomb`` / ``lincomb_f64`` call on long random rows.
Macro: rank of a random sparse matrix end to end, over the integers (where
big-integer arithmetic dominates) and over Float64 (where the merge loop does).
"""

import argparse
import random
import timeit

from sparsege import kernels
from sparsege.kernels import available_backends
from sparsege.pu import Variant
from sparsege.ring import FLOAT64, INTEGER
from sparsege.randmat import random_sparse
from sparsege.sched import run_sequential


def _row(rng, width, density, make):
    cols = [j for j in range(width) if rng.random() < density]
    return cols, [make() for _ in cols]


def micro(impl, repeat):
    rng = random.Random(0)
    xc, xv = _row(rng, 4000, 0.25, lambda: rng.randint(-10 ** 12, 10 ** 12))
    yc, yv = _row(rng, 4000, 0.25, lambda: rng.randint(-10 ** 12, 10 ** 12))
    fc, fv = _row(rng, 4000, 0.25, lambda: rng.uniform(-1, 1))
    gc, gv = _row(rng, 4000, 0.25, lambda: rng.uniform(-1, 1))
    t_int = min(timeit.repeat(lambda: impl.lincomb(xc, xv, 0, yc, yv, 0, 7, -3), number=50, repeat=repeat)) / 50
    t_f64 = min(timeit.repeat(lambda: impl.lincomb_f64(fc, fv, 0, gc, gv, 0, 1.0, -0.3, 1e-10),
                              number=50, repeat=repeat)) / 50
    return t_int, t_f64


def macro(impl, repeat, d):
    a = random_sparse(300, 300, 0.02, rng=random.Random(1))
    if d is FLOAT64:
        a = a.map(float)
    saved = kernels.lincomb, kernels.lincomb_f64
    kernels.lincomb, kernels.lincomb_f64 = impl.lincomb, impl.lincomb_f64
    try:
        return min(timeit.repeat(lambda: run_sequential(a, Variant.RANK, d=d), number=1, repeat=repeat))
    finally:
        kernels.lincomb, kernels.lincomb_f64 = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only timing the pure-Python kernels")
    print(f"{'backend':<8} {'lincomb int':>14} {'lincomb f64':>14} {'rank int':>14} {'rank f64':>14}")
    rows = {}
    for name, impl in backends.items():
        t_int, t_f64 = micro(impl, args.repeat)
        t_rank = macro(impl, args.repeat, INTEGER)
        t_rank_f = macro(impl, args.repeat, FLOAT64)
        rows[name] = (t_int, t_f64, t_rank, t_rank_f)
        print(f"{name:<8} {t_int * 1e6:>12.1f}us {t_f64 * 1e6:>12.1f}us {t_rank * 1e3:>12.1f}ms "
              f"{t_rank_f * 1e3:>12.1f}ms")
    if len(rows) == 2:
        sp = [p / c for p, c in zip(rows["python"], rows["cython"])]
        print(f"{'speedup':<8} " + " ".join(f"{x:>13.2f}x" for x in sp))


if __name__ == "__main__":
    main()
