"""Reduction counts and wall time of the two level-persistence methods.

Method 1 reduces two matrices per pair of half-unit levels, roughly 4N^2
reductions. Method 2 reduces once per interior level and once per
critical pair, about N^2/2 + 2N. The count ratio approaches 8 as N grows.

    python scripts/benchmark_methods.py --sizes 4 8 12 16 --repeats 3
"""

import argparse
import logging
import time

import numpy as np

from persistor import level as L
from persistor import oracle


def one_run(f):
    row = {}
    for method in (1, 2):
        stats = L.Stats()
        t0 = time.perf_counter()
        _, lb = L.level_barcode(f, method, stats)
        row[method] = (stats.reductions, time.perf_counter() - t0, lb.nonzero())
    assert row[1][2] == row[2][2], "methods disagree"
    return row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 6, 8, 12, 16])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.WARNING)
    rng = np.random.default_rng(args.seed)

    print(f"{'N':>4} {'red M1':>8} {'red M2':>8} {'N^2/2+2N':>9} {'ratio':>6} {'t M1':>8} {'t M2':>8} {'speedup':>8}")
    for n in args.sizes:
        r1 = r2 = 0
        t1 = t2 = 0.0
        for _ in range(args.repeats):
            cx = oracle.random_complex(rng, n, 2, n_top=n)
            vals = rng.permutation(n) + rng.random(n) * 0.5
            f = L.check_generic(cx, {v: float(vals[v - 1]) for v in cx.vertices})
            row = one_run(f)
            r1 += row[1][0]
            r2 += row[2][0]
            t1 += row[1][1]
            t2 += row[2][1]
        k = args.repeats
        print(f"{n:>4} {r1 / k:>8.1f} {r2 / k:>8.1f} {n * n / 2 + 2 * n:>9.1f} {r1 / r2:>6.2f} "
              f"{t1 / k:>8.3f} {t2 / k:>8.3f} {t1 / t2:>8.2f}")


if __name__ == "__main__":
    main()
