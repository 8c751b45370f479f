"""Check the Rips pipelines against the oracles on a random corpus.

    python scripts/run_corpus.py -n 200 --seed 1 [--real]
"""

import argparse
import time

from persistor import hodge, oracle
from persistor.rips import elz_mu


def main(argv=None):
    ap = argparse.ArgumentParser(description="Rips corpus oracle check")
    ap.add_argument("-n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--real", action="store_true", help="also compare Hodge beta with rational beta")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    corpus = oracle.rips_corpus(args.n, seed=args.seed)
    print(f"built {len(corpus)} filtrations in {time.perf_counter() - t0:.2f} s, "
          f"max {max(len(r.filtration.complex) for r in corpus)} simplices")
    bad = 0
    t0 = time.perf_counter()
    for k, res in enumerate(corpus):
        filt = res.filtration
        if not (elz_mu(filt) == oracle.gf2_mu_table(filt)).all():
            bad += 1
            print(f"  GF(2) mismatch on filtration {k}")
        if args.real and not (hodge.beta_table(filt) == oracle.rational_beta_table(filt)).all():
            bad += 1
            print(f"  real mismatch on filtration {k}")
    print(f"checked in {time.perf_counter() - t0:.2f} s: {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
