#!/usr/bin/env python3
"""Time Smith normal form on random integer matrices of growing size."""

import argparse
import random
import time

from dsp.abelianization import IntegerMatrix, smith_normal_form


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[5, 10, 20, 40])
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--bound", type=int, default=9, help="entries drawn from [-bound, bound]")
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'n':>4} {'mean ms':>9} {'max factor bits':>16}")
    for n in args.sizes:
        total, bits = 0.0, 0
        for _ in range(args.trials):
            rows = [[rng.randint(-args.bound, args.bound) if rng.random() < args.density else 0
                     for _ in range(n)] for _ in range(n)]
            start = time.perf_counter()
            sf = smith_normal_form(IntegerMatrix.from_rows(rows, n))
            total += time.perf_counter() - start
            bits = max([bits] + [d.bit_length() for d in sf.invariant_factors])
        print(f"{n:>4} {1000 * total / args.trials:>9.2f} {bits:>16}")


if __name__ == "__main__":
    main()
