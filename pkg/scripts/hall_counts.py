#!/usr/bin/env python3
"""Count subgroups of small index in a free group two ways.

Compares the low-index search (conjugacy classes weighted by class size)
with Hall's recursion a_n = n (n!)^(r-1) - sum_{k<n} (n-k)!^(r-1) a_k.
"""

import argparse
import time
from collections import Counter
from math import factorial

from dsp.finite_quotients import conjugacy_class_size, low_index_subgroups
from dsp.presentation import Presentation


def hall(rank, n_max):
    a = []
    for n in range(1, n_max + 1):
        s = n * factorial(n) ** (rank - 1)
        s -= sum(factorial(n - k) ** (rank - 1) * a[k - 1] for k in range(1, n))
        a.append(s)
    return a


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--max-index", type=int, default=5)
    args = ap.parse_args()

    names = [f"g{i}" for i in range(1, args.rank + 1)]
    start = time.perf_counter()
    tables = low_index_subgroups(Presentation(names, ()), args.max_index)
    elapsed = time.perf_counter() - start
    classes, totals = Counter(), Counter()
    for t in tables:
        classes[t.index] += 1
        totals[t.index] += conjugacy_class_size(t)
    expected = hall(args.rank, args.max_index)
    print(f"{'n':>3} {'classes':>8} {'subgroups':>10} {'recursion':>10}")
    for n in range(1, args.max_index + 1):
        mark = "" if totals[n] == expected[n - 1] else "  MISMATCH"
        print(f"{n:>3} {classes[n]:>8} {totals[n]:>10} {expected[n - 1]:>10}{mark}")
    print(f"search time {elapsed:.2f}s")


if __name__ == "__main__":
    main()
