#!/usr/bin/env python3
"""Explore the derived series and audit finite covers for every corpus group.

Prints one summary row per group and, with --out, writes the full JSON
reports to a directory.
"""

import argparse
import json
import time
from collections import Counter
from pathlib import Path

from dsp.cli import RunConfig, run
from dsp.presentation import parse_presentation
from dsp.report import dumps

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--corpus", type=Path, default=ROOT / "corpus")
    ap.add_argument("--max-index", type=int, default=4)
    ap.add_argument("--out", type=Path, help="directory for per-group JSON reports")
    args = ap.parse_args()

    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    print(f"{'group':<20} {'outcome':<16} {'level':>5} {'classes':>7}  verdicts  (seconds)")
    for path in sorted(args.corpus.glob("*.grp")):
        p = parse_presentation(path.read_text())
        start = time.perf_counter()
        explore, _ = run(RunConfig("explore", str(path), max_index=args.max_index), p)
        audit, status = run(RunConfig("galois-audit", str(path), max_index=args.max_index), p)
        elapsed = time.perf_counter() - start
        counts = Counter(v["verdict"] for v in audit["verdicts"])
        outcome = explore["outcome"]
        print(f"{path.stem:<20} {outcome['kind']:<16} {outcome['level']:>5} "
              f"{len(audit['subgroups']):>7}  {dict(sorted(counts.items()))}  ({elapsed:.2f})"
              + ("" if status == 0 else "  [budget]"))
        if args.out:
            (args.out / f"{path.stem}.explore.json").write_text(dumps(explore))
            (args.out / f"{path.stem}.audit.json").write_text(dumps(audit))
    if args.out:
        print(json.dumps({"written": str(args.out)}))


if __name__ == "__main__":
    main()
