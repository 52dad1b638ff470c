"""Exhaustive t=2 sweep: certify every instance with 4 <= |T| <= 8.

Prints one summary line per |T| and a final tally. Exits 1 if any report fails.
"""

import argparse
import collections
import itertools
import sys
import time

from mldrs.oracles import verify_reduction
from mldrs.reduction import ThreeDmInstance, all_triples


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mode", choices=("std", "prep"), default="std")
    ap.add_argument("--min-size", type=int, default=4)
    ap.add_argument("--max-size", type=int, default=8)
    args = ap.parse_args(argv)

    universe = all_triples(2)
    tally = collections.Counter()
    start = time.perf_counter()
    for size in range(args.min_size, args.max_size + 1):
        by_size = collections.Counter()
        for T in itertools.combinations(universe, size):
            inst = ThreeDmInstance(2, T)
            report = verify_reduction(inst, args.mode)
            if not report.overall:
                print(f"FAIL {T}: {[c.name for c in report.failed()]}")
                by_size["fail"] += 1
                continue
            status = {c.name: c.detail for c in report.checks}
            yes = "yes-codeword" in status or "distance exactly" in status.get("distance-dichotomy", "")
            by_size["yes" if yes else "no"] += 1
        tally.update(by_size)
        print(f"|T|={size}: {by_size['yes']} yes, {by_size['no']} no, {by_size['fail']} failed")
    elapsed = time.perf_counter() - start
    print(f"total: {tally['yes']} yes, {tally['no']} no, {tally['fail']} failed in {elapsed:.2f}s")
    return 1 if tally["fail"] else 0


if __name__ == "__main__":
    sys.exit(main())
