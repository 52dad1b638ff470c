"""Conversion and certification timings as t grows, with a cold field cache."""

import argparse
import sys
import time

from mldrs.generate import GenConfig, random_instances
from mldrs.gf2m import build_field
from mldrs.oracles import verify_reduction
from mldrs.reduction import convert


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mode", choices=("std", "prep"), default="std")
    ap.add_argument("--t", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--density", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--verify", action="store_true", help="also time the full certification report")
    args = ap.parse_args(argv)

    print(f"{'t':>3} {'|T|':>5} {'m':>4} {'n':>5} {'k':>5} {'w':>4} {'convert_s':>10} {'verify_s':>9}")
    for t in args.t:
        cfg = GenConfig(t=t, density=args.density, seed=args.seed, mode=args.mode)
        inst = next(random_instances(cfg))
        build_field.cache_clear()
        (reduced, _), t_conv = timed(lambda: convert(inst, args.mode))
        t_ver = "-"
        if args.verify:
            report, secs = timed(lambda: verify_reduction(inst, args.mode))
            t_ver = f"{secs:.3f}" + ("" if report.overall else "!")
        code = reduced.code
        print(f"{t:>3} {len(inst.triples):>5} {reduced.ctx.m:>4} {code.n:>5} {code.k:>5} {reduced.w:>4} "
              f"{t_conv:>10.3f} {t_ver:>9}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
