"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage or format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .formats import FormatError
from .generate import GenConfig, random_instances
from .gf2m import MAX_M, build_field
from .oracles import (
    EnumerationBudgetError,
    RadiusTooLargeError,
    classify_deep_hole,
    ml_decode_bruteforce,
    solve_3dm,
    verify_reduction,
)
from .reduction import InstanceTooSmallError, MldRsInstance, ThreeDmInstance, convert

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str, kind: str):
    try:
        doc = formats.load_path(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if kind == "3dm" and not isinstance(doc, ThreeDmInstance):
        raise UsageError(f"{path}: expected a 3dm document")
    if kind == "mldrs" and isinstance(doc, ThreeDmInstance):
        raise UsageError(f"{path}: expected an mldrs document")
    return doc


def _write(path: str, text: str) -> None:
    try:
        formats.write_atomic(path, text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def cmd_gen(args) -> int:
    try:
        cfg = GenConfig(args.t, args.count, args.density, args.seed, args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    docs = [formats.dumps_3dm(inst) for inst in random_instances(cfg)]
    if cfg.count == 1:
        _write(args.out, docs[0])
    else:
        out = Path(args.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise UsageError(f"cannot create {out}: {exc}") from None
        for i, doc in enumerate(docs):
            _write(str(out / f"instance_{i:03d}.json"), doc)
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = _load(args.input, "3dm")
    try:
        reduced, trace = convert(inst, args.mode)
    except InstanceTooSmallError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(f"precondition violated: {exc}") from None
    _write(args.out, formats.dumps_mldrs(reduced, trace if args.emit_trace else None))
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load(args.input, "3dm")
    matching = solve_3dm(inst)
    if matching is None:
        print("NO")
    else:
        print("YES")
        for a, b, c in matching:
            print(f"{a} {b} {c}")
    return EXIT_OK


def cmd_decode(args) -> int:
    inst, _ = _load(args.input, "mldrs")
    assert isinstance(inst, MldRsInstance)
    code, y = inst.code, list(inst.y)
    radius = inst.w if args.radius is None else args.radius
    try:
        res = ml_decode_bruteforce(code, y, radius, args.method)
    except (RadiusTooLargeError, EnumerationBudgetError) as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    distance, deep = classify_deep_hole(code, y)
    out = {
        "found": res.found,
        "radius": radius,
        "distance": res.distance,
        "codeword": [f"{a:#x}" for a in res.codeword] if res.found else None,
        "error_positions": list(res.witness_support) if res.found else None,
        "distance_to_code": distance,
        "deep_hole": deep,
        "covering_radius": code.rho,
    }
    if args.json:
        print(json.dumps(out, indent=2))
        return EXIT_OK
    print(f"found: {'yes' if res.found else 'no'} (radius {radius}, method {args.method})")
    if res.found:
        print(f"distance: {res.distance}")
        print("codeword: " + " ".join(out["codeword"]))
        print("error positions: " + " ".join(str(i) for i in res.witness_support))
    print(f"distance to code: {distance}; deep hole: {'yes' if deep else 'no'} (covering radius {code.rho})")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load(args.input, "3dm")
    candidate = None
    if args.instance is not None:
        candidate, _ = _load(args.instance, "mldrs")
    try:
        report = verify_reduction(inst, args.mode, candidate)
    except InstanceTooSmallError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        sys.stdout.write(report.render())
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_field_info(args) -> int:
    if not 1 <= args.m <= MAX_M:
        raise UsageError(f"--m must lie in 1..{MAX_M}")
    ctx = build_field(args.m)
    print(f"m: {ctx.m}")
    print(f"modulus: {ctx.modulus:#x}")
    print(f"alpha order: {ctx.order(ctx.alpha)}")
    print("factors of 2^m - 1: [" + ", ".join(str(p) for p in ctx.factorization) + "]")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mldrs", description="Matching-to-Reed-Solomon decoding reductions and oracles.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser(
        "gen",
        help="random 3dm instances",
        description="Each triple is kept independently with probability --density. In std mode an "
        "instance is redrawn until |T| > t + 1. With --count > 1, --out names a directory.",
    )
    g.add_argument("--t", type=int, required=True)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--mode", choices=("std", "prep"), default="std")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("reduce", help="convert a 3dm instance to an mldrs instance")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--mode", choices=("std", "prep"), default="std")
    r.add_argument("--out", required=True)
    r.add_argument("--emit-trace", action="store_true")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("solve", help="exact three-dimensional matching")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_solve)

    d = sub.add_parser("decode", help="brute-force ML decoding of an mldrs instance")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--radius", type=int, default=None, help="defaults to the file's w")
    d.add_argument("--method", choices=("agreement", "enumerate"), default="agreement")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_decode)

    v = sub.add_parser("verify", help="certify the reduction of a 3dm instance")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--mode", choices=("std", "prep"), default="std")
    v.add_argument("--instance", default=None, help="mldrs file to certify instead of a fresh conversion")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("field-info", help="defining polynomial and order data for GF(2^m)")
    f.add_argument("--m", type=int, required=True)
    f.set_defaults(func=cmd_field_info)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
