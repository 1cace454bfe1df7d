"""Command line entry point: ``sweep``, ``gram`` and ``check`` subcommands."""

from __future__ import annotations

import argparse
import sys

from .experiments import SweepError, load_config, run_checks, run_sweep, write_csv, write_matrix_csv
from .frames import RestrictedLegendre, TruncatedFrame, gram_matrix


def _family(fid: str, interval: str):
    if fid == "restricted_legendre":
        lo, hi = (float(v) for v in interval.split(","))
        return RestrictedLegendre(lo, hi)
    if fid == "augmented_log_legendre":
        raise SystemExit("gram: the augmented log-Legendre frame has no Gram mode (use collocation sweeps)")
    raise SystemExit(f"gram: unknown family {fid!r}")


def cmd_sweep(args) -> int:
    config = load_config(args.config)
    out = args.out or config.output
    if not out:
        raise SystemExit("sweep: no output path (pass --out or set output in the config)")
    records = run_sweep(config)
    write_csv(records, out)
    print(f"wrote {len(records)} records to {out}")
    return 0


def cmd_gram(args) -> int:
    if args.N < 1:
        raise SystemExit("gram: N must be positive")
    frame = TruncatedFrame(_family(args.family, args.interval), args.N)
    write_matrix_csv(gram_matrix(frame), args.out)
    print(f"wrote {args.N}x{args.N} Gram matrix to {args.out}")
    return 0


def cmd_check(args) -> int:
    config = load_config(args.config)
    results = run_checks(config)
    width = max([len(cell) for cell, _ in results], default=4)
    failed = 0
    print(f"{'cell':<{width}}  {'bound':<32s}  {'lhs':>11s}  {'rhs':>11s}  status")
    for cell, rep in results:
        if not rep.precondition:
            status = "n/a"
        elif rep.holds:
            status = "PASS"
        else:
            status = "FAIL"
            failed += 1
        if args.verbose or status == "FAIL":
            print(f"{cell:<{width}}  {rep.bound:<32s}  {rep.lhs:11.4e}  {rep.rhs:11.4e}  {status}")
    applicable = sum(rep.precondition for _, rep in results)
    print(f"{applicable - failed}/{applicable} applicable checks passed, {len(results) - applicable} not applicable")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frameapprox", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run an N-sweep and write the records as CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="CSV path (defaults to the config's output key)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gram", help="write the Gram matrix of a truncated frame as CSV")
    p.add_argument("--family", required=True, help="restricted_legendre")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--interval", default="-0.5,0.5", help="restriction interval lo,hi")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("check", help="run the bound checks of a sweep and print a pass/fail table")
    p.add_argument("--config", required=True)
    p.add_argument("-v", "--verbose", action="store_true", help="list every check, not only failures")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SweepError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
