"""Command-line entry point: ``octaglue polygon ...`` and ``octaglue octa ...``.

Exit status is 0 on success, 1 on a usage error and 2 when an internal
invariant check fails.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from octaglue import InvariantViolation, __version__
from octaglue.census import OCTA_REPORTS, emit_report, octahedron_records, polygon_report

log = logging.getLogger("octaglue")

DEFAULT_LIMIT_K = 8


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _k_range(text: str) -> list[int]:
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A-B, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"k must satisfy 1 <= k, got {text!r}")
    return list(range(lo, hi + 1))


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress and timing to stderr")

    parser = _Parser(prog="octaglue", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    poly = sub.add_parser("polygon", parents=[common], help="edge pairings of the 2k-gon")
    poly.add_argument("--k", type=_k_range, required=True, help="N or a range A-B")
    poly.add_argument("--limit-k", type=_positive, default=DEFAULT_LIMIT_K,
                      help=f"refuse k above this (default {DEFAULT_LIMIT_K})")
    poly.add_argument("--list-classes", action="store_true", help="one row per inequivalent pairing")

    octa = sub.add_parser("octa", parents=[common], help="face pairings of the octahedron")
    octa.add_argument("table", choices=sorted(OCTA_REPORTS))
    octa.add_argument("--cache", type=Path, help="JSON cache of per-class invariants")
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    start = time.perf_counter()
    try:
        if args.command == "polygon":
            if max(args.k) > args.limit_k:
                parser.error(f"k={max(args.k)} exceeds --limit-k {args.limit_k}")
            report = polygon_report(args.k, jobs=args.jobs, list_classes=args.list_classes)
        else:
            records = octahedron_records(cache=args.cache, jobs=args.jobs)
            report = OCTA_REPORTS[args.table](records)
        out.write(emit_report(report, args.format))
    except InvariantViolation as exc:
        print(f"octaglue: invariant violated: {exc}", file=sys.stderr)
        return 2
    log.info("%s finished in %.2fs", report.kind, time.perf_counter() - start)
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
