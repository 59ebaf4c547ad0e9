"""Command-line front end.

Usage::

    sparsege rank|lu|echelon|stats FILE.sms [--domain int|rat|f64] [--workers P]
        [--width W] [--pivot first|sparsest|threshold|partial] [--gamma G]
        [--epsilon E] [--stats OUT.json] [--out PATH]

Exit status: 0 ok, 1 bad flags or malformed input, 2 I/O error,
3 singular matrix (``lu``).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .lup import SingularMatrixError
from .pu import PivotStrategy, Variant
from .ring import DEFAULT_EPSILON, Domain, Kind
from .sched import RunStats, StripeMap, run_parallel, run_sequential
from .sparsemat import DimensionError, SmsParseError, read_sms, write_sms

EXIT_USAGE = 1
EXIT_IO = 2
EXIT_SINGULAR = 3

_VARIANTS = {"rank": Variant.RANK, "lu": Variant.LUP, "echelon": Variant.ECHELON,
             "stats": Variant.RANK}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    input: Path
    domain: Domain
    workers: int = 1
    width: int = 1
    strategy: PivotStrategy | None = None
    stats_path: Path | None = None
    out: Path | None = None

    @property
    def variant(self) -> Variant:
        return _VARIANTS[self.command]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sparsege", description="Sparse exact Gaussian elimination (rank, LUP, echelon form).")
    p.add_argument("command", choices=sorted(_VARIANTS))
    p.add_argument("input", type=Path, help="matrix in SMS format")
    p.add_argument("--domain", choices=["int", "rat", "f64"], default="int")
    p.add_argument("--workers", type=int, default=1, metavar="P")
    p.add_argument("--width", type=int, default=1, metavar="W", help="stripe width")
    p.add_argument("--pivot", choices=["first", "sparsest", "threshold", "partial"])
    p.add_argument("--gamma", type=float, help="threshold pivoting parameter in [0, 1]")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON,
                   help="compare-to-zero threshold for f64")
    p.add_argument("--stats", type=Path, dest="stats_path", metavar="OUT.json")
    p.add_argument("--out", type=Path, help="echelon: output file; lu: output stem")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def make_config(args: argparse.Namespace) -> RunConfig:
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    if args.width < 1:
        raise UsageError("--width must be >= 1")
    if not args.epsilon > 0:
        raise UsageError("--epsilon must be > 0")
    if args.gamma is not None and not 0.0 <= args.gamma <= 1.0:
        raise UsageError("--gamma must lie in [0, 1]")
    domain = Domain(Kind(args.domain), epsilon=args.epsilon)
    pivot = args.pivot
    if pivot is None:
        pivot = "sparsest" if domain.exact else "threshold"
    if pivot == "first":
        strategy = PivotStrategy.first_arrival()
    elif pivot == "sparsest":
        strategy = PivotStrategy.sparsest()
    elif pivot == "partial":
        strategy = PivotStrategy.partial()
    else:
        strategy = PivotStrategy.threshold(0.5 if args.gamma is None else args.gamma)
    return RunConfig(args.command, args.input, domain, args.workers, args.width, strategy,
                     args.stats_path, args.out)


def execute(cfg: RunConfig, a):
    """Run the configured computation; returns ``(result, RunStats)``."""
    if cfg.workers == 1:
        stats = RunStats(workers=[])
        result = run_sequential(a, cfg.variant, cfg.strategy, cfg.domain, stats=stats)
        return result, stats
    sm = StripeMap(cfg.width, cfg.workers, a.m)
    return run_parallel(a, cfg.variant, cfg.strategy, cfg.domain, sm)


def _lu_stem(cfg: RunConfig) -> Path:
    if cfg.out is not None:
        return cfg.out
    p = cfg.input
    return p.with_suffix("") if p.suffix == ".sms" else p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = make_config(args)
    except UsageError as e:
        print(f"sparsege: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    try:
        with open(cfg.input) as f:
            a = read_sms(f, cfg.domain.sms_kind)
    except OSError as e:
        print(f"sparsege: cannot read {cfg.input}: {e}", file=sys.stderr)
        return EXIT_IO
    except (SmsParseError, DimensionError, ValueError) as e:
        print(f"sparsege: {cfg.input}: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        result, stats = execute(cfg, a)
    except SingularMatrixError as e:
        print(f"sparsege: singular matrix: {e}", file=sys.stderr)
        return EXIT_SINGULAR
    except ValueError as e:
        print(f"sparsege: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if cfg.command == "rank":
            print(result)
        elif cfg.command == "stats":
            print(json.dumps(stats.to_dict(), indent=2))
        elif cfg.command == "echelon":
            if cfg.out is not None:
                with open(cfg.out, "w") as f:
                    write_sms(result, f)
            else:
                write_sms(result, sys.stdout)
        else:
            for path in result.write(_lu_stem(cfg)):
                print(path)
        if cfg.stats_path is not None:
            with open(cfg.stats_path, "w") as f:
                json.dump(stats.to_dict(), f, indent=2)
                f.write("\n")
    except OSError as e:
        print(f"sparsege: write failed: {e}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
