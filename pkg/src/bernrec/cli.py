"""Command-line interface.

    bernrec bern --upto 20 --engine shortened --format decimal:12
    bernrec zeta --even 4 --format decimal:30
    bernrec verify --suite cross --limit 600
    bernrec bench --max 200 --engines classical,shortened --repeats 3 --out r.csv --format csv

Exit status: 0 on success, 1 on a failed verification or I/O error,
2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .bench import run_bench
from .engines import BernoulliTable, EngineKind, extend_table
from .formats import (
    OutputFormat,
    format_decimal,
    ratio_lines,
    read_ratio_table,
    render_bernoulli,
    table_from_ratio,
)
from .verify import SUITES, run_suite
from .zeta import GUARD_DIGITS, euler_coefficient, mpf_to_fraction

ROUNDING_NOTE = "decimal:D prints D fractional digits, rounded half to even"


def _format_arg(token: str) -> OutputFormat:
    try:
        return OutputFormat.parse(token)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _engines_arg(token: str) -> list[EngineKind]:
    try:
        return [EngineKind(t.strip()) for t in token.split(",") if t.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bernrec",
        description="Exact Bernoulli numbers via a shortened recurrence, with verification and benchmarks.",
        epilog=ROUNDING_NOTE,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed-table",
        metavar="FILE",
        help="start from a previously emitted ratio-format table (index<TAB>num/den)",
    )
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bern", parents=[common], help="print Bernoulli numbers", epilog=ROUNDING_NOTE)
    b.add_argument("--upto", type=int, required=True, help="largest even index to print")
    b.add_argument("--engine", choices=[e.value for e in EngineKind], default=EngineKind.SHORTENED.value)
    b.add_argument("--format", type=_format_arg, default=OutputFormat("ratio"),
                   help="ratio | json | decimal:D | code-table:csv|text")
    b.add_argument("--parallel", action="store_true", help="compute each doubling wave in worker processes")

    z = sub.add_parser("zeta", parents=[common], help="print q with zeta(2n) = q pi^2n", epilog=ROUNDING_NOTE)
    z.add_argument("--even", type=int, required=True, metavar="N", help="even argument 2n >= 0")
    z.add_argument("--format", type=_format_arg, default=OutputFormat("ratio"))

    v = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--limit", type=int, default=None)

    r = sub.add_parser("bench", parents=[common], help="benchmark the engines")
    r.add_argument("--max", type=int, required=True, dest="max_index")
    r.add_argument("--engines", type=_engines_arg, default=list(EngineKind), help="comma-separated engine list")
    r.add_argument("--repeats", type=int, default=3)
    r.add_argument("--out", default="-", help="output path, '-' for standard output")
    r.add_argument("--format", choices=["csv", "json"], default="csv")
    r.add_argument("--parallel", action="store_true")
    return p


def _load_seed(path: str | None) -> BernoulliTable | None:
    if path is None:
        return None
    with open(path, encoding="utf-8") as fp:
        return table_from_ratio(read_ratio_table(fp))


def cmd_bern(args, out) -> int:
    if args.upto < 0 or args.upto % 2:
        raise _Usage(f"--upto must be a nonnegative even integer, got {args.upto}")
    table = _load_seed(args.seed_table) or BernoulliTable()
    extend_table(table, args.upto, args.engine, parallel=args.parallel)
    render_bernoulli(ratio_lines(table, args.upto), args.format, out)
    return 0


def cmd_zeta(args, out) -> int:
    if args.even < 0 or args.even % 2:
        raise _Usage(f"--even must be a nonnegative even integer, got {args.even}")
    table = _load_seed(args.seed_table) or BernoulliTable()
    n = args.even // 2
    zc = euler_coefficient(n, table)
    fmt = args.format
    if fmt.kind == "json":
        json.dump({"even": args.even, "q": str(zc.q)}, out)
        out.write("\n")
    elif fmt.kind == "code-table" and fmt.dialect == "csv":
        out.write("even,numerator,denominator\n")
        out.write(f"{args.even},{zc.q.numerator},{zc.q.denominator}\n")
    else:
        out.write(f"q={zc.q}\n")
        if fmt.kind == "decimal":
            val = zc.value(fmt.digits + GUARD_DIGITS)
            out.write(f"zeta({args.even})={format_decimal(mpf_to_fraction(val), fmt.digits)}\n")
    return 0


def cmd_verify(args, out) -> int:
    res = run_suite(args.suite, args.limit, _load_seed(args.seed_table))
    for line in res.lines():
        out.write(line + "\n")
    return 0 if res.ok else 1


def cmd_bench(args, out) -> int:
    if args.max_index < 2:
        raise _Usage(f"--max must be >= 2, got {args.max_index}")
    if args.repeats < 1:
        raise _Usage(f"--repeats must be positive, got {args.repeats}")
    # validated only: timings always rebuild from B_0
    _load_seed(args.seed_table)
    report = run_bench(args.max_index, args.engines, args.repeats, parallel=args.parallel)
    write = report.write_csv if args.format == "csv" else report.write_json
    if args.out == "-":
        write(out)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fp:
            write(fp)
    return 0


class _Usage(Exception):
    pass


COMMANDS = {"bern": cmd_bern, "zeta": cmd_zeta, "verify": cmd_verify, "bench": cmd_bench}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out if out is not None else sys.stdout
    try:
        return COMMANDS[args.command](args, out)
    except _Usage as e:
        parser.error(str(e))
    except OSError as e:
        print(f"bernrec: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        # malformed seed tables and similar input problems
        print(f"bernrec: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
