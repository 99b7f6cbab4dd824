"""Command-line entry point: ``formelastic verify`` and ``formelastic eval``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage,
configuration or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .. import __version__
from ..charts import BUILTIN_CHARTS
from ..elasticity import ElasticModuli
from ..errors import FormElasticError
from .evaluate import OPS, eval_op, format_result
from .fields import load_field_spec
from .suites import SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _triple(text: str) -> List[float]:
    parts = [s for s in text.replace(" ", "").split(",") if s]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return [float(s) for s in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number in {text!r}") from None


def _u64(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="formelastic", description="Verify and evaluate differential-form elasticity operators.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a randomized verification suite")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(list(SUITES) + ['all'])}")
    v.add_argument("--seed", type=_u64, default=42)
    v.add_argument("--points", type=int, default=20)
    v.add_argument("--fields", type=int, default=100)
    v.add_argument("--tol-rel", type=float, default=None, help="override every tolerance with this value")
    v.add_argument("--report", type=Path, default=None, help="write the JSON report here")
    v.add_argument("--chart", action="append", default=None, help="restrict to a chart (repeatable)")
    v.add_argument("--quiet", action="store_true", help="do not print the table")

    e = sub.add_parser("eval", help="evaluate one operation at one point")
    e.add_argument("--op", required=True, help=f"one of {', '.join(sorted(OPS))}")
    e.add_argument("--field", type=Path, default=None, help="JSON field spec file")
    e.add_argument("--chart", default="cartesian")
    e.add_argument("--at", type=_triple, required=True, help='"q1,q2,q3"')
    e.add_argument("--lambda", dest="lam", type=float, default=1.0)
    e.add_argument("--mu", type=float, default=1.0)
    e.add_argument("--normal", type=_triple, default=None,
                   help="surface normal in coordinate components (default: the adapted coordinate)")
    return parser


def _verify(args) -> int:
    charts = tuple(args.chart) if args.chart else BUILTIN_CHARTS
    cfg = SuiteConfig(seed=args.seed, points=args.points, fields=args.fields, tol_rel=args.tol_rel, charts=charts)
    report = run_suite(args.suite, cfg)
    if args.report is not None:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(report.to_json(), encoding="utf-8")
    if not args.quiet:
        print(report.format_table())
    return EXIT_OK if report.passed else EXIT_FAIL


def _eval(args) -> int:
    spec = load_field_spec(args.field) if args.field is not None else None
    res = eval_op(args.op, spec, args.chart, args.at, ElasticModuli(args.lam, args.mu), args.normal)
    print(format_result(res))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _verify(args) if args.command == "verify" else _eval(args)
    except (FormElasticError, OSError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"formelastic: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
