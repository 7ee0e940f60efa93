"""Command-line front end.

Subcommands:
  sandwich    exact smooth counts bracketed by the binned bounds
  bound-scan  exact exponents next to every bound formula (trend report)
  aux-scan    corrected-vs-plain margins, seed table, anchor margins
  verify      the asserted desk-scale check suite

Value lists come from a JSON config file and/or comma-separated flags
(flags win). Reports go to --out (UTF-8 CSV or JSON, '.' decimals, exact
counts as decimal strings) or stdout. SMOOTHBOUND_GUARD in the environment
overrides the default enumeration guards; --guard overrides both.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness, verify
from .errors import SmoothboundError

_COLUMN_DOC = {
    "sandwich": harness.SANDWICH_COLUMNS,
    "bound-scan": harness.BOUND_SCAN_COLUMNS,
    "aux-scan": harness.AUX_SCAN_COLUMNS,
}


def _add_common(parser, command):
    parser.add_argument("--config", help="JSON file with the grid schema")
    parser.add_argument("--guard", type=float, help="enumeration guard override")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", help="report file (default: stdout)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for any sampled check (determinism contract)")
    if command in ("sandwich", "bound-scan", "aux-scan"):
        parser.add_argument("--n-values", help="comma-separated smoothness bounds n")
        parser.add_argument("--big-n-values", help="comma-separated range ends N")
    if command == "aux-scan":
        parser.add_argument("--c-values", help="comma-separated c parameters")
        parser.add_argument("--m-values", help="comma-separated M parameters")
    if command in ("bound-scan", "aux-scan"):
        parser.add_argument("--delta", type=float, default=0.0,
                            help="additive offset in the lower formula")
        parser.add_argument("--alpha", type=float, default=0.1,
                            help="schedule margin parameter")
        parser.add_argument("--a-bar", type=float, default=0.0,
                            help="additive offset in the upper formula")
    epilog = "columns: " + ",".join(_COLUMN_DOC.get(command, []))
    parser.epilog = epilog if command in _COLUMN_DOC else None


def _parse_values(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _build_grid(args, command) -> harness.ExperimentGrid:
    config = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    grid = harness.ExperimentGrid.from_config(config)
    for flag, attr in (("n_values", "n_values"), ("big_n_values", "big_n_values"),
                       ("c_values", "c_values"), ("m_values", "m_values")):
        value = getattr(args, flag, None)
        if value:
            setattr(grid, attr, _parse_values(value))
    if args.guard is not None:
        grid.options["guard"] = int(args.guard)
    grid.options.setdefault("seed", args.seed)
    for name in ("delta", "alpha", "a_bar"):
        value = getattr(args, name, None)
        if value is not None:
            grid.options[name] = value
    return grid.with_defaults(command)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="smoothbound",
        description="Exact smooth-integer counts and bound-formula reports.")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in ("sandwich", "bound-scan", "aux-scan", "verify"):
        p = sub.add_parser(command)
        _add_common(p, command)
        if command == "verify":
            p.add_argument("--all", action="store_true",
                           help="accepted for compatibility; the full suite always runs")
    args = parser.parse_args(argv)

    try:
        if args.command == "verify":
            options = {"seed": args.seed}
            if args.guard is not None:
                options["guard"] = int(args.guard)
            _, code = verify.run_verify(options, stream=sys.stdout)
            return code
        grid = _build_grid(args, args.command)
        if args.command == "sandwich":
            rows, code = harness.run_sandwich(grid)
            harness.write_report(rows, harness.SANDWICH_COLUMNS,
                                 args.format, args.out, sys.stdout)
            return code
        if args.command == "bound-scan":
            rows, code, fitted = harness.run_bound_scan(grid)
            harness.write_report(rows, harness.BOUND_SCAN_COLUMNS,
                                 args.format, args.out, sys.stdout)
            if fitted is not None:
                sys.stderr.write(f"smallest sufficient offset over the grid: {fitted!r}\n")
            return code
        rows, code = harness.run_aux_scan(grid)
        harness.write_report(rows, harness.AUX_SCAN_COLUMNS,
                             args.format, args.out, sys.stdout)
        return code
    except SmoothboundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
