"""Experiment grids, report rows, and deterministic CSV/JSON writers.

Rows are emitted in grid order (outer loop over the first value list),
independent of any evaluation order, so identical inputs produce
byte-identical files. Exact integer counts are serialized as decimal
strings, never as floats.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from . import auxsums, binning, bounds, smooth
from .errors import (DegenerateWeightError, InvalidArgumentError,
                     ResourceLimitError, SmoothboundError)
from .primes import build_prime_table

SANDWICH_COLUMNS = ["n", "N", "r", "case", "lower_bound", "nu", "upper_bound",
                    "lower_gap", "upper_gap", "status"]
BOUND_SCAN_COLUMNS = ["n", "N", "nu", "lhs_exponent", "lower_rhs", "lower_margin",
                      "upper_rhs", "upper_rhs_tail", "upper_margin",
                      "upper_domain_gap", "remark_exponent", "alpha_induced",
                      "c_needed", "error"]
AUX_SCAN_COLUMNS = ["row", "c", "M", "log_plain_plus_scale", "log_corrected",
                    "margin", "premise", "domain", "step_ok", "scale_ok",
                    "budget_ok", "kappa", "gamma", "seed_coefficient",
                    "n", "N", "log_psi", "anchor_margin", "error"]

# Columns whose values are exact (possibly big) integers; serialized as
# decimal strings so no reader rounds them through a float.
COUNT_COLUMNS = {"nu", "upper_bound", "upper_gap"}

DEFAULTS = {
    "sandwich": {"n_values": [10.0, 20.0, 35.0, 50.0],
                 "big_n_values": [1e3, 1e4, 1e5]},
    "bound-scan": {"n_values": [50.0, 100.0, 200.0],
                   "big_n_values": [1e4, 1e5, 1e6]},
    "aux-scan": {"c_values": [4.5, 6.7],
                 "m_values": [2.0, 5.0, 10.0, 15.0],
                 "n_values": [10.0, 20.0],
                 "big_n_values": [1e3, 1e4]},
    "verify": {},
}


@dataclass
class ExperimentGrid:
    """Value lists plus an option map driving one experiment command."""

    n_values: list = field(default_factory=list)
    big_n_values: list = field(default_factory=list)
    c_values: list = field(default_factory=list)
    m_values: list = field(default_factory=list)
    options: dict = field(default_factory=dict)

    @classmethod
    def from_config(cls, config: dict) -> "ExperimentGrid":
        known = {"n_values", "big_n_values", "c_values", "m_values", "options"}
        unknown = set(config) - known
        if unknown:
            raise InvalidArgumentError(f"unknown config keys: {sorted(unknown)}")
        return cls(
            n_values=[float(x) for x in config.get("n_values", [])],
            big_n_values=[float(x) for x in config.get("big_n_values", [])],
            c_values=[float(x) for x in config.get("c_values", [])],
            m_values=[float(x) for x in config.get("m_values", [])],
            options=dict(config.get("options", {})),
        )

    def with_defaults(self, command: str) -> "ExperimentGrid":
        merged = ExperimentGrid(list(self.n_values), list(self.big_n_values),
                                list(self.c_values), list(self.m_values),
                                dict(self.options))
        for key, values in DEFAULTS.get(command, {}).items():
            if not getattr(merged, key):
                setattr(merged, key, list(values))
        guard = merged.options.get("guard")
        if guard is not None and int(guard) <= 0:
            raise InvalidArgumentError("guard must be positive")
        return merged

    def guard(self):
        g = self.options.get("guard")
        return int(g) if g is not None else None


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(col)) for col in columns])
    return buf.getvalue()


def rows_to_json(rows, columns) -> str:
    payload = []
    for row in rows:
        entry = {}
        for col in columns:
            value = row.get(col)
            if col in COUNT_COLUMNS and isinstance(value, int):
                entry[col] = str(value)
            elif isinstance(value, float) and not math.isfinite(value):
                entry[col] = repr(value)
            else:
                entry[col] = value
        payload.append(entry)
    return json.dumps(payload, indent=2) + "\n"


def write_report(rows, columns, fmt: str, out, stream) -> None:
    text = rows_to_csv(rows, columns) if fmt == "csv" else rows_to_json(rows, columns)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream.write(text)


# --- sandwich --------------------------------------------------------------

def run_sandwich(grid: ExperimentGrid):
    """For each (n, N): the exact count and its two binning bounds.

    Exit is nonzero iff some cell violates lower <= exact <= upper;
    resource-limited cells are recorded as skipped, not failed.
    """
    grid = grid.with_defaults("sandwich")
    guard = grid.guard()
    table = build_prime_table(max(2, math.ceil(max(grid.n_values))))
    rows = []
    violations = 0
    for n in grid.n_values:
        for N in grid.big_n_values:
            row = {"n": n, "N": N, "status": "ok"}
            try:
                spec = binning.build_binning(n, table)
                row["r"] = spec.r
                row["case"] = spec.case_tag
                nu = smooth.smooth_count_direct(n, N, guard=guard).nu
                lower = binning.count_lower_bound(spec, N, guard=guard)
                upper = binning.count_upper_bound(spec, N, guard=guard)
                row["nu"] = nu
                row["lower_bound"] = lower.value
                row["upper_bound"] = upper
                row["lower_gap"] = nu - lower.value
                row["upper_gap"] = upper - nu
                if lower.value > nu or upper < nu:
                    row["status"] = "violation"
                    violations += 1
            except ResourceLimitError as exc:
                row["status"] = f"skipped:{exc}"
            except SmoothboundError as exc:
                row["status"] = f"error:{exc}"
            rows.append(row)
    return rows, (1 if violations else 0)


# --- bound scan ------------------------------------------------------------

def run_bound_scan(grid: ExperimentGrid):
    """Exact exponents next to every bound formula; trend report only,
    nothing in this scan is asserted."""
    grid = grid.with_defaults("bound-scan")
    guard = grid.guard()
    delta = float(grid.options.get("delta", 0.0))
    a_bar = float(grid.options.get("a_bar", 0.0))
    rows = []
    c_needed_values = []
    for n in grid.n_values:
        for N in grid.big_n_values:
            row = {"n": n, "N": N, "error": ""}
            errors = []
            try:
                nu = smooth.smooth_count_direct(n, N, guard=guard).nu
                row["nu"] = nu
                if nu >= 1:
                    lhs = math.log(nu) / math.log(N)
                    row["lhs_exponent"] = lhs
                else:
                    errors.append("count-zero")
                    lhs = None
            except ResourceLimitError:
                errors.append("resource-limit")
                lhs = None
            try:
                row["lower_rhs"] = bounds.lower_bound_rhs(n, N, delta=delta)
                if lhs is not None:
                    row["lower_margin"] = lhs - row["lower_rhs"]
            except InvalidArgumentError:
                errors.append("lower-domain")
            try:
                row["upper_rhs"] = bounds.upper_bound_rhs(n, N, a_bar=a_bar)
                row["upper_rhs_tail"] = bounds.upper_bound_rhs(
                    n, N, a_bar=a_bar, with_tail=True)
                if lhs is not None:
                    row["upper_margin"] = row["upper_rhs_tail"] - lhs
            except InvalidArgumentError:
                errors.append("upper-domain")
            row["upper_domain_gap"] = bounds.upper_domain_gap(n, N)
            log_n, loglog_N = math.log(n), math.log(math.log(N))
            if loglog_N > 0 and log_n > 0:
                row["remark_exponent"] = 1.0 - loglog_N / log_n
            row["alpha_induced"] = n / math.log(N) ** 2
            if lhs is not None and log_n > 0:
                c_needed = (lhs - 1.0 + loglog_N / log_n) * log_n
                row["c_needed"] = c_needed
                c_needed_values.append(c_needed)
            row["error"] = ";".join(errors)
            rows.append(row)
    fitted = max(c_needed_values) if c_needed_values else None
    return rows, 0, fitted


# --- aux scan ----------------------------------------------------------------

def run_aux_scan(grid: ExperimentGrid):
    """Corrected-vs-plain margins with premise flags, the seed-coefficient
    table, and reported anchor margins against exact smooth counts.

    Exit is nonzero only if an asserted comparison (premise held) fails.
    """
    grid = grid.with_defaults("aux-scan")
    guard = grid.guard()
    a_bar = float(grid.options.get("a_bar", 0.0))
    kappas = [float(x) for x in grid.options.get("kappa_values", [0.0, 1.0, 2.0])]
    gammas = [float(x) for x in grid.options.get("gamma_values", [0.0, 1.0, 2.0])]
    rows = []
    failures = 0
    for c in grid.c_values:
        for M in grid.m_values:
            row = {"row": "pair", "c": c, "M": M, "error": ""}
            try:
                report = auxsums.corrected_vs_plain_report(c, M, guard=guard)
                row["log_plain_plus_scale"] = report.bound_logs["plain_plus_scale"]
                row["log_corrected"] = report.exact_log
                row["margin"] = report.margins["plain_plus_scale"]
                row["premise"] = report.flags["plain_plus_scale"]
                row["domain"] = report.flags["domain"]
                step = bounds.upper_step_flags(c, M, a_bar=a_bar,
                                               q=float(grid.options.get("q", 1.1)))
                row.update(step)
                if report.flags["plain_plus_scale"] == "asserted" \
                        and row["margin"] <= 0:
                    row["error"] = "asserted-margin-violated"
                    failures += 1
            except (DegenerateWeightError, ResourceLimitError,
                    InvalidArgumentError) as exc:
                row["row"] = "error"
                row["error"] = str(exc)
            rows.append(row)
    for kappa in kappas:
        for gamma in gammas:
            rows.append({"row": "seed", "kappa": kappa, "gamma": gamma,
                         "seed_coefficient": auxsums.seed_coefficient(kappa, gamma),
                         "error": ""})
    # Anchor rows: idealized-base plain sums at (ln n, ln N) against exact
    # counts including 1; the relation is reported, never asserted.
    for n in grid.n_values:
        for N in grid.big_n_values:
            row = {"row": "anchor", "n": n, "N": N, "error": ""}
            try:
                c, M = math.log(n), math.log(N)
                inst = auxsums.make_aux_instance(c, M, auxsums.KIND_PLAIN)
                value = auxsums.plain_sum(inst, guard=guard)
                psi = smooth.smooth_count_direct(n, N, guard=guard).psi
                row["c"], row["M"] = c, M
                row["log_plain_plus_scale"] = value.log_value
                row["log_psi"] = math.log(psi)
                row["anchor_margin"] = math.log(psi) - value.log_value
            except SmoothboundError as exc:
                row["error"] = str(exc)
            rows.append(row)
    return rows, (1 if failures else 0)
