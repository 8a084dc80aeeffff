"""Command-line front end.

Subcommands: beta (one section's log spectral radius), bounds (entropy
upper/lower pairs), lambda (density-restricted lower-bound curves),
verify (the enumeration cross-check suite), table (batch section runs).

Output is CSV with a fixed header or a JSON run record.  Data rows are
deterministic for fixed flags; timings appear only in the JSON metadata.
Exit codes: 0 success, 1 verification failure, 2 usage, 3 result did not
converge (bracket only), 4 capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from math import prod

from . import __version__
from .bounds import (
    DESK_SCALE_MAX_POINTS,
    h2_bounds,
    h3_bounds,
    lambda1,
    lambda_lower,
    optimal_density,
    section_orbit_count,
    transfer_log_radius,
)
from .lattice import CapacityError
from .oracle import run_verification_suite

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3
EXIT_CAPACITY = 4

RUN_RECORD_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "mdentropy run record",
    "type": "object",
    "required": ["command", "parameters", "results", "timings", "version"],
    "properties": {
        "command": {"type": "string"},
        "parameters": {"type": "object"},
        "results": {"type": "array", "items": {"type": "object"}},
        "timings": {
            "type": "object",
            "required": ["total_seconds"],
            "properties": {"total_seconds": {"type": "number"}},
        },
        "version": {"type": "string"},
    },
    "additionalProperties": False,
}

TABLE_SHAPES = {
    1: [(m,) for m in range(4, 18)],
    2: [(m,) for m in range(4, 16)],
    3: [(2, 2), (3, 2), (4, 2), (5, 2), (6, 2), (7, 2), (8, 2),
        (3, 3), (4, 3), (5, 3), (4, 4)],
    4: [(2, 2), (3, 2), (4, 2), (5, 2), (6, 2), (7, 2),
        (3, 3), (4, 3), (5, 3), (4, 4), (6, 3), (6, 4)],
}

BETA_COLUMNS = ("dims", "orbit_count", "log_radius", "log_lower", "log_upper",
                "per_site", "iterations", "converged")
TABLE_COLUMNS = ("dims", "orbit_count", "log_radius", "per_site",
                 "log_lower", "log_upper")
BOUND_COLUMNS = ("target", "direction", "value", "converged",
                 "formula", "params", "consistent")
LAMBDA_COLUMNS = ("point", "p", "value")


class UsageError(Exception):
    pass


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}")
    return values


def _format_dims(dims) -> str:
    return "x".join(str(m) for m in dims)


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def _emit(fmt: str, command: str, parameters: dict, columns, rows: list[dict],
          started: float, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        record = {
            "command": command,
            "parameters": parameters,
            "results": rows,
            "timings": {"total_seconds": time.perf_counter() - started},
            "version": __version__,
        }
        json.dump(record, out, indent=2)
        out.write("\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in columns])


def _beta_row(dims, dimer_only: bool, tol: float, shift: float, max_iters: int) -> dict:
    bracket = transfer_log_radius(dims, dimer_only=dimer_only, tol=tol,
                                  shift=shift, max_iter=max_iters)
    n = prod(dims)
    orbit_count = section_orbit_count(dims) if all(m > 0 for m in dims) else 1
    return {
        "dims": _format_dims(dims),
        "orbit_count": orbit_count,
        "log_radius": bracket.rayleigh,
        "log_lower": bracket.lower,
        "log_upper": bracket.upper,
        "per_site": bracket.rayleigh / n if n else None,
        "iterations": bracket.iterations,
        "converged": bracket.converged,
    }


def cmd_beta(args) -> int:
    started = time.perf_counter()
    dims = _parse_int_list(args.dims, "--dims")
    if any(m < 0 for m in dims):
        raise UsageError(f"extents must be nonnegative, got {dims}")
    row = _beta_row(dims, args.dimer_only, args.tol, args.shift, args.max_iters)
    parameters = {
        "dims": list(dims),
        "dimer_only": args.dimer_only,
        "tol": args.tol,
        "shift": args.shift,
        "max_iters": args.max_iters,
    }
    _emit(args.fmt, "beta", parameters, BETA_COLUMNS, [row], started)
    return EXIT_OK if row["converged"] else EXIT_NOT_CONVERGED


_UPPER_ARITY = {"h2": 1, "h2t": 1, "h3": 2, "h3t": 2}
_LOWER_ARITY = {"h2": 2, "h2t": 2, "h3": 5, "h3t": 5}


def cmd_bounds(args) -> int:
    started = time.perf_counter()
    target = args.target
    upper_params = _parse_int_list(args.upper, "--upper")
    lower_params = _parse_int_list(args.lower, "--lower")
    if len(upper_params) != _UPPER_ARITY[target]:
        raise UsageError(
            f"--upper for {target} takes {_UPPER_ARITY[target]} value(s), got {len(upper_params)}")
    if len(lower_params) != _LOWER_ARITY[target]:
        raise UsageError(
            f"--lower for {target} takes {_LOWER_ARITY[target]} value(s), got {len(lower_params)}")
    dimer_only = target.endswith("t")
    try:
        if target in ("h2", "h2t"):
            upper, lower = h2_bounds(upper_params[0], *lower_params,
                                     dimer_only=dimer_only, tol=args.tol)
        else:
            upper, lower = h3_bounds(*upper_params, *lower_params,
                                     dimer_only=dimer_only, tol=args.tol)
    except CapacityError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc))
    consistent = lower.value <= upper.value
    rows = []
    for bound in (upper, lower):
        rows.append({
            "target": bound.target,
            "direction": bound.direction,
            "value": bound.value,
            "converged": bound.converged,
            "formula": bound.formula,
            "params": " ".join(f"{k}={v}" for k, v in bound.params.items()),
            "consistent": consistent,
        })
    parameters = {
        "target": target,
        "upper": list(upper_params),
        "lower": list(lower_params),
        "tol": args.tol,
    }
    _emit(args.fmt, "bounds", parameters, BOUND_COLUMNS, rows, started)
    if not (upper.converged and lower.converged):
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_lambda(args) -> int:
    started = time.perf_counter()
    d = args.d
    step = args.grid
    if not 0.0 < step <= 0.1:
        raise UsageError(f"--grid must be in (0, 0.1], got {step}")
    curve = lambda1 if d == 1 else (lambda p: lambda_lower(d, p))
    steps = math.floor(1.0 / step + 1e-9)
    rows = []
    for i in range(steps + 1):
        p = min(i * step, 1.0)
        rows.append({"point": "grid", "p": p, "value": curve(p)})
    if d == 1:
        peak_p = 1.0 - 1.0 / math.sqrt(5.0)
    else:
        peak_p = optimal_density(d)
    rows.append({"point": "peak", "p": peak_p, "value": curve(peak_p)})
    parameters = {"d": d, "grid": step}
    _emit(args.fmt, "lambda", parameters, LAMBDA_COLUMNS, rows, started)
    return EXIT_OK


def cmd_verify(args) -> int:
    ok, lines = run_verification_suite(args.max_points)
    for line in lines:
        print(line)
    print(f"verification: {'PASS' if ok else 'FAIL'} ({len(lines)} checks)")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_table(args) -> int:
    started = time.perf_counter()
    if args.max_size < 1:
        raise UsageError(f"--max-size must be positive, got {args.max_size}")
    if args.max_size > DESK_SCALE_MAX_POINTS:
        raise CapacityError(
            f"--max-size {args.max_size} exceeds the {DESK_SCALE_MAX_POINTS}-point desk scale")
    dimer_only = args.which in (2, 4)
    shapes = [s for s in TABLE_SHAPES[args.which] if prod(s) <= args.max_size]

    def worker(shape):
        row = _beta_row(shape, dimer_only, args.tol, args.shift, args.max_iters)
        return {c: row[c] for c in TABLE_COLUMNS}, row["converged"]

    threads = _resolve_threads(args.threads)
    if threads > 1 and len(shapes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(worker, shapes))
    else:
        outcomes = [worker(s) for s in shapes]
    rows = [row for row, _ in outcomes]
    all_converged = all(conv for _, conv in outcomes)
    parameters = {
        "which": args.which,
        "max_size": args.max_size,
        "tol": args.tol,
        "shift": args.shift,
        "max_iters": args.max_iters,
        "threads": threads,
    }
    _emit(args.fmt, "table", parameters, TABLE_COLUMNS, rows, started)
    return EXIT_OK if all_converged else EXIT_NOT_CONVERGED


def _resolve_threads(flag_value) -> int:
    if flag_value is not None:
        value = flag_value
    else:
        raw = os.environ.get("MDENTROPY_THREADS", "1")
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f"MDENTROPY_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise UsageError(f"thread count must be positive, got {value}")
    return value


def _add_spectral_flags(parser) -> None:
    parser.add_argument("--tol", type=float, default=1e-12,
                        help="relative bracket width for convergence")
    parser.add_argument("--shift", type=float, default=1.0,
                        help="positive diagonal shift for the power method")
    parser.add_argument("--max-iters", type=int, default=1_000_000,
                        dest="max_iters", help="iteration cap per component")


def _add_format_flag(parser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        dest="fmt", help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdentropy",
        description="Transfer-matrix entropy bounds for monomer-dimer systems.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_beta = sub.add_parser("beta", help="log spectral radius of one section")
    p_beta.add_argument("--dims", required=True,
                        help="section extents, comma separated (e.g. 4 or 3,3)")
    p_beta.add_argument("--dimer-only", action="store_true", dest="dimer_only")
    _add_spectral_flags(p_beta)
    _add_format_flag(p_beta)
    p_beta.set_defaults(func=cmd_beta)

    p_bounds = sub.add_parser("bounds", help="entropy upper/lower bound pair")
    p_bounds.add_argument("--target", required=True,
                          choices=("h2", "h2t", "h3", "h3t"))
    p_bounds.add_argument("--upper", required=True,
                          help="r for h2/h2t, r,t for h3/h3t")
    p_bounds.add_argument("--lower", required=True,
                          help="p,q for h2/h2t, p,q,u,s,v for h3/h3t")
    p_bounds.add_argument("--tol", type=float, default=1e-12)
    _add_format_flag(p_bounds)
    p_bounds.set_defaults(func=cmd_bounds)

    p_lambda = sub.add_parser("lambda", help="density-restricted lower-bound curve")
    p_lambda.add_argument("--d", type=int, required=True, choices=(1, 2, 3))
    p_lambda.add_argument("--grid", type=float, required=True,
                          help="grid step in (0, 0.1]")
    _add_format_flag(p_lambda)
    p_lambda.set_defaults(func=cmd_lambda)

    p_verify = sub.add_parser("verify", help="run the enumeration cross-check suite")
    p_verify.add_argument("--max-points", type=int, default=20, dest="max_points")
    p_verify.set_defaults(func=cmd_verify)

    p_table = sub.add_parser("table", help="batch section runs")
    p_table.add_argument("--which", type=int, required=True, choices=(1, 2, 3, 4))
    p_table.add_argument("--max-size", type=int, default=12, dest="max_size",
                         help="largest section point count to run")
    p_table.add_argument("--threads", type=int, default=None,
                         help="worker cap (default MDENTROPY_THREADS or 1)")
    _add_spectral_flags(p_table)
    _add_format_flag(p_table)
    p_table.set_defaults(func=cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
