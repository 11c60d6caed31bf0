"""Command-line front end.

::

    eofbound bound [FILE ...] [--gen SPEC ...] [--format json|csv] [--out PATH]
    eofbound gen SPEC [--out PATH]
    eofbound sandwich [FILE ...] [--gen SPEC ...] [--ensemble-size K] [--iters T]

JSON output is one object per line, CSV has a fixed header. A malformed
input yields an error row and a diagnostic on stderr; the batch continues
and the process exits with status 2 (3 for numerical failures).
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import bound, maps, oracles, statefile
from .errors import ConvergenceFailure, EofBoundError, InvariantViolation, ParseError
from .families import parse_state_spec

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

BOUND_COLUMNS = ["m", "n", "ppt_norm", "realignment_norm", "lambda", "bound_bits",
                 "is_ppt", "realignment_detects", "branch"]
SANDWICH_COLUMNS = ["m", "n", "lower_bits", "upper_bits", "gap_bits",
                    "ensemble_size", "iterations", "seed", "error"]


def format_value(v):
    """Shortest round-trip text for floats, lowercase booleans, blanks for None."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def bound_row(report):
    v = report.verdict
    return {
        "m": report.m,
        "n": report.n,
        "ppt_norm": report.ppt_norm,
        "realignment_norm": report.realignment_norm,
        "lambda": report.lambda_cap,
        "bound_bits": report.bound_bits,
        "is_ppt": v.is_ppt,
        "realignment_detects": v.realignment_detects,
        "entangled_certified": v.entangled_certified,
        "branch": report.branch.value,
    }


def sandwich_row(rho, result):
    return {
        "m": rho.m,
        "n": rho.n,
        "lower_bits": result.lower_bits,
        "upper_bits": result.upper_bits,
        "gap_bits": result.gap_bits,
        "ensemble_size": result.ensemble_size,
        "iterations": result.iterations,
        "seed": result.seed,
    }


def error_row(exc):
    row = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError) and exc.line is not None:
        row["line"], row["column"] = exc.line, exc.column
    if isinstance(exc, InvariantViolation):
        row["invariant"], row["deviation"] = exc.invariant, float(exc.deviation)
    return row


def _exit_for(exc):
    if isinstance(exc, (ConvergenceFailure, np.linalg.LinAlgError)):
        return EXIT_NUMERIC
    return EXIT_INPUT


def iter_jobs(args):
    """Yield ``(source, thunk)`` pairs; each thunk returns a DensityMatrix."""
    for path in args.files:
        yield path, lambda path=path: statefile.as_density(
            statefile.read(path, pure=True if args.pure else None))
    for text in args.gen:
        try:
            spec = parse_state_spec(text, default_seed=args.seed)
        except EofBoundError as exc:
            yield text, _raiser(exc)
            continue
        for i in range(spec.count):
            yield spec.label(i), lambda spec=spec, i=i: statefile.as_density(spec.build(i))


def _raiser(exc):
    def thunk():
        raise exc
    return thunk


def run_batch(args, evaluate, columns, stdout, stderr):
    rows, status = [], EXIT_OK
    for source, load in iter_jobs(args):
        try:
            row = {"source": source, **evaluate(load())}
        except (EofBoundError, np.linalg.LinAlgError, OSError) as exc:
            row = {"source": source, **error_row(exc)}
            status = max(status, _exit_for(exc))
            print(f"{source}: {type(exc).__name__}: {exc}", file=stderr)
        rows.append(row)
    text = render(rows, columns, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def render(rows, columns, fmt):
    if fmt == "json":
        return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        cells = [r.get(c) for c in columns]
        if "error" in r:
            # the bound header is fixed, so errors are flagged in the branch column
            cells[columns.index("branch" if "branch" in columns else "error")] = (
                "ERROR" if "branch" in columns else r["error"])
        w.writerow([format_value(c) for c in cells])
    return buf.getvalue()


def cmd_bound(args, stdout=None, stderr=None):
    def evaluate(rho):
        return bound_row(bound.eof_lower_bound(rho, args.tol))
    return run_batch(args, evaluate, BOUND_COLUMNS,
                     stdout or sys.stdout, stderr or sys.stderr)


def cmd_sandwich(args, stdout=None, stderr=None):
    def evaluate(rho):
        result = oracles.sandwich(rho, ensemble_size=args.ensemble_size,
                                  iterations=args.iters, seed=args.seed,
                                  restarts=args.restarts, tol=args.tol)
        return sandwich_row(rho, result)
    return run_batch(args, evaluate, SANDWICH_COLUMNS,
                     stdout or sys.stdout, stderr or sys.stderr)


def cmd_gen(args, stdout=None, stderr=None):
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    text = args.spec or args.gen_opt
    if not text:
        print("gen: a generator spec is required", file=stderr)
        return EXIT_INPUT
    try:
        spec = parse_state_spec(text, default_seed=args.seed)
        if spec.count != 1:
            raise ParseError("gen writes a single state; drop 'count'")
        payload = statefile.encode(spec.build(0))
    except EofBoundError as exc:
        print(f"{text}: {type(exc).__name__}: {exc}", file=stderr)
        return _exit_for(exc)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    else:
        stdout.write(payload)
    return EXIT_OK


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def build_parser():
    parser = argparse.ArgumentParser(
        prog="eofbound",
        description="Lower bounds on the entanglement of formation of bipartite states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_inputs(p):
        p.add_argument("files", nargs="*", metavar="FILE", help="state files (JSON)")
        p.add_argument("--gen", action="append", default=[], metavar="FAMILY:k=v,...",
                       help="generate the input state(s); may be repeated")
        p.add_argument("--pure", action="store_true",
                       help="treat files without a 'kind' field as pure-state amplitudes")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--tol", type=_positive_float, default=maps.DEFAULT_TOL,
                       help="separability tolerance (default %(default)g)")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("bound", help="evaluate the EOF lower bound")
    add_inputs(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sandwich", help="lower bound plus stochastic convex-roof upper estimate")
    add_inputs(p)
    p.add_argument("--ensemble-size", type=int, default=None, metavar="K",
                   help="ensemble members (default rank + 2)")
    p.add_argument("--iters", type=int, default=oracles.DEFAULT_ITERATIONS, metavar="T")
    p.add_argument("--restarts", type=int, default=oracles.DEFAULT_RESTARTS)
    p.set_defaults(func=cmd_sandwich)

    p = sub.add_parser("gen", help="write a generated state to a file")
    p.add_argument("spec", nargs="?", metavar="FAMILY:k=v,...")
    p.add_argument("--gen", dest="gen_opt", metavar="FAMILY:k=v,...")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None, stdout=None, stderr=None):
    args = build_parser().parse_args(argv)
    return args.func(args, stdout=stdout, stderr=stderr)


if __name__ == "__main__":
    sys.exit(main())
