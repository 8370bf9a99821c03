"""Command-line front end.

Subcommands::

    groverian pmax --state ghz:3 --method both
    groverian grover --state uniform:3 --marked 0 --iterations auto
    groverian compare --catalog default --format csv --output report.csv
    groverian verify-tables --n 5
    groverian sweep --n 3 --samples 200

Exit codes: 0 ok, 1 expectation failure, 2 usage / bad input,
3 domain gating (complex input or a conjectural closed form without
``--conjectural``). Every run is deterministic; the seed comes from
``--seed``, then ``$GROVERIAN_SEED``, then :data:`DEFAULT_SEED`.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .bench import (
    _num, default_catalog, discrepancy_sweep, emit_report, published_expectations_pass,
    parse_catalog, run_comparison,
)
from .closedform import ESTABLISHED, pmax_closed, table_for, verify_transcription
from .exceptions import ComplexInput, GroverianError, IoFailure, StateSpecError, Unsupported
from .grover import GroverRun, grover_trace, optimal_iterations
from .optimize import DEFAULT_SEED, OptimizerConfig, groverian, pmax_numeric
from .statevec import from_spec

EXIT_OK, EXIT_EXPECTATION, EXIT_USAGE, EXIT_GATED = 0, 1, 2, 3


def _emit(doc):
    print(json.dumps(doc))


def _fail(msg, code):
    print(f"groverian: error: {msg}", file=sys.stderr)
    return code


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GROVERIAN_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise StateSpecError(f"GROVERIAN_SEED={env!r} is not an integer") from None
    return DEFAULT_SEED


def _config(args):
    return OptimizerConfig(starts=args.starts, max_sweeps=args.max_sweeps, tol=args.tol,
                           seed=_seed(args), n_jobs=args.jobs)


def cmd_pmax(args):
    state = from_spec(args.state)
    doc = {"method": args.method, "n": state.n, "seed": _seed(args)}
    closed = None
    if args.method in ("closed", "both"):
        if not state.is_real():
            raise ComplexInput("closed forms are defined for real amplitudes only")
        table = table_for(state.n, conjectural=args.conjectural)
        closed = pmax_closed(state, table)
        closed_diag = {"table_source": table.source, "conjectural": state.n not in ESTABLISHED}
    if args.method == "closed":
        doc.update(pmax=_num(closed), groverian=_num(groverian(min(closed, 1.0))),
                   diagnostics=closed_diag)
        return doc
    result = pmax_numeric(state, _config(args))
    doc.update(pmax=_num(result.pmax), groverian=_num(result.groverian),
               diagnostics=result.diagnostics(),
               argmax=[[[_num(z.real), _num(z.imag)] for z in q.vector] for q in result.argmax.factors])
    if closed is not None:
        doc.update(pmax_closed=_num(closed), groverian_closed=_num(groverian(min(closed, 1.0))),
                   abs_diff=_num(abs(closed - result.pmax)))
        doc["diagnostics"].update(closed_diag)
    return doc


def cmd_grover(args):
    state = from_spec(args.state)
    if args.iterations == "auto":
        m = optimal_iterations(state.dim)
    else:
        try:
            m = int(args.iterations)
        except ValueError:
            raise StateSpecError(f"--iterations must be an integer or 'auto', got {args.iterations!r}") from None
    trace = grover_trace(state, GroverRun(args.marked, m))
    return {"n": state.n, "marked": args.marked, "iterations": m,
            "trace": [_num(p) for p in trace], "final": _num(trace[-1])}


def cmd_compare(args):
    if args.catalog == "default":
        entries = default_catalog()
    else:
        try:
            entries = parse_catalog(Path(args.catalog).read_text())
        except OSError as exc:
            raise StateSpecError(f"cannot read catalog {args.catalog}: {exc}") from exc
        except ValueError as exc:
            raise StateSpecError(str(exc)) from exc
    rows = run_comparison(entries, _config(args))
    output = args.output or f"groverian_report.{args.format}"
    emit_report(rows, args.format, output)
    ok = published_expectations_pass(rows)
    failed = [r.name for r in rows if not all(r.published_checks)]
    status = "all published expectations pass" if ok else f"published expectations FAILED: {', '.join(failed)}"
    print(f"compare: {len(rows)} rows written to {output}; {status}")
    return EXIT_OK if ok else EXIT_EXPECTATION


def cmd_verify_tables(args):
    if args.n not in (3, 5):
        raise Unsupported(f"no printed closed form exists for n={args.n}; use 3 or 5")
    report = verify_transcription(args.n)
    _emit(report.to_dict())
    return EXIT_EXPECTATION if report.verdict == "structural-mismatch" else EXIT_OK


def cmd_sweep(args):
    summary = discrepancy_sweep(args.n, args.samples, _seed(args), _config(args))
    _emit(summary.to_dict())
    return EXIT_OK


def _optimizer_flags(p):
    p.add_argument("--seed", type=int, default=None,
                   help=f"master seed (default: $GROVERIAN_SEED, else {DEFAULT_SEED})")
    p.add_argument("--starts", type=int, default=64, help="multistart count")
    p.add_argument("--max-sweeps", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-12, help="convergence threshold on overlap change")
    p.add_argument("--jobs", type=int, default=1, help="threads for the multistart")


def build_parser():
    parser = argparse.ArgumentParser(prog="groverian", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pmax", help="maximal success probability and Groverian entanglement")
    p.add_argument("--state", required=True, help="kind:n (ghz:3, w:5, uniform:4, basis:3:6) or state JSON file")
    p.add_argument("--method", choices=("numeric", "closed", "both"), default="numeric")
    p.add_argument("--conjectural", action="store_true",
                   help="allow generated closed forms for n outside {2, 3, 5}")
    _optimizer_flags(p)
    p.set_defaults(func=cmd_pmax)

    p = sub.add_parser("grover", help="simulate Grover iterations and print the success trace")
    p.add_argument("--state", required=True)
    p.add_argument("--marked", type=int, required=True)
    p.add_argument("--iterations", default="auto", help="integer or 'auto'")
    p.set_defaults(func=cmd_grover)

    p = sub.add_parser("compare", help="closed form vs numeric over a catalog; writes a report")
    p.add_argument("--catalog", default="default", help="'default' or a catalog JSON file")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None)
    _optimizer_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify-tables", help="check the printed sign tables against the generator")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("sweep", help="closed vs numeric on random real states")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=200)
    _optimizer_flags(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except (ComplexInput, Unsupported) as exc:
        gated = args.command == "pmax"
        return _fail(str(exc), EXIT_GATED if gated else EXIT_USAGE)
    except (GroverianError, IoFailure, ValueError) as exc:
        return _fail(str(exc), EXIT_USAGE)
    if isinstance(result, dict):
        _emit(result)
        return EXIT_OK
    return result


if __name__ == "__main__":
    sys.exit(main())
