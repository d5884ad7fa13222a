"""Command line entry point: ``quiverweyl analyze|roots|leaves|check FILE``."""

from __future__ import annotations

import argparse
import sys

from .problem import ProblemError, ProblemFile, parse_problem
from .quiver import QuiverError
from .sigma import InconsistencyError
from .report import EXIT_INPUT, EXIT_OK, EXIT_VERDICT, analyze, dumps, render_text, roots_report


def _load(args) -> ProblemFile:
    problem = parse_problem(args.file)
    if args.seed_order is not None:
        problem = problem.permuted(args.seed_order)
    return problem


def _bound(text: str, problem: ProblemFile):
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise ProblemError("E_BOUND", f"bound {text!r} is not a comma separated list of integers") from None
    if len(vals) != len(problem.vertices) or any(x < 0 for x in vals):
        raise ProblemError("E_BOUND", f"bound needs {len(problem.vertices)} nonnegative entries")
    return tuple(vals)


def cmd_analyze(args, out) -> int:
    res = analyze(_load(args), force=args.force)
    out.write(dumps(res.report) if args.format == "json" else render_text(res.report))
    return res.exit_code


def cmd_roots(args, out) -> int:
    problem = parse_problem(args.file)
    q = problem.quiver()
    # bound entries follow the vertex order of the file
    bound = _bound(args.bound, problem) if args.bound else q.vector(problem.v)
    rep = roots_report(problem, bound)
    if args.format == "json":
        out.write(dumps(rep))
    else:
        out.write(f"{rep['count']} positive roots below {rep['bound']}\n")
        for r in rep["roots"]:
            vec = ", ".join(f"{k}={v}" for k, v in r["vector"].items())
            out.write(f"  {vec}  {r['class']}\n")
    return EXIT_OK


def cmd_leaves(args, out) -> int:
    res = analyze(_load(args))
    rep = res.report
    if "leaves" not in rep:
        out.write(rep.get("gate", "no leaves") + "\n")
        return res.exit_code
    doc = {"schema": rep["schema"], "leaves": rep["leaves"], "namikawa_weyl": rep["namikawa_weyl"]}
    if args.format == "json":
        out.write(dumps(doc))
    else:
        out.write(f"{len(rep['leaves'])} codimension-2 leaves\n")
        for k, lf in enumerate(rep["leaves"]):
            parts = "; ".join(f"{p['vector']}, {p['mult']}" for p in lf["rep_type"])
            out.write(f"  leaf {k}: ({parts})  slice {lf['slice_type']}\n")
    return res.exit_code


def cmd_check(args, out) -> int:
    res = analyze(_load(args))
    out.write(f"{res.report.get('verdict', 'fail')}\n")
    return res.exit_code


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, keeping 2 for failed verdicts
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quiverweyl", description="Namikawa-Weyl groups of framed quiver problems")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("file", help="problem file (JSON)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if seed:
            p.add_argument("--seed-order", type=int, default=None, metavar="SEED",
                           help="shuffle vertex and edge order before analysis")

    p = sub.add_parser("analyze", help="full pipeline report")
    common(p)
    p.add_argument("--force", action="store_true",
                   help="outside the fundamental region, still report roots and Sigma_0 data")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("roots", help="positive roots of Q below a bound")
    common(p, seed=False)
    p.add_argument("--bound", default=None, help="comma separated bound in file vertex order (default: v)")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("leaves", help="codimension-2 leaves only")
    common(p)
    p.set_defaults(func=cmd_leaves)

    p = sub.add_parser("check", help="verdict only, via the exit status")
    common(p)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ProblemError, QuiverError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistencyError as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_VERDICT


if __name__ == "__main__":
    sys.exit(main())
