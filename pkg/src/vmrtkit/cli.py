"""Command-line driver: ``vmrtkit <command> ...``.

Every command builds a list of report rows, prints the report as JSON (default)
or CSV, and exits with status 0 iff every row passed.  ``report replay``
re-runs the command recorded in a JSON report and compares everything except
the wall-clock timings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Sequence

from . import reports
from .errors import VmrtError
from .formulas import GRIDS
from .reports import Job, RunConfig, row_seed

log = logging.getLogger("vmrtkit")

SYMBOL_HELP = "symbol system: minors:n, sym_minors:n, pfaffian:m, quadric:n or linear:n"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the report to this file instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent rows")
    p.add_argument("--certify", action="store_true",
                   help="always certify dimensions over Q (default: only when the ambient dim is <= 10)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vmrtkit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prolong", help="dimensions of aut and its prolongations for a variety spec")
    p.add_argument("spec", help='e.g. "segre:2x2" or "project(segre:3x3; 1,0,0,0,1,0,0,0,1)"')
    p.add_argument("--order", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("aut", help="aut of a cone by sampling, cross-checked against its quadrics")
    p.add_argument("spec")
    _add_common(p)

    p = sub.add_parser("ihss-table", aliases=["table1"],
                       help="first prolongation of every IHSS VMRT in the zoo")
    p.add_argument("--large", action="store_true", help="include the spinor and Severi rows")
    _add_common(p)

    p = sub.add_parser("classify", help="grading, tube test and fixed-point weights of a marked Dynkin diagram")
    p.add_argument("--type", required=True, dest="dynkin", help="e.g. E7, A3")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--beta", type=int, help="simple root of the cocharacter (default: the node)")
    p.add_argument("--fixed-points", action="store_true", help="include the full weight table")
    _add_common(p)

    p = sub.add_parser("extremal-markings", aliases=["verify-thm11"],
                       help="all markings with an equalized action having isolated Euler source and sink")
    p.add_argument("--max-rank", type=int, default=7)
    _add_common(p)

    p = sub.add_parser("inequality-grid", help="strict dimension gaps for projected rank-one cones")
    p.add_argument("--family", choices=sorted(GRIDS), action="append",
                   help="repeatable; default all families")
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--no-instances", action="store_true", help="skip the brute-force projection instances")
    _add_common(p)

    p = sub.add_parser("symbol", help="symbol systems and their graded models")
    ssub = p.add_subparsers(dest="action", required=True)
    q = ssub.add_parser("check", help="validate a symbol system")
    q.add_argument("system", help=SYMBOL_HELP)
    _add_common(q)
    q = ssub.add_parser("embed", help="image of a point of W in the graded model")
    q.add_argument("system", help=SYMBOL_HELP)
    q.add_argument("--point", required=True, help="comma-separated rationals")
    _add_common(q)
    q = ssub.add_parser("representations", aliases=["verify-prop29"],
                        help="exact identities of the two vector-group representations")
    q.add_argument("system", nargs="+", help=SYMBOL_HELP)
    q.add_argument("--points", type=int, default=20)
    _add_common(q)
    q = ssub.add_parser("lambda", aliases=["verify-prop36"],
                        help="image of lambda against the prolongation of the paired VMRT cone")
    q.add_argument("system", nargs="+", help=SYMBOL_HELP)
    _add_common(q)
    q = ssub.add_parser("bracket", aliases=["verify-lemma34"],
                        help="Levi elements fixing both base points and the conjugated C* actions")
    q.add_argument("system", nargs="+", help=SYMBOL_HELP)
    _add_common(q)
    q = ssub.add_parser("base-locus", help="base locus of the fundamental forms against VMRT samples")
    q.add_argument("system", nargs="+", help=SYMBOL_HELP)
    q.add_argument("--points", type=int, default=100)
    _add_common(q)

    p = sub.add_parser("report", help="report utilities")
    rsub = p.add_subparsers(dest="action", required=True)
    q = rsub.add_parser("replay", help="re-run a saved JSON report and compare")
    q.add_argument("file")
    return parser


# canonical names for the legacy verbs, so recorded commands are stable
_CANON = {"table1": "ihss-table", "verify-thm11": "extremal-markings", "verify-prop29": "representations",
          "verify-prop36": "lambda", "verify-lemma34": "bracket"}


def _jobs(args: argparse.Namespace, cfg: RunConfig) -> list[Job]:
    cmd = _CANON.get(args.command, args.command)
    seed = args.seed
    if cmd == "prolong":
        return [Job(args.spec, reports.row_prolong, (args.spec, args.order, row_seed(seed, args.spec), cfg))]
    if cmd == "aut":
        return [Job(args.spec, reports.row_aut, (args.spec, row_seed(seed, args.spec), cfg))]
    if cmd == "ihss-table":
        return [Job(spec, reports.row_prolong, (spec, 1, row_seed(seed, spec), cfg))
                for spec, _, large in reports.IHSS_ROWS if args.large or not large]
    if cmd == "classify":
        kind, rank = reports.parse_type(args.dynkin)
        return [Job(f"{kind}{rank}/P{args.node}", reports.row_classify,
                    (kind, rank, args.node, args.beta, args.fixed_points))]
    if cmd == "extremal-markings":
        return [Job("extremal", reports.rows_extremal, (args.max_rank,))]
    if cmd == "inequality-grid":
        fams = args.family or sorted(GRIDS)
        jobs = [Job(f"grid:{f}", reports.row_grid, (f, args.bound)) for f in fams]
        if not args.no_instances:
            for f in fams:
                jobs += [Job(s, reports.row_instance, (s, row_seed(seed, s), cfg))
                         for s in reports.instance_specs(f)]
        return jobs
    if cmd == "symbol":
        action = _CANON.get(args.action, args.action)
        if action == "check":
            return [Job(args.system, reports.row_symbol_check, (args.system,))]
        if action == "embed":
            point = [Fraction(x) for x in args.point.split(",")]
            return [Job(args.system, reports.row_symbol_embed, (args.system, point))]
        systems = args.system
        if action == "representations":
            return [Job(s, reports.row_representations, (s, row_seed(seed, s), args.points)) for s in systems]
        if action == "lambda":
            return [Job(s, reports.row_lambda, (s, row_seed(seed, s), cfg)) for s in systems]
        if action == "bracket":
            return [Job(s, reports.row_bracket, (s, row_seed(seed, s))) for s in systems]
        if action == "base-locus":
            return [Job(s, reports.row_base_locus, (s, row_seed(seed, s), args.points)) for s in systems]
    raise SystemExit(f"unknown command {cmd}")


def _recorded_argv(argv: Sequence[str]) -> list[str]:
    """argv without output-only options, so replays compare like with like."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in ("--out", "--format", "--jobs"):
            skip = True
            continue
        if a.startswith(("--out=", "--format=", "--jobs=")) or a in ("-v", "--verbose"):
            continue
        out.append(_CANON.get(a, a))
    return out


def run(argv: Sequence[str]) -> dict:
    """Parse argv, run the rows and return the assembled report."""
    args = build_parser().parse_args(list(argv))
    cfg = RunConfig(seed=args.seed, certify_rational=True if args.certify else None)
    rows, timings = reports.run_rows(_jobs(args, cfg), getattr(args, "jobs", 1))
    return reports.assemble(_recorded_argv(argv), cfg, rows, timings)


def to_csv(report: dict) -> str:
    keys: list[str] = []
    for r in report["rows"]:
        keys += [k for k in r if k not in keys]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in report["rows"]:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def replay(path: str) -> tuple[bool, dict]:
    with open(path) as fh:
        saved = json.load(fh)
    if saved.get("schema") != reports.SCHEMA:
        raise VmrtError(f"unsupported report schema {saved.get('schema')!r}")
    fresh = run(saved["command"])
    same = dumps(reports.comparable(fresh)) == dumps(reports.comparable(saved))
    return same, fresh


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "report":
            same, fresh = replay(args.file)
            print(json.dumps({"schema": reports.SCHEMA, "replayed": args.file, "identical": same,
                              "summary": fresh["summary"]}, indent=2, sort_keys=True))
            return 0 if same else 1
        report = run(argv)
    except VmrtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = to_csv(report) if args.format == "csv" else dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["summary"]["ok"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
