"""Command-line front end: ``gerbelevels {levels,verify,solve,table}``."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from .cases import CaseError, CaseSpec, all_cases, parse_subgroup, resolve_rank
from .cohomology import K_CAP
from .report import ReportDocument, levels_report, passed, solve_report, verify_report
from .roots import FAMILIES, build_root_system

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gerbelevels",
                     description="Basic gerbe levels over G/Z from exact obstruction cocycles.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def case_flags(p, allow_all=True):
        p.add_argument("--family", choices=FAMILIES)
        p.add_argument("--rank", type=int)
        p.add_argument("--subgroup", default="full",
                       help="full, trivial, cyclic:N, ZN, z1, z2, z1z2, Z2xZ2")
        p.add_argument("--max-rank", type=int, default=None,
                       help="rank cap (defaults: A 11, B/C/D 9; at most 16)")
        p.add_argument("--format", choices=("json", "table"), default="table")
        if allow_all:
            p.add_argument("--all", action="store_true",
                           help="every subgroup of every center up to the rank cap")
            p.add_argument("--jobs", type=int, default=1)

    case_flags(sub.add_parser("levels", help="minimal level per case"))
    case_flags(sub.add_parser("verify", help="run every consistency check"))
    p = sub.add_parser("solve", help="solve delta u = U at a given level")
    case_flags(p, allow_all=False)
    p.add_argument("--level", type=int, required=True)
    p = sub.add_parser("table", help="consolidated level table")
    p.add_argument("--max-rank", type=int, default=None)
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _single_case(args) -> CaseSpec:
    if args.family is None:
        raise CaseError("--family is required (or use --all)")
    rank = resolve_rank(args.family, args.rank, args.max_rank)
    group = parse_subgroup(build_root_system(args.family, rank), args.subgroup)
    return CaseSpec(args.family, rank, group.label)


def _run_many(fn: Callable[[CaseSpec], ReportDocument], specs: Sequence[CaseSpec],
              jobs: int) -> list[ReportDocument]:
    # results come back in input order whatever the worker count
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, specs))
    return [fn(s) for s in specs]


def _row(doc: ReportDocument) -> str:
    c = doc.case
    name = c.family if c.family.startswith("E") else f"{c.family}{c.rank}"
    k = "-" if doc.k_min is None else str(doc.k_min)
    classes = "-" if doc.solution_class_count is None else str(doc.solution_class_count)
    return f"{name:<6} {c.subgroup:<8} {k:>5} {classes:>7}"


_HEADER = f"{'group':<6} {'Z':<8} {'k_min':>5} {'classes':>7}"


def _emit(docs: list[ReportDocument], fmt: str, out) -> None:
    if fmt == "json":
        payload = docs[0].to_dict() if len(docs) == 1 else [d.to_dict() for d in docs]
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    out.write(_HEADER + "\n")
    for d in docs:
        line = _row(d)
        if d.notes:
            line += "  " + "; ".join(d.notes)
        out.write(line + "\n")


def _fmt_phases(table: dict) -> str:
    nonzero = [f"u[{k}]={v}" for k, v in table.items() if v]
    return ", ".join(nonzero) if nonzero else "all entries 0"


def cmd_levels(args, out) -> int:
    specs = all_cases(args.max_rank) if args.all else [_single_case(args)]
    _emit(_run_many(levels_report, specs, args.jobs), args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    specs = all_cases(args.max_rank) if args.all else [_single_case(args)]
    docs = _run_many(verify_report, specs, args.jobs)
    if args.format == "json":
        _emit(docs, "json", out)
    else:
        for d in docs:
            status = "pass" if passed(d) else "FAIL"
            flags = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in d.verification.items())
            extra = f"  ({'; '.join(d.notes)})" if d.notes else ""
            out.write(f"{status} {_row(d).rstrip()}  {flags}{extra}\n")
            for line in d.diagnostics:
                out.write(f"    {line}\n")
    return EXIT_OK if all(passed(d) for d in docs) else EXIT_FAIL


def cmd_solve(args, out) -> int:
    if args.level < 1:
        raise CaseError("--level must be a positive integer")
    doc = solve_report(_single_case(args), args.level)
    if args.format == "json":
        _emit([doc], "json", out)
        return EXIT_OK
    c = doc.case
    out.write(f"{c.family} rank {c.rank}, Z = {c.subgroup}, level {doc.level}\n")
    out.write(f"U: {_fmt_phases(doc.u_tables[doc.level]).replace('u[', 'U[')}\n")
    if doc.solvable:
        out.write(f"solution: {_fmt_phases(doc.u_solution)}\n")
        out.write(f"classes: {doc.solution_class_count}\n")
        for n, rep in enumerate(doc.class_representatives, 1):
            out.write(f"  class {n}: {_fmt_phases(rep)}\n")
    else:
        out.write(f"no solution: {doc.certificate['reason']}\n")
    for note in doc.notes:
        out.write(f"note: {note}\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    if args.max_rank is not None and args.max_rank > K_CAP:
        raise CaseError(f"table supports --max-rank up to {K_CAP}")
    docs = _run_many(levels_report, all_cases(args.max_rank), args.jobs)
    _emit(docs, args.format, out)
    return EXIT_OK


COMMANDS = {"levels": cmd_levels, "verify": cmd_verify, "solve": cmd_solve,
            "table": cmd_table}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args, out)
    except CaseError as exc:
        print(f"gerbelevels: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
