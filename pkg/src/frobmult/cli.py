"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 a mathematical check failed
(an inequality VIOLATION or an equality without proportional degrees),
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from importlib import resources
from pathlib import Path

from .bounds import veronese_fjn_demo
from .casefile import (CSV_COLUMNS, EXIT_CODES, STATUS_ERROR, STATUS_OK, CaseFormatError,
                       CaseResult, build_report, dump_report, exit_code, find_cases, load_case,
                       run_batch, run_task, summary_rows, validate_report)
from .field_poly import Field
from .groebner import ResourceLimitError, monomial_map_kernel, set_step_limit

log = logging.getLogger("frobmult")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def corpus_dir() -> Path:
    return Path(str(resources.files("frobmult").joinpath("corpus")))


def resolve_case(name: str) -> Path:
    """A path as given, or a file of that name in the shipped corpus."""
    path = Path(name)
    if path.exists():
        return path
    for candidate in (corpus_dir() / name, corpus_dir() / f"{name}.case"):
        if candidate.exists():
            return candidate
    return path


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--csv", help="write the CSV summary here")
    common.add_argument("--emax", type=int, help="largest exponent e in q = p^e")
    common.add_argument("--p", type=int, help="override the characteristic")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for batch")
    common.add_argument("--gb-step-limit", type=int, default=10**6,
                        help="reduction-step cap per Groebner computation (default 10^6)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp so reports are byte-identical across runs")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="frobmult", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def case_cmd(name, help_text, ideal_args=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("--case", required=True, help="case file (or name of a shipped case)")
        if ideal_args:
            sp.add_argument("--ideal-a", default="a", help="name of the ideal a (default a)")
            sp.add_argument("--ideal-j", default="J", help="name of the ideal J (default J)")
        return sp

    case_cmd("check", "validate a case file and report the ring", ideal_args=False)
    sp = case_cmd("mult", "multiplicity of an hsop ideal, with the Samuel oracle", ideal_args=False)
    sp.add_argument("--ideal", default="J", help="ideal name (default J)")
    case_cmd("nu", "table of nu_a^J(q) as CSV")
    case_cmd("threshold", "F-threshold bracket from the nu table")
    case_cmd("leastN", "least N with a^(N+1) inside J")
    case_cmd("verify", "check the main multiplicity inequality")

    sp = sub.add_parser("batch", parents=[common], help="run every task of every case in a directory")
    sp.add_argument("directory", nargs="?", help="corpus directory (default: shipped corpus)")

    sp = sub.add_parser("kernel", parents=[common], help="defining ideal of a monomial subring")
    sp.add_argument("--images", required=True,
                    help='image monomials as exponent vectors, e.g. "3,0 2,1 1,2 0,3"')
    sp.add_argument("--names", help="comma-separated names for the new variables")

    sub.add_parser("demo-veronese", parents=[common],
                   help="F-jumping number and threshold of the third Veronese example")
    return parser


def _write_outputs(args, results: list[CaseResult]) -> None:
    if args.out:
        report = build_report(results, seed=args.seed, timestamp=not args.no_timestamp)
        validate_report(report)
        Path(args.out).write_text(dump_report(report))
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerows(summary_rows(results))
        Path(args.csv).write_text(buf.getvalue())


def _print_table(results: list[CaseResult], out) -> None:
    rows = [(cr.case_id, "-", "load", STATUS_ERROR, cr.error) for cr in results if cr.error]
    rows += [(cr.case_id, str(t.index), t.op, t.status, t.summary)
             for cr in results for t in cr.tasks]
    rows.sort(key=lambda r: (r[0], int(r[1]) if r[1].isdigit() else -1))
    if not rows:
        return
    widths = [max(len(r[k]) for r in rows) for k in range(4)]
    for r in rows:
        head = "  ".join(c.ljust(w) for c, w in zip(r[:4], widths))
        print(f"{head}  {r[4]}", file=out)


def _single(args, op: str, task_args: dict) -> int:
    path = resolve_case(args.case)
    try:
        case = load_case(path)
    except CaseFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES[STATUS_ERROR]
    overrides = {"p": args.p, "emax": args.emax, "seed": args.seed}
    task = run_task(case, 0, op, task_args, overrides)
    result = CaseResult(case.case_id, [task])
    if op == "nu" and task.status == STATUS_OK:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["e", "q", "nu", "ratio"])
        for row in task.result["rows"]:
            num, den = row["ratio"]
            w.writerow([row["e"], row["q"], row["nu"], f"{num}/{den}"])
    elif task.status == STATUS_OK or op in ("verify", "mult"):
        print(f"{case.case_id}: {op}: {task.summary}")
    if task.status != STATUS_OK:
        print(task.summary if task.summary.startswith(case.case_id) else
              f"{case.case_id}: {op}: {task.status}", file=sys.stderr)
    _write_outputs(args, [result])
    return EXIT_CODES[task.status]


def _batch(args) -> int:
    directory = Path(args.directory) if args.directory else corpus_dir()
    paths = find_cases(directory) if directory.is_dir() else []
    if not paths:
        print(f"error: no cases found in {directory}", file=sys.stderr)
        return EXIT_CODES[STATUS_ERROR]
    overrides = {"p": args.p, "emax": args.emax, "seed": args.seed}
    results = run_batch(paths, overrides, jobs=args.jobs)
    _print_table(results, sys.stdout)
    _write_outputs(args, results)
    code = exit_code(results)
    counts = {}
    for cr in results:
        counts[cr.status] = counts.get(cr.status, 0) + 1
    print(f"{len(results)} cases: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    return code


def _kernel(args) -> int:
    try:
        images = [tuple(int(x) for x in part.split(",")) for part in args.images.split()]
        names = args.names.split(",") if args.names else None
        if names is not None and len(names) != len(images):
            raise ValueError("--names must give one name per image")
        I = monomial_map_kernel(images, names, char=args.p or 0)
    except ValueError as exc:
        print(f"error: kernel: {exc}", file=sys.stderr)
        return EXIT_CODES[STATUS_ERROR]
    R = I.ring
    print(f"ring: {R}")
    for g in I.gens:
        print(g)
    if args.out:
        data = {"ring": str(R), "weights": list(R.weights), "generators": [str(g) for g in I.gens]}
        Path(args.out).write_text(json.dumps(data, indent=2) + "\n")
    return EXIT_CODES[STATUS_OK]


def _demo(args) -> int:
    p = args.p or 2
    try:
        Field(p)
        if p == 0:
            raise ValueError("the demo needs a prime characteristic")
    except ValueError as exc:
        print(f"error: demo-veronese: {exc}", file=sys.stderr)
        return EXIT_CODES[STATUS_ERROR]
    rep = veronese_fjn_demo(p=p, emax=args.emax or 4)
    est = rep.threshold_estimate
    for row in est.table.rows:
        print(f"q = {row.q:>3}  nu = {row.nu:>4}  nu/q = {row.ratio}")
    print(f"fjn = {rep.t_star}, pt estimate = {est.extrapolated}")
    if args.out:
        Path(args.out).write_text(json.dumps(rep.to_json(), indent=2) + "\n")
    return EXIT_CODES[STATUS_OK]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.gb_step_limit < 1 or args.jobs < 1:
        print("error: --gb-step-limit and --jobs must be positive", file=sys.stderr)
        return EXIT_CODES[STATUS_ERROR]
    set_step_limit(args.gb_step_limit)
    cmd = args.command
    try:
        if cmd == "batch":
            return _batch(args)
        if cmd == "kernel":
            return _kernel(args)
        if cmd == "demo-veronese":
            return _demo(args)
        pair = {"a": args.ideal_a, "J": args.ideal_j} if hasattr(args, "ideal_a") else {}
        if cmd == "check":
            return _single(args, "check", {})
        if cmd == "mult":
            return _single(args, "mult", {"ideal": args.ideal})
        if cmd in ("nu", "threshold"):
            return _single(args, cmd, {**pair, "emax": args.emax or 3})
        return _single(args, cmd, pair)
    except ResourceLimitError as exc:
        print(f"error: {cmd}: {exc}", file=sys.stderr)
        return EXIT_CODES["resource"]


if __name__ == "__main__":
    sys.exit(main())
