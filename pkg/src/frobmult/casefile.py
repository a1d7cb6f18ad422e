"""Case files: loading, schema validation and task execution.

A case file is JSON describing one graded ring presentation, a map of named
ideals and a list of tasks.  Every task produces a :class:`TaskResult` whose
status is one of ``ok``, ``violation`` (a mathematical check failed),
``error`` (bad input) or ``resource`` (a computation cap was hit).
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from . import __version__
from .bounds import (HOLDS_EQUAL, VIOLATION, check_integral_condition, multi_prime_compare,
                     random_identity_suite, verify_main_inequality, verify_nu_bound)
from .field_poly import PolynomialError, Ring, is_prime, parse_polynomial
from .groebner import Ideal, ResourceLimitError, get_step_limit, set_step_limit
from .hilbert import (hilbert_samuel_oracle, hilbert_series, is_hsop, krull_dimension,
                      multiplicity_hsop, quotient_length)
from .thresholds import (frobenius_closure_member, least_power_in, nu_table,
                         threshold_bracket)

log = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_VIOLATION = "violation"
STATUS_ERROR = "error"
STATUS_RESOURCE = "resource"

# exit code per status; a batch exits with the most severe one present
EXIT_CODES = {STATUS_OK: 0, STATUS_ERROR: 1, STATUS_VIOLATION: 2, STATUS_RESOURCE: 3}
_SEVERITY = [STATUS_OK, STATUS_ERROR, STATUS_RESOURCE, STATUS_VIOLATION]

CSV_COLUMNS = ["case_id", "task", "op", "status", "verdict", "d", "e_a", "e_J", "N", "summary"]


class CaseFormatError(ValueError):
    pass


def load_schema(name: str) -> dict:
    text = resources.files("frobmult").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate_case_data(data, case_id: str = "<case>") -> None:
    """Raise :class:`CaseFormatError` unless ``data`` matches the case schema."""
    try:
        jsonschema.validate(data, load_schema("case"))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise CaseFormatError(f"{case_id}: schema: {where}: {exc.message}") from None
    char = data["field"]["char"]
    if char and not is_prime(char):
        raise CaseFormatError(f"{case_id}: field.char {char} is neither 0 nor a prime")


def validate_report(report: dict) -> None:
    jsonschema.validate(report, load_schema("report"))


@dataclass
class Case:
    case_id: str
    data: dict

    @property
    def char(self) -> int:
        return self.data["field"]["char"]

    @property
    def variables(self) -> list[tuple[str, int]]:
        return [(v["name"], v["degree"]) for v in self.data["vars"]]

    @property
    def relations(self) -> list[str]:
        return list(self.data.get("relations", []))

    @property
    def ideals(self) -> dict:
        return self.data["ideals"]

    @property
    def tasks(self) -> list[dict]:
        return self.data["tasks"]

    def ring(self, char: int | None = None) -> Ring:
        return Ring.make(self.char if char is None else char, self.variables, self.relations)

    def ideal(self, name: str, ring: Ring) -> Ideal:
        if name not in self.ideals:
            raise CaseFormatError(f"unknown ideal {name!r}")
        return Ideal(ring, [parse_polynomial(s, ring) for s in self.ideals[name]])


def parse_case(data, case_id: str) -> Case:
    validate_case_data(data, case_id)
    case = Case(case_id, data)
    try:
        R = case.ring()
        for name in case.ideals:
            case.ideal(name, R)
    except PolynomialError as exc:
        raise CaseFormatError(f"{case_id}: {exc}") from None
    return case


def load_case(path) -> Case:
    path = Path(path)
    case_id = path.stem
    try:
        data = json.loads(path.read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CaseFormatError(f"{case_id}: cannot read case file: {exc}") from None
    return parse_case(data, case_id)


def find_cases(directory) -> list[Path]:
    return sorted(Path(directory).glob("*.case"))


# ------------------------------------------------------------------ tasks

@dataclass
class TaskResult:
    index: int
    op: str
    args: dict
    status: str
    summary: str
    result: object = None
    bound: object = None

    def to_json(self) -> dict:
        out = {"index": self.index, "op": self.op, "args": self.args,
               "status": self.status, "summary": self.summary}
        if self.result is not None:
            out["result"] = self.result
        return out


@dataclass
class CaseResult:
    case_id: str
    tasks: list[TaskResult] = field(default_factory=list)
    error: str | None = None

    @property
    def status(self) -> str:
        statuses = [t.status for t in self.tasks]
        if self.error:
            statuses.append(STATUS_ERROR)
        return worst(statuses)

    @property
    def bounds(self) -> list:
        return [t.bound for t in self.tasks if t.bound is not None]

    def to_json(self) -> dict:
        out = {"case_id": self.case_id, "status": self.status,
               "tasks": [t.to_json() for t in self.tasks],
               "bounds": [b.to_json() for b in self.bounds]}
        if self.error:
            out["error"] = self.error
        return out


def worst(statuses) -> str:
    return max(statuses, key=_SEVERITY.index, default=STATUS_OK)


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def _char_for(case: Case, args: dict, overrides: dict) -> int:
    if overrides.get("p") is not None:
        return overrides["p"]
    return args.get("p", case.char)


def _emax_for(args: dict, overrides: dict, default: int = 3) -> int:
    if overrides.get("emax") is not None:
        return overrides["emax"]
    return args.get("emax", default)


def _pair(case: Case, args: dict, R: Ring) -> tuple[Ideal, Ideal]:
    return case.ideal(args.get("a", "a"), R), case.ideal(args.get("J", "J"), R)


def _task_check(case, args, ov):
    R = case.ring(_char_for(case, args, ov))
    hs = hilbert_series(R)
    hsop = {name: is_hsop(case.ideal(name, R).gens, R) for name in case.ideals}
    result = {"ring": str(R), "d": hs.pole_order, "series": hs.to_json(), "hsop": hsop}
    flags = ", ".join(f"{k}:{'hsop' if v else 'not hsop'}" for k, v in hsop.items())
    return STATUS_OK, f"{R}: d={hs.pole_order}; {flags}", result, None


def _task_mult(case, args, ov):
    R = case.ring(_char_for(case, args, ov))
    name = args.get("ideal", "J")
    J = case.ideal(name, R)
    rep = multiplicity_hsop(J, R)
    d = krull_dimension(R)
    sam = hilbert_samuel_oracle(J, R, args.get("nmax", d + 3))
    length = quotient_length(J, R)
    result = {"ideal": name, **rep.to_json(), "samuel": [sam.value.numerator, sam.value.denominator],
              "stabilized": sam.stabilized,
              "length": length if length != math.inf else "infinite",
              "length_equals_e": length == rep.multiplicity}
    ok = sam.stabilized and sam.value == rep.multiplicity
    status = STATUS_OK if ok else STATUS_VIOLATION
    summary = (f"e({name}) = {_frac(rep.multiplicity)}, Samuel = {_frac(sam.value)}"
               f"{'' if sam.stabilized else ' (not stabilized)'}, length = {length}")
    return status, summary, result, None


def _task_leastN(case, args, ov):
    R = case.ring(_char_for(case, args, ov))
    a, J = _pair(case, args, R)
    N = least_power_in(a, J)
    return STATUS_OK, f"N = {N}", {"N": N}, None


def _task_verify(case, args, ov):
    R = case.ring(_char_for(case, args, ov))
    a, J = _pair(case, args, R)
    rep = verify_main_inequality(R, a, J)
    rep.case_id = case.case_id
    if R.char and args.get("emax"):
        rep.nu_rows = nu_table(a, J, _emax_for(args, ov)).to_json()
    status = STATUS_VIOLATION if rep.alarm else STATUS_OK
    rel = ">" if rep.verdict != HOLDS_EQUAL else "="
    if rep.verdict == VIOLATION:
        rel = "<"
    summary = (f"{rep.verdict}: {_frac(rep.lhs)} {rel} {_frac(rep.rhs)} over {R.field} "
               f"(d={rep.d}, N={rep.N}, e_a={_frac(rep.e_a)}, e_J={_frac(rep.e_J)}, "
               f"proportional={rep.proportional})")
    return status, summary, rep.to_json(), rep


def _task_nu(case, args, ov):
    R = case.ring(_char_for(case, args, ov))
    a, J = _pair(case, args, R)
    table = nu_table(a, J, _emax_for(args, ov))
    status = STATUS_RESOURCE if table.errors else STATUS_OK
    summary = "nu = " + ", ".join(str(v) for v in table.nus())
    return status, summary, {"N": table.N, "rows": table.to_json(),
                             "errors": {str(k): v for k, v in table.errors.items()}}, None


def _task_threshold(case, args, ov):
    R = case.ring(_char_for(case, args, ov))
    a, J = _pair(case, args, R)
    est = threshold_bracket(nu_table(a, J, _emax_for(args, ov)))
    summary = (f"lower = {_frac(est.lower)}, extrapolated = {_frac(est.extrapolated)} "
               f"({est.label})")
    return STATUS_OK, summary, est.to_json(), None


def _task_nubound(case, args, ov):
    R = case.ring(_char_for(case, args, ov))
    a, J = _pair(case, args, R)
    mults = (multiplicity_hsop(a, R).multiplicity, multiplicity_hsop(J, R).multiplicity)
    N = least_power_in(a, J)
    reps = [verify_nu_bound(R, a, J, e, N, mults) for e in range(1, _emax_for(args, ov) + 1)]
    bad = [r.q for r in reps if r.verdict == VIOLATION]
    status = STATUS_VIOLATION if bad else STATUS_OK
    summary = (f"per-q bound fails at q = {bad}" if bad else
               f"per-q bound holds for q = {', '.join(str(r.q) for r in reps)}")
    return status, summary, [r.to_json() for r in reps], None


def _task_integral(case, args, ov):
    R = case.ring(_char_for(case, args, ov))
    a, J = _pair(case, args, R)
    rep = check_integral_condition(R, a, J, _emax_for(args, ov))
    state = "triggered" if rep.triggered else "not triggered"
    summary = (f"bracket {_frac(rep.bracket)} vs d = {rep.d}: {state}, "
               f"e_a = {_frac(rep.e_a)}, e_J = {_frac(rep.e_J)}, consistent = {rep.consistent}")
    return STATUS_OK, summary, rep.to_json(), None


def _task_multiprime(case, args, ov):
    primes = args.get("primes", [2, 3, 5, 7])
    rep = multi_prime_compare(case.variables, case.relations,
                              case.ideals[args.get("a", "a")], case.ideals[args.get("J", "J")],
                              primes, emax=args.get("emax", 0))
    status = STATUS_OK if rep.agree else STATUS_VIOLATION
    inv = sorted({r.invariants for r in rep.rows if not r.skipped}, key=str)
    shown = "; ".join(f"({d}, {_frac(ea)}, {_frac(eJ)}, {N})" for d, ea, eJ, N in inv)
    skipped = f", skipped {rep.skipped}" if rep.skipped else ""
    summary = f"{'agree' if rep.agree else 'disagree'}: (d, e_a, e_J, N) = {shown}{skipped}"
    return status, summary, rep.to_json(), None


def _task_closure(case, args, ov):
    R = case.ring(_char_for(case, args, ov))
    x = parse_polynomial(args["x"], R)
    I = case.ideal(args.get("ideal", "J"), R)
    verdict = frobenius_closure_member(x, I, _emax_for(args, ov))
    return STATUS_OK, f"{x} in ({args.get('ideal', 'J')})^F: {verdict}", \
        {"member": verdict.member, "witness": verdict.witness, "emax": verdict.emax}, None


def one_dim_law(a: Ideal, J: Ideal, emax: int) -> dict:
    """Check ``|nu(q)/q - e(J)/e(a)| <= C/q`` with ``C`` fixed from ``q = p``."""
    R = J.ring
    if krull_dimension(R) != 1:
        raise ValueError("the one-dimensional law needs a ring of dimension 1")
    target = multiplicity_hsop(J, R).multiplicity / multiplicity_hsop(a, R).multiplicity
    table = nu_table(a, J, emax)
    first = table.rows[0]
    C = abs(first.ratio - target) * first.q
    rows = [{"q": r.q, "nu": r.nu, "gap": _frac(abs(r.ratio - target) * r.q),
             "ok": abs(r.ratio - target) * r.q <= C} for r in table.rows]
    return {"target": _frac(target), "C": _frac(C), "rows": rows,
            "ok": all(r["ok"] for r in rows) and not table.errors}


def _task_law(case, args, ov):
    R = case.ring(_char_for(case, args, ov))
    a, J = _pair(case, args, R)
    res = one_dim_law(a, J, _emax_for(args, ov))
    qs = ", ".join(str(r["q"]) for r in res["rows"])
    verdict = "holds" if res["ok"] else "fails"
    summary = f"|nu/q - {res['target']}| <= C/q with C = {res['C']} for q = {qs}: {verdict}"
    return (STATUS_OK if res["ok"] else STATUS_VIOLATION), summary, res, None


def _task_scaling(case, args, ov):
    seed = args.get("seed", ov.get("seed", 0))
    rows = random_identity_suite(seed, args.get("count", 50), args.get("primes", [2, 3]))
    failed = [r["index"] for r in rows if not r["ok"]]
    status = STATUS_VIOLATION if failed else STATUS_OK
    summary = (f"{len(rows)} seeded instances (seed {seed}), "
               f"{len(failed)} failures" + (f" at {failed}" if failed else ""))
    return status, summary, {"seed": seed, "instances": rows}, None


TASKS = {
    "check": _task_check, "mult": _task_mult, "leastN": _task_leastN,
    "verify": _task_verify, "nu": _task_nu, "threshold": _task_threshold,
    "nubound": _task_nubound, "integral": _task_integral, "multiprime": _task_multiprime,
    "closure": _task_closure, "law": _task_law, "scaling": _task_scaling,
}


def run_task(case: Case, index: int, op: str, args: dict, overrides: dict | None = None) -> TaskResult:
    """Run one task; exceptions become statuses and name the case and operation."""
    ov = overrides or {}
    try:
        status, summary, result, bound = TASKS[op](case, args, ov)
    except ResourceLimitError as exc:
        return TaskResult(index, op, args, STATUS_RESOURCE, f"{case.case_id}: {op}: {exc}")
    except (ValueError, KeyError, ArithmeticError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        return TaskResult(index, op, args, STATUS_ERROR, f"{case.case_id}: {op}: {msg}")
    return TaskResult(index, op, args, status, summary, result, bound)


def run_case(source, overrides: dict | None = None, ops=None) -> CaseResult:
    """Load (if given a path) and run every task of a case, or only those in ``ops``."""
    if isinstance(source, Case):
        case = source
    else:
        try:
            case = load_case(source)
        except CaseFormatError as exc:
            return CaseResult(Path(source).stem, error=str(exc))
    out = CaseResult(case.case_id)
    for i, task in enumerate(case.tasks):
        if ops is not None and task["op"] not in ops:
            continue
        log.info("%s: task %d (%s)", case.case_id, i, task["op"])
        out.tasks.append(run_task(case, i, task["op"], task.get("args", {}), overrides))
    return out


def _worker(job):
    path, overrides, step_limit = job
    set_step_limit(step_limit)
    return run_case(path, overrides)


def run_batch(paths, overrides: dict | None = None, jobs: int = 1) -> list[CaseResult]:
    """Run cases independently; results come back in the order of ``paths``."""
    work = [(str(p), overrides or {}, get_step_limit()) for p in paths]
    if jobs <= 1 or len(work) <= 1:
        return [_worker(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_worker, work))


def build_report(results: list[CaseResult], seed: int = 0, timestamp: bool = True) -> dict:
    report = {"version": __version__, "seed": seed}
    if timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    report["cases"] = [r.to_json() for r in results]
    return report


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def summary_rows(results: list[CaseResult]) -> list[list]:
    """One CSV row per (case, task); load failures get a single row."""
    rows = []
    for cr in results:
        if cr.error:
            rows.append([cr.case_id, "", "load", STATUS_ERROR, "", "", "", "", "", cr.error])
        for t in cr.tasks:
            b = t.bound
            if b is not None:
                rows.append([cr.case_id, t.index, t.op, t.status, b.verdict, b.d,
                             _frac(b.e_a), _frac(b.e_J), b.N, t.summary])
            else:
                rows.append([cr.case_id, t.index, t.op, t.status, "", "", "", "", "", t.summary])
    return rows


def exit_code(results: list[CaseResult]) -> int:
    return EXIT_CODES[worst(r.status for r in results)]
