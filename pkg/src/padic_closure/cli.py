"""Command-line interface: ``padic-closure <command> [FILE] [options]``.

Exit codes: 0 success (INCONCLUSIVE included), 1 failed selftest or check,
2 parse error, 3 precondition violated, 4 precision exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

from .closure import d_bracket, log_matrix, membership_check
from .errors import DomainError, ParseError, PrecisionError
from .numberfield import FieldSpec, leopoldt_check
from .padic import DEFAULT_SLACK
from .problem import ClosureProblem, LeopoldtProblem, load_problem
from .properties import Context, run_properties
from .report import (
    check_report,
    closure_report,
    dbracket_report,
    dumps,
    leopoldt_report,
)
from .zprank import zp_rank_lower

DEFAULT_PRECISION = 40
DEFAULT_BOX = 2
EXIT_CODES = {ParseError: 2, DomainError: 3, PrecisionError: 4}


def resolve(flag, from_file, default):
    if flag is not None:
        return flag
    return from_file if from_file is not None else default


def _require(problem, kind, command):
    if not isinstance(problem, kind):
        want = "group/generators" if kind is ClosureProblem else "field/units/primes"
        raise ParseError(f"`{command}` needs a problem with {want}", "file")


def _membership(problem: ClosureProblem):
    result = membership_check(problem.spec, problem.generators, problem.p)
    if not result.ok:
        lines = "; ".join(f"generator {v.generator}, component {v.component}: {v.reason}" for v in result.violations)
        raise DomainError(f"not in G(Q_p)_f: {lines}")
    return result


def run_closure(problem: ClosureProblem, precision=None, box=None, threads: int = 1) -> dict:
    N = resolve(precision, problem.precision, DEFAULT_PRECISION)
    membership = _membership(problem)
    rows = log_matrix(problem.spec, problem.generators, problem.p, N, DEFAULT_SLACK, threads)
    report = zp_rank_lower(rows, precision_used=N)
    return closure_report(problem, {"N": N, "slack": DEFAULT_SLACK}, membership, rows, report)


def run_dbracket(problem: ClosureProblem, precision=None, box=None, threads: int = 1) -> dict:
    N = resolve(precision, problem.precision, DEFAULT_PRECISION)
    B = resolve(box, problem.box, DEFAULT_BOX)
    membership = _membership(problem)
    rows = log_matrix(problem.spec, problem.generators, problem.p, N, DEFAULT_SLACK, threads)
    bracket = d_bracket(problem.spec, problem.generators, problem.p, N, B, DEFAULT_SLACK, threads=threads)
    return dbracket_report(problem, {"N": N, "B": B, "slack": DEFAULT_SLACK}, membership, rows, bracket)


def run_check(problem: ClosureProblem, precision=None, box=None, threads: int = 1) -> dict:
    N = resolve(precision, problem.precision, DEFAULT_PRECISION)
    B = resolve(box, problem.box, DEFAULT_BOX)
    _membership(problem)
    ctx = Context(problem.p, N, B, DEFAULT_SLACK, threads)
    bracket, results = run_properties(problem.spec, problem.generators, ctx)
    return check_report(problem, {"N": N, "B": B, "slack": DEFAULT_SLACK}, bracket, results)


def run_leopoldt(problem: LeopoldtProblem, precision=None, box=None, threads: int = 1) -> dict:
    N = resolve(precision, problem.precision, DEFAULT_PRECISION)
    field = FieldSpec.from_poly(problem.f)

    def one(p):
        return leopoldt_check(field, problem.units, p, N, DEFAULT_SLACK)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(one, problem.primes))
    else:
        verdicts = [one(p) for p in problem.primes]
    return leopoldt_report(problem, {"N": N, "slack": DEFAULT_SLACK}, field, verdicts)


RUNNERS = {
    "closure": (ClosureProblem, run_closure),
    "dbracket": (ClosureProblem, run_dbracket),
    "check": (ClosureProblem, run_check),
    "leopoldt": (LeopoldtProblem, run_leopoldt),
}


def run(command: str, problem, precision=None, box=None, threads: int = 1) -> dict:
    kind, runner = RUNNERS[command]
    _require(problem, kind, command)
    return runner(problem, precision, box, threads)


# -- text output -------------------------------------------------------------

def summarize(report: dict) -> list[str]:
    cmd = report["command"]
    name = report["input"].get("name") or "(unnamed)"
    params = " ".join(f"{k}={v}" for k, v in sorted(report["parameters"].items()))
    lines = [f"{cmd}: {name}  [{params}]"]
    if cmd in ("closure", "dbracket"):
        rr = report["rank_report"]
        lines.append(f"  rank_lo = {rr['rank_lo']}  (pivots: "
                     + ", ".join(f"({pv['row']},{pv['col']}) v={pv['val']}" for pv in rr["certificate"]) + ")")
        for j, row in enumerate(report["valuation_profile"]):
            lines.append(f"  log g{j}: valuations {row}")
    if cmd == "dbracket":
        b = report["dbracket"]
        lines.append(f"  d-bracket: lo={b['lo']} hi={b['hi']} {report['verdict']}")
        lines.append(f"  witness: {json.dumps(b['witness'], sort_keys=True)}")
        if b["flags"]:
            lines.append(f"  flags: {', '.join(b['flags'])}")
    if cmd == "leopoldt":
        f = report["field"]
        lines.append(f"  r1={f['r1']} r2={f['r2']} unit rank={f['unit_rank']}")
        for v in report["verdicts"]:
            lines.append(f"  p={v['p']:<5} {v['status']:<13} rank_lo={v['rank_lo']}")
    if cmd == "check":
        b = report["dbracket"]
        lines.append(f"  d-bracket: lo={b['lo']} hi={b['hi']}")
        for r in report["properties"]:
            lines.append(f"  {r['status'].upper():<5} {r['name']}")
    return lines


# -- selftest ----------------------------------------------------------------

def fixture_paths() -> list[Path]:
    root = resources.files("padic_closure") / "fixtures"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".json"))


def compare_expect(report: dict, expect: dict) -> list[str]:
    """Mismatches between a report and a fixture's ``expect`` block."""
    problems = []
    if report["command"] == "leopoldt":
        got = {str(v["p"]): v["status"] for v in report["verdicts"]}
        for p, status in expect.get("verdicts", {}).items():
            if got.get(p) != status:
                problems.append(f"p={p}: expected {status}, got {got.get(p)}")
        if "unit_rank" in expect and report["field"]["unit_rank"] != expect["unit_rank"]:
            problems.append(f"unit rank {report['field']['unit_rank']} != {expect['unit_rank']}")
        return problems
    b = report["dbracket"]
    actual = {
        "rank_lo": report["rank_report"]["rank_lo"],
        "lo": b["lo"],
        "hi": b["hi"],
        "certified": b["certified"],
        "flags": b["flags"],
        "witness": b["witness"],
    }
    for key, want in expect.items():
        if key in actual and actual[key] != want:
            problems.append(f"{key}: expected {want}, got {actual[key]}")
    return problems


def selftest(threads: int = 1) -> int:
    failures = 0
    for path in fixture_paths():
        try:
            problem = load_problem(path)
            command = "leopoldt" if isinstance(problem, LeopoldtProblem) else "dbracket"
            report = run(command, problem, threads=threads)
            problems = compare_expect(report, problem.expect or {})
        except Exception as exc:  # selftest reports every failure, whatever its kind
            problems = [f"{type(exc).__name__}: {exc}"]
        failures += bool(problems)
        print(f"{'PASS' if not problems else 'FAIL'} {path.stem}" + ("" if not problems else ": " + "; ".join(problems)))
    print(f"{failures} failure(s)")
    return 1 if failures else 0


# -- argument parsing ----------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}", "command line") from None


def leopoldt_from_flags(args) -> LeopoldtProblem:
    if not (args.poly and args.units and args.primes):
        raise ParseError("give a problem file or all of --poly, --units, --primes", "command line")
    f = tuple(_int_list(args.poly))
    units = tuple(tuple(_int_list(u)) for u in args.units.split(";"))
    return LeopoldtProblem(f, units, tuple(_int_list(args.primes)), name="command line")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, metavar="N",
                        help=f"absolute p-adic precision (default: file value, else {DEFAULT_PRECISION})")
    common.add_argument("--box", type=int, metavar="B",
                        help=f"coefficient box for the subtorus search (default: file value, else {DEFAULT_BOX})")
    common.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    common.add_argument("--threads", type=int, default=1, metavar="T", help="worker threads (default 1)")

    parser = argparse.ArgumentParser(prog="padic-closure", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("closure", "certified lower bound for the closure dimension"),
        ("dbracket", "bracket lo <= dim <= d <= hi with a witness subgroup"),
        ("check", "run the dimension-function property suite on a problem"),
    ]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", help="problem file (JSON)")
    lp = sub.add_parser("leopoldt", parents=[common], help="certify Leopoldt's conjecture for given units")
    lp.add_argument("file", nargs="?", help="problem file (JSON)")
    lp.add_argument("--poly", help="ascending coefficients of monic f, e.g. -1,-1,1")
    lp.add_argument("--units", help="units as ascending coefficients, ';'-separated, e.g. '0,1'")
    lp.add_argument("--primes", help="comma-separated primes")
    sub.add_parser("selftest", parents=[common], help="run the bundled fixtures")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.threads < 1:
            raise ParseError("--threads must be >= 1", "command line")
        if args.command == "selftest":
            return selftest(args.threads)
        if args.command == "leopoldt" and args.file is None:
            problem = leopoldt_from_flags(args)
        else:
            problem = load_problem(args.file)
        start = time.perf_counter()
        report = run(args.command, problem, args.precision, args.box, args.threads)
        elapsed = time.perf_counter() - start
    except (ParseError, DomainError, PrecisionError) as exc:
        code = next(c for cls, c in EXIT_CODES.items() if isinstance(exc, cls))
        print(f"error: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json == "-":
        sys.stdout.write(dumps(report))
    else:
        print("\n".join(summarize(report)))
        print(f"  elapsed {elapsed:.3f} s")
        if args.json:
            Path(args.json).write_text(dumps(report), encoding="utf-8")
    if args.command == "check" and not report["all_passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
