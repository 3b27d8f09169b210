"""Deterministic JSON reports.

Reports hold no timings or host data, so identical inputs give identical
bytes regardless of thread count.  Timing is printed in the text summary.
"""
from __future__ import annotations

import json

from . import __version__
from .closure import DBracket, MembershipResult
from .numberfield import LeopoldtVerdict
from .padic import PadicScalar
from .properties import PropertyResult

TOOL = "padic-closure"


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def valuation_profile(rows: list[list[PadicScalar]]) -> list[list]:
    """Per entry: the valuation if provably nonzero, ">=abs" if zero at precision, "inf" if exactly zero."""
    def cell(x: PadicScalar):
        if x.is_exact_zero:
            return "inf"
        if x.is_zero:
            return f">={x.prec}"
        return x.val
    return [[cell(x) for x in row] for row in rows]


def _header(command: str, problem, params: dict) -> dict:
    return {"tool": TOOL, "version": __version__, "command": command,
            "input": problem.to_json(), "parameters": params}


def closure_report(problem, params: dict, membership: MembershipResult, rows, rank_report) -> dict:
    out = _header("closure", problem, params)
    out["membership"] = membership.to_json()
    out["valuation_profile"] = valuation_profile(rows)
    out["log_matrix"] = [[x.to_json() for x in row] for row in rows]
    out["rank_report"] = rank_report.to_json()
    return out


def dbracket_report(problem, params: dict, membership: MembershipResult, rows, bracket: DBracket) -> dict:
    out = closure_report(problem, params, membership, rows, bracket.rank_report)
    out["command"] = "dbracket"
    out["dbracket"] = bracket.to_json()
    out["verdict"] = "CERTIFIED" if bracket.certified else "OPEN"
    return out


def leopoldt_report(problem, params: dict, field, verdicts: list[LeopoldtVerdict]) -> dict:
    out = _header("leopoldt", problem, params)
    out["field"] = {"r1": field.r1, "r2": field.r2, "unit_rank": field.unit_rank}
    out["verdicts"] = [v.to_json() for v in verdicts]
    return out


def check_report(problem, params: dict, bracket: DBracket, results: list[PropertyResult]) -> dict:
    out = _header("check", problem, params)
    out["dbracket"] = bracket.to_json()
    out["properties"] = [r.to_json() for r in results]
    out["all_passed"] = all(r.passed for r in results)
    return out
