import json
import subprocess
import sys

import pytest

from padic_closure.cli import fixture_paths, main, run
from padic_closure.errors import DomainError, ParseError
from padic_closure.problem import load_problem, parse_problem

FIXTURES = {p.stem: p for p in fixture_paths()}


def problem_text(**over):
    base = {"schema_version": 1, "group": [{"type": "multiplicative"}], "p": 5, "generators": [["2"]]}
    base.update(over)
    return json.dumps(base)


@pytest.mark.parametrize("text, location", [
    ("{\n  \"schema_version\": 1,\n  oops\n}", "line 3"),
    (problem_text(schema_version=2), "schema_version"),
    (problem_text(p=6), "p"),
    (problem_text(generators=[["2/0"]]), "generators[0][0]"),
    (problem_text(generators=[["1.5"]]), "generators[0][0]"),
    (problem_text(generators=[["0"]]), "generators[0][0]"),
    (problem_text(generators=[["2", "3"]]), "generators[0]"),
    (problem_text(group=[{"type": "torus"}]), "group[0].type"),
    (problem_text(group=[{"type": "elliptic_curve", "a": "0", "b": "-2"}], generators=[[["3"]]]),
     "generators[0][0]"),
    (problem_text(box=0), "box"),
])
def test_parse_errors_carry_location(text, location):
    with pytest.raises(ParseError) as info:
        parse_problem(text)
    assert info.value.location.startswith(location)


def test_parse_roundtrip():
    prob = load_problem(FIXTURES["mixed_gm_ec"])
    again = parse_problem(json.dumps({"schema_version": 1, **prob.to_json()}))
    assert again.to_json() == prob.to_json()


def test_closure_command_examples():
    assert run("closure", load_problem(FIXTURES["gm2_torsion"]))["rank_report"]["rank_lo"] == 0
    assert run("closure", load_problem(FIXTURES["gm2_three_generators"]))["rank_report"]["rank_lo"] == 2
    assert run("closure", load_problem(FIXTURES["ga3_rank_three"]))["rank_report"]["rank_lo"] == 3


def test_precondition_is_domain_error():
    prob = parse_problem(problem_text(generators=[["5"]]))
    with pytest.raises(DomainError, match="valuation"):
        run("closure", prob)


def test_command_shape_mismatch():
    with pytest.raises(ParseError):
        run("leopoldt", load_problem(FIXTURES["gm2_torsion"]))


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["closure", str(bad)]) == 2
    nonmember = tmp_path / "nonmember.json"
    nonmember.write_text(problem_text(generators=[["5"]]))
    assert main(["closure", str(nonmember)]) == 3
    assert main(["leopoldt", "--poly=-2,0,1", "--units", "1,1", "--primes", "2"]) == 3
    assert main(["leopoldt", "--poly=-2,0,1", "--units=-1", "--primes", "3"]) == 0
    assert main(["closure", str(tmp_path / "missing.json")]) == 2
    assert main(["dbracket", str(FIXTURES["gm2_rank_one"])]) == 0
    out = capsys.readouterr().out
    assert "CERTIFIED" in out and "INCONCLUSIVE" in out


def test_json_flag_and_overrides(tmp_path):
    out = tmp_path / "r.json"
    assert main(["dbracket", str(FIXTURES["gm2_three_generators"]), "--precision", "30", "--box", "2",
                 "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["parameters"] == {"N": 30, "B": 2, "slack": 8}
    assert report["dbracket"]["certified"] and report["verdict"] == "CERTIFIED"
    assert "elapsed" not in out.read_text()


def test_leopoldt_flags_match_file():
    a = run("leopoldt", load_problem(FIXTURES["leopoldt_golden"]))
    assert [v["status"] for v in a["verdicts"]] == ["CERTIFIED"] * 4


def test_check_command(capsys):
    assert main(["check", str(FIXTURES["block_product_gm4"])]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_selftest_and_module_entry():
    proc = subprocess.run([sys.executable, "-m", "padic_closure", "selftest"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "0 failure(s)" in proc.stdout
