import json
import subprocess
import sys

import pytest

from bocrs.cli import EXIT_FAIL, EXIT_OK, EXIT_SOLVER, EXIT_USAGE, run


def _json(capsys, argv, code=EXIT_OK):
    assert run(argv) == code
    return json.loads(capsys.readouterr().out)


def test_gen_u_contains_printed_cubic(capsys):
    out = _json(capsys, ["gen-u", "--n", "3"])
    u3 = out["polys"][3]["poly"]
    assert u3["vars"] == ["x", "lambda"]
    assert u3["terms"] == [
        {"e": [0, 3], "c": "-20"}, {"e": [1, 1], "c": "-12"}, {"e": [0, 2], "c": "160"},
        {"e": [1, 0], "c": "40"}, {"e": [0, 1], "c": "-240"},
    ]


def test_gen_u_csv(capsys):
    assert run(["gen-u", "--n", "2", "--csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,r,s,coeff"
    assert "2,1,0,2" in lines and "1,0,1,-2" in lines


def test_q_poly(capsys):
    out = _json(capsys, ["q-poly", "--n", "2"])
    assert out["poly"]["terms"] == [{"e": [2], "c": "6"}, {"e": [0], "c": "-2"}]


@pytest.mark.parametrize("suite", ["integrality", "bounds", "detM", "basis", "compression", "minors", "degenerate", "coeffring"])
def test_verify_suites_pass(capsys, suite):
    out = _json(capsys, ["verify", "--suite", suite, "--n-max", "6", "--samples", "3"])
    assert out["ok"] and out["totals"]["failed"] == 0 and out["totals"]["checks"] > 0


def test_verify_failures_only(capsys):
    out = _json(capsys, ["verify", "--suite", "degenerate", "--failures-only"])
    assert out["checks"] == [] and out["totals"]["passed"] == 6


def test_verify_compression_spec_run(capsys):
    out = _json(capsys, ["verify", "--suite", "compression", "--n-max", "40", "--samples", "100", "--seed", "7"])
    assert out["ok"] and out["totals"]["checks"] >= 4000


def test_solve(capsys):
    out = _json(capsys, ["solve", "--a2", "1", "--depth", "1", "--fixed-point"])
    assert out["lambda_decimal"].startswith("0.18350341907227")
    assert out["fixed_point"]["agrees"] is True
    assert "note" in out


def test_solve_table(capsys):
    out = _json(capsys, ["solve", "--a2", "1", "--depth", "8", "--table"])
    assert out["converged"] and out["brackets_valid"] and len(out["rows"]) == 8


def test_solve_tangency_exit_3(capsys):
    out = _json(capsys, ["solve", "--a2", "3", "--depth", "1"], EXIT_SOLVER)
    assert out["error"] == "TangencyCandidate" and out["location"] == "1/1"


def test_solve_invalid_a2(capsys):
    assert run(["solve", "--a2", "-1", "--depth", "3"]) == EXIT_USAGE


def test_decay(capsys):
    out = _json(capsys, ["decay", "--a2", "1", "--depth", "20", "--n-max", "15"])
    assert len(out["rows"]) == 15 and out["decreasing_runs"]


def test_certify(capsys):
    out = _json(capsys, ["certify", "--a2", "1", "--lambda", "1", "--n-max", "3"])
    assert out["entries"] == ["1", "-2", "-4", "-72"]


def test_coeff_ring(capsys):
    out = _json(capsys, ["coeff-ring", "--n", "1", "--eval", "--c", "1", "--l", "1"])
    assert out["poly"]["terms"] == [{"e": [0, 1, 1], "c": "4"}]
    assert out["divisible_by_C^n"] is True
    assert out["numeric"]["value"].startswith("4.0")
    assert out["numeric"]["inputs"] == {"C": "1", "L": "1"}


def test_coeff_ring_eval_needs_constants(capsys):
    assert run(["coeff-ring", "--n", "1", "--eval"]) == EXIT_USAGE


def test_usage_errors(capsys):
    assert run([]) == EXIT_USAGE
    assert run(["gen-u"]) == EXIT_USAGE
    assert run(["gen-u", "--n", "-1"]) == EXIT_USAGE
    assert run(["verify", "--suite", "nope"]) == EXIT_USAGE
    assert run(["solve", "--a2", "x", "--depth", "1"]) == EXIT_USAGE


def test_verify_failure_exit_1(capsys, monkeypatch):
    import bocrs.suites
    from bocrs.checks import Check
    monkeypatch.setitem(bocrs.suites.SUITES, "degenerate", lambda **_: [Check("forced", False, {"n": 1})])
    out = _json(capsys, ["verify", "--suite", "degenerate"], EXIT_FAIL)
    assert out["ok"] is False and out["checks"][0]["witness"] == {"n": 1}


def test_exit_codes_distinct():
    assert len({EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SOLVER}) == 4


def test_byte_identical_subprocess():
    argv = [sys.executable, "-m", "bocrs", "verify", "--suite", "minors", "--n-max", "4", "--samples", "3", "--seed", "9"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")
