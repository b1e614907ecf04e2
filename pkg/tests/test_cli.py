import contextlib
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from slicespace.cli import EXIT_CHECK, EXIT_INPUT, EXIT_OK, EXIT_PARAM, main, profile_radii

GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(GOLDEN))
import regen  # noqa: E402


def run(argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(argv)
    finally:
        sys.stdin = old
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(regen.CASES))
def test_golden_outputs_byte_identical(name):
    code, text = regen.run(regen.CASES[name])
    assert code == EXIT_OK
    assert text == (GOLDEN / name).read_text()


def test_dirichlet_example_values():
    code, text, _ = run(regen.CASES["norm_dirichlet.json"])
    rep = json.loads(text)
    assert code == 0
    assert rep["value"] == pytest.approx(math.sqrt(3 * math.pi), rel=1e-12)
    assert rep["extra"]["normalized_value"] == pytest.approx(math.sqrt(3.0), rel=1e-12)


def test_bloch_of_identity_is_one():
    code, text, _ = run(["norm", "--space", "bloch", "--sphere-samples", "2", str(GOLDEN / "q.json")])
    assert code == 0 and json.loads(text)["value"] == pytest.approx(1.0, rel=1e-12)


def test_stdin_and_bare_list_input():
    code, text, _ = run(["norm", "--space", "hinf", "--sphere-samples", "1", "-"], stdin="[[2, 0, 0, 0]]")
    assert code == 0 and json.loads(text)["value"] == 2.0


def test_small_p_besov_norm():
    code, text, _ = run(["norm", "--space", "besov", "--p", "0.8", "--sphere-samples", "1", str(GOLDEN / "q.json")])
    rep = json.loads(text)
    assert code == 0 and math.isfinite(rep["value"]) and rep["config"]["n"] == 2


@pytest.mark.parametrize("argv", [
    ["norm", "--space", "bergman", "--p", "-1"],
    ["norm", "--space", "bergman"],
    ["norm", "--space", "bergman", "--p", "2", "--alpha", "-1"],
    ["norm", "--space", "besov", "--p", "0.5", "--n", "2"],
    ["norm", "--space", "bloch", "--tol", "-1"],
])
def test_parameter_errors_exit_3(argv):
    code, _, err = run(argv + [str(GOLDEN / "q.json")])
    assert code == EXIT_PARAM and "parameter error" in err


def test_input_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["norm", "--space", "bloch", str(bad)])[0] == EXIT_INPUT
    assert run(["norm", "--space", "bloch", str(tmp_path / "missing.json")])[0] == EXIT_INPUT
    assert run(["norm", "--space", "nope", str(GOLDEN / "q.json")])[0] == EXIT_INPUT
    assert run(["profile", str(bad)])[0] == EXIT_INPUT
    odd = tmp_path / "odd.json"
    odd.write_text('{"coeffs": [[1, 2, 3]]}')
    assert run(["norm", "--space", "bloch", str(odd)])[0] == EXIT_INPUT


def test_check_dirichlet_seed7_passes_and_is_deterministic():
    a = run(["check", "--suite", "dirichlet", "--seed", "7"])
    b = run(["check", "--suite", "dirichlet", "--seed", "7"])
    assert a[0] == EXIT_OK and a[1] == b[1]


def test_check_all_report_shape():
    code, text, _ = run(["check", "--suite", "all", "--seed", "0"])
    rep = json.loads(text)
    assert code == EXIT_OK and rep["passed"]
    assert rep["n_checks"] == len(rep["checks"]) > 100
    for c in rep["checks"]:
        assert set(c) >= {"suite", "name", "passed", "witness", "details"}
    assert {c["suite"] for c in rep["checks"]} == {"bloch", "bergman", "besov", "dirichlet", "kernels"}


def test_tampered_tolerance_fails():
    # the sup estimator is one-sided, so a 1e-16 tolerance exposes its bias
    code, text, _ = run(["check", "--suite", "bloch", "--tol", "1e-16"])
    assert code == EXIT_CHECK
    assert json.loads(text)["n_failed"] >= 1


def test_profile_examples(tmp_path):
    out = tmp_path / "prof.csv"
    code, _, _ = run(["profile", "--out", str(out), "-"], stdin='{"coeffs": [[3, 1, 0, 0]]}')
    rows = out.read_text().splitlines()
    assert code == 0 and rows[0] == "r,bloch_profile,circle_mean_abs_p2.0"
    assert all(float(line.split(",")[1]) == 0.0 for line in rows[1:])
    code, text, _ = run(["profile", str(GOLDEN / "q.json")])
    for line in text.splitlines()[1:]:
        r, b, _ = map(float, line.split(","))
        assert b == pytest.approx(1 - r * r, abs=1e-15)


def test_profile_decays_near_boundary():
    code, text, _ = run(["profile", "-"], stdin='{"coeffs": [[0, 0, 0, 0], [0.5, 0, 1, 0], [0, 0, 0, 0], [1, 1, 0, 0]]}')
    prof = [float(line.split(",")[1]) for line in text.splitlines()[1:]]
    tail = prof[-6:]
    assert all(b <= a for a, b in zip(tail, tail[1:]))
    assert len(profile_radii(1 - 1e-6)) == len(prof)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "slicespace", "norm", "--space", "bergman", "--p", "-1",
                          str(GOLDEN / "q.json")], capture_output=True, text=True)
    assert res.returncode == EXIT_PARAM
