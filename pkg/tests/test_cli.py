"""End-to-end CLI runs through subprocess: exit codes, schemas, round trips."""

import json
import subprocess
import sys

import pytest

E2 = {"n": 2, "matrix": [[1, 0], [1, 0]]}
LONE_REAL = {"n": 3, "matrix": [[1, -2, -3], [0, 0, 1], [0, 1, 1]]}
CHAIN2 = {"n": 2, "matrix": [[0, 1], [0, 0]]}


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "evoalg", *args],
        capture_output=True,
        text=True,
        timeout=300,
    )


@pytest.fixture
def algebra_file(tmp_path):
    def write(obj, name="alg.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return write


def test_analyze_e2_text(algebra_file):
    proc = run_cli("analyze", "--input", algebra_file(E2))
    assert proc.returncode == 0
    assert "regular=false" in proc.stdout
    assert "idempotents=['(1, 0)']" in proc.stdout.replace('"', "'")


def test_solve_lone_real_json(algebra_file):
    proc = run_cli("solve", "--system", "general", "--input", algebra_file(LONE_REAL), "--json")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["schema"] == "evoalg-solve-v1"
    assert payload["bezout_count"] == 8
    real_nontrivial = [
        s for s in payload["solutions"] if s["real"] and s["support"]
    ]
    assert len(real_nontrivial) == 1
    point = real_nontrivial[0]["point"]
    assert abs(point[0][0] - 1) < 1e-8
    assert all(abs(x) < 1e-8 for pair in point[1:] for x in pair)


def test_verify_theorem21(algebra_file, tmp_path):
    out = tmp_path / "report.json"
    proc = run_cli(
        "verify", "theorem21", "--n", "3", "--trials", "5", "--seed", "9",
        "--output", str(out),
    )
    assert proc.returncode == 0
    report = json.loads(out.read_text())
    assert report["schema"] == "evoalg-report-v1"
    assert report["passes"] == 5
    assert report["counterexample_candidates"] == []


def test_conjecture_command(algebra_file):
    proc = run_cli("conjecture", "--input", algebra_file(CHAIN2), "--json")
    assert proc.returncode == 0
    verdict = json.loads(proc.stdout)
    assert verdict == {
        "solvable": True,
        "has_idempotent": False,
        "only_trivial_solution": True,
        "consistent": True,
        "solvability_backend": "exact",
    }


def test_idempotents_and_subalgebras_commands(algebra_file):
    proc = run_cli("idempotents", "--input", algebra_file(E2), "--json")
    assert proc.returncode == 0
    wits = json.loads(proc.stdout)["idempotents"]
    assert len(wits) == 1 and wits[0]["support"] == [1]

    proc = run_cli("subalgebras", "--input", algebra_file(E2))
    assert proc.returncode == 2  # E2 is not regular
    assert "regular" in proc.stderr


def test_parse_error_names_the_path(algebra_file):
    proc = run_cli("analyze", "--input", algebra_file({"n": 2, "matrix": [[1, 2]]}))
    assert proc.returncode == 2
    assert "$.matrix" in proc.stderr


def test_invalid_json_is_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    proc = run_cli("analyze", "--input", str(bad))
    assert proc.returncode == 2


def test_usage_error_is_exit_2():
    proc = run_cli("frobnicate")
    assert proc.returncode == 2


def test_check_round_trip(algebra_file, tmp_path):
    alg = algebra_file(LONE_REAL)
    out = tmp_path / "solve.json"
    proc = run_cli("solve", "--system", "general", "--input", alg, "--json",
                   "--output", str(out))
    assert proc.returncode == 0
    proc = run_cli("check", "--input", alg, "--solve-output", str(out))
    assert proc.returncode == 0
    assert "check ok" in proc.stdout

    # corrupt one coordinate: the independent re-evaluation must catch it
    payload = json.loads(out.read_text())
    payload["solutions"][-1]["point"][0][0] += 0.1
    out.write_text(json.dumps(payload))
    proc = run_cli("check", "--input", alg, "--solve-output", str(out))
    assert proc.returncode == 3


def test_parallel_output_is_identical(algebra_file):
    alg = algebra_file(LONE_REAL)
    base = run_cli("solve", "--input", alg, "--json", "--seed", "5")
    par = run_cli("solve", "--input", alg, "--json", "--seed", "5", "--parallel")
    assert base.returncode == par.returncode == 0
    assert base.stdout == par.stdout


def test_verify_conjecture_sweep_exit_codes(tmp_path):
    proc = run_cli(
        "verify", "conjecture", "--n-max", "3", "--trials", "8", "--seed", "1"
    )
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["campaign"] == "conjecture36"


def test_shortfall_threshold_exit_code():
    # an impossible threshold forces the shortfall exit path
    proc = run_cli(
        "verify", "theorem35", "--n", "2", "--trials", "3", "--seed", "2",
        "--max-shortfall", "-1",
    )
    assert proc.returncode == 4
    assert "shortfall" in proc.stderr


def test_idempotents_empty_result_text(algebra_file):
    proc = run_cli("idempotents", "--input", algebra_file(CHAIN2))
    assert proc.returncode == 0
    assert "no idempotents" in proc.stdout
