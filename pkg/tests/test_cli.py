"""End-to-end command line checks through real subprocesses.

Every command is run twice to pin byte-identical output; exit codes are
asserted for each documented failure class.
"""

import json
import subprocess
import sys

import pytest

from operadics.bundled import BUNDLED_FILES, bundled_path
from operadics.errors import ConfigError


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "operadics.cli", *args],
        capture_output=True,
        text=True,
    )


def run_twice(*args):
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.stdout == second.stdout, "output must be byte-identical"
    assert first.returncode == second.returncode
    return first


# --- bundled data ------------------------------------------------------------


def test_bundled_files_exist():
    assert len(BUNDLED_FILES) == 5
    for name in BUNDLED_FILES:
        assert bundled_path(name).is_file()
    with pytest.raises(ConfigError):
        bundled_path("no_such_file.json")


# --- verify ---------------------------------------------------------------------


def test_verify_text_runs_and_is_deterministic():
    r = run_twice("verify", "--cases", "4")
    assert r.returncode == 0
    assert "composition-relations" in r.stdout
    assert "result: 21/21 suites passed" in r.stdout


def test_verify_machine_output_is_json():
    r = run_twice("verify", "--cases", "3", "--format", "machine")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["ok"] is True
    assert len(doc["suites"]) == 21
    assert doc["config"]["cases"] == 3


def test_verify_float_backend_and_flags():
    r = run_cli(
        "verify",
        "--cases",
        "3",
        "--backend",
        "float",
        "--dim",
        "3",
        "--max-degree",
        "2",
        "--seed",
        "11",
    )
    assert r.returncode == 0


def test_verify_corrupt_sign_fails_with_exit_one():
    r = run_cli("verify", "--cases", "4", "--corrupt-sign")
    assert r.returncode == 1
    assert "FAIL" in r.stdout


def test_verify_rejects_bad_config():
    assert run_cli("verify", "--dim", "0").returncode == 2
    assert run_cli("verify", "--cases", "-3").returncode == 2


# --- cohomology -------------------------------------------------------------------


def test_cohomology_table_for_bundled_algebras():
    r = run_twice("cohomology", "--algebra", str(bundled_path("dual_numbers.json")))
    assert r.returncode == 0
    assert "dual_numbers" in r.stdout
    # betti column: 2 in degree 0 then a run of ones
    lines = [l for l in r.stdout.splitlines() if l.strip() and l.strip()[0].isdigit()]
    betti = [int(l.split()[-1]) for l in lines]
    assert betti == [2, 1, 1, 1, 1]


def test_cohomology_machine_matches_expected_numbers():
    r = run_twice(
        "cohomology",
        "--algebra",
        str(bundled_path("mat2.json")),
        "--format",
        "machine",
    )
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert [row["h"] for row in doc["table"]] == [1, 0, 0]
    assert [row["rank"] for row in doc["table"]] == [3, 13, 51]


def test_cohomology_missing_file_is_a_parse_error(tmp_path):
    r = run_cli("cohomology", "--algebra", str(tmp_path / "absent.json"))
    assert r.returncode == 4


def test_cohomology_malformed_file_is_a_parse_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "x", "dim": 2}')
    r = run_cli("cohomology", "--algebra", str(path))
    assert r.returncode == 4
    assert "error:" in r.stderr


def test_cohomology_nonassociative_exits_three(tmp_path):
    mu = ["0"] * 8
    mu[4] = "1"  # e0*e0 = e1
    mu[2] = "1"  # e1*e0 = e0
    path = tmp_path / "twisted.json"
    path.write_text(json.dumps({"name": "twisted", "dim": 2, "mu": mu}))
    r = run_cli("cohomology", "--algebra", str(path))
    assert r.returncode == 3
    assert "not associative" in r.stderr


def test_cohomology_rejects_float_backend():
    r = run_cli(
        "cohomology",
        "--algebra",
        str(bundled_path("field.json")),
        "--backend",
        "float",
    )
    assert r.returncode == 2


# --- lax -------------------------------------------------------------------------


def test_lax_csv_shape_and_determinism():
    r = run_twice(
        "lax",
        "--system",
        str(bundled_path("lax_deg1.json")),
        "--t-end",
        "0.05",
    )
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0] == "t,trace1,trace2,trace3,L0,L1,L2,L3"
    assert len(lines) == 1 + 51  # header + samples at dt = 1e-3


def test_lax_machine_format():
    r = run_cli(
        "lax",
        "--system",
        str(bundled_path("lax_deg2.json")),
        "--t-end",
        "0.02",
        "--format",
        "machine",
    )
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["columns"][0] == "t"
    assert len(doc["rows"]) == 21


def test_lax_missing_system_file(tmp_path):
    r = run_cli("lax", "--system", str(tmp_path / "absent.json"))
    assert r.returncode == 4


def test_lax_divergent_run_exits_five(tmp_path):
    doc = {
        "dim": 2,
        "M": [1e200, 0.0, 0.0, -1e200],
        "L0": {"degree": 1, "coeffs": [0.0, 1e200, 1e-200, 0.0]},
        "dt": 1.0,
        "t_end": 5.0,
        "observe": [],
    }
    path = tmp_path / "diverge.json"
    path.write_text(json.dumps(doc))
    r = run_cli("lax", "--system", str(path))
    assert r.returncode == 5
    assert "non-finite" in r.stderr


def test_lax_out_file_matches_stdout(tmp_path):
    out = tmp_path / "run.csv"
    args = ("lax", "--system", str(bundled_path("lax_deg1.json")), "--t-end", "0.01")
    r_file = run_cli(*args, "--out", str(out))
    r_stdout = run_cli(*args)
    assert r_file.returncode == 0
    assert r_file.stdout == ""
    assert out.read_text() == r_stdout.stdout


# --- oscillator -------------------------------------------------------------------


def test_oscillator_default_run():
    r = run_twice("oscillator", "--t-end", "0.01")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0] == "t,q,p,H,trace2,L0,L1,L2,L3"
    assert lines[-1].startswith("# monodromy degree=1 ")
    assert "periodic=true" in lines[-1]


def test_oscillator_degree_two_needs_l_init():
    r = run_cli("oscillator", "--degree", "2", "--t-end", "0.01")
    assert r.returncode == 6
    assert "--l-init" in r.stderr


def test_oscillator_degree_two_with_l_init(tmp_path):
    path = tmp_path / "l2.json"
    path.write_text(
        json.dumps({"degree": 2, "coeffs": [1.0, 0, 0, 0, 0, 0, 0, 1.0]})
    )
    r = run_twice(
        "oscillator",
        "--degree",
        "2",
        "--l-init",
        str(path),
        "--omega",
        "2",
        "--t-end",
        "0.01",
    )
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0].startswith("t,q,p,H,assoc_defect,L0")
    assert "periodic=false" in lines[-1]


def test_oscillator_machine_monodromy_block():
    r = run_cli(
        "oscillator", "--t-end", "0.01", "--format", "machine", "--omega", "2"
    )
    doc = json.loads(r.stdout)
    assert doc["monodromy"]["degree"] == 1
    assert doc["monodromy"]["periodic"] is True
    assert doc["monodromy"]["period"] == pytest.approx(3.141592653589793)


def test_oscillator_rejects_bad_omega():
    assert run_cli("oscillator", "--omega", "0").returncode == 2


# --- argparse level ------------------------------------------------------------


def test_unknown_subcommand_exits_two():
    assert run_cli("frobnicate").returncode == 2


def test_help_exits_zero():
    r = run_cli("--help")
    assert r.returncode == 0
    for sub in ("verify", "cohomology", "lax", "oscillator"):
        assert sub in r.stdout
