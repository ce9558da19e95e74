import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from walkerhol.cli import run

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def sample(name):
    return str(SAMPLES / name)


def test_pspace_text():
    code, out, _ = call("pspace", "--algebra", "g2")
    assert code == 0
    assert out.strip() == "g2 in so(7): dim P = 64, P1 = 0, weak-Berger: yes"


def test_pspace_json_is_exact_and_versioned():
    code, out, _ = call("pspace", "--algebra", "so:3", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == 1 and doc["status"] == "ok"
    assert (doc["dim_P"], doc["dim_P0"], doc["dim_P1"]) == (8, 5, 3)


def test_json_is_byte_identical_across_runs():
    args = ("curvature", "--metric", sample("so2_type1.json"), "--format", "json")
    first = call(*args)[1]
    assert first == call(*args)[1]
    # numbers are exact strings, never floats
    assert "." not in "".join(c for c in first if c != '"' and not c.isalpha())


def test_weakberger_and_rspace():
    code, out, _ = call("weakberger", "--algebra", "so:3")
    assert code == 0 and "PASS" in out
    code, out, _ = call("rspace", "--algebra", "so:2", "--type", "1")
    assert code == 0 and out.strip() == "dim R(g^{1,so:2}) = 9"


def test_build_roundtrip(tmp_path):
    dest = tmp_path / "m.json"
    code, _, _ = call("build", "--input", sample("so2_type1_spec.json"), "--metric-out", str(dest))
    assert code == 0
    assert json.loads(dest.read_text()) == json.loads(Path(sample("so2_type1.json")).read_text())


def test_holonomy_verdicts():
    code, out, _ = call("holonomy", "--metric", sample("so2_type1.json"))
    assert code == 0 and out.strip() == "g^{1,so(2)}, dim 4"
    code, out, _ = call("holonomy", "--metric", sample("so2_type1.json"), "--max-order", "0")
    assert code == 1 and "not stabilized" in out


def test_holonomy_env_cap(monkeypatch):
    monkeypatch.setenv("HOLONOMY_MAX_ORDER", "0")
    code, _, _ = call("holonomy", "--metric", sample("so2_type1.json"))
    assert code == 1


def test_einstein_and_petrov():
    metric = sample("quartic_einstein.json")
    code, out, _ = call("einstein", "--metric", metric, "--lambda", "-1")
    assert code == 0 and "Einstein: yes" in out
    code, _, _ = call("einstein", "--metric", metric, "--lambda", "-2")
    assert code == 1
    code, out, _ = call("petrov", "--metric", metric, "--lambda", "-1", "--point", "0,1,0,0")
    assert code == 0
    assert "det T = -9*v^2*x1^4 - 9*x1^8" in out and "type at point: II" in out


def test_confflat_and_twosym():
    code, out, _ = call("confflat", "--input", sample("cf_lambda_u.json"))
    assert code == 0 and "confirmed: True" in out
    code, out, _ = call("confflat", "--input", sample("cf_flat_screen.json"), "--no-holonomy")
    assert code == 0 and "Weyl zero: True" in out
    code, out, _ = call("twosym", "--input", sample("twosym_n2.json"))
    assert code == 0 and "holonomy R^n: True" in out


def test_report_rows_and_failures():
    code, out, _ = call("report-table1", "--rows", "so(2)", "G2")
    assert code == 0 and out.count("ok") == 2
    code, out, _ = call("report-table1", "--rows", "su(2)")
    assert code == 1 and "su(2)" in out


def test_output_flag(tmp_path):
    dest = tmp_path / "r.txt"
    code, out, _ = call("pspace", "--algebra", "so:2", "--output", str(dest))
    assert code == 0 and out == ""
    assert dest.read_text().startswith("so")


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["pspace"],
    ["pspace", "--algebra", "g2", "--bogus"],
    ["pspace", "--algebra", "nosuch"],
    ["holonomy", "--metric", "/nonexistent.json"],
    ["holonomy", "--metric", sample("so2_type1_spec.json")],
])
def test_usage_errors_exit_2(argv):
    code, _, err = call(*argv)
    assert code == 2 and err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "walkerhol", "pspace", "--algebra", "so:2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "dim P = 2" in proc.stdout
