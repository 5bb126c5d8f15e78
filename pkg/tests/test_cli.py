import io
import json
import subprocess
import sys

import pytest

from g2su3 import catalog
from g2su3.cli import run

NIL = """name nil-file
dim 6
d e3 = e25
d e6 = -e24
omega = e12 + e34 + e56
psi+ = e135 - e146 - e236 - e245
"""


def call(*argv):
    buf = io.StringIO()
    res = run(list(argv), stdout=buf)
    return res, buf.getvalue()


@pytest.fixture
def nilfile(tmp_path):
    p = tmp_path / "nil.struct"
    p.write_text(NIL)
    return str(p)


def test_validate_file(nilfile):
    res, out = call("validate", nilfile)
    assert res.code == 0 and "SU(3) compatibility: ok" in out


def test_validate_reports_jacobi_failure(tmp_path):
    p = tmp_path / "bad.struct"
    p.write_text("dim 6\nd e1 = e23\nd e2 = e45\n")
    res, _ = call("validate", str(p))
    assert res.code == 1 and "d(d e1) = e345" in res.summary


def test_parse_error_is_a_usage_error(tmp_path):
    p = tmp_path / "bad.struct"
    p.write_text("dim 6\nomega = e12 + * e34\n")
    res, _ = call("validate", str(p))
    assert res.code == 2 and "line 2, column 15" in res.summary


def test_su3_report_json_is_deterministic(nilfile):
    _, a = call("su3-report", nilfile, "--json")
    _, b = call("su3-report", nilfile, "--json")
    assert a == b
    data = json.loads(a)
    assert data["classes"] == ["W2-"] and data["half_flat"] is True


def test_output_file(nilfile, tmp_path):
    out = tmp_path / "r.json"
    res, text = call("g2-report", "nil-calibrated", "--output", str(out))
    assert res.code == 0 and "calibrated: True" in text
    assert json.loads(out.read_text())["calibrated"] is True


def test_correspondence_with_rho(nilfile, tmp_path):
    rho = tmp_path / "rho.struct"
    rho.write_text("dim 6\nrho = e12 + e45\n")
    res, out = call("correspondence", nilfile, "--rho", str(rho))
    assert res.code == 0, out
    assert "[FAIL]" not in out


def test_correspondence_non_closed_rho(nilfile, tmp_path):
    rho = tmp_path / "rho.struct"
    rho.write_text("dim 6\nrho = e13\n")
    res, _ = call("correspondence", nilfile, "--rho", str(rho))
    assert res.code == 1


@pytest.mark.parametrize("name", ["iwasawa-variant", "torus-circle-mixed", "nil2step"])
def test_correspondence_catalog(name):
    res, out = call("correspondence", name)
    assert res.code == 0, out


def test_flow_csv(tmp_path):
    p = tmp_path / "f.csv"
    res, out = call("flow", "iwasawa-variant", "--t0", "1", "--t1", "1.05", "--dt", "0.01", "--csv", str(p))
    assert res.code == 0, out
    assert p.read_text().startswith("t,")


def test_flow_not_half_flat(tmp_path):
    p = tmp_path / "s.struct"
    p.write_text("dim 6\nd e1 = e23\nomega = e12 + e34 + e56\npsi+ = e135 - e146 - e236 - e245\n")
    res, _ = call("flow", str(p), "--t0", "0", "--t1", "0.1", "--dt", "0.01")
    assert res.code == 1


@pytest.mark.parametrize("argv", [["su3-report", "no-such-thing"], ["flow", "torus6"], ["bogus"], []])
def test_usage_errors(argv):
    res, _ = call(*argv)
    assert res.code == 2


def test_list_examples():
    res, out = call("list-examples", "--json")
    assert res.code == 0
    assert [r["name"] for r in json.loads(out)["examples"]] == catalog.names()


def test_verify_subset():
    res, out = call("verify-paper", "--only", "1", "2")
    assert res.code == 0
    assert out.count("[PASS]") == 2


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "g2su3", "su3-report", "torus6"], capture_output=True, text=True)
    assert p.returncode == 0 and "torsion-free" in p.stdout
