import io
import json
import subprocess
import sys

import pytest

from riskdist.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_map_uniform_anchor():
    code, text = call("map", "--family", "beta", "--mean", "0.5", "--cstat", "0.8333333333", "--json")
    rec = json.loads(text)
    assert code == 0
    assert rec["schema_version"] == 1
    assert rec["p1"] == pytest.approx(1, abs=1e-6) and rec["p2"] == pytest.approx(1, abs=1e-6)
    assert rec["converged"] is True


def test_map_low_c_is_domain_error(capsys):
    code, _ = call("map", "--family", "beta", "--mean", "0.5", "--cstat", "0.4")
    assert code == 2
    assert "swap the case/control labels" in capsys.readouterr().err


def test_map_nonconvergence_exit_code():
    code, text = call("map", "--family", "logitnorm", "--mean", "0.3", "--cstat", "0.7", "--max-iter", "2")
    assert code == 3
    assert "did not converge" in text


def test_eval_beta13():
    code, text = call("eval", "--family", "beta", "--p1", "1", "--p2", "3", "--json")
    rec = json.loads(text)
    assert code == 0
    assert rec["m"] == pytest.approx(0.25, abs=1e-10)
    assert rec["c"] == pytest.approx(0.785714, abs=1e-6)


@pytest.mark.parametrize("family", ["beta", "logitnorm", "probitnorm", "generic"])
def test_map_then_eval_roundtrip(family):
    code, text = call("map", "--family", family, "--mean", "0.23", "--cstat", "0.71", "--json")
    assert code == 0
    rec = json.loads(text)
    base = rec["family"].split(":")[-1]
    code, text = call("eval", "--family", base, "--p1", repr(rec["p1"]), "--p2", repr(rec["p2"]), "--json")
    back = json.loads(text)
    assert back["m"] == pytest.approx(0.23, abs=1e-6)
    assert back["c"] == pytest.approx(0.71, abs=1e-6)


def test_json_numbers_roundtrip_17_digits():
    _, text = call("eval", "--family", "probitnorm", "--p1", "-0.3", "--p2", "1.1", "--json")
    rec = json.loads(text)
    for key in ("m", "c"):
        assert float(f"{rec[key]:.17g}") == rec[key]


def test_text_output():
    code, text = call("eval", "--family", "beta", "--p1", "2", "--p2", "2")
    assert code == 0
    assert "m: 0.5" in text


@pytest.mark.parametrize(
    "argv",
    [["map", "--bogus"], ["eval", "--family", "beta", "--p1", "x", "--p2", "1"], ["frobnicate"], []],
)
def test_usage_errors_exit_1(argv):
    assert call(*argv)[0] == 1


def test_counterexample():
    code, text = call("counterexample", "--kind", "mode", "--a", "0.2", "--json")
    assert code == 0 and json.loads(text)["verified"] is True
    code, text = call("counterexample", "--kind", "median", "--a", "0.1")
    assert code == 0 and "verified: True" in text
    assert call("counterexample", "--kind", "median", "--a", "0.25")[0] == 2


def test_grid_byte_identical(tmp_path):
    args = ["grid", "--families", "beta", "probitnorm", "--m-from", "0.2", "--m-to", "0.3", "--m-step", "0.1",
            "--c-from", "0.7", "--c-to", "0.8", "--c-step", "0.1", "--se", "0.01", "--seed", "4"]
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    assert call(*args, "--out", str(a))[0] == 0
    assert call(*args, "--out", str(b))[0] == 0
    assert call(*args, "--out", str(c), "--jobs", "2")[0] == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "family,m,c,p1,p2,n,m_hat,c_hat,dm,dc,converged,seed"
    assert len(lines) == 1 + 2 * 2 * 2


def test_grid_partial_axis_is_domain_error():
    assert call("grid", "--m-from", "0.1", "--out", "-")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "riskdist", "eval", "--family", "beta", "--p1", "1", "--p2", "1",
                           "--json"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["c"] == pytest.approx(5 / 6, abs=1e-10)
