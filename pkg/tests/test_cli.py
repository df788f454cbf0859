import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from polarweight.cli import AnalysisReport, dec, main, render_text, run

SCHEMA = json.loads(resources.files("polarweight").joinpath(
    "schema/analysis_report.schema.json").read_text())


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


def test_analyze_cyclic_surface(capsys):
    code, data = call_json(capsys, "analyze", "--family", "cyclic", "--a", "2,3,5", "--b", "1,1,1")
    assert code == 0
    inv = data["invariants"]
    assert inv["chi"] == 29 and inv["zeta"] == [{"m": 29, "e": -1}]
    assert inv["betti"]["2"] == 28 and inv["connectivity"] == 1
    assert data["weights"]["v"] == ["21/29", "13/29", "10/29"]


def test_analyze_not_polar_weighted(capsys):
    code, data = call_json(capsys, "analyze", "--poly", "z1^2*zbar1^2 + z2^2*zbar2^2")
    assert code == 2
    assert data["error"]["kind"] == "NotPolarWeighted"
    assert data["error"]["rows"] == [[0, 0], [0, 0]]
    code, _, err = call(capsys, "analyze", "--poly", "z1^2*zbar1^2 + z2^2*zbar2^2")
    assert code == 2 and "polar weight system is inconsistent" in err


def test_analyze_z_squared_zbar_sum_is_polar(capsys):
    # nu - mu = e_j for both terms: polar type (1, 1; 1)
    code, data = call_json(capsys, "analyze", "--poly", "z1^2*zbar1 + z2^2*zbar2")
    assert code == 0
    assert (data["weights"]["p"], data["weights"]["m_p"]) == ([1, 1], 1)


def test_analyze_single_variable(capsys):
    code, data = call_json(capsys, "analyze", "--poly", "z1^2")
    assert code == 0
    assert data["invariants"]["zeta"] == [{"m": 2, "e": -1}]
    assert data["invariants"]["chi"] == 2
    assert len(data["strata"]) == 1


def test_analyze_non_simplicial_reports_reason(capsys):
    code, data = call_json(capsys, "analyze", "--poly",
                           "z1^2*zbar1 + z1^2*zbar2 + z2^2*zbar2 + z2^2*zbar1")
    assert code == 0
    assert data["invariants"]["available"] is False


@pytest.mark.parametrize("argv", [
    ["analyze", "--poly", "z1^"],
    ["analyze"],
    ["analyze", "--poly", "z1", "--family", "g1", "--a", "2"],
    ["analyze", "--family", "g1", "--a", "1,x"],
    ["analyze", "--family", "g1", "--a", "0,2"],
    ["analyze", "--family", "brieskorn", "--a", "1,2"],
    ["analyze", "--family", "sigma", "--a", "2,2"],
    ["isolated", "--family", "cyclic", "--a", "2,2", "--b", "1,1"],
    ["verify", "--poly", "z1^2", "--tol", "0.5"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_one(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 1 and "error" in err


def test_verify_g1_passes(capsys):
    code, data = call_json(capsys, "verify", "--family", "g1", "--a", "2,2,2",
                           "--samples", "500", "--seed", "7")
    assert code == 0 and data["verification"]["pass"]
    names = {c["name"] for c in data["verification"]["checks"]}
    assert names == {"functional_equation", "euler_radial", "euler_polar", "monodromy",
                     "projection", "torus_diffeo"}


def test_verify_tight_tolerance(capsys):
    code, data = call_json(capsys, "verify", "--poly", "z1^2*zbar2+z2^3", "--tol", "1e-12",
                           "--samples", "5")
    assert code == 0
    assert all(c["max_relative_residual"] < 1e-12 for c in data["verification"]["checks"])


@pytest.mark.parametrize("which", ["q1", "p1", "m_r", "m_p"])
def test_verify_corrupted_weight_fails(capsys, which):
    code, data = call_json(capsys, "verify", "--family", "g2", "--a", "2,3",
                           "--samples", "50", "--corrupt-weight", which)
    assert code == 3 and not data["verification"]["pass"]


def test_verify_skips_torus_for_non_full(capsys):
    code, data = call_json(capsys, "verify", "--poly", "z1*zbar2", "--samples", "20")
    assert code == 0 and data["verification"]["skipped"] == ["torus_diffeo"]


def test_isolated_examples(capsys):
    code, data = call_json(capsys, "isolated", "--family", "g1", "--a", "1,2")
    assert code == 0 and data["isolated"]["verdict"] == "non-isolated"
    assert data["isolated"]["locus"] and len(data["isolated"]["witness"]) == 2
    _, data = call_json(capsys, "isolated", "--family", "g2", "--a", "2,3")
    assert data["isolated"]["verdict"] == "isolated" and data["isolated"]["witness"] is None
    _, data = call_json(capsys, "isolated", "--family", "sigma", "--perm", "(1 2)(3 4)",
                        "--a", "2,2,2,2")
    assert data["isolated"]["verdict"] == "isolated"
    assert [f["cycle"] for f in data["isolated"]["factors"]] == [[1, 2], [3, 4]]
    assert data["isolated"]["fixed_point_rule_used"] is False


def test_isolated_text(capsys):
    code, out, _ = call(capsys, "isolated", "--family", "g1", "--a", "1,2")
    assert "verdict: non-isolated" in out
    _, out, _ = call(capsys, "isolated", "--family", "sigma", "--perm", "(1 2)", "--a", "2,2,2")
    assert "fixed points" in out and "verdict: isolated" in out


def test_strata_and_zeta_commands(capsys):
    code, data = call_json(capsys, "strata", "--family", "chain", "--a", "2,2,3", "--b", "1,1")
    assert code == 0 and "invariants" not in data
    full = [s["I"] for s in data["strata"] if s["full"]]
    assert full == [[3], [2, 3], [1, 2, 3]]
    code, data = call_json(capsys, "zeta", "--poly", "z1^3 + z2^2")
    assert data["invariants"]["divisor_text"] == "L6 - L3 - L2"
    assert "strata" not in data


def test_big_integers_travel_as_strings(capsys):
    a = "1000003,1000033,1000037"
    code, data = call_json(capsys, "analyze", "--family", "brieskorn", "--a", a)
    assert code == 0
    m_p = data["weights"]["m_p"]
    assert isinstance(m_p, str) and dec(m_p) == 1000003 * 1000033 * 1000037


def test_json_round_trip_and_text_determinism(capsys):
    argv = ["analyze", "--family", "chain", "--a", "2,2,3", "--b", "1,1"]
    code, report, _ = run(argv)
    data = json.loads(report.dumps())
    again = AnalysisReport.from_json(data)
    assert again.to_json() == report.to_json()
    assert render_text(data) == report.text() == run(argv)[1].text()
    _, out1, _ = call(capsys, *argv)
    _, out2, _ = call(capsys, *argv)
    assert out1 == out2 == report.text() + "\n"


def test_verify_text_stable_for_seed(capsys):
    argv = ["verify", "--family", "g2", "--a", "2,3", "--samples", "30", "--seed", "4"]
    _, out1, _ = call(capsys, *argv)
    _, out2, _ = call(capsys, *argv)
    assert out1 == out2 and "all checks passed" in out1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polarweight", "zeta", "--poly", "z1^3+z2^2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "(1-t^6)^1" in proc.stdout
