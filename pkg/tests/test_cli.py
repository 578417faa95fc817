import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from luroth import __version__
from luroth.cli import load_schema, main, validate_report

CONIC = "3*x*y - 4*x*z + y*z"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out), out


def test_invariants_fermat(capsys):
    code, rep, _ = run_json(capsys, "invariants", "x^4+y^4+z^4")
    assert code == 0
    r = rep["result"]
    assert r["cubic_invariant"] == "1" and r["clebsch_invariant"] == "0"
    assert r["trilinear_fff"] == "864" and r["catalecticant_rank"] == 3
    assert rep["input"]["coefficients"][0] == "1" and rep["fields"] == {"working": "q"}


def test_invariants_text(capsys):
    code, out, _ = run(capsys, "invariants", "x0^3*x1 + x1^3*x2 + x2^3*x0", "--field", "p:101")
    assert code == 0 and "rank_L_f: 15" in out


def test_detect_klein_is_deterministic(capsys):
    code, rep, raw = run_json(capsys, "detect", "@klein", "--verify-primes", "1")
    assert code == 0
    assert rep["result"]["tag"] == "NotLuroth"
    assert rep["result"]["diagnostics"]["singular_locus"] == {"dimension": 0, "degree": 28}
    assert rep["fields"] == {"working": "p:65521", "verification": ["p:65519"]}
    assert "timings" not in rep
    _, _, raw2 = run_json(capsys, "detect", "@klein", "--verify-primes", "1")
    assert raw == raw2


def test_timings_flag(capsys):
    code, rep, _ = run_json(capsys, "invariants", "@fermat", "--timings")
    assert code == 0 and rep["timings"]["total_seconds"] >= 0


def test_wm_desmic_double_quadric(capsys):
    code, rep, _ = run_json(capsys, "wm", "@desmic")
    assert code == 0
    assert rep["result"]["rank_L_f"] == 14 and rep["result"]["double_quadric"] is True


def test_bitangents_klein_points(capsys):
    code, rep, _ = run_json(capsys, "bitangents", "@klein", "--eliminant", "--points")
    assert code == 0
    r = rep["result"]
    assert r["hilbert"]["degree"] == 28 and r["eliminant"]["degree"] == 28
    assert r["eliminant"]["squarefree"] and all(p["verified"] for p in r["points"])


def test_pentalateral_with_known_conic(capsys):
    code, rep, _ = run_json(capsys, "pentalateral", "@luroth", "--conic", CONIC)
    assert code == 0
    p = rep["result"]["pentalateral"]
    assert len(p["lines"]) == 5 and p["vertices_on_curve"] is True


def test_pentalateral_rejects_wrong_conic(capsys):
    code, rep, _ = run_json(capsys, "pentalateral", "@luroth", "--conic", "x^2+y^2-z^2")
    assert code == 1 and rep["error"]["type"] == "PentalateralError"


def test_plot_with_pentalateral(tmp_path, capsys):
    path = tmp_path / "fig.svg"
    code, out, _ = run(
        capsys, "plot", "@luroth", "--conic", CONIC, "--with-pentalateral", "--svg", str(path), "--resolution", "60"
    )
    assert code == 0 and "wrote" in out
    root = ET.parse(path).getroot()
    classes = [el.get("class") for el in root.iter() if el.get("class")]
    # z = 0 is the line at infinity of the default chart
    assert "curve" in classes and "conic" in classes and classes.count("line") == 4


def test_plot_to_stdout(capsys):
    code, out, _ = run(capsys, "plot", "@klein", "--resolution", "30", "--window=-2,2,-2,2")
    assert code == 0 and out.startswith("<svg")


def test_parse_error_reports_position(capsys):
    code, rep, _ = run_json(capsys, "invariants", "x^4 + w^4")
    assert code == 1
    assert rep["error"]["type"] == "parse_error" and rep["error"]["position"] == 6
    code, out, err = run(capsys, "invariants", "x^4 + w^4")
    assert code == 1 and "^" in err


def test_inhomogeneous_input(capsys):
    code, rep, _ = run_json(capsys, "detect", "x^3 + y^4")
    assert code == 1 and rep["error"]["type"] == "parse_error"


def test_budget_exit_code(capsys):
    code, rep, _ = run_json(capsys, "detect", "@klein", "--budget", "10")
    assert code == 2 and rep["error"]["type"] == "resource_limit"


@pytest.mark.parametrize(
    "argv",
    [["frobnicate", "x^4"], ["detect"], ["detect", "@nosuch"], ["detect", "@klein", "--field", "p:3"],
     ["plot", "@klein", "--window", "1,0,0,1"], ["invariants", "@klein", "--field", "p:15"]],
)
def test_usage_and_configuration_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("luroth: ")


def test_schema_rejects_malformed_report():
    import jsonschema

    schema = load_schema()
    assert schema["$schema"].endswith("2020-12/schema")
    with pytest.raises(jsonschema.ValidationError):
        validate_report({"schema_version": "1.0", "command": "detect"})


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "luroth.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and __version__ in out.stdout
