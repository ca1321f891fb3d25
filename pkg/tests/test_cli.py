import json
import subprocess
import sys

import pytest

from holoforms.cli import main

SCHEMA = {"suite", "seed", "checks", "summary", "elapsed_ms"}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "list")
    names = out.split()
    assert code == 0
    assert "eigen-decompositions" in names and "all" in names and "cone:NK6toG2Cone" in names


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "eigen-decompositions", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert set(data) == SCHEMA
    assert set(data["summary"]) == {"pass", "fail", "mismatch"}
    assert data["elapsed_ms"] == 0
    assert {"id", "status", "lhs", "rhs", "anchor"} <= set(data["checks"][0])


def test_env_var_sets_default_format(capsys, monkeypatch):
    monkeypatch.setenv("HOLOFORMS_FORMAT", "json")
    _, out, _ = run(capsys, "verify", "growth")
    assert json.loads(out)["suite"] == "growth"
    _, out, _ = run(capsys, "verify", "growth", "--format", "text")
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_mismatch_does_not_fail_the_run(capsys):
    code, out, _ = run(capsys, "verify", "potentials", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["fail"] == 0 and data["summary"]["mismatch"] >= 2


def test_small_suite_is_deterministic(capsys):
    argv = ("verify", "gauge-g2", "--seed", "5", "--samples", "3", "--format", "json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    _, other, _ = run(capsys, "verify", "gauge-g2", "--seed", "6", "--samples", "3", "--format", "json")
    assert json.loads(other)["seed"] == 6


def test_timing_flag_records_time(capsys):
    _, out, _ = run(capsys, "verify", "eigen-decompositions", "--format", "json", "--timing")
    assert json.loads(out)["elapsed_ms"] >= 0


def test_output_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    _, out, _ = run(capsys, "verify", "growth", "--format", "json", "--output", str(path))
    assert path.read_text() == out


@pytest.mark.parametrize("argv", [
    ("verify", "nonsense"),
    ("verify", "growth", "--samples", "0"),
    ("verify", "growth", "--axes", "2"),
    ("decompose", "e9", "--structure", "g2"),
    ("decompose", "e01 +", "--structure", "g2"),
    ("decompose", "e0", "--structure", "g2"),
    ("cone", "Nope"),
    ("cone", "NK6toG2Cone", "--solve", "r $"),
    ("frobnicate",),
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_decompose_g2_e01(capsys):
    code, out, _ = run(capsys, "decompose", "e01", "--structure", "g2", "--axes", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["components"]["7"] == "1/3 e01 - 1/3 e36 - 1/3 e45"
    assert data["components"]["14"] == "2/3 e01 + 1/3 e36 + 1/3 e45"
    assert set(data["residuals"].values()) == {"0"}


def test_decompose_kaehler_form(capsys):
    code, out, _ = run(capsys, "decompose", "e12+e34+e56", "--structure", "cy3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["alpha0"] == "1" and data["axes"] == 1


def test_decompose_zero(capsys):
    code, out, _ = run(capsys, "decompose", "0", "--structure", "spin7", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert set(data["components"].values()) == {"0"}


def test_cone_solve_and_classify(capsys):
    code, out, _ = run(capsys, "cone", "NK6toG2Cone", "--solve", "phi", "--ansatz", "omega@0:4",
                       "--classify", "r^5*omega", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["solve"]["potential"] == "1/3*r^3*omega"
    assert data["solve"]["growth"] == "linear"
    assert data["classify"]["class"] == "polynomial(3)"


def test_cone_not_closed_exits_one(capsys):
    code, out, _ = run(capsys, "cone", "NK6toG2Cone", "--solve", "r^2*omega", "--format", "json")
    assert code == 1
    assert json.loads(out)["solve"]["error"] == "not closed"


def test_cone_preset_report(capsys):
    code, out, _ = run(capsys, "cone", "SasakianKaehlerCone")
    assert code == 0 and "SasakianKaehlerCone" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "holoforms.cli", "verify", "list"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "gauge-g2" in res.stdout
