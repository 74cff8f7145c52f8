import json
import subprocess
import sys

import pytest

from modbgg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def result(out):
    return json.loads(out)["result"]


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--group", "gsp4", "--p", "13", "--lambda0", "4,2")
    assert code == 0
    fam = result(out)["family"]
    assert fam["lambda2"] == [14, 6] and fam["mu2"] == [14, -8]


def test_envelope_has_no_timestamp(capsys):
    _, out, _ = run(capsys, "orbit", "--lambda0", "4,2")
    data = json.loads(out)
    assert set(data) == {"meta", "result"}
    assert set(data["meta"]) == {"command", "version"}


def test_weyl_dimension(capsys):
    code, out, _ = run(capsys, "char", "weyl", "--group", "gsp4", "--lambda", "1,0")
    assert code == 0 and result(out)["dimension"] == 4


@pytest.mark.parametrize("target", ["euler", "lemma39"])
def test_euler_identity_cell_reports_literal_values(capsys, target):
    code, out, _ = run(capsys, "verify", target, "--p", "13", "--lambda0", "4,2")
    res = result(out)
    assert res["n"] == 1
    assert res["diffs"] == [11, 6, 11, 5]
    assert res["euler_combinations"] == [0, 1]
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["orbit", "--p", "12", "--lambda0", "4,2"],
    ["orbit", "--p", "5", "--lambda0", "1,0"],
    ["orbit"],
    ["orbit", "--lambda0", "4,2,1"],
    ["orbit", "--lambda0", "x,y"],
    ["bgg", "build", "--lambda0", "4,2", "--alcove", "3"],
    ["decompose", "--lambda", "30,6"],
    ["verify", "42"],
    ["amplitude", "run", "nope"],
    ["amplitude", "run"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code = main(argv)
    _, err = capsys.readouterr()
    assert code == 2
    assert "error" in err


def test_bgg_verify(capsys):
    for argv in (["--group", "gl3", "--lambda0", "5,3,1"], ["--lambda0", "4,2", "--alcove", "2"]):
        code, out, _ = run(capsys, "bgg", "verify", *argv)
        assert code == 0 and result(out)["pass"]


def test_bgg_sweep(capsys):
    code, out, _ = run(capsys, "bgg", "verify", "--lambda0", "sweep", "--p", "11", "--alcove", "1")
    res = result(out)
    assert code == 0 and res["cells"] == 20 and res["passed"] == 20


def test_dual_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "bgg", "build", "--lambda0", "4,2", "--alcove", "2")
    total = result(out)["total"]
    src = tmp_path / "c.json"
    src.write_text(json.dumps(total))
    _, once, _ = run(capsys, "dual", "--input", str(src))
    src.write_text(json.dumps(result(once)))
    _, twice, _ = run(capsys, "dual", "--input", str(src))
    assert result(twice)["degrees"] == total["degrees"]


def test_amplitude(capsys):
    code, out, _ = run(capsys, "amplitude", "run", "gl3_concentration", "--format", "text")
    assert code == 0 and out.startswith("scenario gl3_concentration: PASS")
    code, out, _ = run(capsys, "amplitude", "run", "gl3_concentration", "--drop", "inj_theta")
    assert code == 1 and result(out)["report"]["supports"]["dR"] == [1, 2]
    code, out, _ = run(capsys, "amplitude", "run", "gsp4_c1")
    assert code == 0 and result(out)["verdict"] == "CONDITIONAL PASS"
    code, out, _ = run(capsys, "amplitude", "run", "gsp4_entailment", "--minimality")
    assert all(r["breaks_scenario"] for r in result(out)["minimality"])


def test_diagram_output(capsys, tmp_path):
    target = tmp_path / "a.svg"
    code, out, _ = run(capsys, "diagram", "--lambda0", "4,2", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("<svg")


def test_config_defaults(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"group": "gl3", "primes": [11], "lambda0": [5, 3, 1]}))
    code, out, _ = run(capsys, "--config", str(cfg), "orbit")
    assert code == 0 and result(out)["family"]["lambda1"] == [10, 3, -4]
    code, out, _ = run(capsys, "--config", str(cfg), "orbit", "--p", "13")
    assert result(out)["family"]["lambda1"] == [12, 3, -6]
    cfg.write_text(json.dumps({"primes": [9]}))
    assert run(capsys, "--config", str(cfg), "orbit", "--lambda0", "4,2")[0] == 2
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(capsys, "--config", str(cfg), "orbit", "--lambda0", "4,2")[0] == 2


def test_alcove_subcommands(capsys):
    code, out, _ = run(capsys, "alcove", "sweep", "--p", "11")
    assert code == 0 and result(out)["count"] == 20
    code, out, _ = run(capsys, "alcove", "classify", "--lambda", "14,6", "--eps", "2")
    res = result(out)
    assert res["alcove_index"] == 2 and res["eps_generic"] is False
    code, out, _ = run(capsys, "alcove", "orbit", "--group", "gl3", "--lambda", "5,3,1")
    assert result(out)["family"]["nu1"] == [2, -7, 14]


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0


def test_verify_single_criterion(capsys):
    code, out, _ = run(capsys, "verify", "1", "--format", "text")
    assert code == 0 and out.startswith("[PASS]  1.")


def test_byte_identical_runs():
    cmd = [sys.executable, "-m", "modbgg.cli", "bgg", "build", "--lambda0", "4,2", "--alcove", "2"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_console_script_installed():
    out = subprocess.run(["modbgg", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip()
