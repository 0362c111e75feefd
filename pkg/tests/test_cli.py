import json
import math

import subprocess
import sys

import pytest

from copos.cli import main
from copos.report import Report
from golden import run_cli

QUARTIC = '{"a":1,"b":0,"c":0,"d":0,"e":1}'
T2 = {"dim": 2, "entries": [{"idx": [1, 1, 1, 1], "val": 1}, {"idx": [2, 2, 2, 2], "val": 4}, {"idx": [1, 1, 2, 2], "val": "-5/6"}]}
VAC = {"lambda1": 1, "lambda2": 1, "lambdaS": 1, "lambda3": -4, "lambda4": 0, "lambdaS1": 0, "lambdaS2": 0, "absLambdaS12": 0, "rho": 0}


def test_json_reports_round_trip():
    cases = [
        ("check-quartic", QUARTIC),
        ("check-quartic", '{"a":0,"b":1,"c":0,"d":0,"e":0}'),
        ("check-tensor2", json.dumps(T2)),
        ("check-vacuum", json.dumps(VAC)),
        ("sweep-rho", json.dumps(VAC)),
        ("oracle", json.dumps(T2)),
    ]
    for cmd, doc in cases:
        for mode in ("float", "exact", "both"):
            args = [cmd, "--inline", doc, "--mode", mode, "--samples", "2000", "--rho-grid", "5"] if cmd == "sweep-rho" else [
                cmd, "--inline", doc, "--mode", mode, "--samples", "2000"]
            code, rep = run_cli(*args)
            assert code in (0, 1, 2)
            parsed = Report.model_validate_json(json.dumps(rep))
            assert parsed.model_dump(mode="json") == rep


def test_exit_codes():
    assert run_cli("check-quartic", "--inline", QUARTIC)[0] == 0
    assert run_cli("check-quartic", "--inline", '{"a":1,"b":0,"c":-5,"d":0,"e":4}')[0] == 1
    assert run_cli("check-quartic", "--inline", '{"a":1,"b":0,"c":-2,"d":0,"e":1}')[0] == 2
    assert run_cli("check-quartic", "--inline", '{"a":1,"b":0,"c":-2,"d":0,"e":1}', "--mode", "exact")[0] == 0
    assert run_cli("check-tensor2", "--inline", json.dumps(T2))[0] == 1
    assert run_cli("check-vacuum", "--inline", json.dumps(VAC))[0] == 1


@pytest.mark.parametrize(
    "args",
    [
        ["check-quartic", "--inline", "{not json"],
        ["check-quartic", "--inline", '{"a":1}'],
        ["check-quartic"],
        ["check-quartic", "--inline", QUARTIC, "--input", "x.json"],
        ["check-tensor2", "--inline", json.dumps({**T2, "dim": 3})],
        ["check-tensor2", "--inline", '{"dim":2,"entries":[{"idx":[1,1,1,9],"val":1}]}'],
        ["check-vacuum", "--inline", '{"rho": 3}'],
        ["check-vacuum", "--input", "/nonexistent/file.json"],
        ["check-vacuum", "--inline", json.dumps(VAC), "--eps", "-1"],
        ["check-vacuum", "--inline", json.dumps(VAC), "--mode", "fuzzy"],
        ["no-such-command"],
    ],
)
def test_input_errors_exit_64(args, capsys):
    assert main(args) == 64
    assert "rror" in capsys.readouterr().err


def test_both_mode_mismatch_only_from_band():
    code, rep = run_cli("check-tensor2", "--inline", json.dumps({"dim": 2, "entries": [
        {"idx": [1, 1, 1, 1], "val": 1}, {"idx": [2, 2, 2, 2], "val": 1}, {"idx": [1, 1, 2, 2], "val": "-1/3"}]}), "--mode", "both")
    assert rep["mismatch"] is True and rep["float_decision"] == "boundary"
    assert rep["decision"] == rep["exact_decision"] == "copositive" and code == 0


def test_mismatch_implies_float_boundary_on_random_inputs():
    import random

    from generators import random_tensor2

    rng = random.Random(41)
    for _ in range(100):
        doc = json.dumps(random_tensor2(rng, positive_diagonal=False).to_json())
        _, rep = run_cli("check-tensor2", "--inline", doc, "--mode", "both")
        if rep["mismatch"]:
            assert rep["float_decision"] == "boundary"


def test_seed_env_override(monkeypatch):
    doc = json.dumps(T2)
    _, a = run_cli("oracle", "--inline", doc, "--samples", "500", "--seed", "1")
    monkeypatch.setenv("COPOS_SEED", "77")
    _, b = run_cli("oracle", "--inline", doc, "--samples", "500", "--seed", "1")
    assert a["oracle"]["seed"] == 1 and b["oracle"]["seed"] == 77
    monkeypatch.setenv("COPOS_SEED", "x")
    assert main(["oracle", "--inline", doc]) == 64


def test_file_input_and_text_format(tmp_path):
    path = tmp_path / "vac.json"
    path.write_text(json.dumps(VAC))
    code, out = run_cli("check-vacuum", "--input", str(path), "--format", "text")
    assert code == 1 and "decision: not_copositive" in out


def test_vacuum_report_has_intermediates():
    _, rep = run_cli("check-vacuum", "--inline", json.dumps(VAC), "--oracle", "--samples", "3000")
    q = rep["quantities"]
    assert set(q["derived_quartic"]) == {"l40", "l31", "l22", "l13", "l04"}
    assert "delta_prime" in q and "m_copositive" in q and "vtilde_copositive" in q
    assert rep["oracle"]["verdict_hint"] == "violation"
    r = 1 / math.sqrt(2)
    assert rep["witness"] == pytest.approx([r, r, 0])


def test_sweep_output():
    code, rep = run_cli("sweep-rho", "--inline", json.dumps({**VAC, "lambda3": -1, "lambda4": -3}), "--rho-grid", "5")
    assert code == 1 and len(rep["points"]) == 5
    assert [p["rho"] for p in rep["points"]] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert rep["points"][0]["decision"] == "copositive" and rep["points"][-1]["decision"] == "not_copositive"


@pytest.mark.parametrize(
    "args,code",
    [
        (["check-quartic", "--inline", QUARTIC], 0),
        (["check-vacuum", "--inline", json.dumps(VAC)], 1),
        (["check-quartic", "--inline", '{"a":1,"b":0,"c":-2,"d":0,"e":1}'], 2),
        (["check-quartic", "--inline", "[]"], 64),
    ],
)
def test_process_exit_status(args, code):
    proc = subprocess.run([sys.executable, "-m", "copos", *args], capture_output=True, text=True)
    assert proc.returncode == code
    if code != 64:
        Report.model_validate_json(proc.stdout)
