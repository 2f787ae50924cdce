import json
import os
import subprocess

import pytest

BIN = os.environ.get("FROGSIM_BIN")

pytestmark = pytest.mark.skipif(BIN is None, reason="FROGSIM_BIN not set")


def run(*args, **kw):
    return subprocess.run([BIN, *args], capture_output=True, text=True, **kw)


def test_bad_probability_is_a_config_error():
    res = run("run", "--m", "5", "--p", "1.5", "--trials", "10")
    assert res.returncode == 2


def test_zero_trials_is_a_config_error():
    res = run("run", "--m", "5", "--p", "0.5", "--trials", "0")
    assert res.returncode == 2


def test_missing_required_flag_is_a_config_error():
    res = run("run", "--p", "0.5")
    assert res.returncode == 2


def test_oracle_vinf_pin():
    res = run("oracle", "vinf", "--m", "3", "--p", "0.5", "--eta", "constant:1")
    assert res.returncode == 0
    values = [float(line.split("=")[-1]) for line in res.stdout.strip().splitlines()]
    assert values == pytest.approx([1 / 4, 7 / 27, 53 / 108], abs=1e-8)


def test_oracle_coupon():
    res = run("oracle", "coupon", "--n", "2")
    assert res.returncode == 0
    assert "E(tau) = 3" in res.stdout
    assert "Var(tau) = 2" in res.stdout


def test_oracle_extinct():
    res = run("oracle", "extinct", "--pmf", "0.1,0.45,0.45")
    assert res.returncode == 0
    value = float(res.stdout.split("=")[-1])
    assert value == pytest.approx(2 / 9, abs=1e-8)


def test_run_succeeds_and_reports_estimate(tmp_path):
    out = tmp_path / "row.csv"
    res = run(
        "run", "--m", "8", "--p", "0.6", "--eta", "bernoulli:0.5",
        "--trials", "500", "--seed", "5", "--out", str(out),
    )
    assert res.returncode == 0
    assert "p_hat=" in res.stdout
    lines = out.read_text().splitlines()
    assert lines[0].startswith("n,alpha,p_n,event")
    assert len(lines) == 2


def test_sweep_rerun_is_byte_identical(tmp_path):
    config = {
        "n_values": [64, 128],
        "alpha_values": [0.5, 2.0],
        "eta": {"kind": "constant", "params": {"value": 1}},
        "trials": 200,
        "seed": 99,
    }
    cfg = tmp_path / "sweep.json"
    cfg.write_text(json.dumps(config))
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    r1 = run("sweep", str(cfg), "--out", str(out1), "--threads", "1")
    r2 = run("sweep", str(cfg), "--out", str(out2), "--threads", "4")
    assert r1.returncode == 0 and r2.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    meta = json.loads((tmp_path / "a.csv.meta.json").read_text())
    assert meta["rows"] == 4
    assert meta["seed"] == 99


def test_sweep_rejects_unknown_config_key(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"n_values": [16], "alpha_values": [1.0],
                               "eta": {"kind": "constant", "params": {"value": 1}},
                               "surprise": True}))
    res = run("sweep", str(cfg), "--out", str(tmp_path / "x.csv"))
    assert res.returncode == 2
