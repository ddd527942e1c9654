import json
import os
import pathlib
import subprocess

import pytest

CLI = os.environ.get("JACOBI_LAB_CLI")
SOURCE = pathlib.Path(os.environ.get("JACOBI_LAB_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
CONFIGS = SOURCE / "configs"

pytestmark = pytest.mark.skipif(not CLI, reason="JACOBI_LAB_CLI not set")


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, timeout=600)


def test_classify_summary(tmp_path):
    r = run("classify", "--config", CONFIGS / "m1_squares.json", "--out", tmp_path)
    assert r.returncode == 0, r.stderr
    assert r.stdout.splitlines()[0] == "T1(ii): lcc, exponent 0.5"
    report = json.loads((tmp_path / "classification.json").read_text())
    assert report["classification"]["regime"] == "lcc"
    assert "input_hash" in report


def test_first_order_exceptional_is_undetermined():
    r = run("classify", "--config", CONFIGS / "exceptional_first_order.json")
    assert r.returncode == 0, r.stderr
    assert r.stdout.startswith("Undetermined: second-order asymptotic data")


def test_malformed_json_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"beta1": 2,')
    assert run("classify", "--config", bad).returncode == 2


def test_empty_config_is_usage_error(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    r = run("verify", "--config", empty)
    assert r.returncode == 2
    assert "usage" in r.stderr


def test_outputs_do_not_depend_on_jobs(tmp_path):
    for sub in ("spectrum", "growth"):
        a, b = tmp_path / f"{sub}1", tmp_path / f"{sub}4"
        assert run(sub, "--config", CONFIGS / "m1_squares.json", "--out", a, "--jobs", 1).returncode == 0
        assert run(sub, "--config", CONFIGS / "m1_squares.json", "--out", b, "--jobs", 4).returncode == 0
        names = sorted(p.name for p in a.iterdir())
        assert names == sorted(p.name for p in b.iterdir())
        for n in names:
            assert (a / n).read_bytes() == (b / n).read_bytes(), n


def test_sequence_input(tmp_path):
    r = run("spectrum", "--config", CONFIGS / "m5_free.json", "--out", tmp_path)
    assert r.returncode == 0, r.stderr
    s = json.loads((tmp_path / "spectrum.json").read_text())
    assert "sequence_hash" in s
    assert (tmp_path / "spectrum_N1000.csv").read_text().startswith("index,lambda\n")


def test_corrupted_golden_fails_with_diff(tmp_path):
    golden = json.loads((SOURCE / "golden" / "classification_table.json").read_text())
    golden[0]["expected"]["regime"] = "lcc"
    (tmp_path / "golden.json").write_text(json.dumps(golden))
    (tmp_path / "verify.json").write_text(json.dumps({"golden": "golden.json"}))
    r = run("verify", "--config", tmp_path / "verify.json", "--out", tmp_path)
    assert r.returncode == 1
    line = next(l for l in r.stdout.splitlines() if " 01 " in l)
    assert line.startswith("[FAIL]")
    assert "regime" in line
    assert (tmp_path / "verify.xml").exists()


def test_verify_passes():
    r = run("verify", "--config", CONFIGS / "verify.json")
    assert r.returncode == 0, r.stdout
    assert r.stdout.splitlines()[-1] == "14/14 checks passed"
