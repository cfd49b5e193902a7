import json
import subprocess
import sys

import pytest

from greenmackey.cli import SUBCOMMANDS, main

from conftest import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_subcommands_listed():
    assert set(SUBCOMMANDS) == {"group", "families", "axioms", "frobenius", "dress", "artin", "twisted"}


@pytest.mark.parametrize("argv", [
    ["group", "--group", "S3"],
    ["families", "--group", "A4"],
    ["axioms", "--group", "S3", "--ring", "Z[i]", "--samples", "2"],
    ["frobenius", "--group", "S3", "--samples", "5"],
    ["dress", "--group", "A4"],
    ["artin", "--group", "S4"],
    ["twisted", "--group", "S3", "--ring", "Z[i]", "--samples", "5"],
])
def test_subcommands_pass(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    assert "FAIL" not in out.replace("failed", "")
    assert out.strip().splitlines()[-1].startswith("summary:")


def test_dress_certificate_text(capsys):
    code, out = run(capsys, "dress", "--group", "A4")
    assert code == 0
    assert "{3, 4, 6, 12} -> 1" in out


def test_burnside_hypothesis_failure_exits_zero(capsys):
    code, out = run(capsys, "dress", "--group", "A4", "--functor", "burnside", "--family", "proper")
    assert code == 0
    assert "HYPOTHESIS_FAILURE" in out
    assert "zero mark at the whole group" in out


def test_broken_fixture_exits_one(capsys):
    code, out = run(capsys, "dress", "--functor", str(FIXTURES / "s3_broken_ind.json"), "--family", "all")
    assert code == 1
    assert "FAIL" in out and "axiom 7" in out


@pytest.mark.parametrize("argv", [
    ["group", "--group", "X9"],
    ["group", "--group", str(FIXTURES / "bad_group.json")],
    ["dress", "--group", "A4", "--coeff", "Zp:4"],
    ["dress", "--group", "A4", "--family", "nope"],
    ["axioms", "--group", "S3", "--ring", "Q[x]"],
    ["frobenius", "--group", "S3", "--subgroups", "99"],
])
def test_input_errors_exit_two(capsys, argv):
    code = main(argv)
    capsys.readouterr()
    assert code == 2


def test_bad_config_key_exits_two(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"command": "group", "colour": "red"}))
    code = main(["group", "--config", str(cfg)])
    capsys.readouterr()
    assert code == 2


def test_fixed_seed_is_byte_identical(capsys):
    argv = ["axioms", "--group", "S3", "--ring", "Z[i]", "--samples", "3", "--seed", "11", "--format", "json"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b


def test_json_report_shape(capsys):
    code, out = run(capsys, "artin", "--group", "S3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["tool"] == "greenmackey"
    assert data["summary"]["failed"] == 0
    assert data["config"]["group"] == "S3"
    assert all(c["status"] in ("pass", "fail", "hypothesis_failure") for c in data["checks"])


def test_config_file_and_out(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"group": "S3", "samples": 2, "format": "json"}))
    target = tmp_path / "report.json"
    code = main(["artin", "--config", str(cfg), "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    data = json.loads(target.read_text())
    assert data["config"]["samples"] == 2


def test_empty_suite(capsys):
    code, out = run(capsys, "frobenius", "--group", "S3", "--subgroups", "0")
    assert code == 0
    assert "summary: 0 checks, 0 failed" in out


def test_swan_runs_for_tate(capsys):
    code, out = run(capsys, "dress", "--group", "S3", "--functor", "tate")
    assert code == 0
    assert "swan vanishing" in out


def test_entry_point_module():
    proc = subprocess.run([sys.executable, "-m", "greenmackey.cli", "artin", "--group", "C2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "summary:" in proc.stdout


def test_timing_is_opt_in(capsys):
    _, plain = run(capsys, "artin", "--group", "S3", "--format", "json")
    _, timed = run(capsys, "artin", "--group", "S3", "--format", "json", "--timing")
    assert "seconds" not in plain
    data = json.loads(timed)
    assert all(c["seconds"] >= 0 for c in data["checks"])
    assert data["summary"]["seconds"] >= 0
