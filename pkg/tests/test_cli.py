import json
import math
import subprocess
import sys

import pytest

from plategap.cli import ConfigError, main, parse_forces, parse_number, parse_reinforcements


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_number():
    assert parse_number("pi/150") == pytest.approx(math.pi / 150)
    assert parse_number("2*pi") == pytest.approx(2 * math.pi)
    assert parse_number("0.25") == 0.25
    with pytest.raises(ConfigError):
        parse_number("__import__('os')")


def test_parse_forces():
    fs = parse_forces("sin:1..3,delta:pi/2,eigen:2,sinh:1:100.5")
    assert [f.label for f in fs[:3]] == ["f1", "f2", "f3"]
    assert len(fs) == 6
    with pytest.raises(ConfigError):
        parse_forces("sin:0")
    with pytest.raises(ConfigError):
        parse_forces("wave:3")
    with pytest.raises(ConfigError):
        parse_forces("")


def test_parse_reinforcements():
    Ds = parse_reinforcements("none,cross:0..5,trusses", 0.3, 0.01)
    assert [d.label for d in Ds] == ["∅", "D0", "D1", "D2", "D3", "D4", "D5",
                                     "Strips", "Triangles", "Squares", "Hexagons"]
    with pytest.raises(ConfigError):
        parse_reinforcements("cross:x", 0.3, 0.01)
    with pytest.raises(ConfigError):
        parse_reinforcements("blob", 0.3, 0.01)


def test_gap_command(capsys):
    code, out, _ = run(capsys, "gap", "--force", "sin:1", "--reinforcement", "none", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["max_gap"] * 1e4 == pytest.approx(65.444, abs=5e-4)
    assert rec["argmax"] == pytest.approx(math.pi / 2, abs=1e-9)


def test_solve_even_test_force(capsys):
    code, out, _ = run(capsys, "solve", "--force", "even-test", "--reinforcement", "cross:1", "--terms", "8")
    assert code == 0
    rec = json.loads(out)
    assert rec["max_gap"] < 1e-12
    assert "wall_time" not in rec


def test_optimize_command(capsys, tmp_path):
    code, out, _ = run(capsys, "optimize", "--class-d", "none,cross:0..5", "--class-f", "sin:1..10",
                       "--format", "json", "--out", str(tmp_path))
    assert code == 0
    last = json.loads(out.strip().splitlines()[-1])
    assert last["optimum"] == ["f1", "D0"]
    assert last["value"] * 1e4 == pytest.approx(47.113, rel=5e-3)
    assert (tmp_path / "minimax.json").exists()


def test_table_command_writes_files(capsys, tmp_path):
    code, out, _ = run(capsys, "table", "1a", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "table_1a.csv").exists() and (tmp_path / "table_1a_diff.csv").exists()
    assert "66/70" in out


def test_scan_command(capsys):
    code, out, _ = run(capsys, "scan", "--z", "pi/4,pi/2", "--terms", "500")
    assert code == 0
    assert out.splitlines()[0] == "z,normalized,raw"
    assert len(out.splitlines()) == 3


@pytest.mark.parametrize("argv,code,kind", [
    (("gap", "--force", "bogus", "--reinforcement", "none"), 2, "ConfigError"),
    (("gap", "--force", "sin:1", "--reinforcement", "none", "--sigma", "1.5"), 2, "ConfigError"),
    (("scan", "--z", "4"), 2, "ConfigError"),
    (("gap", "--force", "sin:1", "--reinforcement", "cross:1", "--mu", "3"), 2, "DomainError"),
    (("solve", "--force", "eigen:3000", "--reinforcement", "none"), 2, "ConfigError"),
    (("nonsense",), 2, "UsageError"),
])
def test_errors_are_json(capsys, argv, code, kind):
    got, out, err = run(capsys, *argv)
    assert got == code
    rec = json.loads(err.strip().splitlines()[-1])
    assert rec["error"] == kind
    assert rec["message"]


def test_config_file_errors_report_line(capsys, tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text('{\n  "sigma": 0.2,\n  "colour": "red"\n}\n')
    code, _, err = run(capsys, "gap", "--config", str(p), "--force", "sin:1", "--reinforcement", "none")
    assert code == 2
    rec = json.loads(err)
    assert rec["line"] == 3 and rec["field"] == "colour"
    p.write_text('{\n  "sigma": 0.2,\n  "d": \n}\n')
    code, _, err = run(capsys, "gap", "--config", str(p), "--force", "sin:1", "--reinforcement", "none")
    assert code == 2 and json.loads(err)["line"] == 4


def test_config_file_values_used(capsys, tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"force": "sin:1", "reinforcement": "cross:0", "d": 0}))
    code, out, _ = run(capsys, "gap", "--config", str(p), "--format", "json")
    assert code == 0
    assert json.loads(out)["max_gap"] * 1e4 == pytest.approx(65.444, abs=5e-4)


def test_reruns_are_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "plategap", "optimize", "--class-d", "none,cross:0..2", "--class-f", "sin:1..4",
           "--terms", "60", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True, env={"PLATEGAP_THREADS": "3", "PATH": ""}).stdout
    assert a == b
