import csv
import io
import json
import subprocess
import sys

import pytest

from strongnash.cli import main

from conftest import GAMES

LINE3, PD, THREE, PENNIES = (str(GAMES / f) for f in ("line3x3.game", "pd.game", "three_player.game", "matching_pennies.game"))
HALF3 = "1/2,1/2;1/2,1/2;1/2,1/2"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_pd_nonexistence(capsys):
    code, out, _ = run(capsys, "solve", PD, "--mode", "strong")
    assert code == 1
    assert out.startswith("NonExistence")


def test_solve_line3_json(capsys):
    code, out, _ = run(capsys, "solve", LINE3, "--mode", "super", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["outcome"] == "SNE"
    assert data["witness"] == [["1/2", "1/3", "1/6"]] * 2
    assert data["values"] == ["0", "0"]
    assert data["coalitions"]["{1,2}"]["verdict"] == "Efficient"
    assert data["diagnostics"]["condition1_hit"] is True


def test_solve_pd_json_diagnostics(capsys):
    code, out, _ = run(capsys, "solve", PD, "--json")
    d = json.loads(out)["diagnostics"]
    assert code == 1
    assert d["condition1_hit"] is False and d["condition2_hit"] is False
    assert d["supports_enumerated"] == 0


def test_check_three(capsys):
    code, out, _ = run(capsys, "check", THREE, "--profile", HALF3, "--k", "3", "--mode", "super", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["overall"] == "Efficient" and data["is_nash"] is True
    assert data["values"] == ["1/2"] * 3
    assert data["dominated_outcome"]["payoff"] == ["0", "0", "0"]


def test_check_text_and_dominated(capsys):
    code, out, _ = run(capsys, "check", PD, "--profile", "0,1;0,1")
    assert code == 1
    assert out.startswith("Dominated")
    code, out, _ = run(capsys, "check", PD, "--profile", "1,0;1,0")
    assert code == 1
    assert "not a Nash equilibrium" in out


def test_classify_line3(capsys):
    code, out, _ = run(capsys, "classify", LINE3)
    assert code == 0
    assert "NegativeSlope(-2) through origin" in out
    assert "strictly competitive: true" in out


def test_nash_pennies(capsys):
    code, out, _ = run(capsys, "nash", PENNIES, "--enumerate-supports", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["pure"] == []
    assert data["supports"][-1]["profile"] == [["1/2", "1/2"], ["1/2", "1/2"]]


@pytest.mark.parametrize("argv", [
    ["solve"],
    ["frobnicate", LINE3],
    ["solve", LINE3, "--mode", "medium"],
    ["solve", THREE],
    ["check", PD, "--profile", "1/2,1/2"],
    ["check", PD, "--profile", "1,0;1,0", "--k", "5"],
    ["solve", LINE3, "--grid", "abc"],
    ["bench", "--sizes", "9:2"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 64


def test_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.game"
    bad.write_text("players 2\ndims 2 2\npayoffs 1\n1 x\n")
    assert run(capsys, "solve", str(bad))[0] == 65
    assert run(capsys, "solve", str(tmp_path / "missing.game"))[0] == 65


def test_bench_csv_reproducible(capsys, tmp_path):
    outs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        code, _, _ = run(capsys, "bench", "--sizes", "2:3", "--trials", "5", "--seed", "7",
                         "--no-timing", "--out", str(path))
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    rows = list(csv.DictReader(io.StringIO(outs[0].decode())))
    assert [(r["m1"], r["m2"]) for r in rows] == [("2", "2"), ("3", "3")]
    assert all(r["trials"] == "5" for r in rows)


def test_bench_pd_base(capsys):
    code, out, _ = run(capsys, "bench", "--base", PD, "--trials", "1", "--sigma", "0")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["nonexistence"] == "1"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "strongnash", "classify", LINE3],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "NegativeSlope(-2)" in proc.stdout
