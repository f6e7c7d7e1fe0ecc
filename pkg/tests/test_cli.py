import subprocess
import sys

import pytest

from delsarte.cli import main
from delsarte.scheme import hamming_space


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_all(capsys):
    code, out, _ = run(["bound", "--family", "hamming", "--n", "7", "--q", "2", "--d", "3", "--method", "all"], capsys)
    assert code == 0
    lines = out.splitlines()
    header, values = lines[1].split(), lines[2].split()
    table = dict(zip(header, values))
    assert table["lp"] == "16" and table["hamming"] == "16"
    assert table["eb"] != "-" and table["mrrw"] != "-"


def test_bound_dump(capsys):
    code, out, _ = run(["bound", "--family", "hamming", "--n", "8", "--q", "2", "--d", "4", "--method", "mrrw", "--dump"], capsys)
    assert code == 0
    assert "72" in out.splitlines()[2]
    dump = [l for l in out.splitlines() if l and l[0].isdigit() and len(l.split()) == 3]
    assert len(dump) == 9


def test_bound_johnson_halves_distance(capsys):
    code, out, _ = run(["bound", "--family", "johnson", "--n", "8", "--a", "3", "--d", "6", "--method", "hamming"], capsys)
    assert code == 0
    assert "d = 3" in out and "7/2" in out


def test_bound_large_n_mrrw(capsys):
    code, out, _ = run(["bound", "--family", "hamming", "--n", "1024", "--q", "2", "--d", "100", "--method", "mrrw"], capsys)
    assert code == 0 and out.splitlines()[2].split()[-1] != "-"


def test_curve(tmp_path, capsys):
    out = tmp_path / "f.csv"
    svg = tmp_path / "f.svg"
    code, _, _ = run(["curve", "--which", "gv,mrrw1", "--q", "2", "--grid", "101", "--out", str(out), "--svg", str(svg)], capsys)
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "delta,gv,mrrw1_q" and len(rows) == 102
    assert svg.read_text().startswith("<?xml")


def test_scheme_verify(tmp_path, capsys):
    s = hamming_space(3, 2)
    good = tmp_path / "good.txt"
    good.write_text("8 3\n" + "\n".join(" ".join(map(str, r)) for r in s.dist) + "\n")
    code, out, _ = run(["scheme", "verify", str(good)], capsys)
    assert code == 0 and "Q-polynomial in the decreasing-eigenvalue ordering: yes" in out
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1 2\n1 0 1\n1 1 0\n")
    code, _, err = run(["scheme", "verify", str(bad)], capsys)
    assert code == 1 and "not symmetric" in err and "line 2" in err


def test_params(capsys):
    code, out, _ = run(["params", "johnson", "--n", "4", "--a", "2"], capsys)
    assert code == 0 and "Q-polynomial = yes" in out and "-3" in out


def test_oracle_and_sandwich(capsys):
    code, out, _ = run(["oracle", "--family", "hamming", "--n", "7", "--q", "2", "--d", "3"], capsys)
    assert code == 0 and ": 16 (optimal" in out
    code, out, _ = run(["sandwich", "--family", "johnson", "--n", "4", "--a", "2", "--d", "4"], capsys)
    assert code == 0 and out.splitlines()[2].split()[:2] == ["2", "2"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--family", "hamming", "--n", "7", "--q", "2", "--d", "3", "--bogus"],
        ["frobnicate"],
        [],
        ["bound", "--family", "hamming", "--n", "7", "--d", "3"],
        ["bound", "--family", "hamming", "--n", "7", "--q", "2", "--d", "9"],
        ["bound", "--family", "hamming", "--n", "7", "--q", "2", "--d", "1", "--method", "mrrw"],
        ["curve", "--which", "nope", "--out", "x.csv"],
    ],
)
def test_usage_and_domain_errors_exit_1(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1 and err


def test_help_exits_0(capsys):
    code, out, _ = run(["bound", "--help"], capsys)
    assert code == 0 and "halved" in out


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "delsarte.cli", "bound", "--family", "hamming", "--n", "3", "--q", "2", "--d", "3",
         "--method", "lp"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and out.stdout.splitlines()[2].split()[0] == "2"
