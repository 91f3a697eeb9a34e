import subprocess
import sys

import pytest

from fftowers.cli import main

from conftest import SPECS


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field(capsys):
    code, out, _ = run(capsys, "field", "--spec", SPECS / "F.spec")
    assert code == 0 and "q: 9" in out and "primitive: g+1" in out
    code, out, _ = run(capsys, "field", "--p", 2, "--modulus", "t^3+t+1")
    assert code == 0 and "q: 8" in out


def test_field_errors(capsys):
    code, _, err = run(capsys, "field", "--p", 4)
    assert code == 2 and err
    code, _, err = run(capsys, "field", "--p", 3, "--modulus", "t^2")
    assert code == 2 and "divisible by t" in err


def test_tower_check(capsys):
    code, out, _ = run(capsys, "tower", "check", "--spec", SPECS / "H.spec")
    assert code == 0
    assert "shape: Lemma1" in out and "separability: Separable" in out and "symmetry: Asymmetric" in out
    code, out, _ = run(capsys, "tower", "check", "--spec", SPECS / "G.spec")
    assert "shape: Neither" in out


def test_subtower_verify(capsys):
    code, out, _ = run(capsys, "subtower", "verify", "--spec", SPECS / "E.spec", "--sub", SPECS / "G.spec", "--f", "t+1")
    assert code == 0
    assert "equation_holds: true" in out and "(T^4+2*T^2+1)/T^2" in out


def test_subtower_verify_false_exits_one(capsys):
    ex4 = SPECS / "ex4.spec"
    code, out, _ = run(capsys, "subtower", "verify", "--spec", ex4, "--tower", "super",
                       "--sub", ex4, "--sub-tower", "sub", "--f", "1/(t+1)")
    assert code == 1 and "equation_holds: false" in out
    assert "right: T^6+T^5+T^3+T^2" in out


def test_subtower_search(capsys):
    code, out, _ = run(capsys, "subtower", "search", "--spec", SPECS / "E.spec")
    assert code == 0 and "witnesses: 1" in out and "ProperByDegree" in out
    ex4 = SPECS / "ex4.spec"
    code, out, _ = run(capsys, "--porcelain", "subtower", "search", "--spec", ex4, "--tower", "super",
                       "--sub", ex4, "--sub-tower", "sub", "--max-deg", 2, "--jobs", 2)
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert rows[0] == ["search_space", "64"] and rows[1] == ["witnesses", "2"]
    fs = [r[0] for r in rows[2:]]
    assert fs == ["T+1", "T^2+1"]


def test_search_ceiling(capsys):
    code, _, err = run(capsys, "subtower", "search", "--spec", SPECS / "H.spec", "--sub", SPECS / "H.spec",
                       "--max-deg", 3, "--ceiling", 1000)
    assert code == 2 and err


def test_census_table_and_porcelain(capsys):
    code, out, _ = run(capsys, "probe", "census", "--spec", SPECS / "L.spec", "--levels", 4)
    assert code == 0 and "not limits" in out
    code, out, _ = run(capsys, "--porcelain", "probe", "census", "--spec", SPECS / "L.spec", "--levels", 4)
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert [r[1] for r in rows] == ["9", "9", "4", "4", "4"]
    assert [r[-1] for r in rows] == ["9", "9/2", "1", "1/2", "1/4"]
    # porcelain output is stable
    code2, out2, _ = run(capsys, "--porcelain", "probe", "census", "--spec", SPECS / "L.spec", "--levels", 4)
    assert out2 == out


def test_census_cap(capsys):
    code, _, err = run(capsys, "probe", "census", "--spec", SPECS / "L.spec", "--levels", 5, "--cap", 4)
    assert code == 2 and err


def test_probe_split(capsys):
    code, out, _ = run(capsys, "probe", "split", "--spec", SPECS / "G.spec", "--at", 0, "--levels", 4)
    assert code == 0 and "result: SplitsCompletely" in out and "k=-1 c=0" in out
    code, out, _ = run(capsys, "probe", "split", "--spec", SPECS / "L.spec", "--at", "g", "--levels", 1)
    assert "FailsAtLevel(1)" in out
    code, out, _ = run(capsys, "probe", "split", "--spec", SPECS / "H.spec", "--at", "inf", "--levels", 3)
    assert "FailsAtLevel(1)" in out


def test_probe_factor(capsys):
    code, out, _ = run(capsys, "--porcelain", "probe", "factor", "--spec", SPECS / "L.spec", "--at", "g+1")
    assert code == 0
    (row,) = out.strip().splitlines()
    assert row.split("\t")[2] == "T^2+(g^2+g)*T+g+1"
    code, out, _ = run(capsys, "--porcelain", "probe", "factor", "--spec", SPECS / "L.spec")
    assert len(out.strip().splitlines()) == 9


def test_genus_bound(capsys):
    code, out, _ = run(capsys, "--porcelain", "genus", "bound", "--recurrence", 0, 1, 2, 2)
    assert code == 0
    assert [line.split("\t")[1] for line in out.strip().splitlines()] == ["0", "0", "1", "3"]
    code, out, _ = run(capsys, "genus", "bound", "--hurwitz", 2, 0, 2, 2, 2)
    assert code == 0 and "1" in out
    code, out, _ = run(capsys, "genus", "bound", "--hasse-weil", 28, 9)
    assert "min_genus: 3" in out


def test_bad_inputs(capsys):
    code, _, err = run(capsys, "probe", "census", "--spec", SPECS / "nope.spec", "--levels", 1)
    assert code == 2 and err
    code, _, err = run(capsys, "subtower", "verify", "--spec", SPECS / "E.spec", "--sub", SPECS / "G.spec", "--f", "t+")
    assert code == 2 and err
    with pytest.raises(SystemExit) as exc:
        main(["probe"])
    assert exc.value.code == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "fftowers", "--porcelain", "genus", "bound", "--hasse-weil", "10", "9"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0 and res.stdout.strip().endswith("0")
