import json
import subprocess
import sys
from fractions import Fraction

import pytest

from collapsing_tasep.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_weight_breakdown(capsys):
    code, out, _ = run(capsys, "weight", "1011010")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["weight"] == "23"
    assert doc["identity"]["terms"] == ["7", "9", "5", "2"]


@pytest.mark.parametrize("seq, w", [("1010", "5"), ("", "1")])
def test_weight_values(capsys, seq, w):
    assert json.loads(run(capsys, "weight", seq)[1])["weight"] == w


def test_weight_bad_character(capsys):
    code, _, err = run(capsys, "weight", "10a")
    assert code == EXIT_USAGE and "not a binary sequence" in err


@pytest.mark.parametrize("argv, state", [
    (["--n", "5", "--S", "0,1", "--T", "1"], "10**1"),
    (["--n", "4", "--T", "2"], "**0*"),
])
def test_collapse_cycle(capsys, argv, state):
    code, out, _ = run(capsys, "collapse", *argv)
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["state"] == state and doc["criterion_agrees"]


def test_collapse_capacity(capsys):
    code, _, err = run(capsys, "collapse", "--n", "3", "--S", "0,1,2", "--T", "0")
    assert code == EXIT_USAGE
    assert "|S|+|T| = 3+1 = 4 exceeds N = 3" in err


def test_collapse_line(capsys):
    code, out, _ = run(capsys, "collapse", "--geometry", "line", "--window", "0,4",
                       "--S", "0,1", "--T", "1")
    doc = json.loads(out)
    assert doc["state"] == "10***" and doc["dropped"] == 1


def test_stationary_compare(capsys):
    code, out, _ = run(capsys, "stationary", "--n", "4", "--a", "1", "--b", "1",
                       "--compare", "formula", "exact", "pushforward")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert set(doc["compare"].values()) == {"identical"}
    assert len(doc["entries"]) == 12
    assert sum(Fraction(e["p"]) for e in doc["entries"]) == 1
    assert doc["config"]["n"] == 4


def test_stationary_four_cards(capsys):
    doc = json.loads(run(capsys, "stationary", "--cards", "1,2,3,4", "--mode", "exact")[1])
    assert doc["mu_1324"] == "1/32" and doc["mu_1423"] == "5/96"
    assert doc["mu_1324_ne_mu_1423"] is True


def test_stationary_point_mass(capsys):
    doc = json.loads(run(capsys, "stationary", "--n", "3", "--a", "3", "--b", "0")[1])
    assert doc["entries"] == [{"state": "111", "p": "1"}]


def test_stationary_guard(capsys):
    code, _, err = run(capsys, "stationary", "--n", "20", "--a", "2", "--b", "2")
    assert code == EXIT_USAGE and "guard" in err


def test_stationary_csv(capsys, tmp_path):
    path = tmp_path / "d.csv"
    code = main(["stationary", "--n", "3", "--a", "1", "--b", "1", "--format", "csv",
                 "--out", str(path)])
    text = path.read_text().splitlines()
    assert code == EXIT_OK
    assert "# n=3" in text
    assert "state,p" in text and "1*0,1/9" in text


def test_sample_reports_tv(capsys):
    code, out, _ = run(capsys, "sample", "--n", "5", "--a", "1", "--b", "2",
                       "--samples", "200000", "--seed", "3")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["tv_to_exact"] < 0.02
    assert doc["config"]["seed"] == 3


def test_sample_failure_exit_code(capsys):
    code, out, _ = run(capsys, "sample", "--n", "5", "--a", "1", "--b", "2",
                       "--samples", "50", "--tv-limit", "0.001")
    doc = json.loads(out)
    assert code == EXIT_FAIL and not doc["passed"] and doc["failures"]


def test_simulate_is_reproducible(capsys):
    argv = ["simulate", "--n", "5", "--a", "2", "--b", "1", "--steps", "200000", "--seed", "8"]
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]
    assert json.loads(first)["tv_to_exact"] < 0.02


def test_line(capsys):
    code, out, _ = run(capsys, "line", "--window", "2000", "--windows", "10",
                       "--samples", "20000")
    doc = json.loads(out)
    assert code == EXIT_OK, doc["failures"]
    assert doc["gap_tv"] < 0.02


def test_line_rejects_full_density(capsys):
    assert run(capsys, "line", "--p", "0.6", "--q", "0.5")[0] == EXIT_USAGE


def test_conjectures_table(capsys):
    code, out, err = run(capsys, "conjectures", "--n", "4", "--classes", "4")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert len(doc["table"]) == 15
    assert "4321" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "collapsing_tasep.cli", "weight", "1010"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["weight"] == "5"


def test_usage_error_from_argparse():
    with pytest.raises(SystemExit) as exc:
        main(["stationary", "--mode", "nonsense"])
    assert exc.value.code == EXIT_USAGE
