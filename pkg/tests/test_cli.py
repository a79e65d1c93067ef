import csv
import io
import json
import subprocess
import sys

import pytest

from inscribed.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_then_volume(tmp_path, capsys):
    path = tmp_path / "ico.json"
    assert main(["construct", "icosahedron", "--out", str(path)]) == 0
    code, out, _ = run(capsys, "volume", str(path))
    assert code == 0
    assert json.loads(out)["volume"] == pytest.approx(2.536150710, abs=1e-9)


def test_pipe_through_stdin():
    py = [sys.executable, "-m", "inscribed"]
    poly = subprocess.run(py + ["construct", "cross", "--d", "3"], capture_output=True, text=True, check=True).stdout
    res = subprocess.run(py + ["volume"], input=poly, capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["volume"] == pytest.approx(4 / 3)


def test_malformed_json_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "volume", str(bad))
    assert code == 2
    assert "error" in json.loads(err)


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 2


def test_numeric_failure_exit_1(capsys):
    code, _, err = run(capsys, "bounds", "--formula", "facial_tetra", "--args", "tau=1.2", "c=0.3")
    assert code == 1
    assert json.loads(err)["kind"] == "DomainError"


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--formula", "rs_lower", "--d", "3")
    data = json.loads(out)
    assert code == 0 and data["value"] == pytest.approx(2.5)
    assert data["formula"] == "rs_lower" and data["paper_eq"]


def test_zcheck_and_gale(tmp_path, capsys):
    path = tmp_path / "oct.json"
    main(["construct", "octahedron", "--out", str(path)])
    code, out, _ = run(capsys, "zcheck", str(path), "--tol", "1e-9")
    data = json.loads(out)
    assert code == 0 and data["stationary"] and data["medial"]["valences"] == {"4": 6}
    code, out, _ = run(capsys, "gale", str(path))
    assert json.loads(out)["predicates"]["is_simplicial"]


def test_search_and_optimize(tmp_path, capsys):
    code, out, _ = run(capsys, "search", "--n", "6", "--restarts", "4", "--seed", "2")
    data = json.loads(out)
    assert code == 0 and data["best_volume"] == pytest.approx(4 / 3, abs=1e-9)
    path = tmp_path / "best.json"
    path.write_text(out)
    code, out, _ = run(capsys, "optimize", str(path))
    assert json.loads(out)["report"]["max_residual"] < 1e-9


def test_table1_csv(tmp_path, capsys):
    path = tmp_path / "t.csv"
    assert main(["table1", "--n", "4..5", "--restarts", "4", "--seed", "1", "--csv", str(path)]) == 0
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert [r["n"] for r in rows] == ["4", "5"]
    assert rows[0]["valences"] == "3x4"


def test_parse_range():
    assert parse_range("4..12") == (4, 12)
    assert parse_range("7") == (7, 7)


@pytest.mark.parametrize("op,key,value", [("c_tr", "value", 3.0), ("c0", "value", 4.0), ("rstar", "R_star", 4.0)])
def test_twobody_ops(capsys, op, key, value):
    code, out, _ = run(capsys, "twobody", "--op", op, "--in", "triangle")
    assert code == 0 and json.loads(out)[key] == pytest.approx(value, abs=1e-9)


def test_twobody_simplex_reflect(capsys):
    code, out, _ = run(capsys, "twobody", "--op", "simplex-reflect", "--in", "tetrahedron")
    assert code == 0 and json.loads(out)["ratio"] == pytest.approx(6.0)
