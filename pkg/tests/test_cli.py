import csv
import json
import math
import subprocess
import sys
from fractions import Fraction as F

import pytest

from interlace_majorize.cli import ParseError, dumps, main, parse_rational_entry, parse_tol


def write(tmp_path, doc, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


PAIR4 = {"lambda": [5, 1, -1, -5], "mu": [4, 2, -2, -4]}


def test_parse_rational_entry():
    assert parse_rational_entry(3) == 3
    assert parse_rational_entry("-7/2") == F(-7, 2)
    for bad in (0.5, "2/4", "1/0", "abc", True, "1.5"):
        with pytest.raises(ParseError):
            parse_rational_entry(bad)


def test_parse_tol():
    assert parse_tol("2^-60") == F(1, 2**60)
    assert parse_tol("1/1000") == F(1, 1000)


def test_check_report(tmp_path, capsys):
    code, out, _ = run(["check", write(tmp_path, PAIR4)], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["command"] == "check"
    assert rep["interlace"]["has_common_interlacer"] is True
    assert rep["majorization"]["holds"] is True
    assert rep["ncm"]["kind"] == "NecessaryConditionPassed"
    assert rep["nscm"]["kind"] == "NotStrongMajorization"
    assert rep["nscm"]["witness_k"] == 2
    assert rep["nscm"]["detail"]["partial_sums"] == ["63/80", "-3/20", "63/80", "0"]
    assert out == dumps(rep)  # canonical form round-trips byte for byte


def test_check_reports_crossing_in_body(tmp_path, capsys):
    code, out, _ = run(["check", write(tmp_path, {"lambda": [5, 4], "mu": [3, 1]})], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["interlace"]["first_crossing"] == [1, 2]
    assert rep["nscm"]["error"] == "NoCommonInterlacer"


def test_decompose(tmp_path, capsys):
    code, out, _ = run(["decompose", write(tmp_path, PAIR4), "--direction", "pq"], capsys)
    assert code == 0
    d = json.loads(out)["decomposition"]
    assert d["residues"] == ["-45/32", "21/16", "-21/16", "45/32"]
    assert d["total"] == "0"


def test_decompose_shared_roots(tmp_path, capsys):
    inst = write(tmp_path, {"lambda": [5, 1, -1, -5], "mu": [4, 1, -2, -4]})
    code, out, err = run(["decompose", inst], capsys)
    assert code == 0 and "notice" in err
    assert json.loads(out)["decomposition"]["positions"] == [1, 3, 4]
    code, _, _ = run(["decompose", write(tmp_path, {"lambda": [1, 0], "mu": [1, 0]})], capsys)
    assert code == 3


def test_input_errors(tmp_path, capsys):
    assert run(["check", write(tmp_path, {"lambda": [1, 2], "mu": [1]})], capsys)[0] == 2
    assert run(["check", write(tmp_path, {"lambda": [0.5], "mu": [1]})], capsys)[0] == 2
    assert run(["check", write(tmp_path, {"lambda": [], "mu": []})], capsys)[0] == 2
    assert run(["check", str(tmp_path / "missing.json")], capsys)[0] == 2
    (tmp_path / "bad.json").write_text("{not json")
    assert run(["check", str(tmp_path / "bad.json")], capsys)[0] == 2
    assert run(["track", write(tmp_path, PAIR4), "--grid", "1"], capsys)[0] == 2
    assert run(["campaign", "--theorem", "ncm", "--trials", "0"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["campaign", "--theorem", "bogus"])
    assert exc.value.code == 2


def test_track_csv(tmp_path, capsys):
    csv_path = tmp_path / "traj.csv"
    inst = write(tmp_path, {"lambda": [2, -2], "mu": [1, -1]})
    code, out, _ = run(["track", inst, "--grid", "4", "--tol", "2^-40", "--csv", str(csv_path)], capsys)
    assert code == 0
    rep = json.loads(out)
    assert [v["verdict"] for v in rep["monotone_verdicts"]] == ["Increasing", "Nondecreasing"]
    rows = list(csv.reader(csv_path.open()))
    assert rows[0] == ["t", "lambda_1", "lambda_2", "S_1", "S_2"]
    assert len(rows) == 5
    for row in rows[1:]:
        t = float(row[0])
        assert abs(float(row[1]) - math.sqrt(1 + 3 * t)) < 2**-39
        assert abs(float(row[4])) < 2**-39
    assert float(rows[1][1]) == 1 and float(rows[-1][1]) == 2


def test_track_violation_and_structure(tmp_path, capsys):
    code, out, _ = run(["track", write(tmp_path, PAIR4), "--grid", "256"], capsys)
    v = json.loads(out)["monotone_verdicts"][1]
    assert code == 0 and v["verdict"] == "ViolatedAt" and v["last_violation"][1] == "1"
    assert run(["track", write(tmp_path, {"lambda": [5, 4], "mu": [3, 1]})], capsys)[0] == 3


def test_campaign_json_is_byte_stable(tmp_path, capsys):
    argv = ["campaign", "--theorem", "diffmaj", "--trials", "10", "--seed", "3", "--no-runtime"]
    code, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert code == 0 and a == b
    rep = json.loads(a)
    assert rep["statistics"]["confirmations"] == 10 and "runtime" not in rep


def test_campaign_to_file(tmp_path, capsys):
    path = tmp_path / "ncm.json"
    code, out, _ = run(["campaign", "--theorem", "ncm", "--trials", "20", "--degree", "2",
                        "--max-degree", "5", "--json", str(path)], capsys)
    assert code == 0 and out == ""
    rep = json.loads(path.read_text())
    assert rep["theorem"] == "ncm" and rep["counterexamples"] == []


def test_campaign_neighborhood(capsys):
    code, out, _ = run(["campaign", "--theorem", "diffmaj", "--trials", "2", "--neighborhood", "1/16",
                        "--neighborhood-samples", "5"], capsys)
    assert code == 0 and "neighborhood" in json.loads(out)


def test_module_entry_point(tmp_path):
    inst = write(tmp_path, PAIR4)
    proc = subprocess.run([sys.executable, "-m", "interlace_majorize", "check", inst],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["nscm"]["witness_k"] == 2


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(PAIR4)))
    code, out, _ = run(["decompose", "-", "--direction", "qp"], capsys)
    assert code == 0
    assert json.loads(out)["decomposition"]["partial_sums"] == ["63/80", "-3/20", "63/80", "0"]
