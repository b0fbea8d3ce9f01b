import csv
import io
import json
import subprocess
import sys

import pytest

from multiop.cli import main
from multiop.moments import FamilySpec
from multiop.recurrence import field_from_closed_form


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeffs_closed_form(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "charlier", "--params", "a=1,2",
                       "--box", "3,3", "--method", "closed-form")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 16
    row = next(r for r in rows if r["index"] == [1, 1])
    assert row["a"] == ["1", "2"] and row["b"] == ["3", "4"]


def test_coeffs_oracle_equals_closed_form_bytes(capsys):
    base = ["coeffs", "--family", "hermite", "--params", "c=1,-1", "--box", "2,2"]
    _, oracle, _ = run(capsys, *base, "--method", "oracle")
    _, closed, _ = run(capsys, *base, "--method", "closed-form")
    _, det, _ = run(capsys, *base, "--method", "determinant")
    assert oracle == closed == det


def test_coeffs_custom_matches_family(capsys, tmp_path):
    path = tmp_path / "moments.json"
    path.write_text(json.dumps({"r": 1, "max_degree": 7, "moments": [["1", "1", "2", "5", "15", "52", "203", "877"]]}))
    _, custom, _ = run(capsys, "coeffs", "--custom", str(path), "--box", "2", "--method", "oracle")
    _, family, _ = run(capsys, "coeffs", "--family", "charlier", "--params", "a=1", "--box", "2")
    assert custom == family


def test_coeffs_csv_with_floats(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "laguerre1", "--params", "alpha=1/2,5/3",
                       "--box", "1,1", "--format", "csv", "--float")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    assert float(rows[0]["b1"].split("/")[0]) / float(rows[0]["b1"].split("/")[1]) == float(rows[0]["b1_float"])


def test_poly_and_typei(capsys):
    assert json.loads(run(capsys, "poly", "--family", "charlier", "--params", "a=1", "--index", "2")[1]) == ["1", "-3", "1"]
    assert json.loads(run(capsys, "poly", "--family", "charlier", "--params", "a=1,2", "--index", "0,0")[1]) == ["1"]
    assert json.loads(run(capsys, "typei", "--family", "charlier", "--params", "a=1,2", "--index", "1,1")[1]) == [["-1"], ["1"]]


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--family", "laguerre1", "--params", "alpha=1/2,5/3", "--box", "4,4")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_verify_cd_sampled(capsys):
    code, out, _ = run(capsys, "verify", "--family", "jacobi-pineiro", "--params", "alpha=1/2,1/3", "beta=1/3",
                       "--box", "3,3", "--checks", "cd", "--max-paths", "10", "--seed", "7")
    assert code == 0
    per_index = {}
    for c in json.loads(out)["checks"]:
        if c["name"].startswith("cd["):
            per_index[tuple(c["index"])] = per_index.get(tuple(c["index"]), 0) + 1
    assert per_index and max(per_index.values()) <= 10


def test_verify_mutated_custom_field(capsys, tmp_path):
    field = field_from_closed_form(FamilySpec.charlier([1, 2]), [4, 4])
    c = field[(2, 2)]
    path = tmp_path / "field.json"
    path.write_text(json.dumps(field.replace((2, 2), a=(99, c.a[1])).to_json()))
    code, out, _ = run(capsys, "verify", "--custom", str(path), "--box", "3,3", "--checks", "pde")
    report = json.loads(out)
    assert code == 1 and report["status"] == "fail"
    assert any(c["status"] == "fail" and "lhs=" in c["witness"] for c in report["checks"])


def test_kernel(capsys):
    code, out, _ = run(capsys, "kernel", "--family", "hermite", "--params", "c=1", "--index", "3",
                       "--grid=-1:1:3,-1:1:3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 9
    assert all(abs(float(r["value"])) < float("inf") for r in rows)
    code, _, err = run(capsys, "kernel", "--family", "laguerre1", "--params", "alpha=1/2",
                       "--index", "2", "--grid", "0:1:2,-1:1:3")
    assert code == 1 and "DomainError" in err


def test_moments(capsys):
    code, out, _ = run(capsys, "moments", "--family", "charlier", "--params", "a=1", "--max-degree", "4")
    assert code == 0 and json.loads(out)["moments"] == [["1", "1", "2", "5", "15"]]


@pytest.mark.parametrize("argv", [
    ["coeffs", "--family", "charlier", "--params", "a=0,2", "--box", "1,1"],
    ["coeffs", "--family", "meixner", "--params", "a=1", "--box", "1"],
    ["coeffs", "--family", "charlier", "--params", "a=1,2", "--box", "1,1,1"],
    ["verify", "--family", "charlier", "--params", "a=1,2", "--box", "1,1", "--checks", "bogus"],
    ["poly", "--family", "charlier", "--params", "a=1/0", "--index", "1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("multiop: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["coeffs", "--box", "1,1"])
    assert info.value.code == 2


def test_bad_custom_file_exits_1(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"r": 1, "max_degree": 1, "moments": [["1", "1/0"]]}')
    code, _, err = run(capsys, "coeffs", "--custom", str(path), "--box", "1")
    assert code == 1 and "ParseError" in err


def test_out_file_and_module_entry(tmp_path):
    out = tmp_path / "r.json"
    argv = [sys.executable, "-m", "multiop", "verify", "--family", "charlier", "--params", "a=1,2",
            "--box", "2,2", "--out", str(out)]
    assert subprocess.run(argv).returncode == 0
    assert json.loads(out.read_text())["status"] == "pass"
