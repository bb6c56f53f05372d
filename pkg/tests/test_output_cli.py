import csv
import io
import json

import pytest

from sievekit.cli import COUNT_COLUMNS, DELTA_COLUMNS, SIFT_COLUMNS, main
from sievekit.output import OutputSpec, format_number, render


@pytest.mark.parametrize("x,p,text", [
    (0.0009985722992, 4, "0.0009986"),
    (2.5, 1, "2"),         # half to even
    (3.5, 1, "4"),
    (1.0, 10, "1"),
    (123456789.0, 3, "1.23e+8"),
    (7, 3, "7"),
])
def test_format_number(x, p, text):
    assert format_number(x, p) == text


def test_csv_round_trip():
    recs = [{"a": 1, "b": 0.125, "c": True}, {"a": 2, "b": None, "c": False}]
    text = render(recs, ["a", "b", "c"], OutputSpec("csv"))
    assert text.endswith("\r\n")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows == [["a", "b", "c"], ["1", "0.125", "true"], ["2", "", "false"]]


def test_json_lines():
    recs = [{"x": 1 / 3, "y": "s"}]
    lines = render(recs, ["x", "y"], OutputSpec("json", precision=4)).splitlines()
    assert [json.loads(line) for line in lines] == [{"x": 0.3333, "y": "s"}]


def test_spec_validation():
    with pytest.raises(ValueError):
        OutputSpec("xml")
    with pytest.raises(ValueError):
        OutputSpec(precision=0)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def header(out):
    return next(csv.reader(io.StringIO(out)))


def test_delta_columns(capsys):
    code, out, _ = run(capsys, "delta", "--theta", "0.838", "--format", "csv")
    assert code == 0
    assert header(out) == DELTA_COLUMNS == ["mode", "param", "lambda", "delta_a", "delta_b",
                                            "margin", "error_bound"]


def test_count_columns(capsys):
    code, out, _ = run(capsys, "count", "--n", "10", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert header(out) == COUNT_COLUMNS
    assert rows[0]["count"] == "4"


def test_sift_columns(capsys):
    code, out, _ = run(capsys, "--format", "csv", "sift", "--n", "600000")
    assert code == 0
    assert header(out) == SIFT_COLUMNS
    assert list(csv.DictReader(io.StringIO(out)))[0]["holds"] == "true"


def test_json_output_file(tmp_path, capsys):
    dest = tmp_path / "f.jsonl"
    code, out, _ = run(capsys, "eval", "F", "--s", "2", "--format", "json", "--out", str(dest))
    assert code == 0 and out == ""
    rec = json.loads(dest.read_text())
    assert rec["function"] == "F" and rec["branch"] == "F1"


@pytest.mark.parametrize("argv", [
    ["eval", "F", "--s", "9"],
    ["delta", "--theta", "0.5"],
    ["delta", "--theta", "0.9", "--lambda", "10"],
    ["count", "--n", "11"],
    ["sift", "--n", "10"],
    ["series", "--n", "5"],
    ["scan", "--n-range", "10", "20", "0"],
    ["scan", "--n-list", "a,b"],
])
def test_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("sievekit")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["delta", "--theta", "0.9", "--kappa", "0.95"])
    assert exc.value.code == 2


def test_exploratory_lambda(capsys):
    code, out, _ = run(capsys, "delta", "--theta", "0.9", "--lambda", "10", "--exploratory",
                       "--format", "json")
    assert code == 0 and json.loads(out)["lambda"] == 10.0


def test_scan_partial_failure(capsys):
    code, out, err = run(capsys, "scan", "--n-list", "10,7,14", "--format", "csv")
    assert code == 2
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["N"] for r in rows] == ["10", "14"]
    assert "N=7" in err


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--quick", "--format", "json")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and recs[-1]["pass"] is True


def test_verify_detects_fault(capsys):
    code, out, _ = run(capsys, "verify", "--quick", "--inject-gamma-fault", "1e-3",
                       "--format", "json")
    recs = [json.loads(line) for line in out.splitlines()]
    failed = [r["name"] for r in recs if not r["pass"]]
    assert code == 1
    assert all("continuity" in n for n in failed[:-1]) and failed[-1] == "overall"
