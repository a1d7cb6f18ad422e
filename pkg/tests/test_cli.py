import csv
import json
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest

from frobmult import casefile, cli
from frobmult.bounds import VIOLATION
from frobmult.casefile import CSV_COLUMNS, validate_report
from frobmult.groebner import get_step_limit, set_step_limit

CORPUS = cli.corpus_dir()


@pytest.fixture(autouse=True)
def _restore_step_limit():
    old = get_step_limit()
    yield
    set_step_limit(old)


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


# ------------------------------------------------------------ single commands

def test_verify_diagonal(capsys, tmp_path):
    out_json = tmp_path / "r.json"
    code, out, _ = run(["verify", "--case", "diagonal.case", "--out", str(out_json),
                        "--no-timestamp"], capsys)
    assert code == 0
    assert "holds-strict: 25 > 24" in out and "N=3, e_a=1, e_J=6" in out
    report = json.loads(out_json.read_text())
    validate_report(report)
    bound = report["cases"][0]["bounds"][0]
    assert bound["verdict"] == "holds-strict" and bound["N"] == 3
    assert bound["e_a"] == [1, 1] and bound["e_J"] == [6, 1]


def test_nu_csv_rows(capsys):
    code, out, _ = run(["nu", "--case", "diagonal.case", "--ideal-a", "a", "--ideal-j", "J",
                        "--emax", "3", "--p", "2"], capsys)
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows == [["e", "q", "nu", "ratio"], ["1", "2", "8", "4/1"], ["2", "4", "18", "9/2"],
                    ["3", "8", "38", "19/4"]]


def test_threshold_and_leastN(capsys):
    code, out, _ = run(["threshold", "--case", "diagonal", "--p", "2", "--emax", "4"], capsys)
    assert code == 0 and "extrapolated = 5" in out
    code, out, _ = run(["leastN", "--case", "veronese_max", "--ideal-a", "m"], capsys)
    assert code == 0 and "N = 1" in out


def test_check_and_mult(capsys):
    code, out, _ = run(["check", "--case", "cusp_max"], capsys)
    assert code == 0 and "d=1" in out
    code, out, _ = run(["mult", "--case", "noncm_squares", "--ideal", "J"], capsys)
    assert code == 0 and "Samuel" in out


def test_demo_veronese(capsys):
    code, out, _ = run(["demo-veronese"], capsys)
    assert code == 0
    assert out.strip().splitlines()[-1] == "fjn = 5/3, pt estimate = 2"


def test_kernel(capsys, tmp_path):
    out_json = tmp_path / "k.json"
    code, out, _ = run(["kernel", "--images", "3,0 2,1 1,2 0,3", "--names", "a,b,c,d",
                        "--out", str(out_json)], capsys)
    assert code == 0
    data = json.loads(out_json.read_text())
    assert len(data["generators"]) == 3 and data["weights"] == [1, 1, 1, 1]
    code, _, err = run(["kernel", "--images", "1,0 0,1", "--names", "a"], capsys)
    assert code == 1 and "kernel" in err


# ------------------------------------------------------------ exit codes

def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["verify"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        cli.main(["nonsense"])
    assert info.value.code == 1


def test_missing_case_exits_one(capsys, tmp_path):
    code, _, err = run(["verify", "--case", str(tmp_path / "nope.case")], capsys)
    assert code == 1 and "nope" in err


def test_unknown_ideal_names_case_and_op(capsys):
    code, _, err = run(["verify", "--case", "diagonal", "--ideal-a", "zzz"], capsys)
    assert code == 1
    assert "diagonal: verify" in err and "zzz" in err


def test_resource_cap_exits_three(capsys):
    code, _, err = run(["verify", "--case", "veronese_squares", "--gb-step-limit", "1"], capsys)
    assert code == 3
    assert "veronese_squares: verify" in err


def test_violation_exits_two(capsys, monkeypatch):
    # Fault injection: make the inequality check report a violation.
    real = casefile.verify_main_inequality

    def broken(R, a, J):
        rep = real(R, a, J)
        rep.rhs = rep.lhs + 1
        rep.verdict = VIOLATION
        return rep

    monkeypatch.setattr(casefile, "verify_main_inequality", broken)
    code, out, _ = run(["verify", "--case", "diagonal"], capsys)
    assert code == 2 and "VIOLATION" in out


def test_equality_without_proportionality_exits_two(capsys, monkeypatch):
    real = casefile.verify_main_inequality

    def fake(R, a, J):
        rep = real(R, a, J)
        rep.lhs = rep.rhs
        rep.verdict = "holds-with-equality"
        return rep

    monkeypatch.setattr(casefile, "verify_main_inequality", fake)
    code, _, _ = run(["verify", "--case", "diagonal"], capsys)
    assert code == 2


# ------------------------------------------------------------ case files

def _write_case(path, **changes):
    data = json.loads((CORPUS / "diagonal.case").read_text())
    data.update(changes)
    path.write_text(json.dumps(data))
    return path


def test_unknown_key_rejected(capsys, tmp_path):
    bad = _write_case(tmp_path / "extra.case", comment="not allowed")
    code, _, err = run(["check", "--case", str(bad)], capsys)
    assert code == 1 and "extra" in err


@pytest.mark.parametrize("field", [{"char": 4}, {"char": -1}, {}])
def test_bad_field_rejected(capsys, tmp_path, field):
    bad = _write_case(tmp_path / "field.case", field=field)
    code, _, _ = run(["check", "--case", str(bad)], capsys)
    assert code == 1


def test_unparsable_polynomial_rejected_at_load(capsys, tmp_path):
    bad = _write_case(tmp_path / "poly.case", ideals={"a": ["x", "y"], "J": ["x^2 +", "y^3"]})
    code, _, err = run(["verify", "--case", str(bad)], capsys)
    assert code == 1 and "poly:" in err and "position 5" in err


# ------------------------------------------------------------ batch

def test_batch_empty_directory(capsys, tmp_path):
    code, _, err = run(["batch", str(tmp_path)], capsys)
    assert code == 1 and "no cases found" in err


def test_batch_isolates_malformed_file(capsys, tmp_path):
    shutil.copy(CORPUS / "diagonal.case", tmp_path / "diagonal.case")
    shutil.copy(CORPUS / "cusp_law.case", tmp_path / "cusp_law.case")
    (tmp_path / "broken.case").write_text("{ not json")
    out_csv = tmp_path / "s.csv"
    code, out, _ = run(["batch", str(tmp_path), "--csv", str(out_csv)], capsys)
    assert code == 1
    rows = list(csv.DictReader(out_csv.read_text().splitlines()))
    assert list(rows[0].keys()) == CSV_COLUMNS
    by_case = {}
    for r in rows:
        by_case.setdefault(r["case_id"], []).append(r["status"])
    assert by_case["broken"] == ["error"]
    assert set(by_case["diagonal"]) == {"ok"} and set(by_case["cusp_law"]) == {"ok"}
    assert "3 cases" in out


def _batch_report(tmp_path, name, *extra):
    out = tmp_path / name
    code = cli.main(["batch", "--no-timestamp", "--out", str(out), *extra])
    return code, out.read_bytes()


def test_full_corpus_batch_is_clean_and_deterministic(capsys, tmp_path):
    code1, first = _batch_report(tmp_path, "one.json")
    code2, second = _batch_report(tmp_path, "two.json", "--jobs", "2")
    capsys.readouterr()
    assert code1 == code2 == 0
    assert first == second
    report = json.loads(first)
    validate_report(report)
    assert len(report["cases"]) >= 15
    statuses = {t["status"] for c in report["cases"] for t in c["tasks"]}
    assert statuses == {"ok"}
    for case in report["cases"]:
        for b in case["bounds"]:
            assert b["verdict"] != VIOLATION
            if b["verdict"] == "holds-with-equality":
                assert b["proportional"]


def test_timestamp_present_by_default(capsys, tmp_path):
    out = tmp_path / "t.json"
    assert cli.main(["check", "--case", "diagonal", "--out", str(out)]) == 0
    assert "timestamp" in json.loads(out.read_text())


def test_summary_csv_fields(capsys, tmp_path):
    out_csv = tmp_path / "v.csv"
    assert cli.main(["verify", "--case", "veronese_squares", "--csv", str(out_csv)]) == 0
    (row,) = csv.DictReader(out_csv.read_text().splitlines())
    assert row["verdict"] == "holds-with-equality"
    assert Fraction(row["e_J"]) == 12 and row["N"] == "2"


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "frobmult.cli", "demo-veronese", "--emax", "2"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "fjn = 5/3" in proc.stdout
