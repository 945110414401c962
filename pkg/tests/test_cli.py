import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from gerbelevels.cases import CaseError, CaseSpec, all_cases, parse_subgroup
from gerbelevels.cli import main
from gerbelevels.report import ReportDocument, levels_report, solve_report
from gerbelevels.roots import build_root_system


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    assert code == 0
    return json.loads(text)


def test_levels_examples():
    assert run_json("levels", "--family", "E7")["k_min"] == 2
    assert run_json("levels", "--family", "B", "--rank", "4")["k_min"] == 1
    doc = run_json("levels", "--family", "A", "--rank", "5", "--subgroup", "cyclic:2")
    assert doc["k_min"] == 2 and doc["case"]["subgroup"] == "Z2"


def test_verify_examples():
    code, text = run("verify", "--family", "D", "--rank", "8", "--subgroup", "full")
    assert code == 0 and text.startswith("pass")
    code, text = run("verify", "--family", "E6")
    assert code == 0 and "trivial cocycle" in text
    assert run("verify", "--family", "A", "--rank", "2")[0] == 0


def test_solve_examples():
    doc = run_json("solve", "--family", "D", "--rank", "8", "--subgroup", "Z2xZ2", "--level", "1")
    assert doc["solution_class_count"] == 2
    pairs = {"z2,z1", "z2,z1z2", "z1z2,z1", "z1z2,z1z2"}
    for rep, value in zip(doc["class_representatives"], ("1/4", "3/4")):
        assert {k for k, v in rep.items() if v != "0/1"} == pairs
        assert all(rep[k] == value for k in pairs)

    code, text = run("solve", "--family", "C", "--rank", "3", "--level", "1")
    assert code == 0 and "no solution" in text
    doc = run_json("solve", "--family", "C", "--rank", "3", "--level", "1")
    assert doc["solvable"] is False and doc["certificate"]["invariant"] == "1/2"

    doc = run_json("solve", "--family", "A", "--rank", "1", "--level", "2")
    assert all(v == "0/1" for v in doc["u_solution"].values())


def test_table_rows():
    code, text = run("table", "--max-rank", "8")
    assert code == 0
    rows = {tuple(line.split()[:2]): line.split()[2:4] for line in text.splitlines()[1:]}
    assert rows["D8", "Z2xZ2"] == ["1", "2"]
    assert rows["C4", "Z2"] == ["1", "1"]
    assert rows["E6", "Z3"] == ["1", "1"]
    # deterministic output
    assert run("table", "--max-rank", "8")[1] == text


@pytest.mark.parametrize("spec,k", [(CaseSpec("D", 8, "Z2xZ2"), None), (CaseSpec("C", 3), 1),
                                    (CaseSpec("E6", 6), None), (CaseSpec("A", 5, "Z3"), 2)])
def test_report_round_trip(spec, k):
    doc = levels_report(spec) if k is None else solve_report(spec, k)
    again = ReportDocument.from_json(doc.to_json())
    assert again == doc
    assert again.to_json() == doc.to_json()
    # no floats anywhere in the serialized form
    assert "." not in json.dumps(doc.to_dict()["theta"])


def test_rationals_serialize_as_strings():
    doc = levels_report(CaseSpec("C", 3))
    d = doc.to_dict()
    assert d["theta"]["z"] == ["1/2", "1/2", "1/2"]
    assert d["schema_version"] == "gerbe-levels/1"
    assert ReportDocument.from_dict(d).theta["z"][0] == Fraction(1, 2)


@pytest.mark.parametrize("argv", [
    ["levels", "--family", "A", "--rank", "5", "--subgroup", "cyclic:x"],
    ["levels", "--family", "A", "--rank", "5", "--subgroup", "cyclic:4"],
    ["levels", "--family", "D", "--rank", "5", "--subgroup", "z1"],
    ["levels", "--family", "A", "--rank", "12"],
    ["levels", "--family", "A", "--rank", "3", "--max-rank", "17"],
    ["levels", "--family", "B"],
    ["levels", "--family", "F", "--rank", "4"],
    ["solve", "--family", "A", "--rank", "2", "--level", "0"],
    ["table", "--max-rank", "13"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv, out=io.StringIO()))
    assert exc.value.code == 2


def test_parse_error_reports_position():
    rs = build_root_system("A", 5)
    with pytest.raises(CaseError) as exc:
        parse_subgroup(rs, "cyclic:2x")
    assert exc.value.position == 8
    assert "column 9" in str(exc.value)


def test_subgroup_grammar():
    assert parse_subgroup(build_root_system("D", 5), "Z2").elements == ((0,), (2,))
    assert parse_subgroup(build_root_system("D", 6), "z1z2").label == "z1z2"
    assert parse_subgroup(build_root_system("A", 11), "cyclic:6").label == "Z6"
    assert parse_subgroup(build_root_system("A", 11), "trivial").order == 1


def test_max_rank_override():
    assert run("levels", "--family", "A", "--rank", "12", "--max-rank", "12")[0] == 0
    specs = all_cases(4)
    assert CaseSpec("A", 4, "Z5") in specs and CaseSpec("A", 5, "Z6") not in specs


def test_verify_detects_failure(monkeypatch):
    import gerbelevels.report as report

    monkeypatch.setattr(report, "verify_rtc", lambda cd, k, fam: (False, {"nodes": (0, 0, 0, 0)}))
    code, text = run("verify", "--family", "C", "--rank", "3")
    assert code == 1
    assert "rtc" in text and "FAIL" in text


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "gerbelevels", "levels", "--family", "E6"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "E6" in res.stdout
