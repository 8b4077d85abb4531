import json
import subprocess
import sys
from pathlib import Path

import pytest

from crossnodal.cli import main
from crossnodal.fixture import FixtureError, parse_fixture, run_document, serialize_fixture

ROOT = Path(__file__).resolve().parent.parent
SUITE = ROOT / "fixtures" / "suite.json"


def doc(**sections):
    return json.dumps({"format_version": "1", **sections}, indent=1)


def run_text(text, **kw):
    return run_document(parse_fixture(text), **kw)


def test_minimal_document_parses():
    d = parse_fixture(doc(algebras={"N": {"preset": "trunc_node(3)"}}, tasks=[]))
    assert d.algebras["N"].dim == 5


def test_dangling_reference():
    text = doc(actions={"a": {"preset": "qq_swap"}}, tasks=[{"task": "check-action", "action": "swap"}])
    with pytest.raises(FixtureError, match="unresolved reference 'swap'") as info:
        parse_fixture(text)
    assert info.value.line is not None and info.value.column is not None


def test_dangling_reference_inside_definition():
    text = doc(pairs={"p": {"ambient": "H", "basis": [[1]]}}, tasks=[])
    with pytest.raises(FixtureError, match="unresolved reference 'H'"):
        parse_fixture(text)


@pytest.mark.parametrize("value,message", [("1/0", "denominator 0"), (1.5, "expected an integer"),
                                           (True, "expected an integer"), ("1 / 2", "malformed rational"),
                                           ("x", "malformed rational")])
def test_bad_rationals_are_positioned(value, message):
    text = '{"format_version": "1",\n "algebras": {"A": {"structure": [[[' + json.dumps(value) + ']]],\n "unit": [1]}}}'
    with pytest.raises(FixtureError, match=message) as info:
        parse_fixture(text)
    assert (info.value.line, info.value.column) == (2, 37)


def test_rationals_accepted():
    text = doc(algebras={"A": {"structure": [[["2/2"]]], "unit": ["1"]}}, tasks=[])
    assert parse_fixture(text).algebras["A"].unit == (1,)


def test_unknown_key_is_positioned():
    text = '{\n  "format_version": "1",\n  "algebras": {"A": {"preset": "Q", "colour": 1}}\n}'
    with pytest.raises(FixtureError, match="unknown key 'colour'") as info:
        parse_fixture(text)
    assert (info.value.line, info.value.column) == (3, 37)


def test_duplicate_key_points_at_second_occurrence():
    text = '{"format_version": "1",\n "tasks": [], "tasks": []}'
    with pytest.raises(FixtureError, match="duplicate key 'tasks'") as info:
        parse_fixture(text)
    assert (info.value.line, info.value.column) == (2, 15)


def test_syntax_error_and_version():
    with pytest.raises(FixtureError, match="invalid JSON") as info:
        parse_fixture('{"format_version": "1",\n  "tasks": [,]}')
    assert info.value.line == 2
    with pytest.raises(FixtureError, match="format_version"):
        parse_fixture('{"format_version": "2"}')


def test_unknown_task_and_task_keys():
    with pytest.raises(FixtureError, match="unknown task"):
        parse_fixture(doc(tasks=[{"task": "factorise"}]))
    with pytest.raises(FixtureError, match="unknown key 'algebra'"):
        parse_fixture(doc(pairs={"p": {"preset": "diag_pair"}}, tasks=[{"task": "pair-report", "pair": "p",
                                                                          "algebra": "p"}]))


def test_preset_kind_checked():
    with pytest.raises(FixtureError, match="is of kind pair, expected algebra"):
        parse_fixture(doc(algebras={"A": {"preset": "diag_pair"}}))


def test_max_dim_guard():
    text = doc(algebras={"A": {"preset": "mat(5)"}}, tasks=[])
    with pytest.raises(FixtureError, match="above --max-dim 20"):
        parse_fixture(text, max_dim=20)
    assert parse_fixture(text, max_dim=25).algebras["A"].dim == 25


def test_run_task_exit_codes():
    ok = doc(pairs={"P": {"preset": "node_pair(3)"}}, actions={"s": {"preset": "hered_swap(3)"}},
             tasks=[{"task": "verify-closure", "pair": "P", "action": "s", "expect": {"nodal": True}}])
    report, code = run_text(ok)
    assert code == 0 and report["tasks"][0]["status"] == "ok"
    miss = doc(pairs={"T": {"preset": "triple_pair"}},
               tasks=[{"task": "pair-report", "pair": "T", "expect": {"nodal": True}}])
    report, code = run_text(miss)
    assert code == 1 and report["tasks"][0]["status"] == "mismatch"
    assert report["tasks"][0]["mismatches"] == [{"key": "nodal", "expected": True, "actual": False}]
    bad = doc(actions={"c": {"preset": "qq_swap", "omega": {"s,s": ["1", "2"]}}},
              tasks=[{"task": "check-action", "action": "c", "expect": {"valid": True}}])
    report, code = run_text(bad)
    assert code == 1 and report["tasks"][0]["result"]["associative"] is False


def test_task_error_gives_exit_2():
    text = doc(pairs={"T": {"preset": "triple_pair"}}, actions={"c": {"preset": "cyclic_permutation(3)"}},
               tasks=[{"task": "verify-closure", "pair": "T", "action": "c"},
                      {"task": "pair-report", "pair": "T", "expect": {"nodal": True}}])
    report, code = run_text(text)
    assert code == 2
    assert report["tasks"][0]["status"] == "error" and "not nodal" in report["tasks"][0]["error"]
    assert report["tasks"][1]["status"] == "mismatch"


def test_dotted_expectations():
    text = doc(pairs={"D": {"preset": "diag_pair"}},
               tasks=[{"task": "pair-report", "pair": "D", "expect": {"B": [[1, 1], [1, 1]], "lemma.holds1": True}}])
    assert run_text(text)[1] == 0


def test_report_has_no_floats():
    report, _ = run_document(parse_fixture(SUITE.read_text()))

    def walk(x):
        if isinstance(x, float):
            raise AssertionError(f"float in report: {x}")
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, list):
            for v in x:
                walk(v)

    walk(report)


def test_round_trip_idempotent():
    text = SUITE.read_text()
    once = serialize_fixture(parse_fixture(text))
    twice = serialize_fixture(parse_fixture(once))
    assert once == twice
    messy = doc(algebras={"A": {"structure": [[["4/4"]]], "unit": ["+1"]}}, tasks=[])
    canon = serialize_fixture(parse_fixture(messy))
    assert '"1"' in canon and serialize_fixture(parse_fixture(canon)) == canon


def test_main_run_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", str(SUITE), "--out", str(a)]) == 0
    assert main(["run", str(SUITE), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_main_subcommands(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["pair-report", "--pair", "node_pair(3)", "--expect", '{"nodal": true, "ell_star": 2}',
                 "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["tasks"][0]["result"]["B"] == [[2]]
    assert main(["pair-report", "--pair", "triple_pair", "--expect", '{"nodal": true}', "--summary"]) == 1
    err = capsys.readouterr().err
    assert "expected nodal=true, got false" in err
    assert main(["lemma34-classify", "--B", "[[1,1],[1,1]]", "--a", "[1,2]"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["tasks"][0]["result"]["holds3"] is True and rep["tasks"][0]["result"]["holds1"] is False
    assert main(["wedderburn", "--algebra", "quadratic(2)"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["tasks"][0]["result"]["split"] is False
    assert main(["morita-check", "--pair", "diag_pair", "--progenerator", "e1,e2,e1",
                 "--expect", '{"preserved": true}']) == 0


def test_main_input_errors(tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": "1", "tasks": [{"task": "radical", "algebra": "nope"}]}')
    assert main(["run", str(bad)]) == 2
    assert "unresolved reference 'nope'" in capsys.readouterr().err
    assert main(["lemma34-classify"]) == 2
    assert main(["radical", "--algebra", "mat(5)", "--max-dim", "10"]) == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "crossnodal", "radical", "--algebra", "trunc_node(3)",
                           "--expect", '{"dim": 4}', "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["tasks"][0]["result"]["dim"] == 4
