import json
import subprocess
import sys
from pathlib import Path

import pytest

from corecalc.cli import cmd_fuzz, cmd_run, main
from corecalc.polyhedra import set_equal
from corecalc.problem import HOOK_ENV, encode_set, load_problem, parse_set

FIXTURES = Path(__file__).parent / "fixtures"

HALFPLANES = {
    "version": "1",
    "objects": {
        "Omega1": {"kind": "polyhedron", "dim": 2, "ineqs": [{"a": ["1", "0"], "b": "0"}]},
        "Omega2": {"kind": "polyhedron", "dim": 2, "ineqs": [{"a": ["0", "1"], "b": "0"}]},
    },
    "queries": [{"op": "intersection_rule", "args": ["Omega1", "Omega2"], "point": ["0", "0"]}],
}


def write(tmp_path, doc, name="p.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


def run(tmp_path, doc, **kw):
    out = tmp_path / "report.json"
    code = cmd_run(str(write(tmp_path, doc)), str(out), **kw)
    return code, json.loads(out.read_text())


def test_intersection_rule_file(tmp_path):
    code, rep = run(tmp_path, HALFPLANES)
    assert code == 0
    assert rep["results"][0]["result"]["equal"] is True
    assert rep["results"][0]["result"]["qc_satisfied"] is True


def test_undefined_object(tmp_path, capsys):
    doc = json.loads(json.dumps(HALFPLANES))
    doc["queries"][0]["args"] = ["Omega1", "Omega3"]
    code, rep = run(tmp_path, doc)
    assert code == 2
    assert "Omega3" in capsys.readouterr().err
    assert "Omega3" in rep["error"]["message"]


def test_injected_rhs_fails(tmp_path, monkeypatch):
    doc = json.loads(json.dumps(HALFPLANES))
    doc["queries"][0]["inject_rhs"] = {"dim": 2, "vertices": [["0", "0"]], "rays": [["1", "0"]]}
    monkeypatch.setenv(HOOK_ENV, "1")
    code, rep = run(tmp_path, doc)
    assert code == 1
    assert rep["results"][0]["result"]["equal"] is False


def test_injection_needs_hook_env(tmp_path, monkeypatch):
    doc = json.loads(json.dumps(HALFPLANES))
    doc["queries"][0]["inject_rhs"] = {"dim": 2, "vertices": [["0", "0"]]}
    monkeypatch.delenv(HOOK_ENV, raising=False)
    code, _ = run(tmp_path, doc)
    assert code == 2


def test_require_qc(tmp_path):
    doc = json.loads(json.dumps(HALFPLANES))
    doc["objects"]["Omega1"]["ineqs"][0]["a"] = ["0", "-1"]
    assert run(tmp_path, doc)[0] == 0
    assert run(tmp_path, doc, require_qc=True)[0] == 3


@pytest.mark.parametrize("doc, fragment", [
    ({"version": "2", "objects": {}, "queries": []}, "version"),
    ({"version": "1", "objects": {"P": {"kind": "polyhedron", "dim": 1,
                                        "ineqs": [{"a": [0.5], "b": "1"}]}}, "queries": []}, "rational"),
    ({"version": "1", "objects": {}, "queries": [{"op": "nope", "args": []}]}, "unknown op"),
    ({"version": "1", "objects": {"P": {"kind": "polyhedron", "dim": 2, "ineqs": [{"a": ["1"], "b": "0"}]}},
      "queries": []}, "length"),
])
def test_validation_errors(tmp_path, capsys, doc, fragment):
    code, rep = run(tmp_path, doc)
    assert code == 2
    assert fragment in rep["error"]["message"]


def test_bad_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{")
    assert cmd_run(str(p), str(tmp_path / "r.json")) == 2


def test_wrong_object_kind(tmp_path):
    doc = json.loads(json.dumps(HALFPLANES))
    doc["queries"] = [{"op": "coderivative", "args": ["Omega1"], "point": ["0", "0"], "g": ["1"]}]
    assert run(tmp_path, doc)[0] == 2


def test_report_sets_round_trip(tmp_path):
    code, rep = run(tmp_path, HALFPLANES)
    res = rep["results"][0]["result"]
    for side in ("lhs", "rhs"):
        s = res[side]["set"]
        from_h = parse_set({k: s[k] for k in ("dim", "ineqs", "eqs")})
        from_v = parse_set({k: s[k] for k in ("dim", "vertices", "rays")})
        assert set_equal(from_h, from_v)
        assert encode_set(from_h) == s


def test_empty_set_round_trip():
    doc = encode_set(parse_set({"dim": 2, "ineqs": [{"a": ["1", "0"], "b": "0"}, {"a": ["-1", "0"], "b": "-1"}]}))
    assert doc["empty"] and parse_set(doc).is_empty()


def test_determinism(tmp_path):
    src = write(tmp_path, HALFPLANES)
    reports = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        assert cmd_run(str(src), str(out), use_oracle=True, seed=5) == 0
        rep = json.loads(out.read_text())
        rep.pop("generated_at")
        reports.append(json.dumps(rep, sort_keys=True))
    assert reports[0] == reports[1]


def test_oracle_flag_records_verdicts():
    out = Path(FIXTURES / "normalcalc.json")
    objects, queries = load_problem(json.loads(out.read_text()))
    assert queries


def test_fixtures_with_oracle(tmp_path):
    for fx in sorted(FIXTURES.glob("*.json")):
        out = tmp_path / (fx.stem + ".out.json")
        assert cmd_run(str(fx), str(out), use_oracle=True) == 0, fx.name
        for rec in json.loads(out.read_text())["results"]:
            if "oracle" in rec:
                assert rec["oracle"]["verdict"], (fx.name, rec["index"])


@pytest.mark.parametrize("dimension, count, seed", [(2, 200, 42), (1, 50, 7)])
def test_fuzz_examples(dimension, count, seed, capsys):
    assert cmd_fuzz(dimension, count, seed) == 0
    lines = capsys.readouterr().out.splitlines()[1:]
    for line in lines:
        _, inst, qc, eq, trivial, fail = line.split()
        assert qc == eq and inst == trivial and fail == "0"


def test_fuzz_zero_count(tmp_path):
    assert cmd_fuzz(2, 0, 1, out=str(tmp_path)) == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert all(row["instances"] == 0 for row in summary["summary"].values())


def test_fuzz_bad_dimension():
    assert cmd_fuzz(5, 1, 0) == 2


def test_main_entry(tmp_path):
    src = write(tmp_path, HALFPLANES)
    assert main(["run", str(src), "-o", str(tmp_path / "o.json")]) == 0
    proc = subprocess.run([sys.executable, "-m", "corecalc", "run", str(src)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["violation"] is False
