"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary
(see ``conftest.py``). Run alone with ``pytest tests/test_acceptance.py``.
"""
import json
import time
from fractions import Fraction
from pathlib import Path

import pytest

from corecalc import core_contains
from corecalc.cli import cmd_run
from corecalc.fuzz import run_campaign
from corecalc.oracle import oracle_normal_member, oracle_subgrad_member
from corecalc.problem import load_problem, run_query

pytestmark = pytest.mark.acceptance

FIXTURES = Path(__file__).parent / "fixtures"
SEED = 20240601
LINES: list = []


def record(number: int, ok: bool, text: str) -> None:
    LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}")


def campaign(name, dimension, count, qc_target=False, on_case=None):
    stats = run_campaign(name, dimension, count, SEED, qc_target=qc_target, on_case=on_case)
    return stats, stats.row()


def rule_ok(stats, wanted):
    return stats.qc_true >= wanted and stats.ok


def test_intersection_rule_under_qc():
    start = time.perf_counter()
    s2, r2 = campaign("intersection_rule", 2, 200, qc_target=True)
    s3, r3 = campaign("intersection_rule", 3, 100, qc_target=True)
    elapsed = time.perf_counter() - start
    ok = rule_ok(s2, 200) and rule_ok(s3, 100) and elapsed < 120
    record(1, ok, f"intersection rule Q^2 {r2['equal_under_qc']}/{r2['qc_true']}, "
                  f"Q^3 {r3['equal_under_qc']}/{r3['qc_true']} equal under QC, {elapsed:.1f}s")
    assert ok


def test_coderivative_sum_and_chain_rules():
    ss, rs = campaign("coderivative_sum_rule", 2, 200, qc_target=True)
    sc, rc = campaign("coderivative_chain_rule", 2, 200, qc_target=True)
    ok = rule_ok(ss, 200) and rule_ok(sc, 200)
    record(2, ok, f"sum rule {rs['equal_under_qc']}/{rs['qc_true']} equal, "
                  f"rhs in lhs {rs['trivial_ok']}/{rs['instances']}; "
                  f"chain rule {rc['equal_under_qc']}/{rc['qc_true']} equal, "
                  f"rhs in lhs {rc['trivial_ok']}/{rc['instances']}")
    assert ok


def test_marginal_rule():
    s, r = campaign("marginal_subdiff_rule", 2, 150, qc_target=True)
    ok = rule_ok(s, 150)
    record(3, ok, f"marginal rule {r['equal_under_qc']}/{r['qc_true']} equal under QC "
                  f"({r['instances']} instances)")
    assert ok


def test_point_separation_equivalence():
    s, r = campaign("point_separation", 2, 500)
    ok = s.instances == 500 and s.ok
    record(4, ok, f"certificate iff outside the core, verified: {r['equal_under_qc']}/{r['instances']}")
    assert ok


def test_extremality_three_way():
    s, r = campaign("extremality_chain", 2, 300)
    ok = s.instances == 300 and s.ok
    record(5, ok, f"extremality, separation and extremal principle agree: "
                  f"{r['equal_under_qc']}/{r['instances']}")
    assert ok


def test_graph_core_memberships():
    s, r = campaign("graph_core", 2, 300)
    ok = s.instances == 300 and s.ok
    record(6, ok, f"graph core memberships agree: {r['equal_under_qc']}/{r['instances']}")
    assert ok


def test_oracle_equivalence():
    members = {"normal": 0, "subgrad": 0}

    def count(kind):
        def hook(case, out):
            q = case.queries[0]
            obj = next(iter(case.objects.values()))
            x = tuple(Fraction(v) for v in q["point"])
            f = tuple(Fraction(v) for v in q["f"])
            check = oracle_normal_member if kind == "normal" else oracle_subgrad_member
            members[kind] += check(obj, x, f).verdict
        return hook

    sn, rn = campaign("normal_oracle", 2, 500, on_case=count("normal"))
    sg, rg = campaign("subgrad_oracle", 2, 500, on_case=count("subgrad"))
    total = sn.instances + sg.instances
    agree = rn["equal_under_qc"] + rg["equal_under_qc"]
    ok = total == 1000 and sn.ok and sg.ok
    record(7, ok, f"engine/oracle agreement {agree}/{total} "
                  f"(members: normal {members['normal']}/500, subgrad {members['subgrad']}/500)")
    assert ok


def test_gauge_and_segment_laws():
    sg, rg = campaign("gauge_laws", 2, 500)
    ss, rs = campaign("segment_core", 2, 500)
    ok = sg.instances == 500 and ss.instances == 500 and sg.ok and ss.ok
    record(8, ok, f"gauge laws {rg['equal_under_qc']}/{rg['instances']}, "
                  f"segment property {rs['equal_under_qc']}/{rs['instances']}")
    assert ok


def _core_points_hold(doc) -> bool:
    objects, queries = load_problem(doc)
    for i, q in enumerate(queries):
        out = run_query(i, q, objects)
        if q["op"] == "is_core_solid" and out.record["result"] is not None:
            x = tuple(Fraction(v) for v in out.record["result"])
            if not core_contains(objects[q["args"][0]], x):
                return False
    return True


def test_worked_examples(tmp_path):
    files = sorted(FIXTURES.glob("*.json"))
    checked, bad = 0, []
    for fx in files:
        out = tmp_path / f"{fx.stem}.report.json"
        code = cmd_run(str(fx), str(out))
        rep = json.loads(out.read_text())
        for rec in rep["results"]:
            if "expect_ok" in rec:
                checked += 1
                if not rec["expect_ok"]:
                    bad.append(f"{fx.name}#{rec['index']}")
        if code != 0 or not _core_points_hold(json.loads(fx.read_text())):
            bad.append(fx.name)
    ok = bool(files) and not bad
    record(9, ok, f"{checked} worked examples in {len(files)} fixture files reproduced"
                  + (f"; mismatches: {', '.join(bad)}" if bad else ""))
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
