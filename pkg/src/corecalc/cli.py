"""Command line entry point: ``corecalc run`` and ``corecalc fuzz``.

Exit codes: 0 success, 1 rule or property violation, 2 input error,
3 qualification condition unsatisfied under ``--require-qc``.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

from .errors import InputError
from .fuzz import CAMPAIGNS, fuzz
from .problem import FORMAT_VERSION, RULE_OPS, load_problem, run_query

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_QC = 0, 1, 2, 3


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _dump(doc: dict, out: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_run(path: str, out: Optional[str], *, use_oracle: bool = False,
            require_qc: bool = False, seed: int = 0) -> int:
    report = {"version": FORMAT_VERSION, "generated_at": _timestamp(), "source": str(path),
              "flags": {"oracle": use_oracle, "require_qc": require_qc, "seed": seed}}
    try:
        try:
            doc = json.loads(Path(path).read_text())
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from None
        objects, queries = load_problem(doc)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        report["error"] = {"code": exc.code, "message": str(exc)}
        _dump(report, out)
        return EXIT_INPUT

    results, violation, input_error, qc_false = [], False, False, False
    for i, query in enumerate(queries):
        res = run_query(i, query, objects, use_oracle=use_oracle, seed=seed)
        results.append(res.record)
        if res.input_error:
            err = res.record["error"]
            print(f"error: queries[{i}] ({query['op']}): {err['message']}", file=sys.stderr)
        violation |= res.violation
        input_error |= res.input_error
        qc_false |= res.qc_false and query["op"] in RULE_OPS
    report["results"] = results
    report["summary"] = {"queries": len(queries), "violation": violation,
                         "input_error": input_error, "qc_unsatisfied": qc_false}
    _dump(report, out)
    if input_error:
        return EXIT_INPUT
    if violation:
        return EXIT_VIOLATION
    if require_qc and qc_false:
        return EXIT_QC
    return EXIT_OK


def cmd_fuzz(dimension: int, count: int, seed: int, max_den: int = 3,
             out: Optional[str] = None, campaigns: Optional[Sequence[str]] = None) -> int:
    if not 1 <= dimension <= 4:
        print("error: --dimension must be between 1 and 4", file=sys.stderr)
        return EXIT_INPUT
    if count < 0 or max_den < 1:
        print("error: --count must be >= 0 and --max-denominator >= 1", file=sys.stderr)
        return EXIT_INPUT
    out_dir = Path(out) if out else None
    summary, ok = fuzz(dimension, count, seed, max_den, out_dir / "counterexamples" if out_dir else None,
                       campaigns)
    header = f"{'campaign':26s} {'instances':>9s} {'qc_true':>8s} {'eq_qc':>6s} {'trivial':>8s} {'fail':>5s}"
    print(header)
    for name, row in summary.items():
        print(f"{name:26s} {row['instances']:9d} {row['qc_true']:8d} {row['equal_under_qc']:6d} "
              f"{row['trivial_ok']:8d} {row['failures']:5d}")
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        _dump({"generated_at": _timestamp(), "dimension": dimension, "count": count, "seed": seed,
               "max_denominator": max_den, "summary": summary, "ok": ok}, str(out_dir / "summary.json"))
    return EXIT_OK if ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="corecalc", description="Exact convex calculus for polyhedra.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="execute the queries of a problem file")
    r.add_argument("problem", help="problem file (JSON)")
    r.add_argument("-o", "--output", default=None, help="report path (default: stdout)")
    r.add_argument("--oracle", action="store_true", help="cross-check results with definitional oracles")
    r.add_argument("--require-qc", action="store_true", help="exit 3 when a rule's QC is unsatisfied")
    r.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")

    f = sub.add_parser("fuzz", help="randomized rule campaigns")
    f.add_argument("--dimension", type=int, default=2)
    f.add_argument("--count", type=int, default=100, help="instances per campaign")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--max-denominator", type=int, default=3)
    f.add_argument("--out", default=None, help="directory for summary.json and counterexamples")
    f.add_argument("--campaign", action="append", choices=sorted(CAMPAIGNS),
                   help="restrict to a campaign (repeatable)")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args.problem, args.output, use_oracle=args.oracle,
                       require_qc=args.require_qc, seed=args.seed)
    return cmd_fuzz(args.dimension, args.count, args.seed, args.max_denominator, args.out, args.campaign)


if __name__ == "__main__":
    sys.exit(main())
