"""Problem files: JSON descriptors in, JSON reports out, and query dispatch.

Rationals travel as strings ("3", "-2/5"); floats are rejected. Sets are
written with both an irredundant H-representation and a V-representation.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

from . import corealg, normalcalc, oracle, polyhedra, subdiff
from .corealg import DualVector, ExtremalityCertificate, SeparationCertificate
from .errors import CoreCalcError, InputError
from .normalcalc import PolyCone, RuleVerdict, SetValuedMap
from .oracle import OracleReport
from .polyhedra import Polyhedron
from .rational import fmt, q
from .subdiff import LinearMap, MarginalProblem, PolyFunction

FORMAT_VERSION = "1"
HOOK_ENV = "CORECALC_TEST_HOOKS"


# -- decoding -------------------------------------------------------------

def _rat(x, where: str) -> Fraction:
    try:
        return q(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad rational {x!r} ({exc})") from None


def _vector(xs, where: str, n: Optional[int] = None) -> tuple:
    if not isinstance(xs, list):
        raise InputError(f"{where}: expected a list of rationals")
    v = tuple(_rat(x, where) for x in xs)
    if n is not None and len(v) != n:
        raise InputError(f"{where}: expected length {n}, got {len(v)}")
    return v


def _int(d: dict, key: str, where: str) -> int:
    v = d.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise InputError(f"{where}: '{key}' must be a nonnegative integer")
    return v


def parse_set(d: Any, where: str = "set", dim: Optional[int] = None) -> Polyhedron:
    """A polyhedron from ``ineqs``/``eqs`` rows or, if absent, ``vertices``/``rays``."""
    if not isinstance(d, dict):
        raise InputError(f"{where}: expected an object")
    n = _int(d, "dim", where)
    if dim is not None and n != dim:
        raise InputError(f"{where}: dimension {n}, expected {dim}")
    if "ineqs" in d or "eqs" in d:
        def rows(key):
            out = []
            for k, r in enumerate(d.get(key, [])):
                if not isinstance(r, dict) or "a" not in r or "b" not in r:
                    raise InputError(f"{where}.{key}[{k}]: expected {{'a': [...], 'b': ...}}")
                out.append((_vector(r["a"], f"{where}.{key}[{k}].a", n), _rat(r["b"], f"{where}.{key}[{k}].b")))
            return out
        return Polyhedron.from_hrep(n, rows("ineqs"), rows("eqs"))
    verts = [_vector(v, f"{where}.vertices", n) for v in d.get("vertices", [])]
    rays = [_vector(r, f"{where}.rays", n) for r in d.get("rays", [])]
    if rays and not verts:
        raise InputError(f"{where}: rays need at least one vertex")
    if not verts:
        return Polyhedron.empty(n)
    return Polyhedron.from_vrep(n, verts, rays)


def parse_object(name: str, d: Any):
    where = f"objects.{name}"
    if not isinstance(d, dict):
        raise InputError(f"{where}: expected an object")
    kind = d.get("kind")
    try:
        if kind == "polyhedron":
            return parse_set(d, where)
        if kind == "function":
            n = _int(d, "dim", where)
            return PolyFunction(n, parse_set(d.get("epi"), f"{where}.epi", n + 1))
        if kind == "setvaluedmap":
            n, m = _int(d, "dim_in", where), _int(d, "dim_out", where)
            return SetValuedMap(n, m, parse_set(d.get("graph"), f"{where}.graph", n + m))
        if kind == "linearmap":
            r, c = _int(d, "rows", where), _int(d, "cols", where)
            ents = d.get("entries")
            if not isinstance(ents, list) or len(ents) != r:
                raise InputError(f"{where}: 'entries' must have {r} rows")
            return LinearMap(r, c, tuple(_vector(row, f"{where}.entries", c) for row in ents))
    except InputError:
        raise
    except CoreCalcError as exc:
        raise InputError(f"{where}: {exc}") from None
    raise InputError(f"{where}: unknown kind {kind!r}")


# -- encoding -------------------------------------------------------------

def encode_set(P: Polyhedron) -> dict:
    n = P.dim
    if P.is_empty():
        return {"dim": n, "empty": True, "ineqs": [{"a": ["0"] * n, "b": "-1"}], "eqs": [],
                "vertices": [], "rays": []}
    h = polyhedra.facets(P)
    V = P.v
    return {
        "dim": n,
        "empty": False,
        "ineqs": [{"a": [fmt(x) for x in a], "b": fmt(b)} for a, b in h.ineqs],
        "eqs": [{"a": [fmt(x) for x in a], "b": fmt(b)} for a, b in h.eqs],
        "vertices": [[fmt(x) for x in v] for v in V.vertices],
        "rays": [[fmt(x) for x in r] for r in V.rays],
    }


def encode(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, Fraction)):
        return fmt(obj)
    if isinstance(obj, float):
        if obj == math.inf:
            return "+inf"
        if obj == -math.inf:
            return "-inf"
        raise TypeError("floats never appear in reports")
    if isinstance(obj, Polyhedron):
        return encode_set(obj)
    if isinstance(obj, PolyCone):
        return {"cone": {"dim": obj.dim, "empty": obj.empty,
                         "generators": [[fmt(x) for x in g] for g in obj.generators],
                         "lineality": [[fmt(x) for x in g] for g in obj.lineality]},
                "set": encode_set(obj.as_polyhedron())}
    if isinstance(obj, PolyFunction):
        return {"kind": "function", "dim": obj.dim, "epi": encode_set(obj.epi)}
    if isinstance(obj, SetValuedMap):
        return {"kind": "setvaluedmap", "dim_in": obj.dim_in, "dim_out": obj.dim_out,
                "graph": encode_set(obj.graph)}
    if isinstance(obj, LinearMap):
        return {"kind": "linearmap", "rows": obj.rows, "cols": obj.cols,
                "entries": [[fmt(x) for x in r] for r in obj.entries]}
    if isinstance(obj, DualVector):
        return [fmt(x) for x in obj.coeffs]
    if isinstance(obj, RuleVerdict):
        return {"lhs": encode(obj.lhs), "rhs": encode(obj.rhs), "qc_satisfied": obj.qc_satisfied,
                "equal": obj.equal, "rhs_subset_lhs": obj.rhs_subset_lhs,
                "details": {k: encode(v) for k, v in sorted(obj.details.items())}}
    if isinstance(obj, SeparationCertificate):
        return {"f": encode(obj.f),
                "sup_lhs": "+inf" if obj.sup_lhs is None else fmt(obj.sup_lhs),
                "inf_rhs": "-inf" if obj.inf_rhs is None else fmt(obj.inf_rhs),
                "proper_witnesses": encode(obj.proper_witnesses)}
    if isinstance(obj, ExtremalityCertificate):
        return {"verdict": obj.verdict, "direction": encode(obj.direction),
                "checked_ts": [fmt(t) for t in obj.checked_ts]}
    if isinstance(obj, OracleReport):
        return {"claim": obj.claim, "verdict": obj.verdict, "witness": encode(obj.witness),
                "detail": obj.detail, "seed": obj.seed}
    if isinstance(obj, MarginalProblem):
        return {"phi": encode(obj.phi), "F": encode(obj.F)}
    if isinstance(obj, (tuple, list)):
        return [encode(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _set_like(obj) -> Optional[Polyhedron]:
    if isinstance(obj, Polyhedron):
        return obj
    if isinstance(obj, PolyCone):
        return obj.as_polyhedron()
    if isinstance(obj, PolyFunction):
        return obj.epi
    if isinstance(obj, SetValuedMap):
        return obj.graph
    return None


def _is_set_descriptor(d) -> bool:
    return isinstance(d, dict) and "dim" in d and any(
        k in d for k in ("ineqs", "eqs", "vertices", "rays"))


def matches(result: Any, expect: Any) -> bool:
    """Structural comparison of a result against an ``expect`` descriptor.

    Sets compare by exact set equality, dataclasses by the listed fields
    only, scalars exactly.
    """
    S = _set_like(result)
    if S is not None and _is_set_descriptor(expect):
        return polyhedra.set_equal(S, parse_set(expect, "expect", S.dim))
    if isinstance(expect, dict):
        if isinstance(result, dict):
            return all(k in result and matches(result[k], v) for k, v in expect.items())
        return all(hasattr(result, k) and matches(getattr(result, k), v) for k, v in expect.items())
    if isinstance(result, DualVector):
        result = result.coeffs
    if isinstance(expect, list):
        return (isinstance(result, (list, tuple)) and len(result) == len(expect)
                and all(matches(r, e) for r, e in zip(result, expect)))
    if expect is None or isinstance(expect, bool):
        return result is expect or result == expect
    if expect in ("+inf", "inf"):
        return result == math.inf or result is None
    if isinstance(result, (int, Fraction)) and not isinstance(result, bool):
        try:
            return q(expect) == result
        except (TypeError, ValueError):
            return False
    return result == expect


# -- operations -----------------------------------------------------------

P_, F_, M_, A_ = "polyhedron", "function", "setvaluedmap", "linearmap"


@dataclass(frozen=True)
class Op:
    kinds: tuple
    params: tuple
    run: Callable
    oracle: Optional[Callable] = None


def _pt(ctx):
    return ctx["point"]


def _oracle_normal(res, args, ctx):
    Om, x = args[0], ctx["point"]
    if res.empty:
        return oracle.OracleReport(oracle.NORMAL_MEMBER, not Om.contains(x), None, "empty cone")
    vecs = list(res.generators) + list(res.lineality) + [tuple(-v for v in l) for l in res.lineality]
    for g in vecs:
        r = oracle.oracle_normal_member(Om, x, g)
        if not r.verdict:
            return r
    return oracle.OracleReport(oracle.NORMAL_MEMBER, True)


def _oracle_subgrad(res, args, ctx):
    phi, x = args[0], ctx["point"]
    V = res.v
    pts = list(V.vertices) + [tuple(a + b for a, b in zip(v, r)) for v in V.vertices for r in V.rays]
    for f in pts:
        r = oracle.oracle_subgrad_member(phi, x, f)
        if not r.verdict:
            return r
    return oracle.OracleReport(oracle.SUBGRAD_MEMBER, True)


def _oracle_core(res, args, ctx):
    r = oracle.oracle_core_member(args[0], ctx["point"])
    return oracle.OracleReport(r.claim, r.verdict == res, r.witness, "agreement with the strict-facet rule")


def _oracle_rule(res, args, ctx):
    L = res.lhs.as_polyhedron() if isinstance(res.lhs, PolyCone) else res.lhs
    R = res.rhs.as_polyhedron() if isinstance(res.rhs, PolyCone) else res.rhs
    r = oracle.oracle_rule_equal(L, R, 30, ctx["seed"])
    # a sampled asymmetry must be matched by the exact verdict
    agree = r.verdict or not res.equal
    return oracle.OracleReport(r.claim, agree, r.witness, r.detail, r.seed)


def _oracle_sep_point(res, args, ctx):
    if res is None:
        r = oracle.oracle_core_member(args[0], ctx["point"])
        return oracle.OracleReport(oracle.SEPARATION_VALID, r.verdict, r.witness, "absent iff core point")
    return oracle.oracle_point_separation(args[0], ctx["point"], res.f.coeffs, res.proper_witnesses[0])


def _oracle_sep_sets(res, args, ctx):
    if res is None:
        D = polyhedra.difference(args[0], args[1])
        r = oracle.oracle_core_member(D, (0,) * D.dim)
        return oracle.OracleReport(oracle.SEPARATION_VALID, r.verdict, r.witness, "absent iff 0 in the core")
    return oracle.oracle_set_separation(args[0], args[1], res.f.coeffs, res.proper_witnesses)


def _marg(args):
    return MarginalProblem(args[0], args[1])


OPS: dict[str, Op] = {
    # polyhedra
    "canonical": Op((P_,), (), lambda a, c: polyhedra.canonical(a[0])),
    "dimension": Op((P_,), (), lambda a, c: polyhedra.dimension(a[0])),
    "is_empty": Op((P_,), (), lambda a, c: a[0].is_empty()),
    "contains": Op((P_,), ("point",), lambda a, c: a[0].contains(_pt(c))),
    "intersect": Op((P_, P_), (), lambda a, c: polyhedra.intersect(*a)),
    "product": Op((P_, P_), (), lambda a, c: polyhedra.product(*a)),
    "minkowski_sum": Op((P_, P_), (), lambda a, c: polyhedra.minkowski_sum(*a)),
    "difference": Op((P_, P_), (), lambda a, c: polyhedra.difference(*a)),
    "negate": Op((P_,), (), lambda a, c: polyhedra.negate(a[0])),
    "project": Op((P_,), ("coords",), lambda a, c: polyhedra.project(a[0], c["coords"])),
    "set_equal": Op((P_, P_), (), lambda a, c: polyhedra.set_equal(*a)),
    "is_subset": Op((P_, P_), (), lambda a, c: polyhedra.is_subset(*a)),
    # cores and separation
    "core_contains": Op((P_,), ("point",), lambda a, c: corealg.core_contains(a[0], _pt(c)), _oracle_core),
    "is_core_solid": Op((P_,), (), lambda a, c: corealg.is_core_solid(a[0])),
    "is_absorbing": Op((P_,), (), lambda a, c: corealg.is_absorbing(a[0])),
    "gauge": Op((P_,), ("point",), lambda a, c: corealg.gauge(a[0], _pt(c))),
    "separate_point": Op((P_,), ("point",), lambda a, c: corealg.separate_point(a[0], _pt(c)), _oracle_sep_point),
    "separate_sets": Op((P_, P_), (), lambda a, c: corealg.separate_sets(*a), _oracle_sep_sets),
    "is_extremal": Op((P_, P_), (), lambda a, c: corealg.is_extremal(*a)),
    "extremal_principle": Op((P_, P_), ("point",), lambda a, c: corealg.extremal_principle(a[0], a[1], _pt(c))),
    # normals and coderivatives
    "normal_cone": Op((P_,), ("point",), lambda a, c: normalcalc.normal_cone(a[0], _pt(c)), _oracle_normal),
    "cone_intersect": Op((P_, P_), (), lambda a, c: normalcalc.cone_intersect(
        PolyCone.from_polyhedron(a[0]), PolyCone.from_polyhedron(a[1]))),
    "intersection_rule": Op((P_, P_), ("point",),
                            lambda a, c: normalcalc.intersection_rule(a[0], a[1], _pt(c)), _oracle_rule),
    "graph_core_check": Op((M_,), ("point",), lambda a, c: normalcalc.graph_core_check(a[0], _pt(c))),
    "domain": Op((M_,), (), lambda a, c: a[0].domain()),
    "value": Op((M_,), ("point",), lambda a, c: a[0].value(_pt(c))),
    "coderivative": Op((M_,), ("point", "g"), lambda a, c: normalcalc.coderivative(a[0], _pt(c), c["g"])),
    "map_sum": Op((M_, M_), (), lambda a, c: normalcalc.map_sum(*a)),
    "sum_decompositions": Op((M_, M_), ("point",),
                             lambda a, c: normalcalc.sum_decompositions(a[0], a[1], _pt(c))),
    "coderivative_sum_rule": Op((M_, M_), ("point", "decomposition", "g"),
                                lambda a, c: normalcalc.coderivative_sum_rule(
                                    a[0], a[1], _pt(c), c["decomposition"], c["g"]), _oracle_rule),
    "map_compose": Op((M_, M_), (), lambda a, c: normalcalc.map_compose(*a)),
    "intermediate_points": Op((M_, M_), ("point",),
                              lambda a, c: normalcalc.intermediate_points(a[0], a[1], _pt(c))),
    "coderivative_chain_rule": Op((M_, M_), ("point", "ybar", "h"),
                                  lambda a, c: normalcalc.coderivative_chain_rule(
                                      a[0], a[1], _pt(c), c["ybar"], c["h"]), _oracle_rule),
    # functions
    "epigraph": Op((F_,), (), lambda a, c: a[0].epi),
    "evaluate": Op((F_,), ("point",), lambda a, c: subdiff.evaluate(a[0], _pt(c))),
    "subdifferential": Op((F_,), ("point",), lambda a, c: subdiff.subdifferential(a[0], _pt(c)), _oracle_subgrad),
    "fn_add": Op((F_, F_), (), lambda a, c: subdiff.fn_add(*a)),
    "subdiff_sum_rule": Op((F_, F_), ("point",),
                           lambda a, c: subdiff.subdiff_sum_rule(a[0], a[1], _pt(c)), _oracle_rule),
    "fn_precompose": Op((F_, A_), (), lambda a, c: subdiff.fn_precompose(*a)),
    "adjoint_image": Op((A_, P_), (), lambda a, c: subdiff.adjoint_image(*a)),
    "subdiff_chain_rule": Op((F_, A_), ("point",),
                             lambda a, c: subdiff.subdiff_chain_rule(a[0], a[1], _pt(c)), _oracle_rule),
    "indicator": Op((P_,), (), lambda a, c: subdiff.indicator(a[0])),
    "marginal_function": Op((F_, M_), (), lambda a, c: subdiff.marginal_function(_marg(a))),
    "argmin_set": Op((F_, M_), ("point",), lambda a, c: subdiff.argmin_set(_marg(a), _pt(c))),
    "marginal_subdiff_rule": Op((F_, M_), ("point", "ybar"),
                                lambda a, c: subdiff.marginal_subdiff_rule(_marg(a), _pt(c), c["ybar"]),
                                _oracle_rule),
    # definitional checkers
    "oracle_normal_member": Op((P_,), ("point", "f"),
                               lambda a, c: oracle.oracle_normal_member(a[0], _pt(c), c["f"])),
    "oracle_subgrad_member": Op((F_,), ("point", "f"),
                                lambda a, c: oracle.oracle_subgrad_member(a[0], _pt(c), c["f"])),
    "oracle_core_member": Op((P_,), ("point",), lambda a, c: oracle.oracle_core_member(a[0], _pt(c))),
    "oracle_rule_equal": Op((P_, P_), (),
                            lambda a, c: oracle.oracle_rule_equal(a[0], a[1], c.get("samples", 50), c["seed"])),
}

RULE_OPS = frozenset(k for k, v in OPS.items() if k.endswith("_rule"))
_KIND_OF = {Polyhedron: P_, PolyFunction: F_, SetValuedMap: M_, LinearMap: A_}


def kind_of(obj) -> Optional[str]:
    for cls, k in _KIND_OF.items():
        if isinstance(obj, cls):
            return k
    return None


def _parse_params(op: Op, query: dict, where: str) -> dict:
    ctx: dict = {}
    for p in op.params:
        if p not in query:
            raise InputError(f"{where}: missing '{p}'")
        if p == "coords":
            cs = query[p]
            if not isinstance(cs, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in cs):
                raise InputError(f"{where}: 'coords' must be a list of integers")
            ctx[p] = cs
        else:
            ctx[p] = _vector(query[p], f"{where}.{p}")
    if "samples" in query:
        ctx["samples"] = _int(query, "samples", where)
    return ctx


@dataclass
class QueryOutcome:
    record: dict
    violation: bool = False
    input_error: bool = False
    qc_false: bool = False


def run_query(index: int, query: dict, objects: dict, *, use_oracle: bool = False, seed: int = 0) -> QueryOutcome:
    """Execute one validated query and build its report record."""
    op = OPS[query["op"]]
    where = f"queries[{index}]"
    record: dict = {"index": index, "op": query["op"], "inputs": query}
    out = QueryOutcome(record)
    try:
        args = [objects[name] for name in query["args"]]
        for name, obj, want in zip(query["args"], args, op.kinds):
            if kind_of(obj) != want:
                raise InputError(f"{where}: object {name!r} is not a {want}")
        ctx = _parse_params(op, query, where)
        ctx["seed"] = seed
        result = op.run(args, ctx)
        if isinstance(result, RuleVerdict) and "inject_rhs" in query:
            if os.environ.get(HOOK_ENV) != "1":
                raise InputError(f"{where}: 'inject_rhs' is a test hook; set {HOOK_ENV}=1")
            L = result.lhs.as_polyhedron() if isinstance(result.lhs, PolyCone) else result.lhs
            injected = parse_set(query["inject_rhs"], f"{where}.inject_rhs", L.dim)
            result = normalcalc.compare(result.lhs, injected, result.qc_satisfied,
                                        dict(result.details, injected=True))
    except CoreCalcError as exc:
        record["error"] = {"code": exc.code, "message": str(exc)}
        out.input_error = True
        return out
    if isinstance(result, tuple) and query["op"] == "graph_core_check":
        record["result"] = {"lhs_membership": result[0], "rhs_membership": result[1]}
        record["agree"] = result[0] == result[1]
        out.violation = not record["agree"]
    else:
        record["result"] = encode(result)
    if isinstance(result, RuleVerdict):
        out.violation = result.violation
        out.qc_false = not result.qc_satisfied
    if use_oracle and op.oracle is not None:
        rep = op.oracle(result, args, ctx)
        record["oracle"] = encode(rep)
        out.violation = out.violation or not rep.verdict
    if "expect" in query:
        ok = matches(result if not isinstance(result, tuple) or query["op"] != "graph_core_check"
                     else list(result), query["expect"])
        record["expect_ok"] = ok
        out.violation = out.violation or not ok
    if "as" in query:
        objects[query["as"]] = result.as_polyhedron() if isinstance(result, PolyCone) else result
    return out


def load_problem(doc: Any) -> tuple[dict, list]:
    """Validate a problem document; returns ``(objects, queries)``."""
    if not isinstance(doc, dict):
        raise InputError("problem file must be a JSON object")
    if str(doc.get("version", "")) != FORMAT_VERSION:
        raise InputError(f"unsupported version {doc.get('version')!r}; expected {FORMAT_VERSION!r}")
    raw = doc.get("objects", {})
    if not isinstance(raw, dict):
        raise InputError("'objects' must be an object")
    objects = {name: parse_object(name, d) for name, d in raw.items()}
    queries = doc.get("queries", [])
    if not isinstance(queries, list):
        raise InputError("'queries' must be a list")
    known = {name: kind_of(o) for name, o in objects.items()}
    for i, qd in enumerate(queries):
        where = f"queries[{i}]"
        if not isinstance(qd, dict):
            raise InputError(f"{where}: expected an object")
        name = qd.get("op")
        if name not in OPS:
            raise InputError(f"{where}: unknown op {name!r}")
        op = OPS[name]
        args = qd.get("args", [])
        if not isinstance(args, list) or len(args) != len(op.kinds):
            raise InputError(f"{where}: '{name}' takes {len(op.kinds)} object argument(s)")
        for a, want in zip(args, op.kinds):
            if a not in known:
                raise InputError(f"{where}: undefined object {a!r}")
            if known[a] is not None and known[a] != want:
                raise InputError(f"{where}: object {a!r} is a {known[a]}, expected a {want}")
        if "as" in qd:
            if not isinstance(qd["as"], str):
                raise InputError(f"{where}: 'as' must be a name")
            known[qd["as"]] = None  # kind known only after running
    return objects, queries
