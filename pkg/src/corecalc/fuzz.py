"""Randomized campaigns that run the calculus rules as executable statements.

Instances are built around a chosen point so that constraints are active
there; otherwise normal cones would almost always be trivial. Every
instance has its own RNG derived from ``(seed, campaign, index)`` and can
be replayed alone.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from . import corealg, normalcalc, oracle, polyhedra, subdiff
from .errors import CoreCalcError
from .normalcalc import SetValuedMap
from .polyhedra import Polyhedron
from .problem import FORMAT_VERSION, OPS, encode, run_query
from .rational import dot, fmt

MAX_ATTEMPTS_FACTOR = 20


# -- random data ----------------------------------------------------------

@dataclass
class Gen:
    rng: random.Random
    max_den: int = 3

    def rat(self, lo: int = -3, hi: int = 3) -> Fraction:
        d = self.rng.randint(1, self.max_den)
        return Fraction(self.rng.randint(lo * d, hi * d), d)

    def pos(self, hi: int = 3) -> Fraction:
        d = self.rng.randint(1, self.max_den)
        return Fraction(self.rng.randint(1, hi * d), d)

    def point(self, n: int) -> tuple:
        return tuple(self.rat() for _ in range(n))

    def normal(self, n: int) -> tuple:
        while True:
            a = tuple(self.rng.randint(-3, 3) for _ in range(n))
            if any(a):
                return a

    def halfspaces_through(self, p: tuple, rows: int, active: float = 0.5) -> list:
        out = []
        for _ in range(rows):
            a = self.normal(len(p))
            slack = 0 if self.rng.random() < active else self.pos()
            out.append((a, dot(a, p) + slack))
        return out

    def poly_through(self, p: tuple, rows: Optional[int] = None, active: float = 0.5,
                     eq_prob: float = 0.0) -> Polyhedron:
        n = len(p)
        if rows is None:
            rows = self.rng.randint(1, n + 2)
        eqs = []
        if self.rng.random() < eq_prob:
            a = self.normal(n)
            eqs.append((a, dot(a, p)))
        return Polyhedron.from_hrep(n, self.halfspaces_through(p, rows, active), eqs)

    def map_through(self, x: tuple, y: tuple, eq_prob: float = 0.0) -> SetValuedMap:
        k = len(x) + len(y)
        G = self.poly_through(x + y, self.rng.randint(1, k + 1), eq_prob=eq_prob)
        return SetValuedMap(len(x), len(y), G)

    def dual(self, m: int) -> tuple:
        return tuple(self.rat(-2, 2) for _ in range(m))

    def cone_member(self, gens: list, lines: list, m: int) -> tuple:
        v = [Fraction(0)] * m
        for g in gens:
            c = Fraction(self.rng.randint(0, 3), self.rng.randint(1, self.max_den))
            for j in range(m):
                v[j] += c * g[j]
        for l in lines:
            c = self.rat(-2, 2)
            for j in range(m):
                v[j] += c * l[j]
        return tuple(v)


def normal_generators(Omega: Polyhedron, p: tuple):
    """Active normals and equation normals at ``p`` straight from the rows."""
    return ([a for a, b in Omega.h.ineqs if dot(a, p) == b], [c for c, _ in Omega.h.eqs])


# -- cases ----------------------------------------------------------------

@dataclass
class Case:
    """One instance: named objects plus the queries that exercise it."""

    objects: dict
    queries: list

    def document(self) -> dict:
        objs = {}
        for name, obj in self.objects.items():
            enc = encode(obj)
            if isinstance(obj, Polyhedron):
                enc = dict(kind="polyhedron", dim=enc["dim"], ineqs=enc["ineqs"], eqs=enc["eqs"])
            objs[name] = enc
        return {"version": FORMAT_VERSION, "objects": objs, "queries": self.queries}


@dataclass
class Outcome:
    qc: bool = True
    equal: bool = True
    trivial_ok: bool = True
    counted: bool = True
    note: str = ""

    @property
    def failed(self) -> bool:
        return not self.trivial_ok or (self.qc and not self.equal)


@dataclass
class CampaignStats:
    name: str
    instances: int = 0
    qc_true: int = 0
    equal_under_qc: int = 0
    trivial_ok: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    def row(self) -> dict:
        return {"instances": self.instances, "qc_true": self.qc_true,
                "equal_under_qc": self.equal_under_qc, "trivial_ok": self.trivial_ok,
                "skipped": self.skipped, "failures": len(self.failures)}

    @property
    def ok(self) -> bool:
        return not self.failures and self.qc_true == self.equal_under_qc and self.trivial_ok == self.instances


def _q(v) -> list:
    return [fmt(x) for x in v]


def _rule_check(case: Case) -> Outcome:
    (query,) = case.queries
    op = OPS[query["op"]]
    args = [case.objects[a] for a in query["args"]]
    ctx = {k: tuple(Fraction(x) for x in v) for k, v in query.items()
           if k not in ("op", "args")}
    res = op.run(args, ctx)
    return Outcome(res.qc_satisfied, res.equal, res.rhs_subset_lhs)


# -- generators -----------------------------------------------------------

def gen_intersection(g: Gen, n: int) -> Case:
    x = g.point(n)
    O1 = g.poly_through(x, eq_prob=0.1)
    O2 = g.poly_through(x, eq_prob=0.1)
    return Case({"O1": O1, "O2": O2},
                [{"op": "intersection_rule", "args": ["O1", "O2"], "point": _q(x)}])


def _dims(g: Gen, dimension: int) -> tuple:
    top = max(1, min(2, dimension))
    return g.rng.randint(1, top), g.rng.randint(1, top)


def _engineered_dual(g: Gen, G: Polyhedron, p: tuple, lo: int, hi: int) -> tuple:
    """Half the time minus the output block of a normal at ``p``, so slices are nonempty."""
    m = hi - lo
    if g.rng.random() < 0.5:
        gens, lines = normal_generators(G, p)
        v = g.cone_member(gens, lines, G.dim)
        return tuple(-c for c in v[lo:hi])
    return g.dual(m)


def gen_coderivative_sum(g: Gen, dimension: int) -> Case:
    n, m = _dims(g, dimension)
    x, y1, y2 = g.point(n), g.point(m), g.point(m)
    F1, F2 = g.map_through(x, y1, 0.1), g.map_through(x, y2, 0.1)
    y = tuple(a + b for a, b in zip(y1, y2))
    src = normalcalc.map_sum(F1, F2).graph if g.rng.random() < 0.6 else F1.graph
    gv = _engineered_dual(g, src, x + (y if src is not F1.graph else y1), n, n + m)
    return Case({"F1": F1, "F2": F2}, [{
        "op": "coderivative_sum_rule", "args": ["F1", "F2"], "point": _q(x + y),
        "decomposition": _q(y1 + y2), "g": _q(gv)}])


def gen_coderivative_chain(g: Gen, dimension: int) -> Case:
    n, m = _dims(g, dimension)
    p = g.rng.randint(1, max(1, min(2, dimension)))
    x, y, z = g.point(n), g.point(m), g.point(p)
    F, G = g.map_through(x, y, 0.1), g.map_through(y, z, 0.1)
    if g.rng.random() < 0.6:
        h = _engineered_dual(g, normalcalc.map_compose(G, F).graph, x + z, n, n + p)
    else:
        h = _engineered_dual(g, G.graph, y + z, m, m + p)
    return Case({"F": F, "G": G}, [{
        "op": "coderivative_chain_rule", "args": ["F", "G"], "point": _q(x + z),
        "ybar": _q(y), "h": _q(h)}])


def _function_through(g: Gen, p: tuple, dom_prob: float = 0.3) -> subdiff.PolyFunction:
    """Max of affine pieces, several of them active at ``p`` so that ``p`` is a kink."""
    n = len(p)
    level = g.rat()
    pieces = []
    for _ in range(g.rng.randint(1, n + 2)):
        c = g.point(n)
        d = level - dot(c, p) - (0 if g.rng.random() < 0.6 else g.pos())
        pieces.append((c, d))
    dom = g.poly_through(p, g.rng.randint(1, n + 1)) if g.rng.random() < dom_prob else None
    return subdiff.PolyFunction.max_affine(pieces, dom)


def gen_subdiff_sum(g: Gen, dimension: int) -> Case:
    n = g.rng.randint(1, max(1, min(2, dimension)))
    x = g.point(n)
    return Case({"phi1": _function_through(g, x), "phi2": _function_through(g, x)},
                [{"op": "subdiff_sum_rule", "args": ["phi1", "phi2"], "point": _q(x)}])


def gen_subdiff_chain(g: Gen, dimension: int) -> Case:
    n, m = _dims(g, dimension)
    A = subdiff.LinearMap(m, n, tuple(tuple(Fraction(g.rng.randint(-2, 2)) for _ in range(n))
                                      for _ in range(m)))
    x = g.point(n)
    phi = _function_through(g, A.apply(x))
    return Case({"phi": phi, "A": A}, [{"op": "subdiff_chain_rule", "args": ["phi", "A"], "point": _q(x)}])


def gen_marginal(g: Gen, dimension: int) -> Optional[Case]:
    n, m = _dims(g, dimension)
    x, y0 = g.point(n), g.point(m)
    F = g.map_through(x, y0, 0.1)
    if g.rng.random() < 0.5:
        # bound the y-block so the infimum is finite more often
        ineqs = list(F.graph.h.ineqs)
        for j in range(m):
            e = [0] * (n + m)
            e[n + j] = 1
            ineqs.append((tuple(e), y0[j] + g.pos()))
            ineqs.append((tuple(-v for v in e), -y0[j] + g.pos()))
        F = SetValuedMap(n, m, Polyhedron.from_hrep(n + m, ineqs, F.graph.h.eqs))
    phi = _function_through(g, x + y0, 0.2)
    try:
        M = subdiff.MarginalProblem(phi, F)
        S = subdiff.argmin_set(M, x)
    except CoreCalcError:
        return None
    if S.is_empty():
        return None
    V = S.v
    if V.vertices and g.rng.random() < 0.7:
        y = g.rng.choice(V.vertices)
    else:
        y = polyhedra.relative_interior_point(S)
    return Case({"phi": phi, "F": F}, [{
        "op": "marginal_subdiff_rule", "args": ["phi", "F"], "point": _q(x), "ybar": _q(y)}])


# -- property checks (non-rule campaigns) ----------------------------------

def _solid_poly(g: Gen, n: int, tries: int = 50) -> tuple:
    for _ in range(tries):
        p = g.point(n)
        O = g.poly_through(p, g.rng.randint(1, n + 2))
        if corealg.is_core_solid(O) is not None:
            return O, p
    return Polyhedron.box([-1] * n, [1] * n), (Fraction(1),) * n


def _probe_points(g: Gen, O: Polyhedron, base: tuple) -> list:
    w = corealg.is_core_solid(O)
    pts = [base, g.point(O.dim)]
    if w is not None:
        pts.append(tuple(w))
        pts.append(tuple((a + b) / 2 for a, b in zip(w, base)))
    if O.v.vertices:
        pts.append(g.rng.choice(O.v.vertices))
    return pts


def gen_graph_core(g: Gen, dimension: int) -> Case:
    n, m = _dims(g, dimension)
    G, p = _solid_poly(g, n + m)
    pt = g.rng.choice(_probe_points(g, G, p))
    return Case({"F": SetValuedMap(n, m, G)}, [{"op": "graph_core_check", "args": ["F"], "point": _q(pt)}])


def check_graph_core(case: Case) -> Outcome:
    F = case.objects["F"]
    pt = tuple(Fraction(v) for v in case.queries[0]["point"])
    a, b = normalcalc.graph_core_check(F, pt)
    return Outcome(True, a == b, True, note=f"lhs={a} rhs={b}")


def gen_point_separation(g: Gen, dimension: int) -> Case:
    O, p = _solid_poly(g, dimension)
    x0 = g.rng.choice(_probe_points(g, O, p))
    return Case({"O": O}, [{"op": "separate_point", "args": ["O"], "point": _q(x0)},
                           {"op": "core_contains", "args": ["O"], "point": _q(x0)}])


def check_point_separation(case: Case) -> Outcome:
    O = case.objects["O"]
    x0 = tuple(Fraction(v) for v in case.queries[0]["point"])
    cert = corealg.separate_point(O, x0)
    inside = corealg.core_contains(O, x0)
    if (cert is None) != inside:
        return Outcome(True, False, True, note="certificate iff not in core fails")
    if cert is not None:
        rep = oracle.oracle_point_separation(O, x0, cert.f.coeffs, cert.proper_witnesses[0])
        if not rep.verdict:
            return Outcome(True, False, True, note=f"certificate rejected: {rep.detail}")
        if cert.sup_lhs is None or cert.sup_lhs > cert.f(x0):
            return Outcome(True, False, True, note="LP supremum exceeds f(x0)")
    if oracle.oracle_core_member(O, x0).verdict != inside:
        return Outcome(True, False, True, note="directional core test disagrees")
    return Outcome()


def gen_extremality(g: Gen, dimension: int) -> Case:
    n = dimension
    O1, p1 = _solid_poly(g, n)
    O2, p2 = _solid_poly(g, n)
    if g.rng.random() < 0.5:
        # push the sets to opposite sides of a common hyperplane
        a = g.normal(n)
        c = dot(a, p1) + (0 if g.rng.random() < 0.6 else g.rat(0, 2))
        O1 = polyhedra.intersect(O1, Polyhedron.from_hrep(n, [(a, c)]))
        O2 = polyhedra.intersect(O2, Polyhedron.from_hrep(n, [(tuple(-v for v in a), -c)]))
    objs = {"O1": O1, "O2": O2}
    qs = [{"op": "is_extremal", "args": ["O1", "O2"]}, {"op": "separate_sets", "args": ["O1", "O2"]}]
    return Case(objs, qs)


def check_extremality(case: Case) -> Outcome:
    O1, O2 = case.objects["O1"], case.objects["O2"]
    if O1.is_empty() or O2.is_empty():
        return Outcome(counted=False)
    D = polyhedra.difference(O1, O2)
    if corealg.is_core_solid(D) is None:
        return Outcome(counted=False)
    ext = corealg.is_extremal(O1, O2)
    cert = corealg.separate_sets(O1, O2)
    if ext.verdict != (cert is not None):
        return Outcome(True, False, True, note="extremality and separation disagree")
    if cert is not None:
        rep = oracle.oracle_set_separation(O1, O2, cert.f.coeffs, cert.proper_witnesses)
        if not rep.verdict:
            return Outcome(True, False, True, note=f"separation rejected: {rep.detail}")
    if ext.verdict:
        if len(ext.checked_ts) != 21:
            return Outcome(True, False, True, note="shift list incomplete")
        for t in ext.checked_ts:
            if not corealg.shift_is_disjoint(O1, O2, ext.direction, t):
                return Outcome(True, False, True, note=f"shift {t} intersects")
        if corealg.core_intersects(O1, O2) is not None or corealg.core_intersects(O2, O1) is not None:
            return Outcome(True, False, True, note="extremal yet a core meets the other set")
    common = polyhedra.intersect(O1, O2)
    if not common.is_empty():
        xbar = polyhedra.relative_interior_point(common)
        f = corealg.extremal_principle(O1, O2, xbar)
        if (f is not None) != ext.verdict:
            return Outcome(True, False, True, note="extremal principle disagrees")
        if f is not None:
            if not (oracle.oracle_normal_member(O1, xbar, f.coeffs).verdict
                    and oracle.oracle_normal_member(O2, xbar, tuple(-c for c in f.coeffs)).verdict):
                return Outcome(True, False, True, note="principle functional fails the normal oracle")
    return Outcome()


def gen_gauge(g: Gen, dimension: int) -> Case:
    n = dimension
    rows = [(g.normal(n), g.pos()) for _ in range(g.rng.randint(n + 1, n + 3))]
    O = Polyhedron.from_hrep(n, rows)
    return Case({"O": O}, [{"op": "gauge", "args": ["O"], "point": _q(g.point(n)), "y": _q(g.point(n)),
                            "t": fmt(g.pos())}])


def check_gauge(case: Case) -> Outcome:
    O = case.objects["O"]
    qd = case.queries[0]
    x = tuple(Fraction(v) for v in qd["point"])
    y = tuple(Fraction(v) for v in qd["y"])
    t = Fraction(qd["t"])
    gx, gy = corealg.gauge(O, x), corealg.gauge(O, y)
    if corealg.gauge(O, tuple(a + b for a, b in zip(x, y))) > gx + gy:
        return Outcome(True, False, True, note="subadditivity")
    if corealg.gauge(O, tuple(t * a for a in x)) != t * gx:
        return Outcome(True, False, True, note="positive homogeneity")
    return Outcome()


def gen_segment(g: Gen, dimension: int) -> Case:
    O, p = _solid_poly(g, dimension)
    a = corealg.is_core_solid(O)
    a = tuple((u + v) / 2 for u, v in zip(a, polyhedra.relative_interior_point(O))) if g.rng.random() < 0.5 else a
    V = O.v
    b = g.rng.choice([p] + list(V.vertices))
    if V.rays and g.rng.random() < 0.5:
        r = g.rng.choice(V.rays)
        b = tuple(u + g.pos() * v for u, v in zip(b, r))
    lam = Fraction(g.rng.randint(1, 8), 8)
    return Case({"O": O}, [{"op": "core_contains", "args": ["O"], "point": _q(a), "b": _q(b), "lam": fmt(lam)}])


def check_segment(case: Case) -> Outcome:
    O = case.objects["O"]
    qd = case.queries[0]
    a = tuple(Fraction(v) for v in qd["point"])
    b = tuple(Fraction(v) for v in qd["b"])
    lam = Fraction(qd["lam"])
    if not corealg.core_contains(O, a) or not O.contains(b):
        return Outcome(counted=False)
    x = tuple(lam * u + (1 - lam) * v for u, v in zip(a, b))
    return Outcome(True, corealg.core_contains(O, x), True, note="segment point left the core")


def gen_normal_oracle(g: Gen, dimension: int) -> Case:
    n = dimension
    x = g.point(n)
    O = g.poly_through(x, eq_prob=0.15)
    if g.rng.random() < 0.5:
        gens, lines = normal_generators(O, x)
        f = g.cone_member(gens, lines, n)
    else:
        f = g.dual(n)
    return Case({"O": O}, [{"op": "oracle_normal_member", "args": ["O"], "point": _q(x), "f": _q(f)},
                           {"op": "normal_cone", "args": ["O"], "point": _q(x)}])


def check_normal_oracle(case: Case) -> Outcome:
    O = case.objects["O"]
    qd = case.queries[0]
    x = tuple(Fraction(v) for v in qd["point"])
    f = tuple(Fraction(v) for v in qd["f"])
    engine = normalcalc.normal_cone(O, x).contains(f)
    return Outcome(True, engine == oracle.oracle_normal_member(O, x, f).verdict, True,
                   note=f"engine={engine}")


def gen_subgrad_oracle(g: Gen, dimension: int) -> Case:
    n = g.rng.randint(1, max(1, min(2, dimension)))
    x = g.point(n)
    phi = _function_through(g, x)
    S = subdiff.subdifferential(phi, x)
    if g.rng.random() < 0.5 and not S.is_empty():
        V = S.v
        f = list(g.rng.choice(V.vertices))
        for r in V.rays:
            c = Fraction(g.rng.randint(0, 3), g.rng.randint(1, g.max_den))
            f = [u + c * v for u, v in zip(f, r)]
        f = tuple(f)
    else:
        f = g.dual(n)
    return Case({"phi": phi}, [{"op": "oracle_subgrad_member", "args": ["phi"], "point": _q(x), "f": _q(f)},
                               {"op": "subdifferential", "args": ["phi"], "point": _q(x)}])


def check_subgrad_oracle(case: Case) -> Outcome:
    phi = case.objects["phi"]
    qd = case.queries[0]
    x = tuple(Fraction(v) for v in qd["point"])
    f = tuple(Fraction(v) for v in qd["f"])
    engine = subdiff.subdifferential(phi, x).contains(f)
    return Outcome(True, engine == oracle.oracle_subgrad_member(phi, x, f).verdict, True,
                   note=f"engine={engine}")


@dataclass(frozen=True)
class Campaign:
    generate: Callable
    check: Callable = _rule_check


CAMPAIGNS: dict[str, Campaign] = {
    "intersection_rule": Campaign(gen_intersection),
    "coderivative_sum_rule": Campaign(gen_coderivative_sum),
    "coderivative_chain_rule": Campaign(gen_coderivative_chain),
    "marginal_subdiff_rule": Campaign(gen_marginal),
    "subdiff_sum_rule": Campaign(gen_subdiff_sum),
    "subdiff_chain_rule": Campaign(gen_subdiff_chain),
    "graph_core": Campaign(gen_graph_core, check_graph_core),
    "extremality_chain": Campaign(gen_extremality, check_extremality),
    "point_separation": Campaign(gen_point_separation, check_point_separation),
    "segment_core": Campaign(gen_segment, check_segment),
    "gauge_laws": Campaign(gen_gauge, check_gauge),
    "normal_oracle": Campaign(gen_normal_oracle, check_normal_oracle),
    "subgrad_oracle": Campaign(gen_subgrad_oracle, check_subgrad_oracle),
}


def instance_rng(seed: int, name: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{index}")


def _safe_check(camp: Campaign, case: Case) -> Outcome:
    try:
        return camp.check(case)
    except CoreCalcError as exc:
        return Outcome(counted=False, note=f"{exc.code}: {exc}")


def run_campaign(name: str, dimension: int, count: int, seed: int, max_den: int = 3,
                 qc_target: bool = False, on_case: Optional[Callable] = None) -> CampaignStats:
    """Run ``count`` instances (or, with ``qc_target``, until ``count`` have QC true)."""
    camp = CAMPAIGNS[name]
    stats = CampaignStats(name)
    limit = count * MAX_ATTEMPTS_FACTOR
    i = 0
    while (stats.qc_true if qc_target else stats.instances) < count and i < limit:
        g = Gen(instance_rng(seed, name, i), max_den)
        i += 1
        try:
            case = camp.generate(g, dimension)
        except CoreCalcError:
            case = None
        if case is None:
            stats.skipped += 1
            continue
        out = _safe_check(camp, case)
        if not out.counted:
            stats.skipped += 1
            continue
        stats.instances += 1
        stats.trivial_ok += out.trivial_ok
        if out.qc:
            stats.qc_true += 1
            stats.equal_under_qc += out.equal
        if out.failed:
            stats.failures.append((i - 1, shrink(camp, case), out.note))
        if on_case is not None:
            on_case(case, out)
    return stats


def _drop_row(P: Polyhedron, k: int) -> Polyhedron:
    rows = list(P.h.ineqs)
    del rows[k]
    return Polyhedron.from_hrep(P.dim, rows, P.h.eqs)


def _variants(obj):
    if isinstance(obj, Polyhedron):
        for k in range(len(obj.h.ineqs)):
            yield _drop_row(obj, k)
    elif isinstance(obj, SetValuedMap):
        for G in _variants(obj.graph):
            yield SetValuedMap(obj.dim_in, obj.dim_out, G)
    elif isinstance(obj, subdiff.PolyFunction):
        for E in _variants(obj.epi):
            try:
                yield subdiff.PolyFunction(obj.dim, E)
            except CoreCalcError:
                continue


def shrink(camp: Campaign, case: Case) -> Case:
    """Greedily drop inequality rows while the instance still fails."""
    improved = True
    while improved:
        improved = False
        for name, obj in list(case.objects.items()):
            for v in _variants(obj):
                trial = Case(dict(case.objects, **{name: v}), case.queries)
                if _safe_check(camp, trial).failed:
                    case, improved = trial, True
                    break
            if improved:
                break
    return case


def fuzz(dimension: int, count: int, seed: int, max_den: int = 3,
         out_dir: Optional[Path] = None, names=None) -> tuple[dict, bool]:
    """All campaigns; returns ``(summary, ok)`` and writes counterexample files."""
    summary, ok = {}, True
    for name in names or CAMPAIGNS:
        st = run_campaign(name, dimension, count, seed, max_den)
        summary[name] = st.row()
        ok = ok and st.ok
        for idx, case, note in st.failures:
            if out_dir is not None:
                out_dir.mkdir(parents=True, exist_ok=True)
                doc = case.document()
                doc["note"] = note
                doc["replay"] = {"seed": seed, "campaign": name, "index": idx}
                path = out_dir / f"counterexample_{name}_{idx}.json"
                path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return summary, ok


def replay(case: Case) -> list:
    """Run a case's queries through the problem-file executor."""
    objs = dict(case.objects)
    return [run_query(i, q, objs).record for i, q in enumerate(case.queries)]
