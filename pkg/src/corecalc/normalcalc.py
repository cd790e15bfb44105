"""Normal cones, coderivatives and the normal/coderivative calculus rules.

Every rule verifier computes both sides independently and compares them
exactly. Right-hand sides that are unions over a polyhedral parameter are
computed as one projection of a multiplier system, never by enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .corealg import core_contains, is_core_solid
from .errors import DimensionMismatch, NotCoreSolidError, NotInSetError, PreconditionError
from .polyhedra import (
    LinearSystem,
    Polyhedron,
    fix_coordinates,
    intersect,
    is_subset,
    minkowski_sum,
    project,
    set_equal,
)
from .rational import dot, primitive, sign_canonical, vec


@dataclass(frozen=True)
class PolyCone:
    """``{sum lam_i g_i + sum mu_j l_j : lam >= 0}``; ``empty`` marks N(x; Omega) for x outside Omega."""

    dim: int
    generators: tuple = ()
    lineality: tuple = ()
    empty: bool = False

    @classmethod
    def build(cls, dim: int, generators=(), lineality=()) -> "PolyCone":
        gens, lines = set(), set()
        for g in generators:
            g = primitive(g)
            if len(g) != dim:
                raise DimensionMismatch("generator has the wrong length")
            if any(g):
                gens.add(g)
        for l in lineality:
            l = sign_canonical(primitive(l))
            if len(l) != dim:
                raise DimensionMismatch("line has the wrong length")
            if any(l):
                lines.add(l)
        return cls(dim, tuple(sorted(gens)), tuple(sorted(lines)))

    @classmethod
    def empty_cone(cls, dim: int) -> "PolyCone":
        return cls(dim, (), (), True)

    @classmethod
    def from_polyhedron(cls, C: Polyhedron) -> "PolyCone":
        """Read a cone back from a polyhedron whose only vertex is the origin."""
        if C.is_empty():
            return cls.empty_cone(C.dim)
        V = C.v
        if not C.contains((0,) * C.dim) or not all(C.h.recedes(v) for v in V.vertices):
            raise PreconditionError("the set is not a cone with apex at the origin")
        lines = V.lines()
        paired = set(lines) | {tuple(-x for x in l) for l in lines}
        # in a cone every listed point is also a direction
        gens = [r for r in V.rays if r not in paired] + [v for v in V.vertices if any(v)]
        return cls.build(C.dim, gens, lines)

    def as_polyhedron(self) -> Polyhedron:
        if self.empty:
            return Polyhedron.empty(self.dim)
        rays = list(self.generators)
        for l in self.lineality:
            rays.append(l)
            rays.append(tuple(-x for x in l))
        return Polyhedron.from_vrep(self.dim, [(0,) * self.dim], rays)

    def contains(self, f: Sequence) -> bool:
        f = vec(f)
        if len(f) != self.dim:
            raise DimensionMismatch("vector and cone have different lengths")
        if self.empty:
            return False
        return self.as_polyhedron().contains(f)


def _check(n: int, x: Sequence, what: str = "point") -> tuple:
    x = vec(x)
    if len(x) != n:
        raise DimensionMismatch(f"{what} has length {len(x)}, expected {n}")
    return x


def normal_cone(Omega: Polyhedron, xbar: Sequence) -> PolyCone:
    """Active inequality normals plus the equation normals as lineality."""
    xbar = _check(Omega.dim, xbar)
    if not Omega.contains(xbar):
        return PolyCone.empty_cone(Omega.dim)
    h = Omega.h
    active = [a for a, b in h.ineqs if dot(a, xbar) == b]
    return PolyCone.build(Omega.dim, active, [c for c, _ in h.eqs])


def _same(C1: PolyCone, C2: PolyCone) -> None:
    if C1.dim != C2.dim:
        raise DimensionMismatch("cones live in different spaces")


def cone_sum(C1: PolyCone, C2: PolyCone) -> PolyCone:
    _same(C1, C2)
    if C1.empty or C2.empty:
        return PolyCone.empty_cone(C1.dim)
    return PolyCone.build(C1.dim, C1.generators + C2.generators, C1.lineality + C2.lineality)


def cone_neg(C: PolyCone) -> PolyCone:
    if C.empty:
        return C
    return PolyCone.build(C.dim, [tuple(-x for x in g) for g in C.generators], C.lineality)


def cone_intersect(C1: PolyCone, C2: PolyCone) -> PolyCone:
    _same(C1, C2)
    if C1.empty or C2.empty:
        return PolyCone.empty_cone(C1.dim)
    return PolyCone.from_polyhedron(intersect(C1.as_polyhedron(), C2.as_polyhedron()))


def cone_is_trivial(C: PolyCone) -> bool:
    return not C.empty and not C.generators and not C.lineality


def cone_equal(C1: PolyCone, C2: PolyCone) -> bool:
    _same(C1, C2)
    if C1.empty or C2.empty:
        return C1.empty == C2.empty
    return set_equal(C1.as_polyhedron(), C2.as_polyhedron())


@dataclass(frozen=True)
class RuleVerdict:
    """Both sides of a calculus rule and their exact comparison.

    ``qc_satisfied`` is true only when the qualification condition and every
    core-solidity hypothesis of the rule hold; ``details`` breaks it down.
    """

    lhs: object
    rhs: object
    qc_satisfied: bool
    equal: bool
    rhs_subset_lhs: bool
    details: dict = field(default_factory=dict)

    @property
    def violation(self) -> bool:
        return (self.qc_satisfied and not self.equal) or not self.rhs_subset_lhs


def _as_set(x) -> Polyhedron:
    return x.as_polyhedron() if isinstance(x, PolyCone) else x


def compare(lhs, rhs, qc: bool, details: dict) -> RuleVerdict:
    L, R = _as_set(lhs), _as_set(rhs)
    sub = is_subset(R, L)
    eq = sub and is_subset(L, R)
    return RuleVerdict(lhs, rhs, qc, eq, sub, details)


def intersection_rule(Omega1: Polyhedron, Omega2: Polyhedron, xbar: Sequence) -> RuleVerdict:
    """``N(x; O1 ∩ O2)`` against ``N(x; O1) + N(x; O2)``."""
    if Omega1.dim != Omega2.dim:
        raise DimensionMismatch("sets live in different spaces")
    xbar = _check(Omega1.dim, xbar)
    if not (Omega1.contains(xbar) and Omega2.contains(xbar)):
        raise NotInSetError("the point must lie in both sets")
    lhs = normal_cone(intersect(Omega1, Omega2), xbar)
    rhs = cone_sum(normal_cone(Omega1, xbar), normal_cone(Omega2, xbar))
    S = LinearSystem()
    x = S.block(Omega1.dim)
    S.add_polyhedron(Omega1, x, strict=True)
    S.add_polyhedron(Omega2, x)
    w = S.strict_point()
    return compare(lhs, rhs, w is not None, {"core_witness": w})


@dataclass(frozen=True)
class SetValuedMap:
    """A convex map given by its graph in Q^(n+m); x comes first."""

    dim_in: int
    dim_out: int
    graph: Polyhedron

    def __post_init__(self):
        if self.graph.dim != self.dim_in + self.dim_out:
            raise DimensionMismatch("graph dimension must be dim_in + dim_out")

    def domain(self) -> Polyhedron:
        return project(self.graph, range(self.dim_in))

    def value(self, x: Sequence) -> Polyhedron:
        x = _check(self.dim_in, x)
        return fix_coordinates(self.graph, dict(enumerate(x)))

    def in_graph(self, x: Sequence, y: Sequence) -> bool:
        return self.graph.contains(_check(self.dim_in, x) + _check(self.dim_out, y, "output point"))

    @classmethod
    def identity(cls, n: int) -> "SetValuedMap":
        eqs = []
        for i in range(n):
            row = [0] * (2 * n)
            row[i], row[n + i] = 1, -1
            eqs.append((row, 0))
        return cls(n, n, Polyhedron.from_hrep(2 * n, (), eqs))

    @classmethod
    def zero(cls, n: int, m: int) -> "SetValuedMap":
        eqs = [([0] * n + [1 if j == i else 0 for j in range(m)], 0) for i in range(m)]
        return cls(n, m, Polyhedron.from_hrep(n + m, (), eqs))

    @classmethod
    def epigraphical(cls, epi: Polyhedron) -> "SetValuedMap":
        """``x -> {a : a >= phi(x)}``; its graph is the epigraph itself."""
        return cls(epi.dim - 1, 1, epi)


def graph_core_check(F: SetValuedMap, point: Sequence) -> tuple:
    """``(x, y)`` in core(gph F), against x in core(dom F) and y in core(F(x))."""
    z = _check(F.dim_in + F.dim_out, point)
    if is_core_solid(F.graph) is None:
        raise NotCoreSolidError("the graph of the map has empty core")
    x, y = z[:F.dim_in], z[F.dim_in:]
    lhs = core_contains(F.graph, z)
    rhs = core_contains(F.domain(), x) and core_contains(F.value(x), y)
    return lhs, rhs


def _add_normal_membership(S: LinearSystem, Omega: Polyhedron, point: Sequence, exprs: Sequence[dict]) -> None:
    """Require ``exprs`` (one affine form per coordinate) to be in N(point; Omega).

    Uses the multiplier form: a nonnegative combination of the active
    inequality normals plus a free combination of the equation normals.
    """
    h = Omega.h
    active = [a for a, b in h.ineqs if dot(a, point) == b]
    lam = S.block(len(active))
    S.nonneg(lam)
    nu = S.block(len(h.eqs))
    for k, e in enumerate(exprs):
        terms = dict(e)
        for v, a in zip(lam, active):
            if a[k]:
                terms[v] = terms.get(v, 0) - a[k]
        for v, (c, _) in zip(nu, h.eqs):
            if c[k]:
                terms[v] = terms.get(v, 0) - c[k]
        S.eq(terms, 0)


def coderivative(F: SetValuedMap, point: Sequence, g: Sequence) -> Polyhedron:
    """``{f : (f, -g) in N((x, y); gph F)}``."""
    n, m = F.dim_in, F.dim_out
    z = _check(n + m, point)
    g = _check(m, g, "dual vector")
    if not F.graph.contains(z):
        raise NotInSetError("the point is not on the graph")
    S = LinearSystem()
    f = S.block(n)
    exprs = [{v: 1} for v in f] + [{} for _ in range(m)]
    _add_normal_membership(S, F.graph, z, exprs)
    # y-block rows read -sum(multipliers) = 0; the block must equal -g
    S.eqs[n:n + m] = [(t, gi) for (t, _), gi in zip(S.eqs[n:n + m], g)]
    return S.project(f)


def map_sum(F1: SetValuedMap, F2: SetValuedMap) -> SetValuedMap:
    if (F1.dim_in, F1.dim_out) != (F2.dim_in, F2.dim_out):
        raise DimensionMismatch("maps have different shapes")
    n, m = F1.dim_in, F1.dim_out
    S = LinearSystem()
    x, y, y1, y2 = S.block(n), S.block(m), S.block(m), S.block(m)
    S.add_polyhedron(F1.graph, x + y1)
    S.add_polyhedron(F2.graph, x + y2)
    for a, b, c in zip(y, y1, y2):
        S.eq({a: 1, b: -1, c: -1}, 0)
    return SetValuedMap(n, m, S.project(x + y))


def sum_decompositions(F1: SetValuedMap, F2: SetValuedMap, point: Sequence) -> Polyhedron:
    n, m = F1.dim_in, F1.dim_out
    z = _check(n + m, point)
    x, ybar = z[:n], z[n:]
    S = LinearSystem()
    xs, y1, y2 = S.block(n), S.block(m), S.block(m)
    S.fix(xs, x)
    S.add_polyhedron(F1.graph, xs + y1)
    S.add_polyhedron(F2.graph, xs + y2)
    for a, b, yb in zip(y1, y2, ybar):
        S.eq({a: 1, b: 1}, yb)
    P = S.project(y1 + y2)
    if P.is_empty():
        raise PreconditionError("the point is not on the graph of the sum")
    return P


def _y_rows(n: int):
    return lambda a: any(a[n:])


def coderivative_sum_rule(F1: SetValuedMap, F2: SetValuedMap, point: Sequence,
                          decomposition: Sequence, g: Sequence) -> RuleVerdict:
    n, m = F1.dim_in, F1.dim_out
    z = _check(n + m, point)
    y12 = _check(2 * m, decomposition, "decomposition")
    x, ybar = z[:n], z[n:]
    y1, y2 = y12[:m], y12[m:]
    if not (F1.in_graph(x, y1) and F2.in_graph(x, y2)
            and all(a + b == c for a, b, c in zip(y1, y2, ybar))):
        raise PreconditionError("invalid decomposition of the output point")
    lhs = coderivative(map_sum(F1, F2), z, g)
    rhs = minkowski_sum(coderivative(F1, x + y1, g), coderivative(F2, x + y2, g))

    S = LinearSystem()
    xs, v1, v2 = S.block(n), S.block(m), S.block(m)
    S.add_polyhedron(F1.domain(), xs, strict=True)
    S.add_polyhedron(F1.graph, xs + v1, strict=True, strict_filter=_y_rows(n))
    S.add_polyhedron(F2.graph, xs + v2)
    w = S.strict_point()
    solid = is_core_solid(F1.graph) is not None
    details = {"qc_witness": w[:n] if w else None, "graph_core_solid": solid}
    return compare(lhs, rhs, w is not None and solid, details)


def map_compose(G: SetValuedMap, F: SetValuedMap) -> SetValuedMap:
    """``x -> union of G(y) over y in F(x)``."""
    if F.dim_out != G.dim_in:
        raise DimensionMismatch("output of F must match input of G")
    n, m, p = F.dim_in, F.dim_out, G.dim_out
    S = LinearSystem()
    x, y, zz = S.block(n), S.block(m), S.block(p)
    S.add_polyhedron(F.graph, x + y)
    S.add_polyhedron(G.graph, y + zz)
    return SetValuedMap(n, p, S.project(x + zz))


def intermediate_points(F: SetValuedMap, G: SetValuedMap, point: Sequence) -> Polyhedron:
    if F.dim_out != G.dim_in:
        raise DimensionMismatch("output of F must match input of G")
    n, m, p = F.dim_in, F.dim_out, G.dim_out
    z = _check(n + p, point)
    P = intersect(F.value(z[:n]), project(fix_coordinates(G.graph, {m + k: v for k, v in enumerate(z[n:])}),
                                           range(m)))
    if P.is_empty():
        raise PreconditionError("the point is not on the graph of the composition")
    return P


def coderivative_chain_rule(F: SetValuedMap, G: SetValuedMap, point: Sequence,
                            ybar: Sequence, h: Sequence) -> RuleVerdict:
    if F.dim_out != G.dim_in:
        raise DimensionMismatch("output of F must match input of G")
    n, m, p = F.dim_in, F.dim_out, G.dim_out
    z = _check(n + p, point)
    ybar = _check(m, ybar, "intermediate point")
    h = _check(p, h, "dual vector")
    x, zbar = z[:n], z[n:]
    if not (F.in_graph(x, ybar) and G.in_graph(ybar, zbar)):
        raise PreconditionError("invalid intermediate point")
    lhs = coderivative(map_compose(G, F), z, h)

    # (f, -g) in N((x, y); gph F) and (g, -h) in N((y, z); gph G), project on f
    S = LinearSystem()
    f, gv = S.block(n), S.block(m)
    _add_normal_membership(S, F.graph, x + ybar, [{v: 1} for v in f] + [{v: -1} for v in gv])
    first = len(S.eqs)
    _add_normal_membership(S, G.graph, ybar + zbar, [{v: 1} for v in gv] + [{} for _ in range(p)])
    S.eqs[first + m:first + m + p] = [(t, hk) for (t, _), hk in zip(S.eqs[first + m:first + m + p], h)]
    rhs = S.project(f)

    domF, domG = F.domain(), G.domain()
    # (i): x in core(dom F), core(F(x)) meets dom G
    S1 = LinearSystem()
    x1, y1 = S1.block(n), S1.block(m)
    S1.add_polyhedron(domF, x1, strict=True)
    S1.add_polyhedron(F.graph, x1 + y1, strict=True, strict_filter=_y_rows(n))
    S1.add_polyhedron(domG, y1)
    qc1 = S1.strict_point() is not None and is_core_solid(F.graph) is not None
    # (ii): y in F(x) ∩ core(dom G) with core(G(y)) nonempty
    S2 = LinearSystem()
    x2, y2, z2 = S2.block(n), S2.block(m), S2.block(p)
    S2.add_polyhedron(F.graph, x2 + y2)
    S2.add_polyhedron(domG, y2, strict=True)
    S2.add_polyhedron(G.graph, y2 + z2, strict=True, strict_filter=_y_rows(m))
    qc2 = S2.strict_point() is not None and is_core_solid(G.graph) is not None
    return compare(lhs, rhs, qc1 or qc2, {"qc_i": qc1, "qc_ii": qc2})
