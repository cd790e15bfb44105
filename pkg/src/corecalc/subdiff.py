"""Polyhedral convex functions through their epigraphs.

A function on Q^n is stored as its epigraph in Q^(n+1), the value coordinate
last. Subdifferentials go through the epigraphical map, whose graph is the
epigraph, so every subdifferential here is a coderivative slice.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .corealg import is_core_solid
from .errors import (
    DimensionMismatch,
    ImproperFunctionError,
    NotInSetError,
    NotMinimizerError,
    UnboundedBelowError,
)
from .normalcalc import (
    LinearSystem,
    RuleVerdict,
    SetValuedMap,
    _add_normal_membership,
    coderivative,
    compare,
)
from .polyhedra import (
    Polyhedron,
    affine_preimage,
    facets,
    fix_coordinates,
    intersect,
    is_full_dimensional,
    linear_image,
    minkowski_sum,
    product,
    project,
)
from .rational import dot, q, vec

Value = Union[Fraction, float]


@dataclass(frozen=True)
class PolyFunction:
    """Proper polyhedral convex function given by ``epi`` in Q^(dim+1)."""

    dim: int
    epi: Polyhedron
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.epi.dim != self.dim + 1:
            raise DimensionMismatch("epigraph must live in Q^(dim+1)")
        if self.epi.is_empty():
            raise ImproperFunctionError("empty epigraph: the function is identically +inf")
        h = self.epi.h
        if any(a[-1] > 0 for a, _ in h.ineqs) or any(c[-1] for c, _ in h.eqs):
            # a redundant description may hide the upward ray; the facets decide
            h = facets(self.epi)
            if any(a[-1] > 0 for a, _ in h.ineqs) or any(c[-1] for c, _ in h.eqs):
                raise ImproperFunctionError("the set is not an epigraph (no upward recession)")
            object.__setattr__(self, "epi", Polyhedron(h))
        if not any(a[-1] < 0 for a, _ in self.epi.h.ineqs):
            raise ImproperFunctionError("the function takes the value -inf")

    @classmethod
    def max_affine(cls, pieces: Sequence, domain: Polyhedron = None) -> "PolyFunction":
        """``max_i (c_i . x + d_i)`` restricted to ``domain``; pieces are ``(c, d)`` pairs."""
        pieces = [(vec(c), q(d)) for c, d in pieces]
        if not pieces:
            raise ImproperFunctionError("a max of no affine pieces is -inf")
        n = len(pieces[0][0])
        ineqs = [(c + (Fraction(-1),), -d) for c, d in pieces]
        epi = Polyhedron.from_hrep(n + 1, ineqs)
        if domain is not None:
            epi = intersect(epi, product(domain, Polyhedron.universe(1)))
        return cls(n, epi)

    def domain(self) -> Polyhedron:
        if "dom" not in self._cache:
            self._cache["dom"] = project(self.epi, range(self.dim))
        return self._cache["dom"]

    def as_map(self) -> SetValuedMap:
        return SetValuedMap.epigraphical(self.epi)


def evaluate(phi: PolyFunction, x: Sequence) -> Value:
    """``min {a : (x, a) in epi}``, or ``math.inf`` outside the domain.

    Closed form: after fixing x every row reads ``a_x . x + c * a <= b`` with
    ``c <= 0``; rows with ``c < 0`` bound the value from below and rows with
    ``c = 0`` (and the equations) decide domain membership.
    """
    x = vec(x)
    if len(x) != phi.dim:
        raise DimensionMismatch(f"point has length {len(x)}, function lives on Q^{phi.dim}")
    h = phi.epi.h
    best = None
    for a, b in h.ineqs:
        r = b - dot(a[:-1], x)
        c = a[-1]
        if c == 0:
            if r < 0:
                return math.inf
        else:
            v = r / c
            if best is None or v > best:
                best = v
    for c, d in h.eqs:
        if dot(c[:-1], x) != d:
            return math.inf
    return best


def _value_at(phi: PolyFunction, x: Sequence) -> Fraction:
    v = evaluate(phi, x)
    if v == math.inf:
        raise NotInSetError("the point is outside the domain of the function")
    return v


def subdifferential(phi: PolyFunction, xbar: Sequence) -> Polyhedron:
    """``D*E(x, phi(x))(1)`` for the epigraphical map ``E``."""
    xbar = vec(xbar)
    v = _value_at(phi, xbar)
    return coderivative(phi.as_map(), xbar + (v,), (1,))


def fn_add(phi1: PolyFunction, phi2: PolyFunction) -> PolyFunction:
    if phi1.dim != phi2.dim:
        raise DimensionMismatch("functions live on different spaces")
    n = phi1.dim
    S = LinearSystem()
    x, a, a1, a2 = S.block(n), S.block(1), S.block(1), S.block(1)
    S.add_polyhedron(phi1.epi, x + a1)
    S.add_polyhedron(phi2.epi, x + a2)
    S.eq({a[0]: 1, a1[0]: -1, a2[0]: -1}, 0)
    epi = S.project(x + a)
    if epi.is_empty():
        raise ImproperFunctionError("the sum is identically +inf (disjoint domains)")
    return PolyFunction(n, epi)


def subdiff_sum_rule(phi1: PolyFunction, phi2: PolyFunction, xbar: Sequence) -> RuleVerdict:
    xbar = vec(xbar)
    if evaluate(phi1, xbar) == math.inf or evaluate(phi2, xbar) == math.inf:
        raise NotInSetError("the point is outside the common domain")
    lhs = subdifferential(fn_add(phi1, phi2), xbar)
    rhs = minkowski_sum(subdifferential(phi1, xbar), subdifferential(phi2, xbar))
    S = LinearSystem()
    x = S.block(phi1.dim)
    S.add_polyhedron(phi1.domain(), x, strict=True)
    S.add_polyhedron(phi2.domain(), x)
    w = S.strict_point()
    solid = is_core_solid(phi1.epi) is not None
    return compare(lhs, rhs, w is not None and solid, {"qc_witness": w, "epi_core_solid": solid})


@dataclass(frozen=True)
class LinearMap:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(vec(r) for r in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise DimensionMismatch("matrix shape does not match rows x cols")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def apply(self, x: Sequence) -> tuple:
        x = vec(x)
        if len(x) != self.cols:
            raise DimensionMismatch("vector length does not match the map")
        return tuple(dot(r, x) for r in self.entries)

    def transpose(self) -> tuple:
        return tuple(tuple(r[j] for r in self.entries) for j in range(self.cols))

    def adjoint(self, g: Sequence) -> tuple:
        g = vec(g)
        if len(g) != self.rows:
            raise DimensionMismatch("dual vector length does not match the map")
        return tuple(dot(col, g) for col in self.transpose())


def fn_precompose(phi: PolyFunction, A: LinearMap) -> PolyFunction:
    """``x -> phi(A x)``, via ``{(x, a) : (A x, a) in epi phi}``."""
    if A.rows != phi.dim:
        raise DimensionMismatch("map output does not match the function's space")
    n = A.cols
    M = [list(r) + [0] for r in A.entries] + [[0] * n + [1]]
    epi = affine_preimage(phi.epi, M)
    if epi.is_empty():
        raise ImproperFunctionError("the range of the map misses the domain")
    return PolyFunction(n, epi)


def adjoint_image(A: LinearMap, S: Polyhedron) -> Polyhedron:
    if S.dim != A.rows:
        raise DimensionMismatch("set does not live in the map's output space")
    return linear_image(S, A.transpose())


def subdiff_chain_rule(phi: PolyFunction, A: LinearMap, xbar: Sequence) -> RuleVerdict:
    ybar = A.apply(xbar)
    if evaluate(phi, ybar) == math.inf:
        raise NotInSetError("A(x) is outside the domain of the function")
    lhs = subdifferential(fn_precompose(phi, A), xbar)
    rhs = adjoint_image(A, subdifferential(phi, ybar))
    # some x with A x strictly inside dom phi
    S = LinearSystem()
    x, y = S.block(A.cols), S.block(A.rows)
    for row, yi in zip(A.entries, y):
        terms = {v: c for v, c in zip(x, row) if c}
        terms[yi] = -1
        S.eq(terms, 0)
    S.add_polyhedron(phi.domain(), y, strict=True)
    w = S.strict_point()
    solid = is_core_solid(phi.epi) is not None
    return compare(lhs, rhs, w is not None and solid,
                   {"qc_witness": w[:A.cols] if w else None, "epi_core_solid": solid})


def indicator(Omega: Polyhedron) -> PolyFunction:
    """``0`` on ``Omega`` and ``+inf`` elsewhere; epigraph ``Omega x [0, inf)``."""
    if Omega.is_empty():
        raise ImproperFunctionError("the indicator of the empty set is identically +inf")
    return PolyFunction(Omega.dim, product(Omega, Polyhedron.from_hrep(1, [((-1,), 0)])))


class MarginalProblem:
    """``mu(x) = inf {phi(x, y) : y in F(x)}`` with phi on Q^(n+m) and F: Q^n => Q^m."""

    def __init__(self, phi: PolyFunction, F: SetValuedMap):
        if phi.dim != F.dim_in + F.dim_out:
            raise DimensionMismatch("phi must live on Q^(n+m) for F: Q^n => Q^m")
        self.phi = phi
        self.F = F
        n, m = F.dim_in, F.dim_out
        S = LinearSystem()
        x, y, a = S.block(n), S.block(m), S.block(1)
        S.add_polyhedron(phi.epi, x + y + a)
        S.add_polyhedron(F.graph, x + y)
        epi = S.project(x + a)
        if epi.is_empty():
            raise ImproperFunctionError("phi is +inf on the whole graph of F")
        down = (0,) * n + (-1,)
        if epi.h.recedes(down):
            raise UnboundedBelowError("the marginal function takes the value -inf")
        self.mu = PolyFunction(n, epi)

    @property
    def n(self) -> int:
        return self.F.dim_in

    @property
    def m(self) -> int:
        return self.F.dim_out


def marginal_function(M: MarginalProblem) -> PolyFunction:
    return M.mu


def argmin_set(M: MarginalProblem, xbar: Sequence) -> Polyhedron:
    """``{y in F(x) : phi(x, y) <= mu(x)}``."""
    xbar = vec(xbar)
    mu = _value_at(M.mu, xbar)
    n, m = M.n, M.m
    fixed = {i: v for i, v in enumerate(xbar)}
    fixed[n + m] = mu
    level = fix_coordinates(M.phi.epi, fixed)
    return intersect(level, M.F.value(xbar))


def marginal_subdiff_rule(M: MarginalProblem, xbar: Sequence, ybar: Sequence) -> RuleVerdict:
    n, m = M.n, M.m
    xbar, ybar = vec(xbar), vec(ybar)
    if len(xbar) != n or len(ybar) != m:
        raise DimensionMismatch("point does not match the problem dimensions")
    if not argmin_set(M, xbar).contains(ybar):
        raise NotMinimizerError("the second point is not a minimizer at the first")
    lhs = subdifferential(M.mu, xbar)

    # (f, g) in d phi(x, y), (u, -g) in N((x, y); gph F), h = f + u
    dphi = subdifferential(M.phi, xbar + ybar)
    S = LinearSystem()
    f, g, u, hh = S.block(n), S.block(m), S.block(n), S.block(n)
    S.add_polyhedron(dphi, f + g)
    _add_normal_membership(S, M.F.graph, xbar + ybar, [{v: 1} for v in u] + [{v: -1} for v in g])
    for a, b, c in zip(hh, f, u):
        S.eq({a: 1, b: -1, c: -1}, 0)
    rhs = S.project(hh)

    dom = M.phi.domain()
    epi_solid = is_full_dimensional(M.phi.epi)
    S1 = LinearSystem()
    z1 = S1.block(n + m)
    S1.add_polyhedron(dom, z1, strict=True)
    S1.add_polyhedron(M.F.graph, z1)
    qf = epi_solid and S1.strict_point() is not None
    S2 = LinearSystem()
    z2 = S2.block(n + m)
    S2.add_polyhedron(dom, z2)
    S2.add_polyhedron(M.F.graph, z2, strict=True)
    qf1 = S2.strict_point() is not None
    return compare(lhs, rhs, qf or qf1, {"qf": qf, "qf1": qf1})

