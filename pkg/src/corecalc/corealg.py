"""Algebraic cores, gauges, separation and set extremality for polyhedra.

In Q^n the algebraic core of a convex polyhedron is its interior, so a
point is in the core exactly when the set has no equations and every
inequality is strict there. All qualification-type questions below reduce
to linear feasibility.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import lp
from .errors import (
    DimensionMismatch,
    EmptyInputError,
    NotAbsorbingError,
    NotCoreSolidError,
    NotInSetError,
)
from .polyhedra import (
    LinearSystem,
    Polyhedron,
    difference,
    facets,
    intersect,
    max_slack_point,
    translate,
)
from .rational import dot, primitive, vec, zeros

SHIFT_EXPONENTS = range(21)


@dataclass(frozen=True)
class DualVector:
    """A linear functional on Q^n acting by the standard pairing."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", vec(self.coeffs))

    def __call__(self, x: Sequence) -> Fraction:
        if len(x) != len(self.coeffs):
            raise DimensionMismatch("functional and point have different lengths")
        return dot(self.coeffs, x)

    def __neg__(self) -> "DualVector":
        return DualVector(tuple(-c for c in self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


@dataclass(frozen=True)
class SeparationCertificate:
    """``sup f(first) <= inf f(second)``; ``None`` bounds stand for infinities."""

    f: DualVector
    sup_lhs: Optional[Fraction]
    inf_rhs: Optional[Fraction]
    proper_witnesses: Optional[tuple] = None


@dataclass(frozen=True)
class ExtremalityCertificate:
    verdict: bool
    direction: Optional[tuple] = None
    checked_ts: tuple = field(default_factory=tuple)


def _check_point(Omega: Polyhedron, x: Sequence) -> tuple:
    x = vec(x)
    if len(x) != Omega.dim:
        raise DimensionMismatch(f"point has length {len(x)}, set lives in Q^{Omega.dim}")
    return x


def core_contains(Omega: Polyhedron, x: Sequence) -> bool:
    """Strict-facet test: no equations and every inequality strict at ``x``."""
    x = _check_point(Omega, x)
    h = Omega.h
    if h.eqs or h.is_trivially_empty:
        return False
    return all(dot(a, x) < b for a, b in h.ineqs)


def is_core_solid(Omega: Polyhedron):
    """A core point of ``Omega`` found by maximizing the smallest slack, or None."""
    if Omega.h.eqs or Omega.h.is_trivially_empty:
        return None
    r = max_slack_point(Omega.h)
    if r is None:
        return None
    s, x = r
    return x if s > 0 else None


def is_absorbing(Omega: Polyhedron) -> bool:
    return core_contains(Omega, zeros(Omega.dim))


def gauge(Omega: Polyhedron, x: Sequence) -> Fraction:
    """Minkowski gauge ``inf{lam > 0 : x in lam * Omega}`` of an absorbing set."""
    x = _check_point(Omega, x)
    if not is_absorbing(Omega):
        raise NotAbsorbingError("gauge needs 0 in the core of the set")
    best = Fraction(0)
    for a, b in Omega.h.ineqs:
        v = dot(a, x) / b
        if v > best:
            best = v
    return best


def sup_over(Omega: Polyhedron, f: Sequence) -> Optional[Fraction]:
    """``sup f`` over a nonempty set; None when unbounded."""
    A, b, E, d = Omega.h.lp_form()
    res = lp.solve(list(f), A, b, E, d, maximize=True)
    if res.status == lp.INFEASIBLE:
        raise EmptyInputError("supremum over an empty set")
    return res.value if res.status == lp.OPTIMAL else None


def inf_over(Omega: Polyhedron, f: Sequence) -> Optional[Fraction]:
    s = sup_over(Omega, [-x for x in f])
    return None if s is None else -s


def core_intersects(Omega1: Polyhedron, Omega2: Polyhedron):
    """A point of ``core(Omega1) ∩ Omega2``, or None."""
    if Omega1.dim != Omega2.dim:
        raise DimensionMismatch("sets live in different spaces")
    S = LinearSystem()
    x = S.block(Omega1.dim)
    S.add_polyhedron(Omega1, x, strict=True)
    S.add_polyhedron(Omega2, x)
    return S.strict_point()


def separate_point(Omega: Polyhedron, x0: Sequence) -> Optional[SeparationCertificate]:
    """Properly separate ``x0`` from a core-solid ``Omega``; None iff ``x0`` is a core point.

    The functional is the sum of the facet normals violated at ``x0`` (or,
    when none is violated, of those active there), scaled to a primitive
    integer vector. The proper-separation witness minimizes f over Omega
    (a core point when f is unbounded below).
    """
    x0 = _check_point(Omega, x0)
    if Omega.is_empty():
        raise EmptyInputError("cannot separate from the empty set")
    w = is_core_solid(Omega)
    if w is None:
        raise NotCoreSolidError("the set has empty core")
    if core_contains(Omega, x0):
        return None
    h = facets(Omega)
    violated = [a for a, b in h.ineqs if dot(a, x0) > b]
    rows = violated or [a for a, b in h.ineqs if dot(a, x0) == b]
    total = [sum(col, Fraction(0)) for col in zip(*rows)]
    f = tuple(Fraction(v) for v in primitive(total))
    A, b, E, d = Omega.h.lp_form()
    low = lp.solve(list(f), A, b, E, d, maximize=False)
    if low.status == lp.OPTIMAL:
        w = low.x
    return SeparationCertificate(DualVector(f), sup_over(Omega, f), dot(f, x0), (tuple(w), x0))


def _proper_pair(Omega1: Polyhedron, Omega2: Polyhedron, f: Sequence):
    """Points ``x1, x2`` with ``f(x1) < f(x2)``, or None."""
    n = Omega1.dim
    S = LinearSystem()
    x1, x2 = S.block(n), S.block(n)
    S.add_polyhedron(Omega1, x1)
    S.add_polyhedron(Omega2, x2)
    gap = {v: c for v, c in zip(x1, f) if c}
    for v, c in zip(x2, f):
        if c:
            gap[v] = gap.get(v, 0) - c
    S.le({k: -v for k, v in gap.items()}, 1)  # f(x1) - f(x2) >= -1
    P = S.polyhedron()
    A, b, E, d = P.h.lp_form()
    c = [Fraction(0)] * S.nvars
    for k, v in gap.items():
        c[k] = Fraction(v)
    res = lp.solve(c, A, b, E, d, maximize=False)
    if res.status != lp.OPTIMAL or res.value >= 0:
        return None
    return tuple(res.x[i] for i in x1), tuple(res.x[i] for i in x2)


def separate_sets(Omega1: Polyhedron, Omega2: Polyhedron) -> Optional[SeparationCertificate]:
    """A functional with ``sup f(Omega1) <= inf f(Omega2)``; None iff 0 is in core(Omega1 - Omega2)."""
    if Omega1.dim != Omega2.dim:
        raise DimensionMismatch("sets live in different spaces")
    if Omega1.is_empty() or Omega2.is_empty():
        raise EmptyInputError("separation needs two nonempty sets")
    D = difference(Omega1, Omega2)
    if is_core_solid(D) is None:
        raise NotCoreSolidError("the difference of the sets has empty core")
    cert = separate_point(D, zeros(D.dim))
    if cert is None:
        return None
    # f(x1 - x2) <= f(0) = 0 already orients f from Omega1 to Omega2
    f = cert.f.coeffs
    return SeparationCertificate(cert.f, sup_over(Omega1, f), inf_over(Omega2, f),
                                 _proper_pair(Omega1, Omega2, f))


def shift_is_disjoint(Omega1: Polyhedron, Omega2: Polyhedron, direction: Sequence, t) -> bool:
    """``(Omega1 + t * direction) ∩ Omega2 == ∅`` decided by LP."""
    shifted = translate(Omega1, [t * x for x in direction])
    return intersect(shifted, Omega2).is_empty()


def is_extremal(Omega1: Polyhedron, Omega2: Polyhedron) -> ExtremalityCertificate:
    """Extremality verdict ``0 not in core(Omega1 - Omega2)`` with a shift certificate."""
    if Omega1.dim != Omega2.dim:
        raise DimensionMismatch("sets live in different spaces")
    if Omega1.is_empty() or Omega2.is_empty():
        raise EmptyInputError("extremality needs two nonempty sets")
    D = difference(Omega1, Omega2)
    n = D.dim
    if core_contains(D, zeros(n)):
        return ExtremalityCertificate(False)
    h = facets(D)
    if h.eqs:
        # D sits in {c.z = e}; -t*x0 in D would need -t|c|^2 = e (for x0 = c)
        c, e = h.eqs[0]
        x0 = tuple(c) if e >= 0 else tuple(-v for v in c)
    else:
        cert = separate_point(D, zeros(n))
        x0 = tuple(-v for v in cert.f.coeffs)
    ts = []
    for k in SHIFT_EXPONENTS:
        t = Fraction(1, 2 ** k)
        if not shift_is_disjoint(Omega1, Omega2, x0, t):
            raise AssertionError(f"shift certificate failed at t={t}")
        ts.append(t)
    return ExtremalityCertificate(True, x0, tuple(ts))


def extremal_principle(Omega1: Polyhedron, Omega2: Polyhedron, xbar: Sequence) -> Optional[DualVector]:
    """Nonzero ``f`` in ``N(xbar; Omega1) ∩ (-N(xbar; Omega2))``, or None.

    Computed from the normal cones alone (not from the separation routine),
    so it can serve as an independent route in agreement checks.
    """
    from .normalcalc import cone_intersect, cone_is_trivial, cone_neg, normal_cone

    xbar = _check_point(Omega1, xbar)
    if Omega1.dim != Omega2.dim:
        raise DimensionMismatch("sets live in different spaces")
    if not (Omega1.contains(xbar) and Omega2.contains(xbar)):
        raise NotInSetError("the point must lie in both sets")
    if is_core_solid(difference(Omega1, Omega2)) is None:
        raise NotCoreSolidError("the difference of the sets has empty core")
    C = cone_intersect(normal_cone(Omega1, xbar), cone_neg(normal_cone(Omega2, xbar)))
    if cone_is_trivial(C):
        return None
    gens = list(C.generators) + list(C.lineality)
    return DualVector(min(gens))
