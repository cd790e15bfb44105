"""Brute-force definitional checkers.

These read vertices, rays and raw inequalities only. They never call the
cone, coderivative or subdifferential code, so a bug there cannot validate
itself through them.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import lp
from .errors import DimensionMismatch, NotInSetError
from .polyhedra import Polyhedron
from .rational import dot, sub, vec

NORMAL_MEMBER = "normal_member"
SUBGRAD_MEMBER = "subgrad_member"
CORE_MEMBER = "core_member"
SEPARATION_VALID = "separation_valid"
SET_EQUAL = "set_equal"


@dataclass(frozen=True)
class OracleReport:
    claim: str
    verdict: bool
    witness: Any = None
    detail: str = ""
    seed: Optional[int] = None

    def __bool__(self) -> bool:
        return self.verdict


def _in_hrep(P: Polyhedron, x: Sequence) -> bool:
    h = P.h
    if h.is_trivially_empty:
        return False
    return all(dot(a, x) <= b for a, b in h.ineqs) and all(dot(c, x) == d for c, d in h.eqs)


def _vec_for(P: Polyhedron, x: Sequence, what: str) -> tuple:
    x = vec(x)
    if len(x) != P.dim:
        raise DimensionMismatch(f"{what} has length {len(x)}, expected {P.dim}")
    return x


def oracle_normal_member(Omega: Polyhedron, xbar: Sequence, f: Sequence) -> OracleReport:
    """``f(x - xbar) <= 0`` on Omega, checked at every vertex and ray."""
    xbar = _vec_for(Omega, xbar, "point")
    f = _vec_for(Omega, f, "functional")
    if not _in_hrep(Omega, xbar):
        raise NotInSetError("the base point is not in the set")
    V = Omega.v
    for v in V.vertices:
        if dot(f, sub(v, xbar)) > 0:
            return OracleReport(NORMAL_MEMBER, False, v, "vertex violates f(v - x) <= 0")
    for r in V.rays:
        if dot(f, r) > 0:
            return OracleReport(NORMAL_MEMBER, False, r, "ray violates f(r) <= 0")
    return OracleReport(NORMAL_MEMBER, True)


def _lp_value(epi: Polyhedron, x: tuple) -> Optional[Fraction]:
    """``min {a : (x, a) in epi}`` by a direct LP on the raw rows."""
    n = len(x)
    A, b, E, d = [], [], [], []
    for a, rhs in epi.h.ineqs:
        A.append([a[n]])
        b.append(rhs - dot(a[:n], x))
    for c, rhs in epi.h.eqs:
        E.append([c[n]])
        d.append(rhs - dot(c[:n], x))
    if epi.h.is_trivially_empty:
        return None
    res = lp.solve([1], A, b, E, d, maximize=False)
    return res.value if res.status == lp.OPTIMAL else None


def oracle_subgrad_member(phi, xbar: Sequence, f: Sequence) -> OracleReport:
    """``phi(x) >= phi(xbar) + f(x - xbar)`` reduced to the epigraph's vertices and rays.

    The witness is the x-part of the first violating vertex or ray.
    """
    epi = phi.epi
    n = epi.dim - 1
    xbar, f = vec(xbar), vec(f)
    if len(xbar) != n or len(f) != n:
        raise DimensionMismatch("point or functional has the wrong length")
    val = _lp_value(epi, xbar)
    if val is None:
        raise NotInSetError("the base point is outside the domain")
    V = epi.v
    for v in V.vertices:
        if v[n] < val + dot(f, sub(v[:n], xbar)):
            return OracleReport(SUBGRAD_MEMBER, False, v[:n], "epigraph vertex below the affine minorant")
    for r in V.rays:
        if r[n] < dot(f, r[:n]):
            return OracleReport(SUBGRAD_MEMBER, False, r[:n], "epigraph ray below the affine minorant")
    return OracleReport(SUBGRAD_MEMBER, True)


def _max_step(P: Polyhedron, x: tuple, d: tuple) -> Optional[Fraction]:
    """Largest ``t >= 0`` with ``x + t d`` in P (None means unbounded)."""
    for c, _ in P.h.eqs:
        if dot(c, d) != 0:
            return Fraction(0)
    best = None
    for a, b in P.h.ineqs:
        s = dot(a, d)
        if s > 0:
            t = (b - dot(a, x)) / s
            if best is None or t < best:
                best = t
    return best


def oracle_core_member(Omega: Polyhedron, x: Sequence) -> OracleReport:
    """Absorption along the 2n signed basis directions with an explicit step.

    By convexity, room along every ``+-e_i`` gives a cross-polytope around
    ``x`` inside Omega, hence absorption in every direction. On success the
    witness is the common step ``delta`` (capped at 1).
    """
    x = _vec_for(Omega, x, "point")
    if not _in_hrep(Omega, x):
        return OracleReport(CORE_MEMBER, False, None, "point not in the set")
    n = Omega.dim
    delta = Fraction(1)
    for i in range(n):
        for s in (1, -1):
            d = tuple(Fraction(s if j == i else 0) for j in range(n))
            t = _max_step(Omega, x, d)
            if t is not None and t <= 0:
                return OracleReport(CORE_MEMBER, False, d, "no room along this direction")
            if t is not None and t < delta:
                delta = t
    for i in range(n):
        for s in (1, -1):
            y = tuple(xj + (s * delta if j == i else 0) for j, xj in enumerate(x))
            if not _in_hrep(Omega, y):
                raise AssertionError("step witness failed re-check")
    return OracleReport(CORE_MEMBER, True, delta)


def oracle_point_separation(Omega: Polyhedron, x0: Sequence, f: Sequence, w: Sequence) -> OracleReport:
    """``f <= f(x0)`` on Omega (vertices and rays) and ``w`` in Omega with ``f(w) < f(x0)``."""
    x0, f, w = (_vec_for(Omega, v, "vector") for v in (x0, f, w))
    if all(c == 0 for c in f):
        return OracleReport(SEPARATION_VALID, False, f, "zero functional")
    top = dot(f, x0)
    V = Omega.v
    for v in V.vertices:
        if dot(f, v) > top:
            return OracleReport(SEPARATION_VALID, False, v, "vertex above the level of x0")
    for r in V.rays:
        if dot(f, r) > 0:
            return OracleReport(SEPARATION_VALID, False, r, "ray increases f")
    if not _in_hrep(Omega, w) or dot(f, w) >= top:
        return OracleReport(SEPARATION_VALID, False, w, "proper witness fails")
    return OracleReport(SEPARATION_VALID, True)


def oracle_set_separation(Omega1: Polyhedron, Omega2: Polyhedron, f: Sequence,
                          witnesses: Optional[tuple] = None) -> OracleReport:
    """``sup f(Omega1) <= inf f(Omega2)`` from the two V-representations."""
    f = _vec_for(Omega1, f, "functional")
    if all(c == 0 for c in f):
        return OracleReport(SEPARATION_VALID, False, f, "zero functional")
    V1, V2 = Omega1.v, Omega2.v
    for r in V1.rays:
        if dot(f, r) > 0:
            return OracleReport(SEPARATION_VALID, False, r, "f unbounded above on the first set")
    for r in V2.rays:
        if dot(f, r) < 0:
            return OracleReport(SEPARATION_VALID, False, r, "f unbounded below on the second set")
    hi = max(dot(f, v) for v in V1.vertices)
    lo = min(dot(f, v) for v in V2.vertices)
    if hi > lo:
        return OracleReport(SEPARATION_VALID, False, (hi, lo), "sup exceeds inf")
    if witnesses is not None:
        x1, x2 = witnesses
        if not (_in_hrep(Omega1, x1) and _in_hrep(Omega2, x2) and dot(f, x1) < dot(f, x2)):
            return OracleReport(SEPARATION_VALID, False, witnesses, "proper witnesses fail")
    return OracleReport(SEPARATION_VALID, True)


def _samples(P: Polyhedron, rng: random.Random, count: int):
    V = P.v
    verts, rays = V.vertices, V.rays
    yield from verts
    for v in verts:
        for r in rays:
            yield tuple(a + b for a, b in zip(v, r))
    for _ in range(count):
        lam = [Fraction(rng.randint(0, 6)) for _ in verts]
        if not any(lam):
            lam[rng.randrange(len(lam))] = Fraction(1)
        tot = sum(lam)
        pt = [Fraction(0)] * P.dim
        for l, v in zip(lam, verts):
            if l:
                for j in range(P.dim):
                    pt[j] += l / tot * v[j]
        for r in rays:
            mu = Fraction(rng.randint(0, 6), rng.randint(1, 3))
            if mu:
                for j in range(P.dim):
                    pt[j] += mu * r[j]
        yield tuple(pt)


def oracle_rule_equal(lhs: Polyhedron, rhs: Polyhedron, samples: int = 50, seed: int = 0) -> OracleReport:
    """Spot-check mutual membership with points drawn from each side's V-rep."""
    if lhs.dim != rhs.dim:
        raise DimensionMismatch("sets live in different spaces")
    rng = random.Random(seed)
    for src, dst, tag in ((lhs, rhs, "lhs point outside rhs"), (rhs, lhs, "rhs point outside lhs")):
        if src.v.is_empty:
            continue
        for pt in _samples(src, rng, samples):
            if not _in_hrep(dst, pt):
                return OracleReport(SET_EQUAL, False, pt, tag, seed)
    return OracleReport(SET_EQUAL, True, None, "", seed)
