"""Exact rational polyhedra.

A :class:`Polyhedron` is stored by its H-representation (the source of
truth) and lazily caches a V-representation computed by the double
description method. All arithmetic is exact.

Conventions
-----------
* H-rep rows are ``a.x <= b`` (``ineqs``) and ``c.x = d`` (``eqs``); every
  row is scaled so that its direction is a primitive integer vector.
  Equations additionally have a positive first nonzero coefficient.
* V-rep is ``conv(vertices) + cone(rays)``; lines are stored as opposite
  ray pairs. A nonempty set always has at least one entry in ``vertices``.
* Coordinates are 0-based.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import dd, lp
from .errors import DimensionMismatch, PreconditionError
from .rational import (
    dot,
    integer_scaled,
    primitive,
    q,
    rank,
    row_echelon,
    vec,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _normalize_row(a: Sequence, b, equation: bool):
    """Scale ``(a, b)`` so ``a`` is primitive integer; None for ``0 <= b``-style rows.

    Returns ``"infeasible"`` for rows that no point satisfies.
    """
    a = vec(a)
    b = q(b)
    if all(x == 0 for x in a):
        if equation:
            return None if b == 0 else "infeasible"
        return None if b >= 0 else "infeasible"
    p = primitive(a)
    # a = p * k for a positive rational k
    k = next(x / y for x, y in zip(a, p) if y)
    b = b / k
    if equation:
        first = next(x for x in p if x)
        if first < 0:
            p = tuple(-x for x in p)
            b = -b
    return tuple(Fraction(x) for x in p), b


@dataclass(frozen=True)
class HRep:
    """``{x : a.x <= b for (a, b) in ineqs, c.x = d for (c, d) in eqs}``."""

    dim: int
    ineqs: tuple = ()
    eqs: tuple = ()

    @classmethod
    def build(cls, dim: int, ineqs: Iterable = (), eqs: Iterable = ()) -> "HRep":
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        tight: dict[tuple, Fraction] = {}
        for a, b in ineqs:
            if len(a) != dim:
                raise DimensionMismatch(f"inequality row of length {len(a)} in Q^{dim}")
            r = _normalize_row(a, b, equation=False)
            if r is None:
                continue
            if r == "infeasible":
                return cls.empty(dim)
            a, b = r
            if a not in tight or b < tight[a]:
                tight[a] = b
        eqd: dict[tuple, Fraction] = {}
        for c, d in eqs:
            if len(c) != dim:
                raise DimensionMismatch(f"equation row of length {len(c)} in Q^{dim}")
            r = _normalize_row(c, d, equation=True)
            if r is None:
                continue
            if r == "infeasible":
                return cls.empty(dim)
            c, d = r
            if c in eqd and eqd[c] != d:
                return cls.empty(dim)
            eqd[c] = d
        return cls(dim, tuple(tight.items()), tuple(eqd.items()))

    @classmethod
    def empty(cls, dim: int) -> "HRep":
        return cls(dim, ((tuple(Fraction(0) for _ in range(dim)), Fraction(-1)),), ())

    @property
    def is_trivially_empty(self) -> bool:
        return any(all(x == 0 for x in a) and b < 0 for a, b in self.ineqs)

    def satisfied_by(self, x: Sequence) -> bool:
        return (all(dot(a, x) <= b for a, b in self.ineqs)
                and all(dot(c, x) == d for c, d in self.eqs))

    def recedes(self, r: Sequence) -> bool:
        """Is ``r`` a direction of the homogenized system?"""
        return (all(dot(a, r) <= 0 for a, _ in self.ineqs)
                and all(dot(c, r) == 0 for c, _ in self.eqs))

    def lp_form(self):
        A = [list(a) for a, _ in self.ineqs]
        b = [b for _, b in self.ineqs]
        E = [list(c) for c, _ in self.eqs]
        d = [d for _, d in self.eqs]
        return A, b, E, d


@dataclass(frozen=True)
class VRep:
    """``conv(vertices) + cone(rays)``."""

    dim: int
    vertices: tuple = ()
    rays: tuple = ()

    @classmethod
    def build(cls, dim: int, vertices: Iterable = (), rays: Iterable = ()) -> "VRep":
        vs = set()
        for v in vertices:
            v = vec(v)
            if len(v) != dim:
                raise DimensionMismatch(f"vertex of length {len(v)} in Q^{dim}")
            vs.add(v)
        rs = set()
        for r in rays:
            r = vec(r)
            if len(r) != dim:
                raise DimensionMismatch(f"ray of length {len(r)} in Q^{dim}")
            if all(x == 0 for x in r):
                continue
            rs.add(tuple(Fraction(x) for x in primitive(r)))
        if not vs:
            if rs:
                raise ValueError("a V-representation with rays needs at least one point")
            return cls(dim)
        return cls(dim, tuple(sorted(vs)), tuple(sorted(rs)))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def lines(self) -> list:
        """Rays whose opposite is also listed, one per pair."""
        rs = set(self.rays)
        return [r for r in self.rays if tuple(-x for x in r) in rs and r > tuple(-x for x in r)]


class Polyhedron:
    """Convex polyhedron in Q^n with a cached V-representation."""

    __slots__ = ("h", "_v", "_lock", "_empty")

    def __init__(self, h: HRep, v: Optional[VRep] = None):
        self.h = h
        self._v = v
        self._lock = threading.Lock()
        self._empty: Optional[bool] = None if v is None else v.is_empty
        if h.is_trivially_empty:
            self._empty = True

    # -- constructors -------------------------------------------------
    @classmethod
    def from_hrep(cls, dim: int, ineqs: Iterable = (), eqs: Iterable = ()) -> "Polyhedron":
        return cls(HRep.build(dim, ineqs, eqs))

    @classmethod
    def from_vrep(cls, dim: int, vertices: Iterable = (), rays: Iterable = ()) -> "Polyhedron":
        v = VRep.build(dim, vertices, rays)
        return cls(to_hrep(v), v)

    @classmethod
    def universe(cls, dim: int) -> "Polyhedron":
        return cls(HRep(dim))

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        return cls(HRep.empty(dim), VRep(dim))

    @classmethod
    def point(cls, p: Sequence) -> "Polyhedron":
        p = vec(p)
        n = len(p)
        eqs = [(tuple(Fraction(int(i == j)) for j in range(n)), p[i]) for i in range(n)]
        return cls(HRep.build(n, (), eqs), VRep(n, (p,), ()))

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "Polyhedron":
        n = len(lower)
        ineqs = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            ineqs.append((e, upper[i]))
            ineqs.append(([-x for x in e], -q(lower[i])))
        return cls.from_hrep(n, ineqs)

    # -- basic queries ------------------------------------------------
    @property
    def dim(self) -> int:
        return self.h.dim

    @property
    def v(self) -> VRep:
        if self._v is None:
            with self._lock:
                if self._v is None:
                    self._v = to_vrep(self)
                    self._empty = self._v.is_empty
        return self._v

    @property
    def has_vrep(self) -> bool:
        return self._v is not None

    def is_empty(self) -> bool:
        if self._empty is None:
            if self._v is not None:
                self._empty = self._v.is_empty
            else:
                A, b, E, d = self.h.lp_form()
                if not A and not E:
                    self._empty = False
                else:
                    self._empty = lp.feasible_point(A, b, E, d, n=self.dim) is None
        return self._empty

    def contains(self, x: Sequence) -> bool:
        return contains(self, x)

    def __repr__(self) -> str:
        return f"Polyhedron(dim={self.dim}, ineqs={len(self.h.ineqs)}, eqs={len(self.h.eqs)})"


def _check_dim(n: int, x: Sequence, what: str = "point") -> None:
    if len(x) != n:
        raise DimensionMismatch(f"{what} has length {len(x)}, expected {n}")


def _same_dim(P: Polyhedron, Q: Polyhedron) -> None:
    if P.dim != Q.dim:
        raise DimensionMismatch(f"ambient dimensions differ: {P.dim} vs {Q.dim}")


# -- representation conversion -----------------------------------------

def _homogenize(a, b) -> tuple[int, ...]:
    return integer_scaled(tuple(a) + (-b,))


def to_vrep(P: Polyhedron) -> VRep:
    """Vertices and rays of ``P`` by the double description method."""
    h = P.h
    n = h.dim
    if h.is_trivially_empty:
        return VRep(n)
    rows = []
    for c, d in h.eqs:
        r = _homogenize(c, d)
        rows.append(r)
        rows.append(tuple(-x for x in r))
    rows.append(tuple([0] * n + [-1]))
    for a, b in h.ineqs:
        rows.append(_homogenize(a, b))
    rays, lines = dd.cone_generators(rows, n + 1)
    vertices, dirs = [], []
    for r in rays:
        t = r[-1]
        if t > 0:
            vertices.append(tuple(Fraction(x, t) for x in r[:-1]))
        else:
            dirs.append(r[:-1])
    if not vertices:
        return VRep(n)
    for l in lines:
        # lines have zero homogenizing coordinate because t >= 0 was processed
        dirs.append(l[:-1])
        dirs.append(tuple(-x for x in l[:-1]))
    return VRep.build(n, vertices, dirs)


def to_hrep(V: VRep) -> HRep:
    """Facet description of ``conv(vertices) + cone(rays)`` via the polar cone."""
    n = V.dim
    if V.is_empty:
        return HRep.empty(n)
    rows = [integer_scaled(tuple(v) + (Fraction(-1),)) for v in V.vertices]
    rows += [integer_scaled(tuple(r) + (Fraction(0),)) for r in V.rays]
    rays, lines = dd.cone_generators(rows, n + 1)
    ineqs = [(r[:-1], r[-1]) for r in rays if any(r[:-1])]
    eqs = [(l[:-1], l[-1]) for l in lines]
    return HRep.build(n, ineqs, eqs)


def facets(P: Polyhedron) -> HRep:
    """Irredundant H-representation (facets and an affine-hull basis)."""
    return to_hrep(P.v)


def canonical(P: Polyhedron) -> Polyhedron:
    return Polyhedron(facets(P), P.v)


# -- membership and dimension -------------------------------------------

def contains(P: Polyhedron, x: Sequence) -> bool:
    x = vec(x)
    _check_dim(P.dim, x)
    return P.h.satisfied_by(x)


def _interior_lp(h: HRep):
    """Solve max sum(s) s.t. A x + s <= b t, E x = d t, 0<=s<=1, t>=1.

    Returns (result, number of inequality rows). Variables: x, t, s.
    """
    n, k = h.dim, len(h.ineqs)
    nv = n + 1 + k
    A, b = [], []
    for i, (a, bi) in enumerate(h.ineqs):
        row = list(a) + [-bi] + [_ZERO] * k
        row[n + 1 + i] = _ONE
        A.append(row); b.append(_ZERO)
    for i in range(k):
        row = [_ZERO] * nv
        row[n + 1 + i] = _ONE
        A.append(row); b.append(_ONE)
        row = [_ZERO] * nv
        row[n + 1 + i] = -_ONE
        A.append(row); b.append(_ZERO)
    row = [_ZERO] * nv
    row[n] = -_ONE
    A.append(row); b.append(-_ONE)
    E = [list(c) + [-d] + [_ZERO] * k for c, d in h.eqs]
    dvec = [_ZERO] * len(E)
    c = [_ZERO] * (n + 1) + [_ONE] * k
    return lp.solve(c, A, b, E, dvec)


def implicit_equalities(P: Polyhedron):
    """Indices of inequalities that hold with equality on all of ``P``.

    Returns ``(indices, relative_interior_point)`` or ``None`` when empty.
    """
    if P.h.is_trivially_empty:
        return None
    res = _interior_lp(P.h)
    if res.status == lp.INFEASIBLE:
        return None
    n, k = P.dim, len(P.h.ineqs)
    x = res.x
    t = x[n]
    slacks = x[n + 1:]
    idx = [i for i in range(k) if slacks[i] == 0]
    point = tuple(xi / t for xi in x[:n])
    return idx, point


def relative_interior_point(P: Polyhedron):
    r = implicit_equalities(P)
    return None if r is None else r[1]


def dimension(P: Polyhedron) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    r = implicit_equalities(P)
    if r is None:
        return -1
    idx, _ = r
    rows = [list(c) for c, _ in P.h.eqs] + [list(P.h.ineqs[i][0]) for i in idx]
    return P.dim - rank(rows)


def is_full_dimensional(P: Polyhedron) -> bool:
    return dimension(P) == P.dim


def max_slack_point(h: HRep):
    """Solve ``max s`` s.t. ``a.x + s <= b``, ``E x = d``, ``s <= 1``.

    Returns ``(s, x)`` or ``None`` when infeasible.
    """
    n = h.dim
    A = [list(a) + [_ONE] for a, _ in h.ineqs]
    b = [bi for _, bi in h.ineqs]
    A.append([_ZERO] * n + [_ONE]); b.append(_ONE)
    E = [list(c) + [_ZERO] for c, _ in h.eqs]
    d = [di for _, di in h.eqs]
    c = [_ZERO] * n + [_ONE]
    res = lp.solve(c, A, b, E, d)
    if res.status == lp.INFEASIBLE:
        return None
    return res.x[n], res.x[:n]


# -- redundancy ----------------------------------------------------------

def remove_redundancy(h: HRep) -> HRep:
    """Make implicit equalities explicit and drop implied inequalities (LP based)."""
    P = Polyhedron(h)
    r = implicit_equalities(P)
    if r is None:
        return HRep.empty(h.dim)
    idx, _ = r
    idx = set(idx)
    eq_rows = [list(c) + [d] for c, d in h.eqs]
    eq_rows += [list(h.ineqs[i][0]) + [h.ineqs[i][1]] for i in idx]
    basis = row_echelon(eq_rows)
    eqs = [(row[:-1], row[-1]) for row in basis]
    ineqs = [row for i, row in enumerate(h.ineqs) if i not in idx]
    E = [list(c) for c, _ in eqs]
    dv = [d for _, d in eqs]
    keep = list(ineqs)
    i = 0
    while i < len(keep):
        a, b = keep[i]
        others = keep[:i] + keep[i + 1:]
        res = lp.solve(list(a), [list(o[0]) for o in others], [o[1] for o in others], E, dv)
        if res.status == lp.OPTIMAL and res.value <= b:
            del keep[i]
        else:
            i += 1
    return HRep.build(h.dim, keep, eqs)


# -- set algebra ---------------------------------------------------------

def negate(P: Polyhedron) -> Polyhedron:
    h = P.h
    nh = HRep(h.dim, tuple((tuple(-x for x in a), b) for a, b in h.ineqs),
              tuple(_normalize_row([-x for x in c], d, True) for c, d in h.eqs))
    nv = None
    if P.has_vrep:
        nv = VRep.build(h.dim, [tuple(-x for x in v) for v in P.v.vertices],
                        [tuple(-x for x in r) for r in P.v.rays])
    return Polyhedron(nh, nv)


def translate(P: Polyhedron, t: Sequence) -> Polyhedron:
    t = vec(t)
    _check_dim(P.dim, t, "translation")
    h = P.h
    if h.is_trivially_empty:
        return Polyhedron.empty(P.dim)
    nh = HRep.build(h.dim, [(a, b + dot(a, t)) for a, b in h.ineqs],
                    [(c, d + dot(c, t)) for c, d in h.eqs])
    nv = None
    if P.has_vrep:
        nv = VRep.build(h.dim, [tuple(x + y for x, y in zip(v, t)) for v in P.v.vertices],
                        P.v.rays)
    return Polyhedron(nh, nv)


def intersect(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    _same_dim(P, Q)
    return Polyhedron(HRep.build(P.dim, P.h.ineqs + Q.h.ineqs, P.h.eqs + Q.h.eqs))


def _pad(a, before: int, after: int):
    return (_ZERO,) * before + tuple(a) + (_ZERO,) * after


def product(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    """Cartesian product ``P x Q`` in Q^(n+m)."""
    n, m = P.dim, Q.dim
    ineqs = [(_pad(a, 0, m), b) for a, b in P.h.ineqs] + [(_pad(a, n, 0), b) for a, b in Q.h.ineqs]
    eqs = [(_pad(c, 0, m), d) for c, d in P.h.eqs] + [(_pad(c, n, 0), d) for c, d in Q.h.eqs]
    return Polyhedron(HRep.build(n + m, ineqs, eqs))


def minkowski_sum(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    """``{p + q}`` from pairwise vertex sums and the union of rays."""
    _same_dim(P, Q)
    if P.is_empty() or Q.is_empty():
        return Polyhedron.empty(P.dim)
    vp, vq = P.v, Q.v
    verts = [tuple(x + y for x, y in zip(a, b)) for a in vp.vertices for b in vq.vertices]
    return Polyhedron.from_vrep(P.dim, verts, vp.rays + vq.rays)


def difference(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    """``P - Q = {p - q}``."""
    return minkowski_sum(P, negate(Q))


def affine_preimage(P: Polyhedron, M: Sequence[Sequence], c: Optional[Sequence] = None) -> Polyhedron:
    """``{x : M x + c in P}`` with ``M`` of shape ``P.dim x k``."""
    if len(M) != P.dim:
        raise DimensionMismatch(f"matrix has {len(M)} rows, expected {P.dim}")
    k = len(M[0]) if M else 0
    M = [vec(row) for row in M]
    c = vec(c) if c is not None else (_ZERO,) * P.dim

    def pull(a):
        return tuple(sum((a[i] * M[i][j] for i in range(P.dim) if a[i]), _ZERO) for j in range(k))

    if P.h.is_trivially_empty:
        return Polyhedron.empty(k)
    return Polyhedron(HRep.build(
        k,
        [(pull(a), b - dot(a, c)) for a, b in P.h.ineqs],
        [(pull(a), d - dot(a, c)) for a, d in P.h.eqs],
    ))


def linear_image(P: Polyhedron, M: Sequence[Sequence]) -> Polyhedron:
    """``{M x : x in P}`` via the V-representation; ``M`` is ``m x P.dim``."""
    M = [vec(row) for row in M]
    for row in M:
        _check_dim(P.dim, row, "matrix row")
    m = len(M)
    if P.is_empty():
        return Polyhedron.empty(m)
    V = P.v
    verts = [tuple(dot(row, v) for row in M) for v in V.vertices]
    rays = [tuple(dot(row, r) for row in M) for r in V.rays]
    return Polyhedron.from_vrep(m, verts, rays)


def fix_coordinates(P: Polyhedron, fixed: dict) -> Polyhedron:
    """Slice: substitute ``x_i = fixed[i]`` and keep the other coordinates in order."""
    n = P.dim
    free = [j for j in range(n) if j not in fixed]
    M = []
    c = []
    for i in range(n):
        row = [_ZERO] * len(free)
        if i in fixed:
            c.append(q(fixed[i]))
        else:
            row[free.index(i)] = _ONE
            c.append(_ZERO)
        M.append(row)
    return affine_preimage(P, M, c)


def embed(P: Polyhedron, positions: Sequence[int], total: int) -> Polyhedron:
    """Cylinder ``{z in Q^total : z[positions] in P}``."""
    if len(positions) != P.dim:
        raise DimensionMismatch("positions must list one slot per coordinate")

    def lift(a):
        out = [_ZERO] * total
        for j, p in enumerate(positions):
            out[p] = a[j]
        return tuple(out)

    return Polyhedron(HRep.build(total, [(lift(a), b) for a, b in P.h.ineqs],
                                 [(lift(c), d) for c, d in P.h.eqs]))


# -- projection ----------------------------------------------------------

def project(P: Polyhedron, coords: Sequence[int]) -> Polyhedron:
    """Coordinate projection onto ``coords`` (in the given order) by Fourier-Motzkin.

    Equations are used for Gaussian substitution first; each inequality
    elimination is followed by LP-based redundancy removal.
    """
    n = P.dim
    coords = list(coords)
    if not coords:
        raise PreconditionError("projection needs at least one coordinate")
    for c in coords:
        if not isinstance(c, int) or c < 0 or c >= n:
            raise PreconditionError(f"invalid coordinate index {c!r} for Q^{n}")
    if len(set(coords)) != len(coords):
        raise PreconditionError("duplicate coordinate in projection")
    k = len(coords)
    if P.is_empty():
        return Polyhedron.empty(k)
    h = fm_eliminate(P.h, [j for j in range(n) if j not in coords])
    # h now lives on the kept columns in increasing index order
    kept = sorted(coords)
    perm = [kept.index(c) for c in coords]
    ineqs = [(tuple(a[p] for p in perm), b) for a, b in h.ineqs]
    eqs = [(tuple(c[p] for p in perm), d) for c, d in h.eqs]
    return Polyhedron(HRep.build(k, ineqs, eqs))


def fm_eliminate(h: HRep, elim: Sequence[int]) -> HRep:
    """Eliminate the listed columns; result is over the remaining columns in order."""
    n = h.dim
    cols = list(range(n))
    ineqs = [list(a) + [b] for a, b in h.ineqs]
    eqs = [list(c) + [d] for c, d in h.eqs]
    todo = list(elim)

    def drop_col(j):
        p = cols.index(j)
        for row in ineqs:
            del row[p]
        for row in eqs:
            del row[p]
        cols.remove(j)

    def cleanup(rows):
        out = {}
        for row in rows:
            r = _normalize_row(row[:-1], row[-1], equation=False)
            if r is None:
                continue
            if r == "infeasible":
                return None
            a, b = r
            if a not in out or b < out[a]:
                out[a] = b
        return [list(a) + [b] for a, b in out.items()]

    while todo:
        # Gaussian substitution through an equation, when one is available
        sub = None
        for j in todo:
            p = cols.index(j)
            piv = next((e for e in eqs if e[p] != 0), None)
            if piv is not None:
                sub = (j, p, piv)
                break
        if sub is not None:
            j, p, piv = sub
            eqs.remove(piv)
            inv = 1 / piv[p]
            piv = [x * inv for x in piv]
            for rows in (ineqs, eqs):
                for i, row in enumerate(rows):
                    f = row[p]
                    if f:
                        rows[i] = [x - f * y for x, y in zip(row, piv)]
            drop_col(j)
            todo.remove(j)
            continue

        best = None
        for j in todo:
            p = cols.index(j)
            npos = sum(1 for r in ineqs if r[p] > 0)
            nneg = sum(1 for r in ineqs if r[p] < 0)
            score = npos * nneg - npos - nneg
            if best is None or score < best[0]:
                best = (score, j)
        j = best[1]
        p = cols.index(j)
        pos = [r for r in ineqs if r[p] > 0]
        neg = [r for r in ineqs if r[p] < 0]
        new = [r for r in ineqs if r[p] == 0]
        for rp in pos:
            for rn in neg:
                fp, fn = rp[p], -rn[p]
                new.append([fn * x + fp * y for x, y in zip(rp, rn)])
        ineqs = new
        drop_col(j)
        todo.remove(j)
        ineqs = cleanup(ineqs)
        if ineqs is None:
            return HRep.empty(len(cols))
        if ineqs and todo:
            reduced = remove_redundancy(HRep.build(
                len(cols), [(r[:-1], r[-1]) for r in ineqs], [(e[:-1], e[-1]) for e in eqs]))
            if reduced.is_trivially_empty:
                return HRep.empty(len(cols))
            ineqs = [list(a) + [b] for a, b in reduced.ineqs]
            eqs = [list(c) + [d] for c, d in reduced.eqs]
    result = HRep.build(len(cols), [(r[:-1], r[-1]) for r in ineqs], [(e[:-1], e[-1]) for e in eqs])
    if result.ineqs:
        result = remove_redundancy(result)
    return result


# -- comparison ----------------------------------------------------------

def is_subset(P: Polyhedron, Q: Polyhedron) -> bool:
    """``P ⊆ Q`` checked on the generators of ``P`` against the rows of ``Q``."""
    _same_dim(P, Q)
    if P.is_empty():
        return True
    V = P.v
    return (all(Q.h.satisfied_by(v) for v in V.vertices)
            and all(Q.h.recedes(r) for r in V.rays))


def set_equal(P: Polyhedron, Q: Polyhedron) -> bool:
    """Exact set equality by mutual containment."""
    _same_dim(P, Q)
    return is_subset(P, Q) and is_subset(Q, P)


class LinearSystem:
    """Incremental builder for linear systems over named variable blocks.

    Rows are sparse ``{var: coef}`` maps. Inequalities can be flagged strict
    for :meth:`strict_point`, which searches for a point satisfying them with
    positive slack.
    """

    def __init__(self):
        self.nvars = 0
        self.ineqs: list[tuple[dict, Fraction, bool]] = []
        self.eqs: list[tuple[dict, Fraction]] = []
        self.impossible = False

    def block(self, k: int) -> list[int]:
        start = self.nvars
        self.nvars += k
        return list(range(start, start + k))

    def le(self, terms: dict, rhs, strict: bool = False) -> None:
        self.ineqs.append((dict(terms), q(rhs), strict))

    def eq(self, terms: dict, rhs) -> None:
        self.eqs.append((dict(terms), q(rhs)))

    def fix(self, vars_: Sequence[int], values: Sequence) -> None:
        for v, val in zip(vars_, values):
            self.eq({v: 1}, val)

    def nonneg(self, vars_: Sequence[int]) -> None:
        for v in vars_:
            self.le({v: -1}, 0)

    def add_polyhedron(self, P: Polyhedron, vars_: Sequence[int], strict: bool = False,
                       strict_filter=None) -> None:
        """Require ``z[vars_] in P``.

        With ``strict`` every inequality (or those accepted by
        ``strict_filter(a)``) must hold with positive slack; an equation
        under strictness makes the request unsatisfiable.
        """
        if len(vars_) != P.dim:
            raise DimensionMismatch(f"{len(vars_)} variables for a set in Q^{P.dim}")
        for a, b in P.h.ineqs:
            s = strict and (strict_filter is None or strict_filter(a))
            self.le({v: x for v, x in zip(vars_, a) if x}, b, s)
        for c, d in P.h.eqs:
            if strict and (strict_filter is None or strict_filter(c)):
                self.impossible = True
            self.eq({v: x for v, x in zip(vars_, c) if x}, d)

    def _dense(self, terms: dict, width: int) -> list:
        row = [_ZERO] * width
        for v, x in terms.items():
            row[v] += q(x)
        return row

    def hrep(self) -> HRep:
        n = self.nvars
        return HRep.build(n, [(self._dense(t, n), b) for t, b, _ in self.ineqs],
                          [(self._dense(t, n), d) for t, d in self.eqs])

    def polyhedron(self) -> Polyhedron:
        return Polyhedron(self.hrep())

    def project(self, vars_: Sequence[int]) -> Polyhedron:
        return project(self.polyhedron(), list(vars_))

    def strict_point(self):
        """A point with every strict row satisfied with slack, else None."""
        if self.impossible:
            return None
        n = self.nvars
        w = n + 1
        A, b = [], []
        for t, rhs, strict in self.ineqs:
            row = self._dense(t, w)
            if strict:
                row[n] = _ONE
            A.append(row)
            b.append(rhs)
        A.append([_ZERO] * n + [_ONE])
        b.append(_ONE)
        E = [self._dense(t, w) for t, _ in self.eqs]
        d = [rhs for _, rhs in self.eqs]
        c = [_ZERO] * n + [_ONE]
        res = lp.solve(c, A, b, E, d)
        if res.status != lp.OPTIMAL or res.x[n] <= 0:
            return None
        return res.x[:n]
