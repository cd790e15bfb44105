"""Exact rational scalars and small vector helpers.

Scalars are :class:`fractions.Fraction`; vectors are tuples of them.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Q = Fraction
Vector = tuple  # tuple[Fraction, ...]


def q(x) -> Fraction:
    """Coerce ``x`` to a Fraction.

    Accepts ints, Fractions, and strings such as ``"3"``, ``"-2/5"``.
    Floats are rejected: the engine never accepts inexact input.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        if any(ch in s for ch in ".eE"):
            raise ValueError(f"not a rational literal: {x!r}")
        return Fraction(s)
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted")
    # gmpy2.mpq and other numbers.Rational implementations
    return Fraction(x.numerator, x.denominator)


def vec(xs: Iterable) -> Vector:
    return tuple(q(x) for x in xs)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int, sign: int = 1) -> Vector:
    return tuple(Fraction(sign if j == i else 0) for j in range(n))


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


def add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(t, a: Sequence) -> Vector:
    return tuple(t * x for x in a)


def neg(a: Sequence) -> Vector:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def fmt(x) -> str:
    """Wire format: ``"p/q"`` or ``"p"``."""
    x = q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def common_denominator(xs: Iterable) -> int:
    d = 1
    for x in xs:
        d = lcm(d, Fraction(x).denominator)
    return d


def integer_scaled(xs: Sequence) -> tuple[int, ...]:
    """Positive multiple of ``xs`` with coprime integer entries (zero stays zero)."""
    d = common_denominator(xs)
    ints = [int(Fraction(x) * d) for x in xs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def primitive(xs: Sequence) -> tuple[int, ...]:
    """Alias of :func:`integer_scaled`, used for directions and normals."""
    return integer_scaled(xs)


def sign_canonical(xs: Sequence) -> tuple[int, ...]:
    """Primitive integer vector whose first nonzero entry is positive."""
    p = primitive(xs)
    for v in p:
        if v:
            return p if v > 0 else tuple(-x for x in p)
    return p


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-exact Gaussian elimination."""
    return len(row_echelon(rows))


def row_echelon(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Independent rows spanning the same row space (reduced form)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    out: list[list[Fraction]] = []
    col = 0
    for col in range(ncols):
        piv = next((r for r in m if r[col] != 0), None)
        if piv is None:
            continue
        m.remove(piv)
        inv = 1 / piv[col]
        piv = [x * inv for x in piv]
        for k, r in enumerate(m):
            f = r[col]
            if f:
                m[k] = [x - f * y for x, y in zip(r, piv)]
        for k, r in enumerate(out):
            f = r[col]
            if f:
                out[k] = [x - f * y for x, y in zip(r, piv)]
        out.append(piv)
    return out


def nullspace(rows: Sequence[Sequence], n: int) -> list[Vector]:
    """Basis of ``{x : r.x = 0 for r in rows}`` in Q^n."""
    ech = row_echelon(rows)
    pivots = []
    for r in ech:
        pivots.append(next(j for j, x in enumerate(r) if x != 0))
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fj in free:
        v = [Fraction(0)] * n
        v[fj] = Fraction(1)
        for r, pj in zip(ech, pivots):
            v[pj] = -r[fj]
        basis.append(tuple(v))
    return basis
