"""Exact rational linear programming.

Two-phase tableau simplex with Bland's rule, so it terminates under
degeneracy without any tolerance. Sizes in this package are tiny (a few
dozen rows), so a dense tableau is adequate. The tableau runs on gmpy2
rationals; inputs and results are ``Fraction``.

    maximize / minimize  c.x
    subject to           A_ub x <= b_ub,  A_eq x = b_eq,  x free
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from gmpy2 import mpq

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = mpq(0)
_ONE = mpq(1)


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple] = None
    value: Optional[Fraction] = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.T = rows  # list of lists, without rhs
        self.rhs = rhs
        self.basis = basis
        self.obj: list = []
        self.obj_val = _ZERO

    def pivot(self, r: int, col: int) -> None:
        T, rhs = self.T, self.rhs
        prow = T[r]
        inv = 1 / prow[col]
        if inv != 1:
            prow = [x * inv if x else x for x in prow]
            T[r] = prow
            rhs[r] *= inv
        nz = [j for j, x in enumerate(prow) if x]
        br = rhs[r]
        for k in range(len(T)):
            if k == r:
                continue
            row = T[k]
            f = row[col]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                rhs[k] -= f * br
        f = self.obj[col]
        if f:
            obj = self.obj
            for j in nz:
                obj[j] -= f * prow[j]
            self.obj_val -= f * br
        self.basis[r] = col

    def set_objective(self, cost: Sequence) -> None:
        """Install reduced costs for minimizing ``cost``."""
        obj = list(cost)
        val = _ZERO
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.T[i]
                for j, x in enumerate(row):
                    if x:
                        obj[j] -= cb * x
                val -= cb * self.rhs[i]
        self.obj = obj
        self.obj_val = val  # equals -(current objective value)

    def run(self, allowed: int) -> str:
        """Bland's rule over columns ``< allowed``; minimization."""
        T, rhs, obj = self.T, self.rhs, self.obj
        while True:
            col = -1
            for j in range(allowed):
                if obj[j] < 0:
                    col = j
                    break
            if col < 0:
                return OPTIMAL
            best = None
            r = -1
            for i, row in enumerate(T):
                a = row[col]
                if a > 0:
                    ratio = rhs[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[r])):
                        best, r = ratio, i
            if r < 0:
                return UNBOUNDED
            self.pivot(r, col)
            obj = self.obj


def solve(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
          A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
          maximize: bool = True) -> LPResult:
    """Solve an LP over free variables exactly.

    Returns an :class:`LPResult`; ``x`` and ``value`` are set only when the
    status is optimal (``x`` is a feasible point also for ``unbounded``).
    """
    n = len(c)
    A_ub = [[mpq(v) for v in row] for row in A_ub]
    A_eq = [[mpq(v) for v in row] for row in A_eq]
    b_ub = [mpq(v) for v in b_ub]
    b_eq = [mpq(v) for v in b_eq]
    for row in list(A_ub) + list(A_eq):
        if len(row) != n:
            raise ValueError("constraint row has wrong length")
    m_ub = len(A_ub)

    # Columns: x+ (n) | x- (n) | slacks (m_ub) | artificials
    n_struct = 2 * n + m_ub
    rows, rhs, basis, art_rows = [], [], [], []
    for i, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = a + [-v for v in a] + [_ZERO] * m_ub
        row[2 * n + i] = _ONE
        if b < 0:
            row = [-v for v in row]
            b = -b
            art_rows.append(len(rows))
            basis.append(-1)
        else:
            basis.append(2 * n + i)
        rows.append(row)
        rhs.append(b)
    for a, b in zip(A_eq, b_eq):
        row = a + [-v for v in a] + [_ZERO] * m_ub
        if b < 0:
            row = [-v for v in row]
            b = -b
        art_rows.append(len(rows))
        basis.append(-1)
        rows.append(row)
        rhs.append(b)

    n_art = len(art_rows)
    for row in rows:
        row.extend([_ZERO] * n_art)
    for k, i in enumerate(art_rows):
        rows[i][n_struct + k] = _ONE
        basis[i] = n_struct + k
    ncols = n_struct + n_art
    tab = _Tableau(rows, rhs, basis)

    if n_art:
        cost1 = [_ZERO] * n_struct + [_ONE] * n_art
        tab.set_objective(cost1)
        tab.run(ncols)
        if tab.obj_val != 0:
            return LPResult(INFEASIBLE)
        # drive artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.T):
            b = tab.basis[i]
            if b >= n_struct:
                row = tab.T[i]
                col = next((j for j in range(n_struct) if row[j] != 0), -1)
                if col >= 0:
                    tab.pivot(i, col)
                    i += 1
                else:
                    del tab.T[i]
                    del tab.rhs[i]
                    del tab.basis[i]
                continue
            i += 1
        for row in tab.T:
            del row[n_struct:]
        ncols = n_struct

    sgn = -1 if maximize else 1
    cost = [sgn * mpq(v) for v in c] + [-sgn * mpq(v) for v in c] + [_ZERO] * m_ub
    tab.set_objective(cost)
    status = tab.run(ncols)

    vals = [_ZERO] * ncols
    for i, b in enumerate(tab.basis):
        vals[b] = tab.rhs[i]
    x = tuple(_frac(vals[j] - vals[n + j]) for j in range(n))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, x, None)
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x, value)


def feasible_point(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n: Optional[int] = None):
    """A feasible point of the system, or None when infeasible."""
    if n is None:
        rows = list(A_ub) + list(A_eq)
        if not rows:
            raise ValueError("cannot infer the number of variables")
        n = len(rows[0])
    res = solve([0] * n, A_ub, b_ub, A_eq, b_eq)
    return None if res.status == INFEASIBLE else res.x
