"""Exact rational linear programming.

A dense two-phase tableau simplex over :class:`fractions.Fraction` with
Bland's anti-cycling rule.  Problem sizes here are tiny (tens of rows and
columns), so clarity wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "solve_lp"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, col: int) -> None:
    row = T[r]
    inv = 1 / row[col]
    if inv != 1:
        T[r] = row = [v * inv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[col]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = col


def _simplex(T, basis, obj, allowed) -> bool:
    """Minimize the objective row ``obj`` in place.  Returns False if unbounded.

    ``obj`` holds reduced costs with the negated objective value in the last
    slot.  Only columns in ``allowed`` may enter.
    """
    m = len(T)
    while True:
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        r = best[1]
        T.append(obj)
        basis.append(-1)
        _pivot(T, basis, r, enter)
        obj[:] = T.pop()
        basis.pop()


def solve_lp(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Minimize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are nonnegative except those listed in ``free``.  All data is
    converted to ``Fraction``; the returned point and value are exact.
    """
    n = len(c)
    free = set(free)
    # column map: each original variable -> list of (column, sign)
    colmap: list[list[tuple[int, int]]] = []
    ncols = 0
    for j in range(n):
        if j in free:
            colmap.append([(ncols, 1), (ncols + 1, -1)])
            ncols += 2
        else:
            colmap.append([(ncols, 1)])
            ncols += 1

    def expand(row):
        out = [Fraction(0)] * ncols
        for j, a in enumerate(row):
            a = Fraction(a)
            for col, sgn in colmap[j]:
                out[col] = a * sgn
        return out

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    n_slack = len(A_ub)
    for k, (row, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(0)] * n_slack
        slack[k] = Fraction(1)
        rows.append(expand(row) + slack)
        rhs.append(Fraction(b))
    for row, b in zip(A_eq, b_eq):
        rows.append(expand(row) + [Fraction(0)] * n_slack)
        rhs.append(Fraction(b))
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise ValueError("constraint matrix and right-hand side lengths differ")

    nv = ncols + n_slack
    cost = expand(c) + [Fraction(0)] * n_slack
    m = len(rows)
    if m == 0:
        # free variables appear as a +/- column pair, so any nonzero cost on one is negative somewhere
        if any(v < 0 for v in cost):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, tuple(Fraction(0) for _ in range(n)), Fraction(0))

    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # phase 1: artificial variable per row
    T = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(rows[i] + art + [rhs[i]])
    basis = [nv + i for i in range(m)]
    width = nv + m + 1
    obj = [Fraction(0)] * width
    for i in range(m):
        for j in range(width):
            if j < nv or j == width - 1:
                obj[j] -= T[i][j]
    _simplex(T, basis, obj, range(nv))
    if -obj[-1] > 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= nv:
            col = next((j for j in range(nv) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, col)
        i += 1
    T = [row[:nv] + [row[-1]] for row in T]

    # phase 2
    obj = cost + [Fraction(0)]
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            obj = [a - f * v for a, v in zip(obj, T[i])]
    if not _simplex(T, basis, obj, range(nv)):
        return LPResult(UNBOUNDED)

    values = [Fraction(0)] * nv
    for i, b in enumerate(basis):
        values[b] = T[i][-1]
    x = []
    for j in range(n):
        x.append(sum((values[col] * sgn for col, sgn in colmap[j]), Fraction(0)))
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, tuple(x), value)
