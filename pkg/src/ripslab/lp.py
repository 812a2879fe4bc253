"""Exact feasibility of ``A x = b, x >= 0`` over the rationals.

Phase I of the simplex method on an integer tableau.  Rows are scaled to
integers up front and every pivot uses integer-preserving (Bareiss style)
elimination, so no fractions are formed inside the loop.  Entering and
leaving variables follow Bland's rule, which makes the method terminate and
the pivot sequence deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

__all__ = ["LPError", "lp_feasible", "lp_solve"]


class LPError(ValueError):
    """Raised for a malformed linear system."""


def _integer_row(row: Sequence, rhs) -> list[int]:
    vals = [Fraction(v) for v in row]
    vals.append(Fraction(rhs))
    scale = 1
    for v in vals:
        if v.denominator != 1:
            scale = lcm(scale, v.denominator)
    out = [int(v * scale) for v in vals]
    if out[-1] < 0:
        out = [-v for v in out]
    return out


def lp_solve(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Return a nonnegative rational solution of ``A x = b`` or ``None``.

    The solution returned is a basic feasible solution.  ``A`` may have
    redundant or even zero rows; a zero row with nonzero right hand side is
    simply infeasible.
    """
    m = len(A)
    if m != len(b):
        raise LPError(f"{m} rows but {len(b)} right-hand sides")
    if m == 0:
        raise LPError("empty system")
    n = len(A[0])
    if n == 0 or any(len(row) != n for row in A):
        raise LPError("rows of unequal or zero length")

    # tableau columns: n structural, m artificial, rhs
    width = n + m + 1
    T = []
    for i, (row, rhs) in enumerate(zip(A, b)):
        r = _integer_row(row, rhs)
        full = r[:n] + [0] * m + [r[n]]
        full[n + i] = 1
        T.append(full)
    # phase I objective: minimise the sum of artificials, reduced costs
    obj = [0] * width
    for r in T:
        for k in range(n):
            obj[k] -= r[k]
        obj[-1] -= r[-1]
    basis = [n + i for i in range(m)]
    d = 1

    while True:
        enter = -1
        for k in range(n):
            if obj[k] < 0:
                enter = k
                break
        if enter < 0:
            break
        leave = -1
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                if leave < 0:
                    leave = i
                    continue
                # compare T[i][-1]/a with T[leave][-1]/T[leave][enter]
                lhs = T[i][-1] * T[leave][enter]
                rhs_ = T[leave][-1] * a
                if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[leave]):
                    leave = i
        if leave < 0:
            # unbounded direction in phase I cannot happen; objective is >= 0
            raise LPError("phase I unbounded")
        prow = T[leave]
        p = prow[enter]
        for i in range(m):
            if i == leave:
                continue
            row = T[i]
            f = row[enter]
            if f:
                T[i] = [(p * x - f * y) // d for x, y in zip(row, prow)]
            elif p != d:
                T[i] = [(p * x) // d for x in row]
        f = obj[enter]
        obj = [(p * x - f * y) // d for x, y in zip(obj, prow)]
        basis[leave] = enter
        d = p

    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = Fraction(T[i][-1], d)
    return x


def lp_feasible(A: Sequence[Sequence], b: Sequence) -> bool:
    """Decide whether ``A x = b`` has a solution with ``x >= 0``."""
    return lp_solve(A, b) is not None
