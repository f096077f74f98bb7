"""Exact simplex method (Bland's rule) for packing-type LPs.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with integer data and
``b >= 0``, so the slack basis is feasible from the start.  The tableau is
kept integral by integer-preserving pivoting: every entry is implicitly
divided by the current basis determinant ``D`` and each pivot's division
by the previous ``D`` is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class LPSolution:
    value: Fraction
    x: list[Fraction]
    y: list[Fraction]  # optimal dual: min b.y s.t. A^T y >= c, y >= 0
    pivots: int


class Unbounded(ArithmeticError):
    pass


def _as_int(v) -> int:
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise TypeError(f"simplex_max needs integer data, got {v}")
        return v.numerator
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"simplex_max needs integer data, got {v!r}")
    return v


def simplex_max(A: Sequence[Sequence[int]], b: Sequence[int], c: Sequence[int],
                max_pivots: int = 10**6) -> LPSolution:
    m = len(A)
    k = len(c)
    if any(len(row) != k for row in A):
        raise ValueError("constraint rows must match the objective length")
    if any(bi < 0 for bi in b):
        raise ValueError("right-hand side must be non-negative")
    width = k + m + 1  # last column is the right-hand side
    rows = []
    for i, row in enumerate(A):
        t = [_as_int(a) for a in row] + [0] * m + [_as_int(b[i])]
        t[k + i] = 1
        rows.append(t)
    # objective row holds z_j - c_j (times D)
    rows.append([-_as_int(x) for x in c] + [0] * (m + 1))
    obj = rows[m]
    basis = list(range(k, k + m))
    D = 1
    pivots = 0
    while True:
        enter = next((j for j in range(k + m) if obj[j] < 0), None)
        if enter is None:
            break
        leave = -1
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                if leave < 0:
                    leave = i
                    continue
                # compare rhs_i / a with rhs_leave / a_leave
                lhs = rows[i][-1] * rows[leave][enter]
                rhs = rows[leave][-1] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                    leave = i
        if leave < 0:
            raise Unbounded(f"objective unbounded along column {enter}")
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("pivot limit exceeded")
        prow = rows[leave]
        p = prow[enter]
        for i in range(m + 1):
            if i == leave:
                continue
            row = rows[i]
            f = row[enter]
            if f:
                for j in range(width):
                    row[j] = (p * row[j] - f * prow[j]) // D
            elif p != D:
                for j in range(width):
                    if row[j]:
                        row[j] = p * row[j] // D
        D = p
        basis[leave] = enter
    x = [Fraction(0)] * k
    for i, j in enumerate(basis):
        if j < k:
            x[j] = Fraction(rows[i][-1], D)
    y = [Fraction(obj[k + i], D) for i in range(m)]
    return LPSolution(Fraction(obj[-1], D), x, y, pivots)
