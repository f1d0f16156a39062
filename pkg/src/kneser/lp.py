"""Exact-rational simplex for packing LPs: max c.y s.t. A y <= b, y >= 0, b >= 0.

Since b >= 0 the all-slack basis is feasible, so no phase one is needed.
Bland's rule guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class UnboundedLP(ValueError):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    primal: tuple[Fraction, ...]  # y, one entry per column of A
    dual: tuple[Fraction, ...]  # x, one entry per row of A
    pivots: int


def solve_packing_lp(
    c: Sequence[Fraction | int],
    A: Sequence[Sequence[Fraction | int]],
    b: Sequence[Fraction | int],
) -> LPSolution:
    m, n = len(A), len(c)
    if len(b) != m or any(len(row) != n for row in A):
        raise ValueError("inconsistent LP dimensions")
    if any(v < 0 for v in b):
        raise ValueError("packing LP needs b >= 0")

    # rows: [A | I | b]; objective row holds reduced costs, last entry the value
    T = []
    for i, row in enumerate(A):
        r = [Fraction(v) for v in row] + [Fraction(0)] * m + [Fraction(b[i])]
        r[n + i] = Fraction(1)
        T.append(r)
    z = [-Fraction(v) for v in c] + [Fraction(0)] * (m + 1)
    basis = list(range(n, n + m))
    pivots = 0

    while True:
        enter = next((j for j in range(n + m) if z[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise UnboundedLP("objective is unbounded")
        row = best[1]
        piv = T[row][enter]
        T[row] = [v / piv for v in T[row]]
        for i in range(m):
            if i != row and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [v - f * w for v, w in zip(T[i], T[row])]
        f = z[enter]
        z = [v - f * w for v, w in zip(z, T[row])]
        basis[row] = enter
        pivots += 1

    y = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            y[var] = T[i][-1]
    x = tuple(z[n + i] for i in range(m))
    return LPSolution(z[-1], tuple(y), x, pivots)
