"""Small exact matrix helpers over the scalar ring (and over the rationals)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotAUnit, NotInvertible
from .scalar import Scalar


def determinant(rows: Sequence[Sequence[Scalar]], chart) -> Scalar:
    """Cofactor expansion with memoised minors; fine for the small blocks used here."""
    n = len(rows)
    if n == 0:
        return Scalar.one(chart)
    memo: dict = {}

    def minor(cols: tuple, r: int) -> Scalar:
        # determinant of rows r.. restricted to cols
        if r == n:
            return Scalar.one(chart)
        key = (cols, r)
        if key in memo:
            return memo[key]
        acc = Scalar.zero(chart)
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if entry:
                sub = minor(cols[:pos] + cols[pos + 1:], r + 1)
                term = entry * sub
                acc = acc + term if pos % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return minor(tuple(range(n)), 0)


def adjugate(rows: Sequence[Sequence[Scalar]], chart) -> list:
    n = len(rows)
    adj = [[Scalar.zero(chart)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = determinant(sub, chart)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


def solve_unit(rows, rhs, chart) -> list:
    """Solve ``A x = b`` exactly when ``det A`` is a unit of the ring."""
    det = determinant(rows, chart)
    if not det.is_unit():
        raise NotAUnit(f"determinant {det} is not a unit")
    inv = det.inverse()
    adj = adjugate(rows, chart)
    n = len(rows)
    out = []
    for i in range(n):
        acc = Scalar.zero(chart)
        for j in range(n):
            if adj[i][j] and rhs[j]:
                acc = acc + adj[i][j] * rhs[j]
        out.append(acc * inv)
    return out


def invert_rational(rows: Sequence[Sequence]) -> list:
    """Gauss-Jordan inverse of a rational matrix."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise NotInvertible("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
