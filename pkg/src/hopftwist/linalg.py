"""Small exact linear algebra over Fraction: rank, solve, inverse."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional


def _echelon(rows: List[List[Fraction]]):
    """In-place row reduction; returns list of pivot column indices."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(matrix: List[List[Fraction]]) -> int:
    rows = [list(map(Fraction, row)) for row in matrix]
    if not rows:
        return 0
    return len(_echelon(rows))


def solve(matrix: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """One solution of matrix . x = rhs, or None if inconsistent.

    Free coordinates are set to zero.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    rows = [list(map(Fraction, matrix[i])) + [Fraction(rhs[i])] for i in range(m)]
    pivots = _echelon(rows)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    return x


def inverse(matrix: List[List[Fraction]]) -> Optional[List[List[Fraction]]]:
    n = len(matrix)
    rows = [list(map(Fraction, matrix[i])) + [Fraction(int(i == j)) for j in range(n)]
            for i in range(n)]
    pivots = _echelon(rows)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in rows]
