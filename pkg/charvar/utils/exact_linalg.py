"""
Fraction-free (Bareiss) elimination over the integers, used for exact
determinants and for the interpolation linear systems.
"""
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import List, Optional, Sequence, Tuple

from utils.errors import RankDeficient


def _integer_rows(matrix: Sequence[Sequence[Fraction]]) -> Tuple[List[List[int]], Fraction]:
    """Scale every row to integers; returns the rows and the product of the scale factors"""
    rows: List[List[int]] = []
    scale = Fraction(1)
    for row in matrix:
        row = [Fraction(x) for x in row]
        factor = reduce(lcm, (x.denominator for x in row), 1)
        rows.append([int(x * factor) for x in row])
        scale *= factor
    return rows, scale


def _exact_div(num: int, den: int):
    q, r = divmod(num, den)
    return q if not r else Fraction(num, den)


def bareiss_echelon(rows: List[List[int]], n_cols: Optional[int] = None) -> Tuple[List[List[int]], List[int], int]:
    """
    Fraction-free row echelon form, in place on a copy.

    Returns (echelon rows, pivot columns, number of row swaps).  Only the
    first n_cols columns are searched for pivots; the rest ride along.
    """
    m = [list(r) for r in rows]
    n_rows = len(m)
    if not n_rows:
        return m, [], 0
    width = len(m[0])
    n_cols = width if n_cols is None else n_cols
    prev = 1
    pivots: List[int] = []
    swaps = 0
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
            swaps += 1
        p = m[r][c]
        for i in range(r + 1, n_rows):
            f = m[i][c]
            for j in range(c + 1, width):
                m[i][j] = _exact_div(m[i][j] * p - f * m[r][j], prev)
            m[i][c] = 0
        prev = p
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots, swaps


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square rational matrix"""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in matrix):
        raise ValueError("Determinant needs a square matrix")
    rows, scale = _integer_rows(matrix)
    m, pivots, swaps = bareiss_echelon(rows)
    if len(pivots) < n:
        return Fraction(0)
    det = Fraction(m[n - 1][n - 1])
    if swaps % 2:
        det = -det
    return det / scale


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    if not matrix:
        return 0
    rows, _ = _integer_rows(matrix)
    return len(bareiss_echelon(rows)[1])


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """
    Exact solve of an (overdetermined) system A x = b.

    Returns None when the system is inconsistent and raises RankDeficient
    when A has fewer independent columns than unknowns.
    """
    if len(matrix) != len(rhs):
        raise ValueError("Row count of the matrix and right-hand side differ")
    if not matrix:
        return []
    n_unknowns = len(matrix[0])
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, _ = _integer_rows(augmented)
    m, pivots, _ = bareiss_echelon(rows, n_cols=n_unknowns + 1)
    if n_unknowns in pivots:
        return None
    if len(pivots) < n_unknowns:
        raise RankDeficient(f"Rank {len(pivots)} below {n_unknowns} unknowns")
    solution = [Fraction(0)] * n_unknowns
    for r in range(n_unknowns - 1, -1, -1):
        s = Fraction(m[r][n_unknowns])
        for c in range(r + 1, n_unknowns):
            s -= m[r][c] * solution[c]
        solution[r] = s / m[r][r]
    return solution
