"""Exact integer linear algebra used by the hull engine.

Everything here works on plain Python ints (arbitrary precision), which is
what the hull engine uses internally after clearing denominators.
"""

from __future__ import annotations

from fractions import Fraction


def bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix, fraction-free Bareiss scheme."""
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def matrix_rank(rows: list[list[Fraction]]) -> int:
    """Rank of a matrix with Fraction (or int) entries via Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    row = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(row, nrows):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[row], m[pivot_row] = m[pivot_row], m[row]
        pivot = m[row][col]
        for r in range(row + 1, nrows):
            if m[r][col] != 0:
                factor = m[r][col] / pivot
                for c in range(col, ncols):
                    m[r][c] -= factor * m[row][c]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def hyperplane_through(points: list[tuple[int, ...]], idxs: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Integer normal and offset of the hyperplane through n points in dim n.

    Returns (normal, c) with normal . x == c on the hyperplane.  The normal is
    the zero vector when the points are affinely dependent.
    """
    base = points[idxs[0]]
    n = len(base)
    edges = [[points[i][j] - base[j] for j in range(n)] for i in idxs[1:]]
    normal = []
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in edges]
        d = bareiss_det(minor)
        normal.append(-d if j % 2 else d)
    c = sum(normal[j] * base[j] for j in range(n))
    return tuple(normal), c


def simplex_det(points: list[tuple[int, ...]], idxs: tuple[int, ...]) -> int:
    """Signed n!-scaled volume of the simplex on n+1 point indices."""
    base = points[idxs[0]]
    n = len(base)
    rows = [[points[i][j] - base[j] for j in range(n)] for i in idxs[1:]]
    return bareiss_det(rows)
