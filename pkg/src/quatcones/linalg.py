"""Small exact dense linear algebra over any field-like element type.

Entries only need ``+ - * /`` and truthiness as a zero test, so the same
routines serve FieldElement and TowerElement matrices.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence, TypeVar

T = TypeVar("T")
Matrix = list  # list of rows


def transpose(M: Sequence[Sequence[T]]) -> Matrix:
    return [list(row) for row in zip(*M)]


def mat_mul(A: Sequence[Sequence[T]], B: Sequence[Sequence[T]]) -> Matrix:
    Bt = transpose(B)
    out = []
    for row in A:
        new_row = []
        for col in Bt:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            new_row.append(acc)
        out.append(new_row)
    return out


def mat_vec(A: Sequence[Sequence[T]], v: Sequence[T]) -> list:
    out = []
    for row in A:
        acc = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            acc = acc + x * y
        out.append(acc)
    return out


def identity(n: int, zero: T, one: T) -> Matrix:
    return [[one if r == c else zero for c in range(n)] for r in range(n)]


def det(M: Sequence[Sequence[T]]) -> T:
    """Determinant by Gaussian elimination with row swaps."""
    n = len(M)
    if n == 0:
        raise ValueError("determinant of an empty matrix")
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    rows = [list(r) for r in M]
    sign = 1
    result = None
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return rows[0][0] - rows[0][0]
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        p = rows[col][col]
        result = p if result is None else result * p
        for r in range(col + 1, n):
            f = rows[r][col]
            if f:
                f = f / p
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return result if sign > 0 else -result


def inverse(M: Sequence[Sequence[T]], zero: T, one: T) -> Matrix:
    """Gauss-Jordan inverse; raises ZeroDivisionError when M is singular."""
    n = len(M)
    aug = [list(row) + identity(n, zero, one)[r] for r, row in enumerate(M)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def principal_minors(M: Sequence[Sequence[T]]) -> list:
    """All principal minors, smallest index sets first."""
    n = len(M)
    out = []
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            out.append(det([[M[r][c] for c in idx] for r in idx]))
    return out


def leading_minors(M: Sequence[Sequence[T]]) -> list:
    return [det([row[:k] for row in M[:k]]) for k in range(1, len(M) + 1)]
