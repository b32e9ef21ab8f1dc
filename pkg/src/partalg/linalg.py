"""Exact dense linear algebra over Q and over polynomial rings.

Determinants use fraction-free Bareiss elimination, which stays inside
any integral domain supporting exact division (int, Fraction, Poly).
Rank, nullspace, and inverse work over Fraction entries via reduced row
echelon form; polynomial or rational-function matrices can be cleared to
a common domain first by the caller.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "bareiss_det",
    "rank",
    "rref",
    "nullspace",
    "invert",
    "solve_right",
]


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ValueError("inexact integer division in elimination")
        return q
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    return a / b


def bareiss_det(matrix):
    """Determinant of a square matrix by fraction-free elimination.

    Entries may be ints, Fractions, or any domain elements exposing
    * and - and either / (exact) or .exact_div().  Intermediate values
    stay in the same domain, never a fraction field.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign = 1
    prev = None
    for col in range(n - 1):
        pivot_row = None
        for r in range(col, n):
            if m[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            zero = m[0][0] - m[0][0]
            return zero
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        pivot = m[col][col]
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                value = m[r][c] * pivot - m[r][col] * m[col][c]
                if prev is not None:
                    value = _exact_div(value, prev)
                m[r][c] = value
            m[r][col] = m[r][col] - m[r][col]
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def rref(matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fraction; returns (rows, pivot columns)."""
    m = [[Fraction(v) for v in row] for row in matrix]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(row, len(m)):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[row], m[pivot_row] = m[pivot_row], m[row]
        inv = Fraction(1) / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots


def rank(matrix) -> int:
    """Rank over Q.  Entries may be ints or Fractions."""
    return len(rref(matrix)[1])


def nullspace(matrix) -> list[list[Fraction]]:
    """Basis of the right nullspace {v : Mv = 0}, one vector per free column."""
    m = [[Fraction(v) for v in row] for row in matrix]
    if not m:
        return []
    ncols = len(m[0])
    reduced, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    return basis


def invert(matrix) -> list[list[Fraction]]:
    """Inverse of a square matrix over Q; raises ValueError if singular."""
    n = len(matrix)
    aug = [
        [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced[:n]]


def solve_right(matrix, rhs) -> list[Fraction] | None:
    """One solution of Mv = rhs over Q, or None if inconsistent."""
    m = [[Fraction(v) for v in row] for row in matrix]
    if not m:
        return []
    ncols = len(m[0])
    aug = [row + [Fraction(b)] for row, b in zip(m, rhs)]
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return None
    vec = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        vec[pc] = reduced[r][ncols]
    return vec
