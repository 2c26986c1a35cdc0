"""Exact linear algebra over a :class:`ScalarField`."""

from __future__ import annotations

from fractions import Fraction

from .polynomial import determinant

__all__ = ["dot", "gram_matrix", "gram_det", "row_reduction_rank", "solve"]


def dot(u, v):
    total = Fraction(0)
    for a, b in zip(u, v):
        total = total + a * b
    return total


def gram_matrix(rows):
    rows = [list(r) for r in rows]
    k = len(rows)
    G = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            G[i][j] = G[j][i] = dot(rows[i], rows[j])
    return G


def gram_det(rows):
    """``det(<a_i, a_j>)``; 1 for the empty family."""
    return determinant(gram_matrix(rows), zero=Fraction(0))


def row_reduction_rank(rows, field) -> int:
    """Rank by fraction-free (Bareiss) elimination with certified pivots."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    prev = Fraction(1)
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(M)):
            if field.sign(M[r][col]) != 0:
                pivot = r
                break
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][col]
        for r in range(rank + 1, len(M)):
            f = M[r][col]
            M[r] = [(p * M[r][c] - f * M[rank][c]) / prev for c in range(ncols)]
        prev = p
        rank += 1
        if rank == len(M):
            break
    return rank


def solve(A, b, field):
    """Solve the square system ``A x = b`` by Gaussian elimination.

    Raises ZeroDivisionError when ``A`` is singular.
    """
    n = len(A)
    M = [list(A[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if field.sign(M[r][col]) != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        M[col], M[pivot] = M[pivot], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col:
                f = M[r][col]
                if field.sign(f) != 0:
                    M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]
