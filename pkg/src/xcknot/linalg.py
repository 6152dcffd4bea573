"""Exact Gaussian elimination over Q(i) or Q(i)(params).

Matrices are lists of rows; entries are field elements (``Scalar`` or
``GaussianRational``) that support ``+ - * /`` and truthiness for "nonzero".
Pivots are chosen by a size heuristic to keep rational functions small.
"""

from __future__ import annotations

__all__ = ["SingularMatrix", "solve", "determinant"]


class SingularMatrix(ArithmeticError):
    pass


def _size(x) -> int:
    f = getattr(x, "complexity", None)
    return f() if f is not None else 0


def _pick_pivot(rows, col, start):
    best = None
    best_size = None
    for r in range(start, len(rows)):
        v = rows[r].get(col)
        if v:
            s = _size(v)
            if best is None or s < best_size:
                best, best_size = r, s
    return best


def _to_sparse(matrix):
    return [{j: v for j, v in enumerate(row) if v} for row in matrix]


def solve(matrix, rhs, zero):
    """Solve ``matrix @ x = rhs`` for a square nonsingular ``matrix``.

    Raises :class:`SingularMatrix` when a column has no pivot.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve expects a square system")
    one = zero + 1
    rows = _to_sparse(matrix)
    for r, b in enumerate(rhs):
        if b:
            rows[r][n] = b
    for col in range(n):
        p = _pick_pivot(rows, col, col)
        if p is None:
            raise SingularMatrix(f"no pivot in column {col}")
        rows[col], rows[p] = rows[p], rows[col]
        prow = rows[col]
        inv = 1 / prow[col]
        prow = {j: v * inv for j, v in prow.items()}
        prow[col] = one
        rows[col] = prow
        for r in range(n):
            if r == col:
                continue
            row = rows[r]
            f = row.get(col)
            if not f:
                continue
            for j, v in prow.items():
                nv = row.get(j, zero) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    return [rows[r].get(n, zero) for r in range(n)]


def determinant(matrix, zero, one):
    """Determinant by fraction-based elimination with row-swap sign tracking."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    rows = _to_sparse(matrix)
    det = one
    for col in range(n):
        p = _pick_pivot(rows, col, col)
        if p is None:
            return zero
        if p != col:
            rows[col], rows[p] = rows[p], rows[col]
            det = -det
        prow = rows[col]
        piv = prow[col]
        det = det * piv
        inv = 1 / piv
        for r in range(col + 1, n):
            row = rows[r]
            f = row.get(col)
            if not f:
                continue
            f = f * inv
            for j, v in prow.items():
                nv = row.get(j, zero) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    return det
