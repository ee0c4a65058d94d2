"""Exact linear algebra over any field-like coefficient type.

Matrices are lists of row lists. Entries need +, -, *, /, == and a zero
element passed explicitly; FieldElem and plain rationals both qualify.
"""
from __future__ import annotations


def rref(matrix, zero):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != zero:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [e / pv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix, zero) -> int:
    return len(rref(matrix, zero)[1])


def kernel_basis(matrix, ncols: int, zero, one):
    """Basis of the right kernel {v : M v = 0}, one vector per free column."""
    if not matrix:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    rows, pivots = rref(matrix, zero)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve(matrix, rhs, zero):
    """One solution of M x = rhs, or None if inconsistent."""
    if not matrix:
        return None
    ncols = len(matrix[0])
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    rows, pivots = rref(aug, zero)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return x


def left_kernel_basis(matrix, zero, one):
    """Basis of {w : w M = 0}; spans the cokernel of the column map."""
    nrows = len(matrix)
    if nrows == 0:
        return []
    t = [[matrix[i][j] for i in range(nrows)] for j in range(len(matrix[0]))]
    return kernel_basis(t, nrows, zero, one)


def mat_vec(matrix, v, zero):
    out = []
    for row in matrix:
        s = zero
        for a, b in zip(row, v):
            s = s + a * b
        out.append(s)
    return out
