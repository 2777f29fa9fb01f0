"""Dense exact linear algebra over Q or F_p (rows are lists of field elements)."""

from __future__ import annotations

from typing import Sequence

from .exactpoly import Field


def row_echelon(rows: Sequence[Sequence], field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [[field(v) for v in row] for row in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.inv(M[r][c])
        M[r] = [field.mul(v, inv) for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [field.add(a, field.neg(field.mul(f, b))) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence], field: Field) -> int:
    return len(row_echelon(rows, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: Field) -> list[list]:
    """Basis of {v : rows . v = 0}."""
    R, pivots = row_echelon(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, pc in zip(R, pivots):
            v[pc] = field.neg(row[fcol])
        basis.append(v)
    return basis


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], field: Field) -> list[list]:
    p = field.char
    out = []
    for row in A:
        new = []
        for j in range(len(B[0]) if B else 0):
            s = sum(row[k] * B[k][j] for k in range(len(B)))
            new.append(s % p if p else field(s))
        out.append(new)
    return out


def kernel_dim(rows: Sequence[Sequence], ncols: int, field: Field) -> int:
    return ncols - (rank(rows, field) if rows else 0)


def solve_in_span(basis_rows: Sequence[Sequence], target: Sequence, field: Field):
    """Coefficients c with sum c_i basis_i = target, or None."""
    k = len(basis_rows)
    if k == 0:
        return [] if all(v == 0 for v in target) else None
    n = len(target)
    aug = [[basis_rows[i][j] for i in range(k)] + [target[j]] for j in range(n)]
    R, pivots = row_echelon(aug, field)
    if k in pivots:
        return None
    sol = [0] * k
    for row, pc in zip(R, pivots):
        sol[pc] = row[k]
    return sol
