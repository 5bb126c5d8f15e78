"""Small exact linear algebra over Q (with ring-valued right-hand sides).

Matrices are lists of rows of Fractions.  Right-hand sides may hold Laurent
elements: every solve multiplies by an exact rational inverse, which keeps
the coefficient ring closed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[List[Fraction]]


class SingularMatrixError(ArithmeticError):
    pass


def zeros(n: int, m: int) -> Matrix:
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence):
    return [_dot(row, v) for row in a]


def _dot(row, v):
    total = Fraction(0)
    for x, y in zip(row, v):
        if x != 0 and y != 0:
            total = total + x * y
    return total


def matsub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def rref(a: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns (exact, Fractions only)."""
    m = [[Fraction(x) for x in row] for row in a]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    """Exact rank; entries may be Fractions or Laurent elements.

    Uses division-free elimination so Laurent entries never need inverting.
    """
    m = [list(row) for row in a]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        for i in range(r + 1, rows):
            f = m[i][c]
            if f != 0:
                m[i] = [pv * x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(map(Fraction, row)) + e for row, e in zip(a, identity(n))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def nullspace(a: Sequence[Sequence]) -> Matrix:
    """Basis (as rows) of the right kernel of ``a``."""
    if not a:
        return []
    cols = len(a[0])
    red, piv = rref(a)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, pc in enumerate(piv):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def row_space_basis(vectors: Sequence[Sequence]) -> Matrix:
    """Basis of the span of ``vectors`` (nonzero reduced echelon rows)."""
    red, piv = rref(vectors)
    return [row for row in red[: len(piv)]]


def projector(vectors: Sequence[Sequence]) -> Matrix:
    """Orthogonal projector onto span(vectors) for the standard inner product."""
    basis = row_space_basis(vectors)
    if not basis:
        n = len(vectors[0]) if vectors else 0
        return zeros(n, n)
    b = transpose(basis)  # columns are basis vectors
    gram = matmul(basis, b)
    return matmul(matmul(b, inverse(gram)), basis)


def least_squares(a: Sequence[Sequence], b: Sequence) -> Tuple[list, list]:
    """Exact normal-equation solve; returns (solution, residual)."""
    at = transpose(a)
    gram = matmul(at, a)
    try:
        gi = inverse(gram)
    except SingularMatrixError as exc:
        raise SingularMatrixError("columns are linearly dependent") from exc
    x = matvec(gi, matvec(at, b))
    resid = [bi - ri for bi, ri in zip(b, matvec(a, x))]
    return x, resid
