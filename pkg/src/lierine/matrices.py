"""Square and column matrices of polynomials, stored as nested tuples.

A matrix is ``tuple[tuple[Polynomial, ...], ...]`` (row major); a column
vector is ``tuple[Polynomial, ...]``.  Kronecker products use the ordering
``(i, j) -> i * r2 + j``.
"""
from __future__ import annotations

from typing import Callable

from .errors import StructuralError
from .exact_algebra import Polynomial, RingSpec

Matrix = tuple
Vector = tuple


def zeros(ring: RingSpec, rows: int, cols: int | None = None) -> Matrix:
    z = ring.zero()
    return tuple((z,) * (rows if cols is None else cols) for _ in range(rows))


def identity(ring: RingSpec, r: int) -> Matrix:
    z, one = ring.zero(), ring.one()
    return tuple(tuple(one if i == j else z for j in range(r)) for i in range(r))


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def from_rows(rows) -> Matrix:
    return tuple(tuple(row) for row in rows)


def map_entries(f: Callable[[Polynomial], Polynomial], a: Matrix) -> Matrix:
    return tuple(tuple(f(x) for x in row) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise StructuralError(f"shape mismatch {shape(a)} vs {shape(b)}")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise StructuralError(f"shape mismatch {shape(a)} vs {shape(b)}")
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def scale(a: Matrix, c) -> Matrix:
    """Multiply every entry by a polynomial or rational ``c``."""
    return tuple(tuple(x * c for x in row) for row in a)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise StructuralError(f"cannot multiply {shape(a)} by {shape(b)}")
    if n == 0:
        return ()
    zero = a[0][0].ring.zero() if k else None
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = zero
            for t in range(k):
                x = ai[t]
                if x.terms:
                    y = b[t][j]
                    if y.terms:
                        acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def matvec(a: Matrix, v: Vector) -> Vector:
    n, k = shape(a)
    if k != len(v):
        raise StructuralError(f"cannot apply {shape(a)} matrix to length-{len(v)} vector")
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            term = x * y
            acc = term if acc is None else acc + term
        out.append(acc)
    return tuple(out)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(matmul(a, b), matmul(b, a))


def trace(a: Matrix) -> Polynomial:
    n, k = shape(a)
    if n != k:
        raise StructuralError(f"trace of non-square {shape(a)} matrix")
    acc = a[0][0]
    for i in range(1, n):
        acc = acc + a[i][i]
    return acc


def kron(a: Matrix, b: Matrix) -> Matrix:
    n1, m1 = shape(a)
    n2, m2 = shape(b)
    return tuple(
        tuple(a[i][j] * b[k][l] for j in range(m1) for l in range(m2))
        for i in range(n1) for k in range(n2)
    )


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    n1, m1 = shape(a)
    n2, m2 = shape(b)
    ring = (a or b)[0][0].ring
    z = ring.zero()
    top = tuple(tuple(row) + (z,) * m2 for row in a)
    bottom = tuple((z,) * m1 + tuple(row) for row in b)
    return top + bottom


def is_zero(a: Matrix) -> bool:
    return all(not x.terms for row in a for x in row)


def format_matrix(a: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in a]
