"""Exact linear algebra over Q: rank and particular solutions.

Rational matrices are cleared to integer rows and reduced by fraction-free
elimination.  The kernel is the compiled ``_elim`` extension when it was built
and importable, else the pure-Python ``_elim_py``; set
``LIERINE_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _elim_py

if os.environ.get("LIERINE_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _elim as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
echelon = (_compiled or _elim_py).echelon


def integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def rank(rows: Sequence[Sequence], ncols: int | None = None, kernel=None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    _, pivots = (kernel or echelon)(integer_rows(rows), ncols)
    return len(pivots)


def solve(rows: Sequence[Sequence], rhs: Sequence, kernel=None) -> list[Fraction] | None:
    """A particular solution of ``A x = b`` (free variables set to 0), or None.

    ``rows`` is the matrix ``A`` in row-major form.
    """
    rows = list(rows)
    n = len(rows[0]) if rows else 0
    if len(rhs) != len(rows):
        raise ValueError("right-hand side length does not match the number of rows")
    aug = integer_rows([list(r) + [b] for r, b in zip(rows, rhs)])
    E, pivots = (kernel or echelon)(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        row = E[k]
        s = Fraction(row[n])
        for j in range(c + 1, n):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    return x
