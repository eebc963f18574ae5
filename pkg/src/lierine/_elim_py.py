"""Fraction-free (Bareiss) row echelon form over the integers, pure Python.

Twin of ``_elim.pyx``; both expose ``echelon(rows, ncols)``.
"""


def echelon(rows, ncols):
    """Return ``(matrix, pivot_columns)`` for an integer matrix given as row lists.

    Pivots are chosen as the first nonzero entry in row order, so the result is
    deterministic.  Entries stay integral: each elimination step divides
    exactly by the previous pivot.
    """
    M = [list(r) for r in rows]
    n = len(M)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == n:
            break
        p = r
        while p < n and not M[p][c]:
            p += 1
        if p == n:
            continue
        if p != r:
            M[p], M[r] = M[r], M[p]
        rowr = M[r]
        pivot = rowr[c]
        for i in range(r + 1, n):
            rowi = M[i]
            a = rowi[c]
            if a:
                for j in range(c + 1, ncols):
                    rowi[j] = (pivot * rowi[j] - a * rowr[j]) // prev
                rowi[c] = 0
            elif prev != pivot:
                for j in range(c + 1, ncols):
                    if rowi[j]:
                        rowi[j] = (pivot * rowi[j]) // prev
        prev = pivot
        pivots.append(c)
        r += 1
    return M, pivots
