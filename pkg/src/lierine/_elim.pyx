# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_elim_py``: Bareiss elimination on Python integers."""


def echelon(rows, Py_ssize_t ncols):
    cdef list M = [list(row) for row in rows]
    cdef Py_ssize_t n = len(M)
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef list rowr, rowi
    cdef list pivots = []
    cdef object prev = 1
    cdef object pivot, a, x
    for c in range(ncols):
        if r == n:
            break
        p = r
        while p < n and not (<list>M[p])[c]:
            p += 1
        if p == n:
            continue
        if p != r:
            M[p], M[r] = M[r], M[p]
        rowr = <list>M[r]
        pivot = rowr[c]
        for i in range(r + 1, n):
            rowi = <list>M[i]
            a = rowi[c]
            if a:
                for j in range(c + 1, ncols):
                    rowi[j] = (pivot * rowi[j] - a * rowr[j]) // prev
                rowi[c] = 0
            elif prev != pivot:
                for j in range(c + 1, ncols):
                    x = rowi[j]
                    if x:
                        rowi[j] = (pivot * x) // prev
        prev = pivot
        pivots.append(c)
        r += 1
    return M, pivots
