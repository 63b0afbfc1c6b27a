# cython: language_level=3
"""Compiled fraction-free Gauss-Jordan kernel.

Entries stay arbitrary-precision Python ints; the speedup over
``echelon_py`` comes from typed loop indices and direct list indexing.
Semantics must match ``echelon_py.fraction_free_gauss_jordan`` exactly;
the test suite cross-checks both backends on random matrices.
"""

BACKEND = "cython"


def fraction_free_gauss_jordan(entries, Py_ssize_t nrows, Py_ssize_t ncols):
    cdef list a = list(entries)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c = 0, i = 0, j = 0, best = 0, rr = 0, ri = 0, rb = 0
    cdef int sign = 1
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_abs = 0
        for i in range(r, nrows):
            v = a[i * ncols + c]
            if v:
                av = -v if v < 0 else v
                if best < 0 or av < best_abs:
                    best = i
                    best_abs = av
                    if av == 1:
                        break
        if best < 0:
            continue
        if best != r:
            rb = best * ncols
            rr = r * ncols
            for j in range(ncols):
                a[rr + j], a[rb + j] = a[rb + j], a[rr + j]
            sign = -sign
        rr = r * ncols
        p = a[rr + c]
        for i in range(nrows):
            if i == r:
                continue
            ri = i * ncols
            x = a[ri + c]
            if x:
                for j in range(ncols):
                    a[ri + j] = (p * a[ri + j] - x * a[rr + j]) // prev
            elif p != prev:
                for j in range(ncols):
                    a[ri + j] = (p * a[ri + j]) // prev
        pivots.append(c)
        prev = p
        r += 1
    return a, pivots, prev, sign
