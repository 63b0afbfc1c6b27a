"""Fraction-free Gauss-Jordan elimination over the integers.

This is the pure Python twin of the compiled kernel in ``_echelon.pyx``.
Both implement the same single-step Bareiss-style elimination; the package
picks one at import time (see ``incidalg._core``).  Everything here works on
flat row-major lists of arbitrary-precision ``int``.
"""

BACKEND = "python"


def fraction_free_gauss_jordan(entries, nrows, ncols):
    """Reduce an integer matrix to a scaled reduced row-echelon form.

    Returns ``(out, pivots, denom, sign)`` where ``out`` is a flat row-major
    integer matrix equal to ``denom`` times the rational RREF of the input,
    ``pivots`` is the increasing list of pivot columns, ``denom`` is the last
    Bareiss pivot (``1`` for the zero matrix; may be negative), and ``sign``
    is the parity of row swaps.  For a square full-rank input the exact
    determinant is ``sign * denom``.

    Pivots are chosen by minimal absolute value within the eligible rows to
    limit coefficient growth; intermediate divisions are exact (Sylvester
    identity), which keeps every intermediate entry an integer minor of the
    input.
    """
    a = list(entries)
    pivots = []
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # pivot: smallest nonzero |entry| in column c at rows >= r
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
