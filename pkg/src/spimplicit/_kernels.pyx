# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free elimination; same contract as _kernels_py."""


def bareiss_echelon(rows):
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(m), ncols, r = 0, c, i, j, p
    cdef list pivots = []
    cdef list prow, irow
    cdef long swaps = 0
    cdef object prev = 1, piv, f
    if nrows == 0:
        return m, pivots, swaps
    ncols = len(<list>m[0])
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and (<list>m[p])[c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
            swaps += 1
        prow = <list>m[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            irow = <list>m[i]
            f = irow[c]
            if f == 0:
                if piv != prev:
                    for j in range(c + 1, ncols):
                        irow[j] = piv * irow[j] // prev
            else:
                for j in range(c + 1, ncols):
                    irow[j] = (piv * irow[j] - f * prow[j]) // prev
                irow[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots, swaps


def bareiss_rref(rows):
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(m), ncols, r = 0, c, i, j, p, start
    cdef list pivots = []
    cdef list prow, irow
    cdef object prev = 1, piv, f
    if nrows == 0:
        return m, pivots, 1
    ncols = len(<list>m[0])
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and (<list>m[p])[c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = <list>m[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            irow = <list>m[i]
            f = irow[c]
            start = c + 1 if i > r else 0
            if f == 0:
                if piv != prev:
                    for j in range(start, ncols):
                        irow[j] = piv * irow[j] // prev
            else:
                for j in range(start, ncols):
                    if j != c:
                        irow[j] = (piv * irow[j] - f * prow[j]) // prev
                irow[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots, prev
