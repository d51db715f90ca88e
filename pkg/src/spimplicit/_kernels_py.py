"""Pure-Python fraction-free elimination. Reference for the compiled twin in _kernels.pyx."""


def bareiss_echelon(rows):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(m, pivots, swaps)``. Every entry of ``m`` is an exact minor of
    the input; for a square nonsingular input ``m[-1][-1]`` is the
    determinant up to the sign ``(-1)**swaps``.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    swaps = 0
    if nrows == 0:
        return m, pivots, swaps
    ncols = len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
            swaps += 1
        prow = m[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            irow = m[i]
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
    """Fraction-free reduced echelon form.

    Returns ``(m, pivots, d)``: the first ``len(pivots)`` rows of ``m`` divided
    by ``d`` give the reduced row echelon form; all pivot entries equal ``d``.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    if nrows == 0:
        return m, pivots, 1
    ncols = len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = m[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            irow = m[i]
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
