"""Exact rank, determinant and kernel of rational matrices, plus an SVD mode.

Rational rows are cleared to integers by a positive per-row factor, which
keeps rank, kernel and determinant sign intact; the exact determinant is
recovered by dividing the factors back out.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Sequence

import numpy as np

from .errors import CapExceeded
from .kernels import bareiss_echelon, bareiss_rref

Matrix = Sequence[Sequence[Fraction]]


def integerize(rows: Matrix, max_bits: int | None = None):
    """Return integer rows and the positive factor each row was multiplied by."""
    out = []
    scales = []
    for row in rows:
        den = reduce(lcm, (Fraction(x).denominator for x in row), 1)
        ints = [int(Fraction(x) * den) for x in row]
        if max_bits is not None:
            bits = max((abs(v).bit_length() for v in ints), default=0)
            if bits > max_bits:
                raise CapExceeded(f"matrix entry needs {bits} bits, cap is {max_bits}")
        out.append(ints)
        scales.append(den)
    return out, scales


def rank(rows: Matrix) -> int:
    if not rows:
        return 0
    ints, _ = integerize(rows)
    return len(bareiss_echelon(ints)[1])


def corank(rows: Matrix, ncols: int | None = None) -> int:
    if ncols is None:
        ncols = len(rows[0])
    return ncols - rank(rows)


def det(rows: Matrix) -> Fraction:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    ints, scales = integerize(rows)
    m, pivots, swaps = bareiss_echelon(ints)
    if len(pivots) < n:
        return Fraction(0)
    value = m[n - 1][n - 1] * (-1 if swaps % 2 else 1)
    return Fraction(value, reduce(lambda a, b: a * b, scales, 1))


def det_sign(rows: Matrix) -> int:
    """Sign of the determinant in {-1, 0, 1}; row factors are positive so only the integer part matters."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    ints, _ = integerize(rows)
    m, pivots, swaps = bareiss_echelon(ints)
    if len(pivots) < n:
        return 0
    value = m[n - 1][n - 1]
    s = 1 if value > 0 else -1
    return -s if swaps % 2 else s


def rref(rows: Matrix):
    """Reduced row echelon form as Fractions, with pivot columns."""
    if not rows:
        return [], []
    ints, _ = integerize(rows)
    m, pivots, d = bareiss_rref(ints)
    return [[Fraction(x, d) for x in m[i]] for i in range(len(pivots))], pivots


def nullspace(rows: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Canonical kernel basis: the reduced echelon form of any basis.

    Each vector's first nonzero entry is 1, and two matrices with the same
    kernel return identical bases.
    """
    if ncols is None:
        ncols = len(rows[0])
    if rows:
        ints, _ = integerize(rows)
        m, pivots, d = bareiss_rref(ints)
    else:
        m, pivots, d = [], [], 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    if not free:
        return []
    # dividing by d first keeps the second pass on small rationals
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = Fraction(-m[i][f], d)
        basis.append(v)
    red, _ = rref(basis)
    return red


def mat_vec(rows: Matrix, v: Sequence) -> list:
    return [sum(a * b for a, b in zip(r, v)) for r in rows]


# ---------------------------------------------------------------------------
# floating point


def scale_rows_unit(a: np.ndarray) -> np.ndarray:
    """Divide each row by its largest modulus."""
    norms = np.max(np.abs(a), axis=1, keepdims=True)
    norms[norms == 0] = 1
    return a / norms


def numeric_corank(a: np.ndarray, tol: float = 1e-8) -> int:
    a = scale_rows_unit(np.asarray(a))
    s = np.linalg.svd(a, compute_uv=False)
    ncols = a.shape[1]
    if s.size == 0 or s[0] == 0:
        return ncols
    return ncols - int(np.sum(s > tol * s[0]))


def numeric_nullspace(a: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Orthonormal kernel basis (rows) from the SVD."""
    a = scale_rows_unit(np.asarray(a))
    _, s, vh = np.linalg.svd(a)
    ncols = a.shape[1]
    r = int(np.sum(s > tol * s[0])) if s.size and s[0] else 0
    return vh[r:ncols].conj()
