"""Dense univariate polynomials over Q and exact real-root isolation.

Coefficients are listed from the constant term up. Isolation uses a Sturm
sequence of the square-free part, so roots of even multiplicity are found
too, and bisection on dyadic rationals.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

UPoly = list  # list[Fraction], constant term first


def trim(p: Sequence) -> UPoly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def add(p, q) -> UPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def scale(p, c) -> UPoly:
    return trim([c * x for x in p])


def mul(p, q) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def power(p, k: int) -> UPoly:
    result: UPoly = [Fraction(1)]
    base = list(p)
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p) -> UPoly:
    return trim([i * p[i] for i in range(1, len(p))])


def divmod_u(a, b) -> tuple[UPoly, UPoly]:
    a = [Fraction(x) for x in trim(a)]
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lb
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a = trim(a)
    return trim(q), a


def monic(p) -> UPoly:
    p = trim(p)
    return [x / p[-1] for x in p] if p else p


def gcd_u(a, b) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_u(a, b)[1]
    return monic(a)


def squarefree(p) -> UPoly:
    g = gcd_u(p, derivative(p))
    return monic(divmod_u(p, g)[0]) if len(g) > 1 else monic(p)


def sturm_sequence(p) -> list[UPoly]:
    seq = [trim(p), derivative(p)]
    while seq[-1]:
        r = divmod_u(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(scale(r, -1))
    return [s for s in seq if s]


def _variations(seq, x) -> int:
    count = 0
    last = 0
    for s in seq:
        v = evaluate(s, x)
        if v:
            sign = 1 if v > 0 else -1
            if last and sign != last:
                count += 1
            last = sign
    return count


def count_roots(seq, a, b) -> int:
    """Distinct real roots in the half-open interval (a, b]."""
    return _variations(seq, a) - _variations(seq, b)


def cauchy_bound(p) -> Fraction:
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def smallest_positive_root(p, tol) -> tuple[Fraction, Fraction] | None:
    """Interval ``(lo, hi]`` of width <= tol holding the smallest root > 0.

    ``lo == hi`` when the root was hit exactly. The square-free part changes
    sign across the interval. Returns None if there is no positive root.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    q = squarefree(p)
    if len(q) < 2:
        return None
    while q and q[0] == 0:
        # the root at zero is excluded
        q = q[1:]
    if len(q) < 2:
        return None
    seq = sturm_sequence(q)
    lo, hi = Fraction(0), cauchy_bound(q)
    if count_roots(seq, lo, hi) == 0:
        return None
    while True:
        if evaluate(q, hi) == 0 and count_roots(seq, lo, hi) == 1:
            return hi, hi
        if hi - lo <= tol and count_roots(seq, lo, hi) == 1:
            return lo, hi
        mid = (lo + hi) / 2
        if count_roots(seq, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
