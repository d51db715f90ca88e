"""Lattice polytopes and predicted implicit supports.

Hulls are computed with exact integer arithmetic. Lower-dimensional point
sets are handled by projecting onto coordinates that are independent on the
affine hull and recording the affine equations as paired inequalities.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, DimensionMismatch, InputIOError, ParseError

DEFAULT_CAP = 10 ** 7
DEFAULT_MAX_DEGREE = 32

Vector = tuple[int, ...]


@dataclass(frozen=True)
class LatticePolytope:
    """Vertices plus the matching H-representation ``a.x <= b``."""

    dim: int
    vertices: tuple[Vector, ...]
    halfspaces: tuple[tuple[Vector, int], ...]

    def contains(self, x: Sequence[int]) -> bool:
        return all(_dot(a, x) <= b for a, b in self.halfspaces)

    def bounding_box(self) -> tuple[Vector, Vector]:
        cols = list(zip(*self.vertices))
        return tuple(min(c) for c in cols), tuple(max(c) for c in cols)

    def translate(self, shift: Sequence[int]) -> LatticePolytope:
        verts = tuple(tuple(v + s for v, s in zip(p, shift)) for p in self.vertices)
        hs = tuple((a, b + _dot(a, shift)) for a, b in self.halfspaces)
        return LatticePolytope(self.dim, verts, hs)

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.dim == other.dim and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash((self.dim, frozenset(self.vertices)))


@dataclass(frozen=True)
class SupportSet:
    """Ordered candidate exponents; the order fixes matrix columns."""

    dim: int
    points: tuple[Vector, ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def index(self, e) -> int:
        return self.points.index(tuple(e))

    def max_exponents(self) -> Vector:
        return tuple(max(c) for c in zip(*self.points))


def _dot(a, x) -> int:
    return sum(p * q for p, q in zip(a, x))


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = reduce(math.gcd, v, 0)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


# ---------------------------------------------------------------------------
# exact helpers


def _rref(rows: list[list[Fraction]]):
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _integer_nullspace(rows: list[list[int]], ncols: int) -> list[tuple[int, ...]]:
    if not rows:
        basis = []
        for c in range(ncols):
            e = [0] * ncols
            e[c] = 1
            basis.append(tuple(e))
        return basis
    red, pivots = _rref([[Fraction(x) for x in r] for r in rows])
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        den = reduce(math.lcm, (x.denominator for x in v), 1)
        out.append(_primitive([int(x * den) for x in v]))
    return out


def _cofactor_normal(vectors: list[Sequence[int]]) -> list[int]:
    """Integer vector orthogonal to k-1 vectors in Z^k (generalised cross product)."""
    k = len(vectors) + 1
    normal = []
    for j in range(k):
        minor = [[v[c] for c in range(k) if c != j] for v in vectors]
        normal.append((-1) ** j * _int_det(minor))
    return normal


def _int_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _hull_2d(pts: list[tuple[int, int]]):
    pts = sorted(set(pts))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    ring = lower[:-1] + upper[:-1]  # counter-clockwise
    facets = []
    for i, p in enumerate(ring):
        q = ring[(i + 1) % len(ring)]
        # outward normal of a ccw edge p->q
        a = _primitive((q[1] - p[1], p[0] - q[0]))
        facets.append((a, _dot(a, p)))
    return ring, facets


def _hull_full(pts: list[Vector], k: int):
    """Facets of a full-dimensional point set in Z^k by exhaustive search."""
    if k == 1:
        lo, hi = min(p[0] for p in pts), max(p[0] for p in pts)
        return [((1,), hi), ((-1,), -lo)]
    if k == 2:
        return _hull_2d(pts)[1]
    facets = set()
    for combo in itertools.combinations(range(len(pts)), k):
        base = pts[combo[0]]
        diffs = [[pts[j][c] - base[c] for c in range(k)] for j in combo[1:]]
        normal = _cofactor_normal(diffs)
        if not any(normal):
            continue
        b = _dot(normal, base)
        above = below = False
        for p in pts:
            v = _dot(normal, p) - b
            if v > 0:
                above = True
            elif v < 0:
                below = True
            if above and below:
                break
        if above and below:
            continue
        if above:
            normal, b = [-x for x in normal], -b
        g = reduce(math.gcd, normal, 0)
        facets.add((tuple(x // g for x in normal), b // g))
    return sorted(facets)


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatch("points of different dimensions")
    p0 = pts[0]
    diffs = [[p[c] - p0[c] for c in range(d)] for p in pts[1:]]
    diffs = [r for r in diffs if any(r)]
    if diffs:
        _, proj = _rref([[Fraction(x) for x in r] for r in diffs])
    else:
        proj = []
    k = len(proj)

    halfspaces: list[tuple[Vector, int]] = []
    for a in _integer_nullspace(diffs, d):
        b = _dot(a, p0)
        halfspaces.append((a, b))
        halfspaces.append((tuple(-x for x in a), -b))

    if k == 0:
        return LatticePolytope(d, (p0,), tuple(halfspaces))

    projected = [tuple(p[c] for c in proj) for p in pts]
    facets = _hull_full(projected, k)
    lifted = []
    for a, b in facets:
        full = [0] * d
        for c, x in zip(proj, a):
            full[c] = x
        lifted.append((tuple(full), b))

    # a point is a vertex when the facets through it have normals of rank k
    vertices = []
    for p, q in zip(pts, projected):
        tight = [list(a) for a, b in facets if _dot(a, q) == b]
        if len(tight) >= k and _rank_int(tight) == k:
            vertices.append(p)
    return LatticePolytope(d, tuple(vertices), tuple(halfspaces + sorted(lifted)))


def _rank_int(rows) -> int:
    return len(_rref([[Fraction(x) for x in r] for r in rows])[1])


# ---------------------------------------------------------------------------
# operations


def translate_positive(Q: LatticePolytope) -> LatticePolytope:
    lo, _ = Q.bounding_box()
    return Q.translate(tuple(-x for x in lo))


def _check_volume(lo, hi, cap):
    vol = 1
    for a, b in zip(lo, hi):
        vol *= b - a + 1
    if vol > cap:
        raise CapExceeded(f"bounding box holds {vol} lattice points, cap is {cap}")
    return vol


def lattice_points(Q: LatticePolytope, cap: int = DEFAULT_CAP) -> SupportSet:
    """All integer points of ``Q`` in lexicographic order."""
    lo, hi = Q.bounding_box()
    _check_volume(lo, hi, cap)
    A = np.array([a for a, _ in Q.halfspaces], dtype=object if _big(Q) else np.int64)
    b = np.array([b for _, b in Q.halfspaces], dtype=A.dtype)
    found: list[Vector] = []
    if Q.dim == 1:
        xs = np.arange(lo[0], hi[0] + 1, dtype=np.int64).reshape(1, -1)
        ok = np.all(A @ xs <= b[:, None], axis=0) if len(A) else np.ones(xs.shape[1], bool)
        found = [(int(x),) for x in xs[0, ok]]
        return SupportSet(1, tuple(found))
    # one slab per value of the first coordinate keeps memory bounded
    rest = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo[1:], hi[1:])]
    grid = np.stack([g.ravel() for g in np.meshgrid(*rest, indexing="ij")])
    for x0 in range(lo[0], hi[0] + 1):
        pts = np.vstack([np.full((1, grid.shape[1]), x0, dtype=np.int64), grid])
        ok = np.all(A @ pts <= b[:, None], axis=0)
        found.extend(tuple(int(v) for v in col) for col in pts[:, ok].T)
    return SupportSet(Q.dim, tuple(found))


def _big(Q: LatticePolytope) -> bool:
    limit = 2 ** 40
    return any(abs(x) > limit for a, b in Q.halfspaces for x in (*a, b)) or any(
        abs(x) > limit for v in Q.vertices for x in v)


def minkowski_sum(A: LatticePolytope, B: LatticePolytope) -> LatticePolytope:
    if A.dim != B.dim:
        raise DimensionMismatch("Minkowski sum of polytopes in different dimensions")
    return convex_hull(tuple(p + q for p, q in zip(u, v)) for u in A.vertices for v in B.vertices)


def translate_count(P: LatticePolytope, Q: LatticePolytope, cap: int = DEFAULT_CAP) -> int:
    """Number of integer vectors ``a`` with ``a + P`` inside ``Q``."""
    if P.dim != Q.dim:
        raise DimensionMismatch("polytopes in different dimensions")
    plo, phi = P.bounding_box()
    qlo, qhi = Q.bounding_box()
    lo = [q - p for q, p in zip(qlo, plo)]
    hi = [q - p for q, p in zip(qhi, phi)]
    if any(l > h for l, h in zip(lo, hi)):
        return 0
    _check_volume(lo, hi, cap)
    count = 0
    for a in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if all(Q.contains([v + s for v, s in zip(p, a)]) for p in P.vertices):
            count += 1
    return count


def simplex(dim: int, D: int) -> LatticePolytope:
    verts = [(0,) * dim]
    for i in range(dim):
        e = [0] * dim
        e[i] = D
        verts.append(tuple(e))
    return convex_hull(verts)


def degree_bound_polytope(pmap, D: int | None = None,
                          max_degree: int = DEFAULT_MAX_DEGREE) -> LatticePolytope:
    """Coarse fallback support: the simplex sum(x) <= D, D = product of coordinate degrees.

    A superset heuristic, not a guarantee in every degenerate case.
    """
    if D is None:
        D = math.prod(pmap.degrees())
    if D > max_degree:
        raise CapExceeded(f"degree bound {D} exceeds the maximum {max_degree}")
    if D < 1:
        raise ValueError("degree bound must be positive")
    return simplex(pmap.dim, D)


# ---------------------------------------------------------------------------
# file format


def parse_polytope(text: str) -> LatticePolytope:
    """Read ``dim k`` followed by one vertex per line; ``#`` starts a comment."""
    dim = None
    verts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if dim is None:
            if len(fields) != 2 or fields[0] != "dim":
                raise ParseError(f"line {lineno}: expected 'dim k'")
            try:
                dim = int(fields[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad dimension {fields[1]!r}") from None
            continue
        try:
            v = tuple(int(x) for x in fields)
        except ValueError:
            raise ParseError(f"line {lineno}: vertex coordinates must be integers") from None
        if len(v) != dim:
            raise ParseError(f"line {lineno}: expected {dim} coordinates, got {len(v)}")
        verts.append(v)
    if dim is None or not verts:
        raise ParseError("polytope file has no vertices")
    return convex_hull(verts)


def load_polytope(path) -> LatticePolytope:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputIOError(f"cannot read {path}: {exc.strerror}") from None
    return parse_polytope(text)


def format_polytope(Q: LatticePolytope) -> str:
    lines = [f"dim {Q.dim}"]
    lines += [" ".join(str(x) for x in v) for v in sorted(Q.vertices)]
    return "\n".join(lines) + "\n"
