"""Geometric queries answered on the frozen matrix ``M(x)``.

Membership compares the corank of ``M(q)`` with that of ``M'``. For a
corank-one handle the determinant of ``M(q)`` is the implicit polynomial at
``q`` times one nonzero constant, so its sign decides sidedness; handles of
higher corank fall back to the polynomial extracted by GCD.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import linalg, univariate
from .config import RunConfig
from .errors import (CoincidesWithSampleRow, DegenerateRay, EmptyKernel,
                     NonGenericSampling, NotCorank1, OnSurface, ZeroCoordinate)
from .implicit import ImplicitPolynomial, implicitize
from .interp import (FrozenMx, derived_seed, eval_last_row, freeze_Mx, monomial_row,
                     sample_points)
from .param import ParametricMap
from .poly import MultiPoly
from .support import LatticePolytope, lattice_points, translate_positive

QueryPoint = tuple  # tuple[Fraction, ...]


class Membership(str, Enum):
    ON = "on_surface"
    OFF = "off_surface"


@dataclass(frozen=True)
class Ray:
    base: tuple
    direction: tuple

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(Fraction(x) for x in self.base))
        object.__setattr__(self, "direction", tuple(Fraction(x) for x in self.direction))
        if len(self.base) != len(self.direction):
            raise ValueError("ray base and direction differ in dimension")
        if not any(self.direction):
            raise ValueError("ray direction must be nonzero")

    def at(self, rho) -> tuple:
        return tuple(b + rho * d for b, d in zip(self.base, self.direction))


@dataclass(frozen=True)
class RayHit:
    lo: Fraction
    hi: Fraction
    rho: Fraction
    point: tuple


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class SurfaceHandle:
    """Immutable query object around a frozen ``M'``.

    The only mutable state is the lazily computed last-row minors, published
    once under a lock.
    """

    def __init__(self, pmap: ParametricMap, frozen: FrozenMx, corank1: bool,
                 fallback_poly: ImplicitPolynomial | None = None, orientation: int = 1,
                 shift: tuple = (), kernel: tuple = (), cofactor=None, diagnostics=None):
        self.pmap = pmap
        self.frozen = frozen
        self.corank1 = corank1
        self.fallback_poly = fallback_poly
        self.orientation = orientation
        self.shift = tuple(shift) or (0,) * pmap.dim
        self.kernel = kernel
        self._cofactor = cofactor
        self.diagnostics = dict(diagnostics or {})
        self._minors = None
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return self.pmap.dim

    def det(self, q) -> Fraction:
        """Exact ``det M(q)``."""
        return linalg.det(eval_last_row(self.frozen, _point(q, self.dim)))

    def polynomial(self) -> ImplicitPolynomial:
        """The normalised implicit polynomial, monomial factor removed."""
        if not self.corank1:
            return self.fallback_poly
        terms = {tuple(k - g for k, g in zip(s, self.shift)): c
                 for s, c in zip(self.frozen.support.points, self.kernel) if c}
        return ImplicitPolynomial.from_poly(MultiPoly(self.pmap.names, terms))

    def last_row_minors(self) -> tuple:
        """Signed cofactors of the last row of ``M(x)``, ``det M(x) = sum w_j m_j``.

        With corank one they are the kernel vector of ``M'`` times a single
        determinant, so only that one minor is eliminated.
        """
        if not self.corank1:
            raise NotCorank1("minor expansion needs a corank-one matrix")
        if self._minors is None:
            with self._lock:
                if self._minors is None:
                    self._minors = tuple(self._cofactor * c for c in self.kernel)
        return self._minors


def _point(q, dim) -> tuple:
    q = tuple(Fraction(x) for x in q)
    if len(q) != dim:
        raise ValueError(f"expected a point with {dim} coordinates, got {len(q)}")
    return q


def _nonzero(q):
    if any(x == 0 for x in q):
        raise ZeroCoordinate("query points must have all coordinates nonzero")


def cofactor_of_column(F: FrozenMx, j: int) -> Fraction:
    """``(-1)^(n-1+j) det(M' without column j)`` for the n x n matrix ``M(x)``."""
    n = len(F.support)
    minor = [[v for c, v in enumerate(row) if c != j] for row in F.Mprime]
    return (-1) ** (n - 1 + j) * linalg.det(minor)


def freeze_surface(pmap: ParametricMap, Q: LatticePolytope,
                   config: RunConfig | None = None) -> SurfaceHandle:
    """Build ``M'`` once and prepare it for queries."""
    config = config or RunConfig()
    S = lattice_points(translate_positive(Q), config.cap)
    F = freeze_Mx(pmap, S, config.seed)

    # check M' against a few further samples: corank must not drop
    extra = sample_points(pmap, 2, derived_seed(config.seed, "check"),
                          avoid=[p.coords for p in F.sample_points])
    full = list(F.Mprime) + [tuple(monomial_row(S, p.coords)) for p in extra]
    r_full = linalg.corank(full, len(S))
    if r_full == 0:
        raise EmptyKernel("the predicted polytope does not contain a translate "
                          "of the implicit polytope; enlarge it")
    if r_full != F.corank:
        raise NonGenericSampling(f"M' has corank {F.corank} but the full matrix {r_full}")

    diagnostics = {"support_size": len(S), "corank": F.corank, "seed": config.seed}
    if F.corank != 1:
        poly, diag = implicitize(pmap, Q, config)
        diagnostics["fallback"] = diag
        return SurfaceHandle(pmap, F, False, fallback_poly=poly, diagnostics=diagnostics)

    c = linalg.nullspace(list(F.Mprime), len(S))[0]
    lead = max(j for j in range(len(S)) if c[j])
    c = [x / c[lead] for x in c]
    used = [S.points[j] for j in range(len(S)) if c[j]]
    shift = tuple(min(col) for col in zip(*used))
    cof = cofactor_of_column(F, lead)
    diagnostics["monomial_shift"] = list(shift)
    return SurfaceHandle(pmap, F, True, orientation=_sign(cof), shift=shift,
                         kernel=tuple(c), cofactor=cof, diagnostics=diagnostics)


# ---------------------------------------------------------------------------
# membership


def membership_detail(h: SurfaceHandle, q) -> tuple[Membership, dict]:
    q = _point(q, h.dim)
    _nonzero(q)
    F = h.frozen
    k = F.coincident_row(q)
    if k is None:
        r = linalg.corank(eval_last_row(F, q))
        return (Membership.ON if r == F.corank else Membership.OFF), {}
    # q is the image of a sample: swap that row for a fresh sample and retest
    avoid = [p.coords for p in F.sample_points] + [q]
    fresh = sample_points(h.pmap, 1, derived_seed(F.seed, f"resample/{k}"), avoid=avoid)[0]
    rows = [list(r) for r in F.Mprime]
    rows[k] = monomial_row(F.support, fresh.coords)
    base = linalg.corank(rows, len(F.support))
    r = linalg.corank(rows + [monomial_row(F.support, q)])
    verdict = Membership.ON if r == base else Membership.OFF
    return verdict, {"resampled_row": k}


def membership(h: SurfaceHandle, q) -> Membership:
    return membership_detail(h, q)[0]


# ---------------------------------------------------------------------------
# sidedness


def side_sign(h: SurfaceHandle, q) -> int:
    """Sign of the normalised implicit polynomial at ``q`` (never 0).

    Computed from ``det M(q)``; the orientation fixed at freeze time makes
    the sign agree with the polynomial whose lex-leading coefficient is 1.
    """
    q = _point(q, h.dim)
    _nonzero(q)
    if not h.corank1:
        v = h.fallback_poly.evaluate(q)
        if v == 0:
            raise OnSurface("query point lies on the hypersurface")
        return _sign(v)
    try:
        s = linalg.det_sign(eval_last_row(h.frozen, q))
    except CoincidesWithSampleRow:
        raise OnSurface("query point is the image of a sample point") from None
    if s == 0:
        raise OnSurface("query point lies on the hypersurface")
    for x, g in zip(q, h.shift):
        if g % 2 and x < 0:
            s = -s
    return s * h.orientation


def sidedness(h: SurfaceHandle, q1, q2) -> int:
    """1 if same side, -1 if opposite sides, 0 if either point is on the surface."""
    q1, q2 = _point(q1, h.dim), _point(q2, h.dim)
    _nonzero(q1)
    _nonzero(q2)
    signs = []
    for q in (q1, q2):
        try:
            signs.append(side_sign(h, q))
        except OnSurface:
            return 0
    return 1 if signs[0] == signs[1] else -1


# ---------------------------------------------------------------------------
# ray shooting


def ray_polynomial(h: SurfaceHandle, ray: Ray) -> list:
    """``det M(r(rho))`` with the monomial factor removed, as a polynomial in rho."""
    if len(ray.base) != h.dim:
        raise ValueError("ray dimension does not match the surface")
    w = h.last_row_minors()
    S = h.frozen.support
    lines = [[b, d] for b, d in zip(ray.base, ray.direction)]
    cache: dict = {}

    def pw(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = univariate.power(lines[i], k)
        return cache[key]

    total: list = []
    for wj, s in zip(w, S.points):
        if not wj:
            continue
        term = [wj]
        for i, (k, g) in enumerate(zip(s, h.shift)):
            if k - g:
                term = univariate.mul(term, pw(i, k - g))
        total = univariate.add(total, term)
    return total


def ray_shoot(h: SurfaceHandle, ray: Ray, tol=Fraction(1, 10 ** 9)) -> RayHit | None:
    """First hit of the ray ``base + rho*dir`` (rho > 0) with the hypersurface."""
    if not h.corank1:
        raise NotCorank1("ray shooting needs a corank-one handle")
    p = ray_polynomial(h, ray)
    if not p:
        raise DegenerateRay("the ray lies inside the hypersurface")
    found = univariate.smallest_positive_root(p, Fraction(tol))
    if found is None:
        return None
    lo, hi = found
    rho = (lo + hi) / 2
    return RayHit(lo, hi, rho, ray.at(rho))
