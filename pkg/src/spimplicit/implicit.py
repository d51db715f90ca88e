"""From kernel vectors to the implicit polynomial, and a resultant oracle for curves."""
from __future__ import annotations

import json
import logging
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .config import RunConfig
from .errors import EmptyKernel, NonGenericSampling, UnsupportedInput
from .interp import (KernelBasis, build_matrix, derived_seed, kernel_basis)
from .param import ParametricMap
from .poly import MultiPoly, exact_div, gcd, gcd_list, squarefree_part
from .support import LatticePolytope, SupportSet, lattice_points, translate_positive

log = logging.getLogger(__name__)


class ImplicitPolynomial(MultiPoly):
    """Exact polynomial in the coordinates, lex-leading coefficient 1."""

    __slots__ = ()

    @classmethod
    def from_poly(cls, p: MultiPoly) -> ImplicitPolynomial:
        if p.is_zero():
            raise ValueError("the implicit polynomial cannot be zero")
        m = p.monic()
        return cls._raw(m.variables, m.terms)

    def to_json(self) -> dict:
        return {
            "vars": list(self.variables),
            "terms": [{"exp": list(e), "coef": str(self.terms[e])}
                      for e in sorted(self.terms, reverse=True)],
        }

    @classmethod
    def from_json(cls, data) -> ImplicitPolynomial:
        if isinstance(data, str):
            data = json.loads(data)
        terms = {tuple(t["exp"]): Fraction(t["coef"]) for t in data["terms"]}
        return cls.from_poly(MultiPoly(data["vars"], terms))


def kernel_to_polys(K: KernelBasis, S: SupportSet,
                    variables: Sequence[str]) -> list[MultiPoly]:
    """Polynomial ``c . m`` for every kernel vector ``c``."""
    return [MultiPoly(variables, {s: c for s, c in zip(S.points, vec) if c})
            for vec in K.vectors]


def poly_gcd(polys: Sequence[MultiPoly]) -> ImplicitPolynomial:
    return ImplicitPolynomial.from_poly(gcd_list(polys))


def strip_monomial(p: MultiPoly) -> MultiPoly:
    """Divide out the largest monomial factor ``x^gamma``."""
    if p.is_zero():
        raise ValueError("cannot strip the zero polynomial")
    gamma = p.min_exponents()
    if not any(gamma):
        return p
    out = p.shift(tuple(-g for g in gamma))
    return ImplicitPolynomial.from_poly(out) if isinstance(p, ImplicitPolynomial) else out


def _float_kernel_poly(vec, S: SupportSet, variables, tol) -> MultiPoly:
    v = np.asarray(vec)
    if np.iscomplexobj(v):
        # unit-modulus complex samples of a real curve leave a real kernel up to a phase
        v = v / v[np.argmax(np.abs(v))]
        v = v.real
    big = np.max(np.abs(v))
    return MultiPoly(variables, {s: Fraction(float(c)) for s, c in zip(S.points, v)
                                 if abs(c) > tol * big})


def implicitize(pmap: ParametricMap, Q: LatticePolytope, config: RunConfig | None = None):
    """Implicit polynomial of ``pmap`` from the predicted polytope ``Q``.

    Returns ``(polynomial, diagnostics)``. Diagnostics report the support
    size, the row count, the observed corank and the seeds used.
    """
    config = config or RunConfig()
    Qn = translate_positive(Q)
    S = lattice_points(Qn, config.cap)
    mu = config.mu(len(S))
    names = pmap.names
    M = build_matrix(pmap, S, mu, config.seed, config.mode, config.tol, config.sampling)
    if config.mode == "exact" and config.max_bits is not None:
        linalg.integerize(M.rows, config.max_bits)
    K = kernel_basis(M)
    seeds = [config.seed]
    diagnostics = {
        "mode": config.mode,
        "support_size": len(S),
        "mu": mu,
        "corank": K.corank,
        "translation": [-x for x in Q.bounding_box()[0]],
    }

    if config.mode == "approximate":
        if K.corank != 1:
            raise UnsupportedInput(
                f"approximate mode found corank {K.corank}; only corank 1 is "
                "supported without exact arithmetic (rerun with --mode exact)")
        p = _float_kernel_poly(K.vectors[0], S, names, config.tol)
        p = ImplicitPolynomial.from_poly(strip_monomial(p))
        diagnostics["seeds"] = seeds
        diagnostics["validated"] = False
        return p, diagnostics

    if config.validate:
        seed2 = derived_seed(config.seed, "validate")
        seeds.append(seed2)
        M2 = build_matrix(pmap, S, mu, seed2)
        try:
            K2 = kernel_basis(M2)
        except EmptyKernel:
            K2 = None
        if K2 is None or K2.vectors != K.vectors:
            raise NonGenericSampling(
                "kernels from two independent samplings differ; the samples are not "
                "generic for this map (try another seed or a larger mu factor)")
    diagnostics["seeds"] = seeds
    diagnostics["validated"] = config.validate

    polys = kernel_to_polys(K, S, names)
    p = polys[0] if K.corank == 1 else gcd_list(polys)
    p = ImplicitPolynomial.from_poly(strip_monomial(p))
    diagnostics["terms"] = len(p.terms)
    return p, diagnostics


# ---------------------------------------------------------------------------
# resultant oracle


def _det_over_ring(m: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant over a polynomial ring."""
    n = len(m)
    a = [list(r) for r in m]
    variables = a[0][0].variables
    sign = 1
    prev = MultiPoly.constant(variables, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if p is None:
                return MultiPoly.zero(variables)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def sylvester_matrix(f: Sequence[MultiPoly], g: Sequence[MultiPoly]) -> list[list[MultiPoly]]:
    """Sylvester matrix from coefficient lists (highest degree first)."""
    df, dg = len(f) - 1, len(g) - 1
    n = df + dg
    zero = MultiPoly.zero(f[0].variables)
    rows = []
    for i in range(dg):
        rows.append([zero] * i + list(f) + [zero] * (n - df - 1 - i))
    for i in range(df):
        rows.append([zero] * i + list(g) + [zero] * (n - dg - 1 - i))
    return rows


def sylvester_oracle(pmap: ParametricMap) -> ImplicitPolynomial:
    """Implicit equation of a plane curve by the Sylvester resultant in t.

    Eliminates ``t`` from ``x g0(t) - f0(t)`` and ``y g1(t) - f1(t)``, then
    removes content, monomial factors and repeated factors.
    """
    if pmap.n != 1 or pmap.dim != 2:
        raise UnsupportedInput("the resultant oracle handles plane curves only")
    names = pmap.names
    (fx, gx), (fy, gy) = [(c.numerator, c.denominator) for c in pmap.coords]

    def coeffs(num, den, i):
        x = MultiPoly.var(names, i)
        d = max(num.degree(0), den.degree(0))
        out = []
        for k in range(d, -1, -1):
            a = den.terms.get((k,), Fraction(0))
            b = num.terms.get((k,), Fraction(0))
            out.append(x * a - b)
        return out

    F0 = coeffs(fx, gx, 0)
    F1 = coeffs(fy, gy, 1)
    if len(F0) < 2 or len(F1) < 2:
        raise UnsupportedInput("a coordinate does not depend on the parameter")
    res = _det_over_ring(sylvester_matrix(F0, F1))
    if res.is_zero():
        raise UnsupportedInput("the resultant vanishes identically (common factor in t)")
    if not gx.is_constant() and not gy.is_constant() and not gcd(gx, gy).is_constant():
        log.info("denominators share roots; the resultant may carry extraneous factors")
    p = strip_monomial(res.primitive_integer())
    p = squarefree_part(p)
    return ImplicitPolynomial.from_poly(p)
