import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spimplicit import RunConfig
from spimplicit.errors import EmptyKernel, NonGenericSampling, UnsupportedInput
from spimplicit.implicit import (ImplicitPolynomial, implicitize, kernel_to_polys, poly_gcd,
                                 strip_monomial, sylvester_oracle)
from spimplicit.interp import KernelBasis
from spimplicit.param import eval_map, parse_map
from spimplicit.poly import MultiPoly, divides
from spimplicit.support import SupportSet, convex_hull, minkowski_sum, simplex

from conftest import sympy_oracle

XY = ("x", "y")
SEG_X = convex_hull([(0, 0), (1, 0)])


def test_oracle_matches_sympy(curve_cases):
    for name, m, p, _ in curve_cases:
        assert p == sympy_oracle(m), name


def test_oracle_examples():
    assert sylvester_oracle(parse_map("x = t; y = t^2")).to_text() == "x^2 - y"
    folium = sylvester_oracle(parse_map("x = 3*t/(1+t^3); y = 3*t^2/(1+t^3)"))
    assert folium.to_text() == "x^3 - 3*x*y + y^3"
    assert sylvester_oracle(parse_map("x=cos(s); y=sin(s)")).to_text() == "x^2 + y^2 - 1"
    with pytest.raises(UnsupportedInput):
        sylvester_oracle(parse_map("x=cos(s)*cos(r); y=cos(s)*sin(r); z=sin(s)"))


@pytest.mark.parametrize("variant", ["P", "P+x", "simplex"])
def test_pipeline_equals_oracle(curve_cases, variant):
    for name, m, p, P in curve_cases:
        if variant == "P":
            Q = P
        elif variant == "P+x":
            Q = minkowski_sum(P, SEG_X)
        else:
            Q = simplex(2, p.degree())
        got, diag = implicitize(m, Q)
        assert got == p, (name, variant)
        assert diag["validated"] and len(diag["seeds"]) == 2


def test_vanishes_on_parameterization(curve_cases):
    rng = random.Random(21)
    for name, m, p, P in curve_cases:
        got, _ = implicitize(m, P)
        hits = 0
        while hits < 50:
            tau = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
            try:
                q = eval_map(m, (tau,))
            except Exception:
                continue
            assert got.evaluate(q) == 0, name
            hits += 1


def test_folium_examples(folium, folium_P):
    p, diag = implicitize(folium, folium_P)
    assert p.to_text() == "x^3 - 3*x*y + y^3"
    assert diag["corank"] == 1 and diag["support_size"] == 5 and diag["mu"] == 5
    p2, diag2 = implicitize(folium, minkowski_sum(folium_P, SEG_X))
    assert p2 == p and diag2["corank"] == 2


def test_kernel_to_polys_examples():
    S = SupportSet(2, ((0, 3), (1, 1), (1, 2), (2, 1), (3, 0)))
    (f,) = kernel_to_polys(KernelBasis(((1, -3, 0, 0, 1),)), S, XY)
    assert f.to_text() == "x^3 - 3*x*y + y^3"
    S2 = SupportSet(2, ((0, 0), (0, 1), (2, 0)))
    (g,) = kernel_to_polys(KernelBasis(((0, 1, -1),)), S2, XY)
    assert g.to_text() == "-x^2 + y"


def test_gcd_examples():
    x = MultiPoly.var(XY, 0)
    y = MultiPoly.var(XY, 1)
    p = x ** 3 - 3 * x * y + y ** 3
    assert poly_gcd([p, x * p]) == ImplicitPolynomial.from_poly(p)
    assert poly_gcd([y - x ** 2]) == ImplicitPolynomial.from_poly(y - x ** 2)


def test_strip_monomial_examples():
    x = MultiPoly.var(XY, 0)
    y = MultiPoly.var(XY, 1)
    assert strip_monomial(x ** 2 * y + x * y ** 2) == x + y
    p = x ** 3 - 3 * x * y + y ** 3
    assert strip_monomial(p) == p
    assert strip_monomial(x ** 2 * p) == p


@given(st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 5)),
                       st.integers(-9, 9).filter(bool), min_size=1, max_size=5),
       st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_strip_monomial_idempotent(terms, shift):
    p = MultiPoly(XY, terms).shift(shift)
    once = strip_monomial(p)
    assert strip_monomial(once) == once
    assert once.min_exponents() == (0, 0)
    assert divides(once, p)


def test_gcd_of_kernel_polys_divides_them(folium, folium_P):
    from spimplicit.interp import build_matrix, kernel_basis
    from spimplicit.support import lattice_points, translate_positive
    Q = minkowski_sum(folium_P, convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]))
    S = lattice_points(translate_positive(Q))
    polys = kernel_to_polys(kernel_basis(build_matrix(folium, S, seed=5)), S, XY)
    g = poly_gcd(polys)
    assert len(polys) == 4
    assert all(divides(g, f) for f in polys)
    assert strip_monomial(g).to_text() == "x^3 - 3*x*y + y^3"


def test_sphere():
    m = parse_map("x=cos(s)*cos(r); y=cos(s)*sin(r); z=sin(s)")
    p, diag = implicitize(m, simplex(3, 2))
    assert p.to_text() == "x^2 + y^2 + z^2 - 1"
    assert diag["corank"] == 1


def test_too_small_polytope(folium):
    with pytest.raises(EmptyKernel):
        implicitize(folium, convex_hull([(0, 0), (2, 0), (0, 2)]))


def test_kernel_mismatch_is_flagged(folium, folium_P, monkeypatch):
    import dataclasses
    from spimplicit import implicit as mod

    real = mod.build_matrix

    def degenerate_second_sampling(pmap, S, mu=None, seed=0, *args, **kw):
        M = real(pmap, S, mu, seed, *args, **kw)
        if seed != 0:
            # half the rows: the validation kernel is spuriously larger
            half = len(M.rows) // 2
            M = dataclasses.replace(M, rows=M.rows[:half], points=M.points[:half])
        return M

    monkeypatch.setattr(mod, "build_matrix", degenerate_second_sampling)
    with pytest.raises(NonGenericSampling):
        implicitize(folium, minkowski_sum(folium_P, SEG_X))


def test_mu_factor_below_one_rejected():
    with pytest.raises(ValueError):
        RunConfig(mu_factor=Fraction(1, 2))


def test_approximate_mode(folium, folium_P):
    p, diag = implicitize(folium, folium_P, RunConfig(mode="approximate"))
    assert diag["mode"] == "approximate" and not diag["validated"]
    assert set(p.terms) == {(3, 0), (1, 1), (0, 3)}
    assert abs(float(p.terms[(1, 1)]) + 3) < 1e-6
    with pytest.raises(UnsupportedInput):
        implicitize(folium, minkowski_sum(folium_P, SEG_X), RunConfig(mode="approximate"))


def test_json_round_trip(folium, folium_P):
    p, _ = implicitize(folium, folium_P)
    data = p.to_json()
    assert data["vars"] == ["x", "y"]
    assert data["terms"][0] == {"exp": [3, 0], "coef": "1"}
    assert ImplicitPolynomial.from_json(data) == p


def test_monomial_factor_removed_when_q_shifted(folium, folium_P):
    p, diag = implicitize(folium, folium_P.translate((2, 1)))
    assert p.to_text() == "x^3 - 3*x*y + y^3"
    assert diag["translation"] == [-2, -1]
