from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from spimplicit.poly import (MultiPoly, divides, divmod_poly, exact_div, gcd, gcd_list,
                             squarefree_part)

V = ("x", "y", "z")
X, Y, Z = sympy.symbols("x y z")


def polys(nvars=3, max_deg=3, max_terms=4):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    coefs = st.fractions(min_value=-9, max_value=9, max_denominator=4).filter(bool)
    return st.dictionaries(exps, coefs, min_size=1, max_size=max_terms).map(
        lambda t: MultiPoly(V[:nvars], t))


def to_sympy(p: MultiPoly):
    syms = sympy.symbols(" ".join(p.variables))
    syms = syms if isinstance(syms, tuple) else (syms,)
    return sum((sympy.Rational(c.numerator, c.denominator) *
                sympy.Mul(*[s ** k for s, k in zip(syms, e)]) for e, c in p.terms.items()),
               sympy.Integer(0))


def from_sympy(expr, variables=V) -> MultiPoly:
    poly = sympy.Poly(sympy.expand(expr), *sympy.symbols(" ".join(variables)))
    return MultiPoly(variables, {e: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


@given(polys(), polys())
def test_ring_operations_match_sympy(a, b):
    assert to_sympy(a + b).expand() == (to_sympy(a) + to_sympy(b)).expand()
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert a - a == MultiPoly.zero(V)


@given(polys(), polys())
def test_division_identity(a, b):
    q, r = divmod_poly(a, b)
    assert q * b + r == a
    assert exact_div(a * b, b) == a


@given(polys(max_deg=2), polys(max_deg=2), polys(max_deg=2, max_terms=3))
def test_gcd_against_sympy(a, b, c):
    g = gcd(a * c, b * c)
    expected = sympy.gcd(to_sympy(a * c), to_sympy(b * c))
    assert g == from_sympy(expected).monic()
    assert divides(g, a * c) and divides(g, b * c)


@given(st.lists(polys(2, 2, 3), min_size=1, max_size=4), polys(2, 2, 3))
def test_gcd_list_divides_inputs(ps, common):
    inputs = [p * common for p in ps]
    g = gcd_list(inputs)
    for p in inputs:
        assert divides(g, p)
    assert divides(common.monic(), g)


@given(polys(2, 2, 3), polys(2, 2, 2))
def test_squarefree_part(a, b):
    assume(not a.is_constant() and not b.is_constant())
    p = a * b * b
    sf = squarefree_part(p)
    expected = sympy.sqf_part(to_sympy(p))
    assert sf.monic() == from_sympy(expected, p.variables).monic()


def test_text_rendering():
    p = MultiPoly(("x", "y"), {(3, 0): 1, (1, 1): -3, (0, 3): 1})
    assert p.to_text() == "x^3 - 3*x*y + y^3"
    assert MultiPoly(("x",), {(0,): Fraction(-1, 2), (2,): 2}).to_text() == "2*x^2 - 1/2"
    assert MultiPoly.zero(("x",)).to_text() == "0"


def test_evaluate_substitute_shift():
    x = MultiPoly.var(("x", "y"), 0)
    y = MultiPoly.var(("x", "y"), "y")
    p = x ** 2 * y - 3 * y + 1
    assert p.evaluate((Fraction(1, 2), 4)) == Fraction(1) - 12 + 1
    assert p.evaluate_float((0.5, 4.0)) == pytest.approx(-10.0)
    q = p.substitute([x + 1, y])
    assert q.evaluate((Fraction(-1, 2), 4)) == p.evaluate((Fraction(1, 2), 4))
    assert p.shift((1, 2)).min_exponents() == (1, 2)
    assert p.derivative(0) == 2 * x * y
    assert p.leading_coefficient() == 1 and p.degree() == 3 and p.degree(1) == 1


def test_monic_and_primitive():
    p = MultiPoly(("x", "y"), {(1, 0): Fraction(2, 3), (0, 1): Fraction(-4, 9)})
    assert p.monic().terms == {(1, 0): 1, (0, 1): Fraction(-2, 3)}
    assert p.primitive_integer().terms == {(1, 0): 3, (0, 1): -2}


def test_exact_div_raises():
    x = MultiPoly.var(("x",), 0)
    with pytest.raises(ArithmeticError):
        exact_div(x ** 2 + 1, x)
