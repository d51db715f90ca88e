"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as ``{exponent tuple: Fraction}``. Monomial order is
lexicographic on the exponent tuples, so ``max(p.terms)`` is the leading
exponent. The GCD is computed recursively, one variable at a time, with a
subresultant remainder sequence over the coefficient ring of the other
variables.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm, gcd as igcd
from typing import Iterable, Mapping, Sequence


class MultiPoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping | None = None):
        variables = tuple(variables)
        n = len(variables)
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise ValueError(f"exponent {e} does not match {n} variables")
                    clean[e] = c if type(c) is Fraction else Fraction(c)
        self.variables = variables
        self.terms = clean
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def _raw(cls, variables, terms):
        # terms already cleaned (Fraction values, no zeros)
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, variables, c) -> MultiPoly:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def zero(cls, variables) -> MultiPoly:
        return cls(variables)

    @classmethod
    def var(cls, variables, name_or_index) -> MultiPoly:
        variables = tuple(variables)
        i = name_or_index if isinstance(name_or_index, int) else variables.index(name_or_index)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, variables, exponent, coef=1) -> MultiPoly:
        return cls(variables, {tuple(exponent): coef})

    # -- inspection ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def degree(self, i: int | None = None) -> int:
        """Total degree, or the degree in variable ``i``. Zero polynomial: -1."""
        if not self.terms:
            return -1
        if i is None:
            return max(sum(e) for e in self.terms)
        return max(e[i] for e in self.terms)

    def leading_exponent(self):
        return max(self.terms)

    def leading_coefficient(self) -> Fraction:
        return self.terms[max(self.terms)]

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r}, vars={self.variables})"

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.variables, other)
        raise TypeError(type(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly._raw(self.variables, {})
            other = Fraction(other)
            return MultiPoly._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> MultiPoly:
        return self * Fraction(c)

    def shift(self, exponent: Sequence[int]) -> MultiPoly:
        """Multiply by the monomial ``x^exponent`` (negative entries divide)."""
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a + b for a, b in zip(e, exponent))
            if min(ne, default=0) < 0:
                raise ValueError("monomial shift produced a negative exponent")
            out[ne] = c
        return MultiPoly._raw(self.variables, out)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, point: Sequence):
        """Evaluate at ``point``. Exact for Fraction/int input; works for floats too."""
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        powers: list[dict] = [{} for _ in point]
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    pw = cache.get(k)
                    if pw is None:
                        pw = cache[k] = point[i] ** k
                    term = term * pw
            total = total + term
        return total

    def evaluate_float(self, point: Sequence):
        return sum(float(c) * _fprod(point, e) for e, c in self.terms.items())

    def substitute(self, values: Sequence[MultiPoly]) -> MultiPoly:
        """Compose: replace variable i by ``values[i]`` (all sharing one variable list)."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        target = values[0].variables if values else ()
        result = MultiPoly.zero(target)
        powers: list[dict] = [{} for _ in values]
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = powers[i][k] = values[i] ** k
                    term = term * pw
            result = result + term
        return result

    def derivative(self, i: int) -> MultiPoly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly._raw(self.variables, out)

    def with_variables(self, variables: Sequence[str]) -> MultiPoly:
        """Re-express over another variable list containing every used variable."""
        variables = tuple(variables)
        index = {v: j for j, v in enumerate(variables)}
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, k in enumerate(e):
                if k:
                    if self.variables[i] not in index:
                        raise ValueError(f"variable {self.variables[i]} not in {variables}")
                    ne[index[self.variables[i]]] = k
            out[tuple(ne)] = c
        return MultiPoly._raw(variables, out)

    def used_variables(self) -> list[str]:
        return [v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms)]

    # -- normalisation ------------------------------------------------------

    def monic(self) -> MultiPoly:
        """Scale so that the lex-leading coefficient is 1."""
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient())

    def primitive_integer(self) -> MultiPoly:
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        den = reduce(lcm, (c.denominator for c in self.terms.values()), 1)
        ints = [c.numerator * (den // c.denominator) for c in self.terms.values()]
        g = reduce(igcd, ints, 0)
        if self.leading_coefficient() < 0:
            g = -g
        return self * Fraction(den, g)

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self.terms))

    # -- rendering ----------------------------------------------------------

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = tuple(names) if names is not None else self.variables
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _fprod(point, e):
    r = 1.0
    for x, k in zip(point, e):
        if k:
            r *= x ** k
    return r


# ---------------------------------------------------------------------------
# division


def divmod_poly(a: MultiPoly, b: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Lex-order multivariate division: ``a = q*b + r``."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    lead = max(b.terms)
    lc = b.terms[lead]
    rest = [(e, c) for e, c in b.terms.items() if e != lead]
    p = dict(a.terms)
    q: dict = {}
    r: dict = {}
    while p:
        m = max(p)
        c = p.pop(m)
        t = tuple(x - y for x, y in zip(m, lead))
        if min(t, default=0) < 0:
            r[m] = c
            continue
        coef = c / lc
        q[t] = coef
        for e, bc in rest:
            ne = tuple(x + y for x, y in zip(e, t))
            v = p.get(ne, 0) - coef * bc
            if v:
                p[ne] = v
            else:
                p.pop(ne, None)
    return MultiPoly._raw(a.variables, q), MultiPoly._raw(a.variables, r)


def exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    q, r = divmod_poly(a, b)
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return q


def divides(b: MultiPoly, a: MultiPoly) -> bool:
    return divmod_poly(a, b)[1].is_zero()


# ---------------------------------------------------------------------------
# gcd


def _coeff_in(p: MultiPoly, i: int, k: int) -> MultiPoly:
    out = {}
    for e, c in p.terms.items():
        if e[i] == k:
            out[e[:i] + (0,) + e[i + 1:]] = c
    return MultiPoly._raw(p.variables, out)


def coefficients_in(p: MultiPoly, i: int) -> dict[int, MultiPoly]:
    groups: dict[int, dict] = {}
    for e, c in p.terms.items():
        groups.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
    return {k: MultiPoly._raw(p.variables, t) for k, t in groups.items()}


def _lc(p: MultiPoly, i: int) -> MultiPoly:
    return _coeff_in(p, i, p.degree(i))


def prem(a: MultiPoly, b: MultiPoly, i: int) -> MultiPoly:
    """Pseudo-remainder of ``a`` by ``b`` as polynomials in variable ``i``."""
    db = b.degree(i)
    lb = _lc(b, i)
    r = a
    e = a.degree(i) - db + 1
    unit = [0] * a.nvars
    while not r.is_zero() and r.degree(i) >= db:
        dr = r.degree(i)
        unit[i] = dr - db
        r = r * lb - (_lc(r, i) * b).shift(unit)
        e -= 1
    return r * lb ** e if e > 0 else r


def _main_var(a: MultiPoly, b: MultiPoly):
    for i in range(a.nvars):
        if any(e[i] for e in a.terms) or any(e[i] for e in b.terms):
            return i
    return None


def _content(p: MultiPoly, i: int) -> MultiPoly:
    coeffs = sorted(coefficients_in(p, i).values(), key=lambda q: len(q.terms))
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = _gcd_rec(g, c)
    return g.monic()


def _subresultant(a: MultiPoly, b: MultiPoly, i: int) -> MultiPoly:
    if a.degree(i) < b.degree(i):
        a, b = b, a
    one = MultiPoly.constant(a.variables, 1)
    g = h = one
    while True:
        d = a.degree(i) - b.degree(i)
        r = prem(a, b, i)
        if r.is_zero():
            return b
        if r.degree(i) == 0:
            return one
        a = b
        b = exact_div(r, g * h ** d)
        g = _lc(a, i)
        if d == 1:
            h = g
        elif d > 1:
            h = exact_div(g ** d, h ** (d - 1))


def _gcd_rec(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    i = _main_var(a, b)
    if i is None:
        return MultiPoly.constant(a.variables, 1)
    if a.degree(i) == 0:
        return _gcd_rec(a, _content(b, i))
    if b.degree(i) == 0:
        return _gcd_rec(_content(a, i), b)
    ca, cb = _content(a, i), _content(b, i)
    pa, pb = exact_div(a, ca), exact_div(b, cb)
    c = _gcd_rec(ca, cb)
    h = _subresultant(pa, pb, i)
    if h.degree(i) > 0:
        h = exact_div(h, _content(h, i))
    else:
        h = MultiPoly.constant(a.variables, 1)
    return c * h


def gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """GCD over the rationals, normalised to lex-leading coefficient 1."""
    return _gcd_rec(a, b).monic()


def gcd_list(polys: Iterable[MultiPoly]) -> MultiPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of no nonzero polynomials")
    polys.sort(key=lambda p: (p.degree(), len(p.terms)))
    g = polys[0]
    for p in polys[1:]:
        if g.is_constant():
            break
        g = _gcd_rec(g, p)
    return g.monic()


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of ``p`` (characteristic 0)."""
    if p.is_zero() or p.is_constant():
        return p
    g = p
    for i in range(p.nvars):
        d = p.derivative(i)
        if not d.is_zero():
            g = _gcd_rec(g, d)
            if g.is_constant():
                return p
    return exact_div(p, g)
