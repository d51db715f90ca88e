"""Parametric input: parsing, the half-angle transform and exact evaluation.

Text grammar (one ``name = expression`` per line or ``;``-separated)::

    stmt   := NAME '=' expr
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | <juxtaposition>) unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := NUMBER | NAME | ('sin' | 'cos') '(' NAME ')' | '(' expr ')'

Numbers are integers or decimals (read exactly). Exponents are non-negative
integers; ``-t^2`` means ``-(t^2)``. Juxtaposition (``3t``, ``2(t+1)``)
multiplies. Names on the left are coordinates, every other name on the right
is a parameter, in order of first appearance. ``#`` starts a comment.

JSON form::

    {"params": ["t"], "names": ["x", "y"],
     "coords": [{"num": "3*t", "den": "1+t^3"}, {"num": "3*t^2", "den": "1+t^3"}]}

where ``names`` and ``den`` are optional and ``num``/``den`` may use negative
exponents (Laurent polynomials); ``t^-k`` becomes a ``t^k`` in the denominator.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import DenominatorZero, InputIOError, ParseError, UnsupportedInput
from .poly import MultiPoly

TRIG_FUNCS = ("sin", "cos")
_TRIG_VAR = re.compile(r"^(sin|cos)\((\w+)\)$")


@dataclass(frozen=True, eq=False)
class RationalFunction:
    numerator: MultiPoly
    denominator: MultiPoly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if self.numerator.variables != self.denominator.variables:
            raise ValueError("numerator and denominator over different variables")

    @classmethod
    def from_poly(cls, p: MultiPoly) -> RationalFunction:
        return cls(p, MultiPoly.constant(p.variables, 1))

    @property
    def variables(self):
        return self.numerator.variables

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def __add__(self, other: RationalFunction) -> RationalFunction:
        a, b, c, d = self.numerator, self.denominator, other.numerator, other.denominator
        if b == d:
            return RationalFunction(a + c, b)
        return RationalFunction(a * d + c * b, b * d)

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    def __truediv__(self, other: RationalFunction) -> RationalFunction:
        if other.numerator.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.numerator * other.denominator,
                                self.denominator * other.numerator)

    def __pow__(self, k: int) -> RationalFunction:
        return RationalFunction(self.numerator ** k, self.denominator ** k)

    def equals(self, other: RationalFunction) -> bool:
        """Equality as functions (cross multiplication)."""
        return self.numerator * other.denominator == other.numerator * self.denominator

    def evaluate(self, point):
        den = self.denominator.evaluate(point)
        if den == 0:
            raise ZeroDivisionError
        return self.numerator.evaluate(point) / den

    def to_text(self) -> str:
        num = self.numerator.to_text()
        if self.denominator == 1:
            return num
        return f"({num})/({self.denominator.to_text()})"


@dataclass(frozen=True, eq=False)
class ParametricMap:
    """``x_i = f_i(t)/g_i(t)`` for i = 0..n, in parameters ``t_1..t_n``."""

    params: tuple[str, ...]
    coords: tuple[RationalFunction, ...]
    source_form: str = "rational"
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.params:
            raise UnsupportedInput("a parameterization needs at least one parameter")
        for c in self.coords:
            if c.variables != self.params:
                raise ValueError("all coordinates must share the parameter list")
        if not self.names:
            object.__setattr__(self, "names", default_names(len(self.coords)))
        if len(self.names) != len(self.coords):
            raise ValueError("one name per coordinate")

    @property
    def n(self) -> int:
        return len(self.params)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def degrees(self) -> list[int]:
        return [max(c.numerator.degree(), c.denominator.degree()) for c in self.coords]


def default_names(k: int) -> tuple[str, ...]:
    if k <= 3:
        return ("x", "y", "z")[:k]
    return tuple(f"x{i}" for i in range(k))


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r]+)|(?P<comment>\#[^\n]*)|(?P<num>\d+(?:\.\d*)?|\.\d+)
    |(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()=;\n])""",
    re.VERBOSE,
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            val = m.group()
            out.append(("op" if kind == "op" else kind, val, pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, allow_negative_exponents=False):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allow_negative = allow_negative_exponents

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] not in ("op",):
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def statements(self):
        stmts = []
        while True:
            while self.peek()[1] in (";", "\n") and self.peek()[0] == "op":
                self.take()
            if self.peek()[0] == "end":
                break
            name = self.take()
            if name[0] != "name":
                raise self.error("expected a coordinate name", name)
            self.expect("=")
            expr = self.expr()
            tok = self.peek()
            if not (tok[0] == "end" or (tok[0] == "op" and tok[1] in (";", "\n"))):
                raise self.error(f"unexpected {tok[1]!r}")
            stmts.append((name[1], expr, name[2]))
        return stmts

    def single_expression(self):
        while self.peek()[1] == "\n":
            self.take()
        e = self.expr()
        while self.peek()[1] == "\n":
            self.take()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def _starts_atom(self, tok):
        return tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "(")

    def term(self):
        node = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in ("*", "/"):
                self.take()
                node = ("mul" if tok[1] == "*" else "div", node, self.unary())
            elif self._starts_atom(tok):
                node = ("mul", node, self.power())
            else:
                return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if tok[1] == "+" else ("neg", inner)
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            sign = 1
            if self.peek()[1] == "-" and self.peek()[0] == "op":
                neg_tok = self.take()
                if not self.allow_negative:
                    raise self.error("negative exponents are only accepted in JSON input", neg_tok)
                sign = -1
            exp = self.take()
            if exp[0] != "num" or not exp[1].isdigit():
                raise self.error("exponent must be a non-negative integer", exp)
            return ("pow", base, sign * int(exp[1]))
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return ("num", Fraction(tok[1]))
        if tok[0] == "name":
            if self.peek()[1] == "(" and self.peek()[0] == "op":
                if tok[1] not in TRIG_FUNCS:
                    raise self.error(f"unsupported function {tok[1]!r}", tok)
                self.take()
                arg = self.expr()
                self.expect(")")
                if arg[0] != "var":
                    raise self.error(
                        f"{tok[1]}() accepts a plain parameter symbol only", tok)
                return ("trig", tok[1], arg[1])
            if tok[1] in TRIG_FUNCS:
                raise self.error(f"{tok[1]} must be applied with parentheses", tok)
            return ("var", tok[1])
        if tok[0] == "op" and tok[1] == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise self.error(f"unexpected {tok[1] or 'end of input'!r}", tok)


def _collect(node, names: list, trig: list):
    kind = node[0]
    if kind == "var":
        if node[1] not in names:
            names.append(node[1])
    elif kind == "trig":
        atom = f"{node[1]}({node[2]})"
        if atom not in trig:
            trig.append(atom)
    elif kind in ("neg", "pow"):
        _collect(node[1], names, trig)
    elif kind in ("add", "sub", "mul", "div"):
        _collect(node[1], names, trig)
        _collect(node[2], names, trig)


def _build(node, variables) -> RationalFunction:
    kind = node[0]
    if kind == "num":
        return RationalFunction.from_poly(MultiPoly.constant(variables, node[1]))
    if kind == "var":
        return RationalFunction.from_poly(MultiPoly.var(variables, node[1]))
    if kind == "trig":
        return RationalFunction.from_poly(MultiPoly.var(variables, f"{node[1]}({node[2]})"))
    if kind == "neg":
        return -_build(node[1], variables)
    if kind == "pow":
        base = _build(node[1], variables)
        k = node[2]
        if k < 0:
            return RationalFunction(base.denominator, base.numerator) ** (-k)
        return base ** k
    a, b = _build(node[1], variables), _build(node[2], variables)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if b.numerator.is_zero():
        raise ParseError("division by zero")
    return a / b


def parse_map(text: str) -> ParametricMap:
    """Parse a text or JSON parameterization into an exact rational map."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(stripped)
    stmts = _Parser(text).statements()
    if not stmts:
        raise ParseError("no coordinates given")
    coord_names = [s[0] for s in stmts]
    if len(set(coord_names)) != len(coord_names):
        raise ParseError("duplicate coordinate name")
    params: list[str] = []
    trig: list[str] = []
    for name, expr, pos in stmts:
        _collect(expr, params, trig)
    for p in params:
        if p in coord_names:
            raise ParseError(f"coordinate {p!r} used on a right-hand side")
    trig_args = {m.group(2) for m in map(_TRIG_VAR.match, trig)}
    mixed = trig_args & set(params)
    if mixed:
        raise UnsupportedInput(
            f"parameter(s) {sorted(mixed)} appear both bare and inside sin/cos; "
            "series truncation of such maps is not supported")
    variables = tuple(params + trig)
    if not variables:
        raise UnsupportedInput("the parameterization has no parameters")
    coords = tuple(_build(expr, variables) for _, expr, _ in stmts)
    form = "trigonometric" if trig else (
        "polynomial" if all(c.is_polynomial() for c in coords) else "rational")
    m = ParametricMap(variables, coords, form, tuple(coord_names))
    return half_angle(m) if trig else m


def _parse_json(text: str) -> ParametricMap:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    try:
        params = tuple(data["params"])
        raw = data["coords"]
    except (KeyError, TypeError):
        raise ParseError("JSON map needs 'params' and 'coords'") from None
    names = tuple(data.get("names", ())) or default_names(len(raw))
    coords = []
    for entry in raw:
        if isinstance(entry, str):
            entry = {"num": entry}
        num = parse_polynomial(entry["num"], params, laurent=True)
        den = parse_polynomial(entry.get("den", "1"), params, laurent=True)
        if den.numerator.is_zero():
            raise ParseError("zero denominator in JSON map")
        # t^-k terms were already turned into denominators by the parser
        coords.append(num / den)
    form = "polynomial" if all(c.is_polynomial() for c in coords) else "rational"
    return ParametricMap(params, tuple(coords), form, names)


def parse_polynomial(text: str, variables: Sequence[str], laurent=False) -> RationalFunction:
    """Parse one expression over ``variables``; Laurent monomials become t^-k denominators."""
    expr = _Parser(text, allow_negative_exponents=laurent).single_expression()
    names: list[str] = []
    trig: list[str] = []
    _collect(expr, names, trig)
    if trig:
        raise UnsupportedInput("trigonometric functions are not accepted in JSON input")
    unknown = [v for v in names if v not in variables]
    if unknown:
        raise ParseError(f"unknown symbol(s) {unknown}")
    return _build(expr, tuple(variables))


def load_map(path) -> ParametricMap:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputIOError(f"cannot read {path}: {exc.strerror}") from None
    return parse_map(text)


def render(m: ParametricMap) -> str:
    return "; ".join(f"{name} = {c.to_text()}" for name, c in zip(m.names, m.coords))


# ---------------------------------------------------------------------------
# half-angle transform


def half_angle(m: ParametricMap) -> ParametricMap:
    """Replace sin/cos of each parameter by rational functions of a fresh ``u_<arg>``."""
    groups: dict[str, dict[str, int]] = {}
    plain = []
    for i, v in enumerate(m.params):
        match = _TRIG_VAR.match(v)
        if match:
            groups.setdefault(match.group(2), {})[match.group(1)] = i
        else:
            plain.append(v)
    if not groups:
        return m
    if set(groups) & set(plain):
        raise UnsupportedInput("a parameter appears both bare and inside sin/cos")

    new_vars: list[str] = []
    fresh_of: dict[str, str] = {}
    for v in m.params:
        match = _TRIG_VAR.match(v)
        if not match:
            new_vars.append(v)
        elif match.group(2) not in fresh_of:
            fresh = f"u_{match.group(2)}"
            while fresh in m.params or fresh in new_vars:
                fresh += "_"
            fresh_of[match.group(2)] = fresh
            new_vars.append(fresh)
    new_vars_t = tuple(new_vars)

    coords = []
    for c in m.coords:
        num, dnum = _subst_trig(c.numerator, m.params, new_vars_t, fresh_of)
        den, dden = _subst_trig(c.denominator, m.params, new_vars_t, fresh_of)
        for arg, u in fresh_of.items():
            top = max(dnum.get(arg, 0), dden.get(arg, 0))
            w = 1 + MultiPoly.var(new_vars_t, u) ** 2
            if top - dnum.get(arg, 0):
                num = num * w ** (top - dnum.get(arg, 0))
            if top - dden.get(arg, 0):
                den = den * w ** (top - dden.get(arg, 0))
        coords.append(RationalFunction(num, den))
    return ParametricMap(new_vars_t, tuple(coords), "trigonometric", m.names)


def _subst_trig(p: MultiPoly, old_vars, new_vars, fresh_of):
    """Substitute sin/cos and bring to the common denominator (1+u^2)^D per argument.

    Returns the numerator over ``new_vars`` and ``{arg: D}``.
    """
    index_new = {v: j for j, v in enumerate(new_vars)}
    info = []
    for i, v in enumerate(old_vars):
        match = _TRIG_VAR.match(v)
        info.append((match.group(1), match.group(2)) if match else (None, v))
    # per-argument degree of the common denominator
    top: dict[str, int] = {}
    for e in p.terms:
        per: dict[str, int] = {}
        for (fn, arg), k in zip(info, e):
            if fn and k:
                per[arg] = per.get(arg, 0) + k
        for arg, d in per.items():
            top[arg] = max(top.get(arg, 0), d)

    def u(arg):
        return MultiPoly.var(new_vars, fresh_of[arg])

    one = MultiPoly.constant(new_vars, 1)
    sin_num = {arg: 2 * u(arg) for arg in fresh_of}
    cos_num = {arg: one - u(arg) ** 2 for arg in fresh_of}
    wgt = {arg: one + u(arg) ** 2 for arg in fresh_of}

    out = MultiPoly.zero(new_vars)
    for e, c in p.terms.items():
        term = MultiPoly.constant(new_vars, c)
        per: dict[str, int] = {}
        plain_exp = [0] * len(new_vars)
        for (fn, arg), k in zip(info, e):
            if not k:
                continue
            if fn is None:
                plain_exp[index_new[arg]] += k
            else:
                term = term * (sin_num[arg] if fn == "sin" else cos_num[arg]) ** k
                per[arg] = per.get(arg, 0) + k
        term = term.shift(plain_exp)
        for arg, d in top.items():
            if d - per.get(arg, 0):
                term = term * wgt[arg] ** (d - per.get(arg, 0))
        out = out + term
    return out, top


# ---------------------------------------------------------------------------
# evaluation


def eval_map(m: ParametricMap, tau: Sequence) -> tuple[Fraction, ...]:
    """Exact image of the parameter vector ``tau``."""
    if len(tau) != m.n:
        raise ValueError(f"expected {m.n} parameter values, got {len(tau)}")
    tau = [Fraction(t) for t in tau]
    out = []
    for i, c in enumerate(m.coords):
        den = c.denominator.evaluate(tau)
        if den == 0:
            raise DenominatorZero(i)
        out.append(c.numerator.evaluate(tau) / den)
    return tuple(out)


def newton_polytope(p: MultiPoly):
    """Convex hull of the exponent vectors of ``p``."""
    from .support import convex_hull

    if p.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    return convex_hull(list(p.terms))
