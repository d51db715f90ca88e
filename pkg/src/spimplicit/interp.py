"""Interpolation matrices: monomials of a candidate support evaluated on samples.

Row ``k`` holds every candidate monomial evaluated at the image of parameter
sample ``tau_k``. In exact mode the samples are random rationals and all
entries are exact; approximate mode uses floats (or unit-modulus complex
samples) with an SVD rank decision.
"""
from __future__ import annotations

import cmath
import csv
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import linalg
from .errors import CoincidesWithSampleRow, EmptyKernel, SamplingExhausted
from .param import ParametricMap, eval_map
from .errors import DenominatorZero
from .support import SupportSet

SAMPLE_BOUND = 2 ** 16
DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class EvaluationPoint:
    tau: tuple
    coords: tuple


@dataclass(frozen=True, eq=False)
class InterpolationMatrix:
    support: SupportSet
    rows: object  # tuple of Fraction tuples (exact) or ndarray (approximate)
    points: tuple[EvaluationPoint, ...]
    mode: str = "exact"
    tol: float = DEFAULT_TOL
    seed: int = 0

    @property
    def mu(self) -> int:
        return len(self.points)

    @property
    def shape(self):
        return self.mu, len(self.support)


@dataclass(frozen=True, eq=False)
class KernelBasis:
    vectors: tuple

    @property
    def corank(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True, eq=False)
class FrozenMx:
    """``M'`` with |S|-1 numeric rows; ``M(x)`` appends the monomial row on demand."""

    Mprime: tuple
    support: SupportSet
    sample_points: tuple[EvaluationPoint, ...]
    corank: int
    seed: int = 0
    _images: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._images.update({p.coords: k for k, p in enumerate(self.sample_points)})

    def coincident_row(self, q) -> int | None:
        return self._images.get(tuple(Fraction(x) for x in q))


def derived_seed(seed: int, stream: str) -> int:
    """Independent, reproducible seed for a named sub-stream."""
    return random.Random(f"{seed}/{stream}").getrandbits(63)


def _random_rational(rng: random.Random) -> Fraction:
    num = rng.randint(1, SAMPLE_BOUND)
    den = rng.randint(1, SAMPLE_BOUND)
    return Fraction(num if rng.random() < 0.5 else -num, den)


def sample_points(pmap: ParametricMap, count: int, seed: int,
                  avoid: Sequence = (), budget: int | None = None) -> list[EvaluationPoint]:
    """``count`` distinct generic samples with nonzero denominators and distinct images.

    Deterministic in ``seed``; a longer request extends a shorter one.
    """
    if count < 1:
        raise ValueError("need at least one sample point")
    rng = random.Random(seed)
    budget = budget if budget is not None else 50 * count + 1000
    taus = set()
    images = {tuple(Fraction(x) for x in a) for a in avoid}
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > budget:
            raise SamplingExhausted(
                f"could not find {count} generic sample points in {budget} attempts")
        tau = tuple(_random_rational(rng) for _ in range(pmap.n))
        if tau in taus:
            continue
        try:
            img = eval_map(pmap, tau)
        except DenominatorZero:
            continue
        if img in images:
            continue
        taus.add(tau)
        images.add(img)
        out.append(EvaluationPoint(tau, img))
    return out


def monomial_row(S: SupportSet, x: Sequence) -> list:
    """All monomials of ``S`` evaluated at ``x`` (exact for rational ``x``)."""
    top = S.max_exponents()
    powers = []
    for xi, d in zip(x, top):
        pw = [1] * (d + 1)
        for k in range(1, d + 1):
            pw[k] = pw[k - 1] * xi
        powers.append(pw)
    row = []
    for s in S.points:
        v = 1
        for pw, k in zip(powers, s):
            if k:
                v = v * pw[k]
        row.append(v)
    return row


def _unit_circle_points(pmap: ParametricMap, count: int, seed: int):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        tau = tuple(cmath.exp(2j * math.pi * rng.random()) for _ in range(pmap.n))
        vals = []
        for c in pmap.coords:
            den = c.denominator.evaluate(tau)
            if abs(den) < 1e-6:
                break
            vals.append(c.numerator.evaluate(tau) / den)
        else:
            out.append(EvaluationPoint(tau, tuple(vals)))
    return out


def build_matrix(pmap: ParametricMap, S: SupportSet, mu: int | None = None, seed: int = 0,
                 mode: str = "exact", tol: float = DEFAULT_TOL,
                 sampling: str = "rational") -> InterpolationMatrix:
    if mode not in ("exact", "approximate"):
        raise ValueError(f"unknown mode {mode!r}")
    if S.dim != pmap.dim:
        raise ValueError("support dimension differs from the number of coordinates")
    if mu is None:
        mu = len(S) if mode == "exact" else 2 * len(S)
    if mode == "exact":
        pts = sample_points(pmap, mu, seed)
        rows = tuple(tuple(monomial_row(S, p.coords)) for p in pts)
        return InterpolationMatrix(S, rows, tuple(pts), mode, tol, seed)
    if sampling == "unit_circle":
        pts = _unit_circle_points(pmap, mu, seed)
        arr = np.array([monomial_row(S, p.coords) for p in pts], dtype=complex)
    else:
        pts = sample_points(pmap, mu, seed)
        arr = np.array([[float(v) for v in monomial_row(S, p.coords)] for p in pts])
    return InterpolationMatrix(S, arr, tuple(pts), mode, tol, seed)


def corank(M: InterpolationMatrix) -> int:
    ncols = len(M.support)
    if M.mode == "approximate":
        return linalg.numeric_corank(M.rows, M.tol)
    if not M.rows:
        return ncols
    return linalg.corank(M.rows, ncols)


def kernel_basis(M: InterpolationMatrix) -> KernelBasis:
    if M.mode == "approximate":
        vecs = linalg.numeric_nullspace(M.rows, M.tol)
        out = []
        for v in vecs:
            v = v / v[np.argmax(np.abs(v))]
            out.append(tuple(v))
    else:
        out = [tuple(v) for v in linalg.nullspace(list(M.rows), len(M.support))]
    if not out:
        raise EmptyKernel(
            "the interpolation matrix has full column rank: the predicted polytope "
            "does not contain a translate of the implicit polytope; enlarge it")
    return KernelBasis(tuple(out))


def freeze_Mx(pmap: ParametricMap, S: SupportSet, seed: int = 0) -> FrozenMx:
    if len(S) < 2:
        raise ValueError("M(x) needs a support with at least two points")
    pts = sample_points(pmap, len(S) - 1, seed)
    rows = tuple(tuple(monomial_row(S, p.coords)) for p in pts)
    r = linalg.corank(rows, len(S))
    return FrozenMx(rows, S, tuple(pts), r, seed)


def eval_last_row(F: FrozenMx, q: Sequence) -> list:
    """The square matrix ``M(q)``: ``M'`` plus the monomial row at ``q``."""
    q = tuple(Fraction(x) for x in q)
    k = F.coincident_row(q)
    if k is not None:
        raise CoincidesWithSampleRow(k)
    return [list(r) for r in F.Mprime] + [monomial_row(F.support, q)]


def det_sign(A) -> int:
    return linalg.det_sign(A)


# ---------------------------------------------------------------------------
# debug dump


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return f"{x}/1"
    return repr(x)


def dump_matrix(M: InterpolationMatrix, path) -> tuple[Path, Path]:
    """CSV of exact ``p/q`` entries plus a JSON sidecar with seed and samples."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        for row in M.rows:
            writer.writerow([_fmt(x) for x in row])
    sidecar = path.with_suffix(path.suffix + ".json")
    meta = {
        "seed": M.seed,
        "mode": M.mode,
        "mu": M.mu,
        "support": [list(s) for s in M.support.points],
        "sample_points": [
            {"tau": [_fmt(t) for t in p.tau], "image": [_fmt(c) for c in p.coords]}
            for p in M.points
        ],
    }
    sidecar.write_text(json.dumps(meta, indent=2) + "\n")
    return path, sidecar


def read_matrix_csv(path) -> list[list[Fraction]]:
    with Path(path).open(newline="") as fh:
        return [[Fraction(x) for x in row] for row in csv.reader(fh)]
