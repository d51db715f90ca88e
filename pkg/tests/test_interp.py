import json
from fractions import Fraction

import numpy as np
import pytest

from spimplicit import linalg
from spimplicit.errors import CoincidesWithSampleRow, EmptyKernel
from spimplicit.interp import (build_matrix, corank, derived_seed, dump_matrix,
                               eval_last_row, freeze_Mx, kernel_basis, monomial_row,
                               read_matrix_csv, sample_points)
from spimplicit.param import eval_map, parse_map
from spimplicit.support import (SupportSet, convex_hull, lattice_points, minkowski_sum,
                                translate_count, translate_positive)

SEG_X = convex_hull([(0, 0), (1, 0)])
SEG_Y = convex_hull([(0, 0), (0, 1)])
SQUARE = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])


def _support(Q):
    return lattice_points(translate_positive(Q))


def _grown(P):
    return [("P", P), ("P+x", minkowski_sum(P, SEG_X)), ("P+y", minkowski_sum(P, SEG_Y)),
            ("P+square", minkowski_sum(P, SQUARE))]


def test_corank_equals_translate_count(curve_cases):
    pairs = 0
    for name, m, p, P in curve_cases:
        for label, Q in _grown(P):
            M = build_matrix(m, _support(Q), seed=derived_seed(1, name + label))
            assert corank(M) == translate_count(P, Q), (name, label)
            pairs += 1
    sphere = parse_map("x=cos(s)*cos(r); y=cos(s)*sin(r); z=sin(s)")
    P3 = convex_hull([(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2)])
    for Q in (P3, minkowski_sum(P3, convex_hull([(0, 0, 0), (0, 0, 1)]))):
        assert corank(build_matrix(sphere, _support(Q), seed=4)) == translate_count(P3, Q)
        pairs += 1
    assert pairs >= 30


@pytest.mark.parametrize("label", ["P", "P+x", "P+square"])
def test_kernel_exact_and_stable(folium, folium_P, label):
    Q = dict(_grown(folium_P))[label]
    S = _support(Q)
    M = build_matrix(folium, S, seed=3)
    K = kernel_basis(M)
    for v in K.vectors:
        assert all(x == 0 for x in linalg.mat_vec(M.rows, v))
    longer = build_matrix(folium, S, mu=len(S) + 5, seed=3)
    assert longer.rows[:len(S)] == M.rows
    assert kernel_basis(longer).vectors == K.vectors


def test_same_corank_on_surface(curve_cases):
    for name, m, p, P in curve_cases:
        for label, Q in _grown(P)[:2]:
            S = _support(Q)
            F = freeze_Mx(m, S, seed=9)
            M = build_matrix(m, S, seed=9)
            assert F.corank == corank(M)
            for tau in (Fraction(5, 7), Fraction(-11, 3)):
                q = eval_map(m, (tau,))
                if F.coincident_row(q) is None:
                    assert linalg.corank(eval_last_row(F, q)) == F.corank


def test_sample_points_examples(folium):
    pts = sample_points(folium, 4, seed=0)
    assert len(pts) == 4 and all(p.tau[0] != -1 for p in pts)
    assert len({p.tau for p in pts}) == 4
    assert sample_points(folium, 4, seed=0) == pts
    assert sample_points(folium, 10, seed=0)[:4] == pts
    for p in pts:
        assert p.tau[0].numerator != 0
        assert 1 <= abs(p.tau[0].numerator) <= 2 ** 16 and p.tau[0].denominator <= 2 ** 16
    with pytest.raises(ValueError):
        sample_points(folium, 0, seed=0)


def test_matrix_examples(folium, folium_P):
    S = lattice_points(folium_P)
    M = build_matrix(folium, S, mu=5, seed=0)
    assert M.shape == (5, 5)
    assert linalg.rank(M.rows) == 4
    K = kernel_basis(M)
    assert K.vectors == ((1, -3, 0, 0, 1),)

    parabola = parse_map("x = t; y = t^2")
    S2 = SupportSet(2, ((0, 0), (0, 1), (2, 0)))
    K2 = kernel_basis(build_matrix(parabola, S2, mu=3, seed=0))
    assert K2.vectors == ((0, 1, -1),)

    ones = build_matrix(folium, SupportSet(2, ((0, 0),)), mu=4, seed=0)
    assert ones.rows == ((1,),) * 4
    with pytest.raises(EmptyKernel):
        kernel_basis(ones)


def test_corank_examples(folium, folium_P):
    assert corank(build_matrix(folium, lattice_points(folium_P), seed=0)) == 1
    assert corank(build_matrix(folium, _support(minkowski_sum(folium_P, SEG_X)), seed=0)) == 2


def test_frozen_examples(folium, folium_P):
    S = lattice_points(folium_P)
    F = freeze_Mx(folium, S, seed=0)
    assert len(F.Mprime) == 4 and len(F.Mprime[0]) == 5 and F.corank == 1
    assert linalg.corank(eval_last_row(F, (Fraction(3, 2), Fraction(3, 2)))) == 1
    assert linalg.det_sign(eval_last_row(F, (1, 1))) != 0
    with pytest.raises(CoincidesWithSampleRow) as err:
        eval_last_row(F, F.sample_points[2].coords)
    assert err.value.index == 2
    with pytest.raises(ValueError):
        freeze_Mx(folium, SupportSet(2, ((0, 0),)))
    again = freeze_Mx(folium, S, seed=0)
    assert again.Mprime == F.Mprime


def test_monomial_row():
    S = SupportSet(2, ((0, 0), (0, 2), (1, 1), (3, 0)))
    assert monomial_row(S, (Fraction(1, 2), 3)) == [1, 9, Fraction(3, 2), Fraction(1, 8)]


@pytest.mark.parametrize("sampling", ["rational", "unit_circle"])
def test_approximate_corank_matches_exact(curve_cases, sampling):
    for name, m, p, P in curve_cases[:4]:
        for label, Q in _grown(P)[:2]:
            S = _support(Q)
            exact = corank(build_matrix(m, S, seed=2))
            approx = build_matrix(m, S, seed=2, mode="approximate", sampling=sampling)
            assert approx.shape == (2 * len(S), len(S))
            assert corank(approx) == exact, (name, label)


def test_approximate_kernel_direction(folium, folium_P):
    M = build_matrix(folium, lattice_points(folium_P), seed=0, mode="approximate")
    (v,) = kernel_basis(M).vectors
    v = np.real(np.array(v))
    assert np.allclose(v / v[0], [1, -3, 0, 0, 1], atol=1e-6)


def test_dump_round_trip(tmp_path, folium, folium_P):
    M = build_matrix(folium, lattice_points(folium_P), seed=12)
    csv_path, sidecar = dump_matrix(M, tmp_path / "m.csv")
    assert read_matrix_csv(csv_path) == [list(r) for r in M.rows]
    meta = json.loads(sidecar.read_text())
    assert meta["seed"] == 12 and meta["mu"] == 5
    assert [Fraction(t) for t in meta["sample_points"][0]["tau"]] == list(M.points[0].tau)


def test_derived_seed_is_stable():
    assert derived_seed(0, "validate") == derived_seed(0, "validate")
    assert derived_seed(0, "validate") != derived_seed(1, "validate")
    assert derived_seed(0, "a") != derived_seed(0, "b")
