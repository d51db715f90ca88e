import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull

from spimplicit.errors import CapExceeded, DimensionMismatch, InputIOError, ParseError
from spimplicit.param import parse_map
from spimplicit.support import (convex_hull, degree_bound_polytope, format_polytope,
                                lattice_points, load_polytope, minkowski_sum, parse_polytope,
                                simplex, translate_count, translate_positive)

from conftest import FOLIUM_P


def _box(Q):
    lo, hi = Q.bounding_box()
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def _full_dim_points(rng, dim):
    while True:
        pts = {tuple(rng.randint(0, 8) for _ in range(dim)) for _ in range(rng.randint(dim + 1, 7))}
        pts = sorted(pts)
        if len(pts) > dim and np.linalg.matrix_rank(np.array(pts[1:]) - pts[0]) == dim:
            return pts


def test_lattice_points_against_scipy():
    rng = random.Random(11)
    for case in range(50):
        dim = 2 + case % 2
        pts = _full_dim_points(rng, dim)
        Q = convex_hull(pts)
        hull = ConvexHull(np.array(pts, dtype=float))
        expected = [z for z in _box(Q)
                    if np.all(hull.equations[:, :-1] @ np.array(z) + hull.equations[:, -1] <= 1e-9)]
        assert list(lattice_points(Q).points) == sorted(expected)
        assert set(Q.vertices) == {pts[i] for i in hull.vertices}


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 4)),
                min_size=1, max_size=6))
def test_halfspaces_separate_box(pts):
    Q = convex_hull(pts)
    inside = set(lattice_points(Q).points)
    for p in pts:
        assert p in inside
    for z in _box(Q):
        ok = all(sum(a * x for a, x in zip(A, z)) <= b for A, b in Q.halfspaces)
        assert ok == (z in inside)


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=8))
def test_hull_idempotent(pts):
    Q = convex_hull(pts)
    again = convex_hull(Q.vertices)
    assert again == Q
    assert set(lattice_points(again).points) == set(lattice_points(Q).points)


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=5),
       st.integers(1, 3), st.sampled_from([0, 1]))
def test_translate_count_segments(pts, length, axis):
    P = convex_hull(pts)
    end = [0, 0]
    end[axis] = length
    seg = convex_hull([(0, 0), tuple(end)])
    assert translate_count(P, P) == 1
    assert translate_count(P, minkowski_sum(P, seg)) == length + 1


def _brute_translates(P, Q):
    """Count shifts with every lattice point of P + a inside Q's lattice points."""
    SP = lattice_points(P).points
    SQ = set(lattice_points(Q).points)
    lo, hi = Q.bounding_box()
    count = 0
    for a in itertools.product(*(range(l - 10, h + 1) for l, h in zip(lo, hi))):
        if all(tuple(p + s for p, s in zip(pt, a)) in SQ for pt in SP):
            count += 1
    return count


def test_translate_count_brute_force():
    rng = random.Random(5)
    for _ in range(20):
        P = convex_hull(_full_dim_points(rng, 2))
        Q = convex_hull(list(P.vertices) + [tuple(rng.randint(0, 10) for _ in range(2))
                                            for _ in range(3)])
        assert translate_count(P, Q) == _brute_translates(P, Q)


def test_examples():
    Q = convex_hull([(3, 0), (0, 3), (1, 1), (2, 1)])
    assert set(Q.vertices) == {(3, 0), (0, 3), (1, 1)}
    assert convex_hull([(4, 4)]).vertices == ((4, 4),)
    sq = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert len(sq.vertices) == 4 and len(sq.halfspaces) == 4
    seg = translate_positive(convex_hull([(-1, 2), (1, 2)]))
    assert set(seg.vertices) == {(0, 0), (2, 0)}
    P = convex_hull(FOLIUM_P)
    assert translate_positive(P) == P
    assert translate_positive(convex_hull([(5, 7)])).vertices == ((0, 0),)


def test_lattice_point_examples():
    P = convex_hull(FOLIUM_P)
    assert lattice_points(P).points == ((0, 3), (1, 1), (1, 2), (2, 1), (3, 0))
    sq = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert lattice_points(sq).points == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert lattice_points(convex_hull([(0, 0)])).points == ((0, 0),)


def test_minkowski_examples():
    P = convex_hull(FOLIUM_P)
    assert minkowski_sum(P, convex_hull([(2, 5)])) == P.translate((2, 5))
    sq = minkowski_sum(convex_hull([(0, 0), (1, 0)]), convex_hull([(0, 0), (0, 1)]))
    assert sq == convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    Qx = minkowski_sum(P, convex_hull([(0, 0), (1, 0)]))
    assert Qx == convex_hull([(0, 3), (1, 3), (1, 1), (2, 1), (3, 0), (4, 0)])


def test_translate_count_examples():
    P = convex_hull(FOLIUM_P)
    assert translate_count(P, P) == 1
    assert translate_count(P, minkowski_sum(P, convex_hull([(0, 0), (1, 0)]))) == 2
    assert translate_count(P, convex_hull([(0, 0), (2, 0), (0, 2)])) == 0
    with pytest.raises(DimensionMismatch):
        translate_count(P, convex_hull([(0,), (2,)]))


def test_degree_bound():
    folium = parse_map("x = 3*t/(1+t^3); y = 3*t^2/(1+t^3)")
    Q = degree_bound_polytope(folium)
    assert Q == simplex(2, 9)
    assert all(Q.contains(p) for p in FOLIUM_P)
    par = degree_bound_polytope(parse_map("x = t; y = t^2"))
    assert par.contains((0, 1)) and par.contains((2, 0)) and par == simplex(2, 2)
    assert degree_bound_polytope(parse_map("x = t; y = t")) == simplex(2, 1)
    with pytest.raises(CapExceeded):
        degree_bound_polytope(folium, 40)


def test_lower_dimensional_sets():
    seg = convex_hull([(0, 0), (2, 2), (1, 1)])
    assert set(seg.vertices) == {(0, 0), (2, 2)}
    assert lattice_points(seg).points == ((0, 0), (1, 1), (2, 2))
    tri3 = convex_hull([(0, 0, 1), (2, 0, 1), (0, 2, 1)])
    assert len(lattice_points(tri3)) == 6
    assert not tri3.contains((0, 0, 0))


def test_cap():
    with pytest.raises(CapExceeded):
        lattice_points(simplex(3, 400), cap=1000)


def test_file_round_trip(tmp_path):
    P = convex_hull(FOLIUM_P)
    path = tmp_path / "p.txt"
    path.write_text("# folium\n" + format_polytope(P))
    assert load_polytope(path) == P
    with pytest.raises(InputIOError):
        load_polytope(tmp_path / "nope")
    for bad in ["3 0\n", "dim 2\n1 2 3\n", "dim x\n", "dim 2\n1 a\n", "dim 2\n"]:
        with pytest.raises(ParseError):
            parse_polytope(bad)
