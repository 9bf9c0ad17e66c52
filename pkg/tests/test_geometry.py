import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hullprob import (
    AREA,
    PERIMETER,
    CollinearCandidates,
    EmptyOthers,
    Point,
    convex_hull,
    distance,
    hull_measure,
    max_extremal_triangle,
    orient,
    radial_order,
    squared_distance,
    triangle_area,
)
from hullprob.geometry import sweep_order

from conftest import Q4_ROWS, random_points

P = Point.of


def rationals(max_num=50, max_den=8):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def points():
    return st.builds(Point, rationals(), rationals())


class TestOrient:
    def test_unit_left_turn(self):
        assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1

    def test_collinear(self):
        assert orient(P(0, 0), P(1, 0), P(2, 0)) == 0

    def test_mirror(self):
        assert orient(P(0, 0), P(0, 1), P(1, 0)) == -1

    @given(points(), points(), points())
    @settings(max_examples=150, deadline=None)
    def test_antisymmetric_under_swaps(self, p, q, r):
        s = orient(p, q, r)
        assert orient(q, p, r) == -s
        assert orient(p, r, q) == -s
        assert orient(r, q, p) == -s

    @given(points(), points(), points(), rationals(), rationals())
    @settings(max_examples=150, deadline=None)
    def test_translation_invariant(self, p, q, r, dx, dy):
        d = Point(dx, dy)
        assert orient(p + d, q + d, r + d) == orient(p, q, r)

    @given(points(), points(), points())
    @settings(max_examples=150, deadline=None)
    def test_zero_area_iff_collinear(self, p, q, r):
        assert (triangle_area(p, q, r) == 0) == (orient(p, q, r) == 0)


class TestTriangleArea:
    def test_right_triangle(self):
        assert triangle_area(P(0, 0), P(4, 0), P(0, 4)) == 8

    def test_hand_determinant(self):
        assert triangle_area(P(0, 0), P(12, 2), P(14, 12)) == 58

    def test_gadget_profile_triangle(self):
        assert triangle_area(P(1, 1), P(9, 3), P(25, 5)) == 8


class TestDistances:
    def test_345(self):
        assert squared_distance(P(0, 0), P(3, 4)) == 25
        assert distance(P(0, 0), P(3, 4)) == 5.0

    def test_unit_diagonal(self):
        assert squared_distance(P(0, 0), P(1, 1)) == 2
        assert abs(distance(P(0, 0), P(1, 1)) - 2 ** 0.5) < 1e-12

    def test_half(self):
        assert squared_distance(P(Fraction(1, 2), 0), P(0, 0)) == Fraction(1, 4)
        assert distance(P(Fraction(1, 2), 0), P(0, 0)) == 0.5


class TestConvexHull:
    def test_quadrilateral(self):
        h = convex_hull([P(x, y) for x, y in Q4_ROWS])
        assert h.size == 4
        assert h.area() == 116

    def test_collinear_degenerates_to_segment(self):
        h = convex_hull([P(0, 0), P(1, 0), P(2, 0)])
        assert h.degenerate
        assert h.vertices == (P(0, 0), P(2, 0))
        assert h.area() == 0

    def test_empty(self):
        h = convex_hull([])
        assert h.area() == 0
        assert h.perimeter() == 0.0

    def test_duplicates_collapse(self):
        h = convex_hull([P(0, 0), P(0, 0), P(1, 1)])
        assert h.vertices == (P(0, 0), P(1, 1))

    def test_presorted_path_matches(self):
        rng = random.Random(3)
        for _ in range(25):
            pts = random_points(rng, rng.randint(0, 9))
            expect = convex_hull(pts)
            assert convex_hull(sorted(pts), presorted=True) == expect

    def test_permutation_invariance(self):
        rng = random.Random(11)
        pts = random_points(rng, 8)
        base = convex_hull(pts)
        for _ in range(20):
            rng.shuffle(pts)
            assert convex_hull(pts).vertices == base.vertices

    def test_ccw_strict_turns_and_containment(self):
        rng = random.Random(5)
        for _ in range(20):
            pts = random_points(rng, rng.randint(3, 10))
            h = convex_hull(pts)
            v = h.vertices
            if h.degenerate:
                continue
            m = len(v)
            for i in range(m):
                assert orient(v[i], v[(i + 1) % m], v[(i + 2) % m]) == 1
            for p in pts:
                for i in range(m):
                    assert orient(v[i], v[(i + 1) % m], p) >= 0

    def test_fan_decomposition_matches_shoelace(self):
        rng = random.Random(7)
        for _ in range(20):
            pts = random_points(rng, rng.randint(3, 10))
            h = convex_hull(pts)
            v = h.vertices
            fan = sum(
                (triangle_area(v[0], v[i], v[i + 1]) for i in range(1, len(v) - 1)),
                Fraction(0),
            )
            assert fan == h.area()


class TestHullMeasure:
    def test_area(self, q4):
        h = convex_hull(list(q4.points))
        assert hull_measure(h, AREA) == 116

    def test_two_point_perimeter_is_zero(self):
        assert hull_measure(convex_hull([P(0, 0), P(3, 4)]), PERIMETER) == 0.0

    def test_345_perimeter(self):
        h = convex_hull([P(0, 0), P(3, 0), P(0, 4)])
        assert hull_measure(h, PERIMETER) == pytest.approx(12.0, abs=1e-12)

    def test_unknown_measure(self, q4):
        with pytest.raises(ValueError):
            hull_measure(convex_hull(list(q4.points)), "volume")


class TestRadialOrder:
    def test_quarter_angles(self):
        got = radial_order(P(0, 0), P(-1, 0), [P(1, 1), P(-1, 1), P(0, 1)])
        assert got == [P(1, 1), P(0, 1), P(-1, 1)]

    def test_two_candidates(self):
        assert radial_order(P(0, 0), P(-1, 0), [P(1, 2), P(2, 1)]) == [P(2, 1), P(1, 2)]

    def test_collinear_candidates_error(self):
        with pytest.raises(CollinearCandidates):
            radial_order(P(0, 0), P(-1, 0), [P(1, 1), P(2, 2)])

    def test_full_circle(self):
        got = radial_order(
            P(0, 0), P(-1, 0), [P(0, -1), P(-1, 1), P(1, 0), P(1, 1), P(-2, -1)]
        )
        assert got == [P(1, 0), P(1, 1), P(-1, 1), P(-2, -1), P(0, -1)]

    def test_sweep_order_requires_left_side(self):
        with pytest.raises(ValueError):
            sweep_order(P(0, 0), P(-1, 0), [P(1, -1)])


class TestMaxExtremalTriangle:
    def test_area_tie_keeps_first(self):
        lam, witness = max_extremal_triangle(
            P(14, 12), P(0, 0), [P(12, 2), P(2, 10)], AREA
        )
        assert lam == 58
        assert witness == P(12, 2)

    def test_perimeter_345(self):
        lam, witness = max_extremal_triangle(P(0, 4), P(0, 0), [P(3, 0)], PERIMETER)
        assert float(lam) == pytest.approx(12.0, abs=1e-12)
        assert witness == P(3, 0)

    def test_half_area(self):
        lam, _ = max_extremal_triangle(P(0, 1), P(0, 0), [P(1, 0)], AREA)
        assert lam == Fraction(1, 2)

    def test_empty_others(self):
        with pytest.raises(EmptyOthers):
            max_extremal_triangle(P(0, 1), P(0, 0), [], AREA)
