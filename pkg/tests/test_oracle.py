import random
from fractions import Fraction

import pytest

from hullprob import (
    AREA,
    PERIMETER,
    SqrtSum,
    StochasticInstance,
    TooLarge,
    WeightAssignment,
    check_lambda_bounds,
    exact_distribution,
    oracle_expected,
    oracle_pr_ge,
    weighted_oracle_pr_ge,
)

from conftest import random_instance, random_points

F = Fraction


class TestExactDistribution:
    def test_q4_area(self, q4):
        table = exact_distribution(q4, AREA)
        assert [(v, p) for v, p in table.entries] == [
            (0, F(11, 16)),
            (58, F(1, 4)),
            (116, F(1, 16)),
        ]

    def test_single_point(self):
        inst = StochasticInstance.build([(0, 0, F(1, 3))])
        table = exact_distribution(inst, AREA)
        assert table.entries == ((0, F(1)),)

    def test_triangle(self):
        inst = StochasticInstance.build(
            [(0, 0, F(1, 2)), (12, 2, F(1, 2)), (14, 12, F(1, 2))]
        )
        table = exact_distribution(inst, AREA)
        assert table.entries == ((0, F(7, 8)), (58, F(1, 8)))

    def test_probabilities_sum_to_one(self):
        rng = random.Random(50)
        for _ in range(6):
            inst = random_instance(rng, rng.randint(1, 7))
            for measure in (AREA, PERIMETER):
                table = exact_distribution(inst, measure)
                assert sum(p for _, p in table.entries) == 1

    def test_reorder_invariance(self):
        rng = random.Random(51)
        inst = random_instance(rng, 6)
        perm = list(range(6))
        rng.shuffle(perm)
        shuffled = StochasticInstance(
            tuple(inst.points[i] for i in perm),
            tuple(inst.probs[i] for i in perm),
        )
        a = exact_distribution(inst, AREA)
        b = exact_distribution(shuffled, AREA)
        assert a.entries == b.entries

    def test_perimeter_values_merge_exactly(self, q4):
        table = exact_distribution(q4, PERIMETER)
        # The instance is a parallelogram, so the four 3-subsets fall into
        # two congruent pairs: values merge to 0, two triangle classes, and
        # the full hull.
        assert len(table.entries) == 4
        assert table.entries[0][0].rational_value() == 0
        assert [p for _, p in table.entries] == [F(11, 16), F(1, 8), F(1, 8), F(1, 16)]
        full = table.entries[3][0]
        assert (full - (SqrtSum.sqrt(26) + SqrtSum.sqrt(37)) * 4).sign() == 0

    def test_cap(self):
        inst = StochasticInstance.build(
            [(i, i * i, F(1, 2)) for i in range(21)]
        )
        with pytest.raises(TooLarge):
            exact_distribution(inst, AREA, cap=20)


class TestOracleQueries:
    def test_tail(self, q4):
        assert oracle_pr_ge(q4, AREA, 58) == F(5, 16)
        assert oracle_pr_ge(q4, AREA, 0) == 1

    def test_expectation(self, q4):
        assert oracle_expected(q4, AREA) == F(87, 4)

    def test_perimeter_tail_certified(self, q4):
        # Triangle perimeters: ~35.17 (two subsets) and ~40.80 (two subsets);
        # the full parallelogram is ~44.73.
        assert oracle_pr_ge(q4, PERIMETER, F(35)) == F(5, 16)
        assert oracle_pr_ge(q4, PERIMETER, F(40)) == F(3, 16)
        assert oracle_pr_ge(q4, PERIMETER, F(41)) == F(1, 16)
        assert oracle_pr_ge(q4, PERIMETER, F(45)) == 0


class TestWeightedOracle:
    def test_unit_perimeter_weights(self, q4):
        unit = WeightAssignment.boundary_edges(
            {(i, j): 1 for i in range(4) for j in range(4) if i != j}
        )
        assert weighted_oracle_pr_ge(q4, unit, 3) == F(5, 16)

    def test_true_area_weights(self, q4):
        table = {}
        from hullprob import triangle_area

        for a in range(4):
            for i in range(4):
                for j in range(4):
                    if len({a, i, j}) == 3:
                        table[(i, j)] = int(
                            triangle_area(q4.points[a], q4.points[i], q4.points[j])
                        )
        # All triangles have area 58, so the key sharing across apexes is safe.
        weights = WeightAssignment(AREA, table)
        assert weighted_oracle_pr_ge(q4, weights, 116) == F(1, 16)

    def test_zero_weights(self, q4):
        weights = WeightAssignment(
            AREA, {(i, j): 0 for i in range(4) for j in range(4) if i != j}
        )
        assert weighted_oracle_pr_ge(q4, weights, 1) == 0


class TestLambdaBounds:
    def test_q4_ratio_two(self, q4):
        report = check_lambda_bounds(list(q4.points), AREA)
        assert report.lam == 58
        assert report.hull_value == 116
        assert report.ratio == pytest.approx(2.0)
        assert report.within_bounds

    def test_triangle_ratio_one(self):
        pts = random_points(random.Random(1), 3)
        report = check_lambda_bounds(pts, AREA)
        assert report.ratio == pytest.approx(1.0)
        assert report.within_bounds

    def test_random_sets_within_bounds(self):
        rng = random.Random(60)
        worst = 0.0
        for _ in range(150):
            pts = random_points(rng, rng.randint(3, 12))
            area_rep = check_lambda_bounds(pts, AREA)
            perim_rep = check_lambda_bounds(pts, PERIMETER)
            assert area_rep.within_bounds
            assert perim_rep.within_bounds
            worst = max(worst, area_rep.ratio)
        assert worst < 4.0
