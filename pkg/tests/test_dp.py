import random
from fractions import Fraction

import pytest

from hullprob import (
    AREA,
    PERIMETER,
    BudgetOverflow,
    DegenerateInstance,
    EventContext,
    ExactEngine,
    NonIntegerAreas,
    StochasticInstance,
    WeightAssignment,
    exact_distribution,
    pr_area_ge_exact,
    pr_perimeter_ge_exact,
    pr_weighted_area_ge_given_top,
    pr_weighted_ge,
    pr_weighted_perimeter_ge_given_top,
    weighted_oracle_pr_ge,
    weighted_oracle_pr_ge_given_top,
)
from hullprob.dp import ApexProblem

from conftest import random_instance

F = Fraction


def full_pair_weights(rng, n, cap=20):
    return {(i, j): rng.randint(0, cap) for i in range(n) for j in range(n) if i != j}


class TestAreaExact:
    def test_q4_thresholds(self, q4):
        engine = ExactEngine(q4, AREA)
        assert engine.pr_ge(0) == 1
        assert engine.pr_ge(1) == F(5, 16)
        assert engine.pr_ge(58) == F(5, 16)
        assert engine.pr_ge(59) == F(1, 16)
        assert engine.pr_ge(116) == F(1, 16)
        assert engine.pr_ge(117) == 0

    def test_triangle(self):
        inst = StochasticInstance.build(
            [(0, 0, F(1, 2)), (12, 2, F(1, 2)), (14, 12, F(1, 2))]
        )
        assert pr_area_ge_exact(inst, 58) == F(1, 8)

    def test_non_integer_area_witness(self):
        inst = StochasticInstance.build([(0, 0, 1), (1, 2, 1), (2, 1, 1)])
        with pytest.raises(NonIntegerAreas) as err:
            pr_area_ge_exact(inst, 1)
        assert err.value.witness == (0, 1, 2)

    def test_monotone_in_w(self):
        rng = random.Random(17)
        inst = random_instance(rng, 7)
        engine = ExactEngine(inst, AREA)
        values = [engine.pr_ge(w) for w in range(0, 900, 37)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_degenerate_rejected(self):
        inst = StochasticInstance.build(
            [(0, 0, F(1, 2)), (2, 2, F(1, 2)), (4, 4, F(1, 2))]
        )
        with pytest.raises(DegenerateInstance):
            pr_area_ge_exact(inst, 1)

    def test_zero_prob_point_ignored(self, q4):
        # Adding a collinear but impossible point must not change anything.
        rows = [(x, y, p) for (x, y), p in zip(
            [(0, 0), (12, 2), (14, 12), (2, 10)], q4.probs)]
        rows.append((6, 1, F(0)))  # on the segment (0,0)-(12,2)
        noisy = StochasticInstance.build(rows)
        assert pr_area_ge_exact(noisy, 58) == F(5, 16)

    def test_budget_overflow(self, q4):
        with pytest.raises(BudgetOverflow):
            ExactEngine(q4, AREA, max_budget=100).pr_ge(101)

    def test_fractional_threshold_rejected(self, q4):
        with pytest.raises(ValueError):
            pr_area_ge_exact(q4, F(1, 2))


class TestConditional:
    def test_q4_given_top(self, q4):
        ctx = EventContext(q4, topmost=2)
        weights = WeightAssignment.fan_areas(q4, 2, [0, 1, 3])
        assert pr_weighted_area_ge_given_top(ctx, weights, 58) == F(1, 2)
        assert pr_weighted_area_ge_given_top(ctx, weights, 0) == 1

    def test_apex_only_support(self, q4):
        ctx = EventContext(q4, topmost=2, support=frozenset({2}))
        weights = WeightAssignment(AREA, {})
        assert pr_weighted_area_ge_given_top(ctx, weights, 1) == 0

    def test_matches_conditional_oracle(self):
        rng = random.Random(40)
        for _ in range(10):
            n = rng.randint(3, 7)
            inst = random_instance(rng, n)
            weights = WeightAssignment(AREA, full_pair_weights(rng, n))
            a = max(range(n), key=lambda i: inst.points[i].y)
            ctx = EventContext(inst, topmost=a)
            for w in (1, 13, 37, 80):
                assert pr_weighted_area_ge_given_top(ctx, weights, w) == \
                    weighted_oracle_pr_ge_given_top(inst, a, weights, w)


class TestPerimeterWeighted:
    def test_unit_weights_count_edges(self, q4):
        unit = {(i, j): 1 for i in range(4) for j in range(4) if i != j}
        assert pr_perimeter_ge_exact(q4, unit, 3) == F(5, 16)
        assert pr_perimeter_ge_exact(q4, unit, 4) == F(1, 16)
        assert pr_perimeter_ge_exact(q4, unit, 5) == 0
        assert pr_perimeter_ge_exact(q4, unit, 0) == 1

    def test_two_vertex_hulls_score_zero(self):
        inst = StochasticInstance.build([(0, 10, 1), (3, 0, 1)])
        weights = {(0, 1): 7, (1, 0): 7}
        assert pr_perimeter_ge_exact(inst, weights, 1) == 0

    def test_declared_triangle_weights(self):
        inst = StochasticInstance.build([(0, 0, 1), (3, 1, 1), (1, 4, 1)])
        weights = {(0, 1): 5, (1, 2): 5, (2, 0): 6}
        assert pr_perimeter_ge_exact(inst, weights, 16) == 1
        assert pr_perimeter_ge_exact(inst, weights, 17) == 0

    def test_matches_marginal_oracle(self):
        rng = random.Random(41)
        for _ in range(10):
            n = rng.randint(3, 7)
            inst = random_instance(rng, n)
            table = full_pair_weights(rng, n)
            weights = WeightAssignment.boundary_edges(table)
            total = sum(table.values())
            for w in sorted({1, total // 4, total // 2, total}):
                if w < 1:
                    continue
                assert pr_perimeter_ge_exact(inst, table, w) == \
                    weighted_oracle_pr_ge(inst, weights, w)


class TestMarginalWeightedArea:
    def test_matches_oracle(self):
        rng = random.Random(42)
        for _ in range(10):
            n = rng.randint(3, 6)
            inst = random_instance(rng, n)
            weights = WeightAssignment(AREA, full_pair_weights(rng, n))
            for w in (1, 9, 25, 61):
                assert pr_weighted_ge(inst, weights, w) == \
                    weighted_oracle_pr_ge(inst, weights, w)


class TestDPTable:
    def test_base_row_and_range(self, q4):
        ctx = EventContext(q4, topmost=2)
        weights = WeightAssignment.fan_areas(q4, 2, [0, 1, 3])
        problem = ApexProblem(ctx, weights)
        for u, v in problem.pair_list:
            assert problem.entry(u, v, 0) == 1
            last = F(2)
            for z in range(0, 130, 13):
                value = problem.entry(u, v, z)
                assert 0 <= value <= 1
                assert value <= last
                last = value

    def test_exposed_via_engine(self, q4):
        engine = ExactEngine(q4, AREA)
        engine.pr_ge(58)
        table = engine.table_for(2)
        assert table.entry(3, 2, 58) == F(3, 4)
        assert table.entry(0, 2, 58) == F(1, 2)
        assert table.entry(1, 2, 58) == 0

    def test_inadmissible_pair_rejected(self, q4):
        engine = ExactEngine(q4, AREA)
        engine.pr_ge(1)
        with pytest.raises(ValueError):
            engine.table_for(2).entry(2, 2, 0)


class TestOracleEquivalenceSweep:
    def test_small_random_instances(self):
        rng = random.Random(2024)
        for _ in range(12):
            n = rng.randint(4, 8)
            inst = random_instance(rng, n)
            dist = exact_distribution(inst, AREA)
            engine = ExactEngine(inst, AREA)
            ws = {1}
            for value, _ in dist.entries:
                ws.add(int(value))
                ws.add(int(value) + 1)
            for w in sorted(ws):
                assert engine.pr_ge(w) == dist.pr_ge(w)

    def test_conditioning_consistency(self):
        rng = random.Random(2025)
        for _ in range(6):
            inst = random_instance(rng, rng.randint(3, 7))
            engine = ExactEngine(inst, AREA)
            total = engine.pr_ge(1)
            none = F(1)
            for q in inst.probs:
                none *= 1 - q
            assert total <= 1 - none
