import math

import numpy as np
import pytest

from gbsm.core.errors import AllCostsZeroError, InvalidConfigError
from gbsm.models.instance import Instance
from gbsm.models.profit import ModularProfit
from gbsm.services.bounds import expbudget_alpha, ladder_size_bound
from gbsm.services.cost_service import cost_service
from gbsm.services.expbudget_service import (
    BudgetLadder,
    KnapsackProblem,
    MemoGain,
    expbudget_service,
)
from gbsm.services.generator_service import generator_service
from gbsm.services.oracle_service import oracle_service
from tests.helpers import partial_of, random_partial


def knapsack(gain_oracle, costs, budget):
    ground = tuple(range(len(costs)))
    return KnapsackProblem(
        ground=ground,
        item_cost={x: float(costs[x]) for x in ground},
        budget=budget,
        gain=lambda T: gain_oracle.value(T),
    )


# ---------------------------------------------------------------------------
# min_positive_cost
# ---------------------------------------------------------------------------

def test_min_positive_cost_examples(table1):
    assert expbudget_service.min_positive_cost(table1) == 0.25
    assert expbudget_service.min_positive_cost(Instance.from_lists([5.0], [[0.0, 3.0]], 9.0)) == 3.0


def test_min_positive_cost_all_zero():
    with pytest.raises(AllCostsZeroError):
        expbudget_service.min_positive_cost(Instance.from_lists([0.0, 0.0], [[0.0], [0.0]], 1.0))


def test_min_positive_cost_skips_forbidden():
    instance = Instance.from_lists([0.0], [[None, 2.0]], 5.0)
    assert expbudget_service.min_positive_cost(instance) == 2.0


# ---------------------------------------------------------------------------
# BudgetLadder
# ---------------------------------------------------------------------------

def test_ladder_levels():
    ladder = BudgetLadder(0.25, 0.5, 2.0)
    assert ladder.levels == pytest.approx(
        (0.25, 0.375, 0.5625, 0.84375, 1.265625, 1.8984375, 2.0)
    )
    assert ladder.q == 5
    assert len(ladder.levels) <= ladder_size_bound(0.25, 2.0, 0.5)


def test_ladder_with_budget_below_c_hat():
    ladder = BudgetLadder(3.0, 0.5, 2.0)
    assert ladder.levels == (2.0,)
    assert ladder_size_bound(3.0, 2.0, 0.5) == 1


@pytest.mark.parametrize("epsilon", [1.0, 0.0, 1.5])
def test_ladder_rejects_epsilon(epsilon):
    with pytest.raises(InvalidConfigError):
        BudgetLadder(0.25, epsilon, 2.0)


def test_ladder_rejects_non_positive_c_hat():
    with pytest.raises(InvalidConfigError):
        BudgetLadder(0.0, 0.5, 2.0)


def test_ladder_property_for_random_targets(rng):
    for _ in range(1000):
        c_hat = float(rng.uniform(0.1, 2.0))
        budget = c_hat * float(rng.uniform(1.0, 200.0))
        epsilon = float(rng.uniform(0.05, 0.95))
        ladder = BudgetLadder(c_hat, epsilon, budget)
        assert all(a < b for a, b in zip(ladder.levels, ladder.levels[1:]))
        assert ladder.levels[-1] == budget
        assert len(ladder.levels) <= ladder_size_bound(c_hat, budget, epsilon)

        target = float(rng.uniform(c_hat, budget))
        level = ladder.smallest_level_at_least(target)
        assert level is not None and level >= target
        assert level <= (1.0 + epsilon) * target + 1e-9


# ---------------------------------------------------------------------------
# greedy_max_cover
# ---------------------------------------------------------------------------

def test_greedy_takes_dominant_element():
    problem = knapsack(ModularProfit([10.0, 1.0]), [1.0, 1.0], 1.0)
    assert expbudget_service.greedy_max_cover(problem, depth=1) == {0}


def test_greedy_with_zero_budget_is_empty():
    problem = knapsack(ModularProfit([1.0, 1.0]), [1.0, 2.0], 0.0)
    assert expbudget_service.greedy_max_cover(problem) == frozenset()


def test_greedy_negative_budget_is_empty():
    problem = knapsack(ModularProfit([1.0, 1.0]), [0.0, 0.0], -1.0)
    assert expbudget_service.greedy_max_cover(problem) == frozenset()


def test_greedy_coverage_example(abc_coverage):
    problem = knapsack(abc_coverage, [1.0, 1.0, 1.0], 2.0)
    chosen = expbudget_service.greedy_max_cover(problem, depth=3)
    assert abc_coverage.value(chosen) == 3
    assert chosen == {0, 1}


def test_greedy_adds_free_items_and_skips_forbidden():
    problem = knapsack(ModularProfit([1.0, 5.0, 2.0]), [0.0, math.inf, 1.0], 1.0)
    assert expbudget_service.greedy_max_cover(problem, depth=1) == {0, 2}


def test_greedy_rejects_zero_depth():
    with pytest.raises(InvalidConfigError):
        expbudget_service.greedy_max_cover(knapsack(ModularProfit([1.0]), [1.0], 1.0), depth=0)


def test_greedy_depth_three_is_near_optimal(rng):
    bound = 1.0 - 1.0 / math.e
    for i in range(300):
        n = int(rng.integers(2, 9))
        oracle = generator_service.random_profit(
            ("coverage", "modular", "concave_modular")[i % 3], n, int(rng.integers(1 << 30))
        )
        costs = rng.uniform(0.2, 2.0, n)
        problem = knapsack(oracle, costs, float(rng.uniform(0.5, 4.0)))
        chosen = expbudget_service.greedy_max_cover(problem, depth=3)
        _, best = oracle_service.brute_force_knapsack(problem)
        assert problem.cost_of(chosen) <= problem.budget + 1e-9
        assert problem.gain(chosen) >= bound * best - 1e-9


def test_memo_gain_is_relative_to_base():
    gain = MemoGain(ModularProfit([1.0, 2.0, 4.0]), frozenset({0}))
    assert gain(frozenset({1, 2})) == 6.0
    assert gain(frozenset()) == 0.0


# ---------------------------------------------------------------------------
# build_expbudget_list
# ---------------------------------------------------------------------------

def _free_bins_instance():
    # two free bins, unit items: every (bin, level) cell yields a nonempty set
    return Instance.from_lists([0.0, 0.0], [[1.0, 1.0, 1.0], [1.0, 1.0, 1.0]], 4.0)


def test_cell_count_equals_bins_times_levels():
    instance = _free_bins_instance()
    cells = expbudget_service.build_ladder_cells(
        instance, ModularProfit([1.0, 2.0, 3.0]), partial_of(), 0.5
    )
    assert [cell.level for cell in cells[:5]] == pytest.approx([1.0, 1.5, 2.25, 3.375, 4.0])
    assert [cell.bin for cell in cells] == [0] * 5 + [1] * 5
    assert len(cells) == instance.m * ladder_size_bound(1.0, 4.0, 0.5) == 10


def test_list_is_deduplicated_in_cell_order():
    instance = _free_bins_instance()
    candidates = expbudget_service.build_expbudget_list(
        instance, ModularProfit([1.0, 2.0, 3.0]), partial_of(), 0.5
    )
    assert [c.key for c in candidates] == [(2,), (1, 2), (0, 1, 2)]
    assert all(c.c_min > 0 for c in candidates)


def test_list_propagates_all_costs_zero():
    instance = Instance.from_lists([0.0], [[0.0, 0.0]], 1.0)
    with pytest.raises(AllCostsZeroError):
        expbudget_service.build_expbudget_list(instance, ModularProfit([1.0, 1.0]), partial_of(), 0.5)


def test_unaffordable_bin_contributes_nothing():
    instance = Instance.from_lists([1.0, 5.0], [[1.0], [0.5]], 2.0)
    cells = expbudget_service.build_ladder_cells(instance, ModularProfit([1.0]), partial_of(), 0.5)
    assert {cell.bin for cell in cells} == {0}


def test_list_size_bound(rng):
    for seed in range(30):
        n, m = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        instance = generator_service.random_general(n, m, float(rng.uniform(2, 6)), seed=seed)
        oracle = generator_service.random_profit("coverage", n, seed)
        epsilon = float(rng.choice([0.2, 0.5]))
        bound = m * ladder_size_bound(
            expbudget_service.min_positive_cost(instance), instance.budget, epsilon
        )
        cells = expbudget_service.build_ladder_cells(instance, oracle, partial_of(), epsilon, depth=1)
        candidates = expbudget_service.build_expbudget_list(
            instance, oracle, partial_of(), epsilon, depth=1
        )
        assert len(candidates) <= len(cells) <= bound


def test_single_bin_knapsack_certificate():
    instance, oracle = generator_service.sfkc_instance(4, 3.0, [4.0, 3.0, 2.0, 1.0], [1.0, 1.5, 1.0, 0.5])
    candidates = expbudget_service.build_expbudget_list(instance, oracle, partial_of(), 0.5)
    assert oracle_service.verify_alpha_list(
        candidates, instance, oracle, partial_of(), expbudget_alpha(0.5)
    )


def test_best_by_budget_level_bounds_the_ratio():
    instance = _free_bins_instance()
    cells = expbudget_service.build_ladder_cells(
        instance, ModularProfit([1.0, 2.0, 3.0]), partial_of(), 0.5
    )
    best = expbudget_service.best_by_budget_level(cells)
    assert best is cells[0]
    for cell in cells:
        assert cell.candidate.c_min <= cell.level + 1e-9
        assert cell.candidate.gain / cell.level <= best.candidate.gain / best.level
    assert best.candidate.ratio >= best.candidate.gain / best.level
    assert expbudget_service.best_by_budget_level([]) is None


def test_expbudget_certificate_on_random_partials(rng):
    alpha = expbudget_alpha(0.5)
    for seed in range(40):
        n, m = int(rng.integers(2, 6)), int(rng.integers(1, 4))
        # k above every bin plus any T through one bin keeps F unconstrained
        k = 3.0 * m + 2.0 * n + 1.0
        instance = generator_service.random_general(n, m, k, forbidden_prob=0.1, seed=seed)
        oracle = generator_service.random_profit("coverage", n, seed)
        partial = random_partial(instance, rng)
        candidates = expbudget_service.build_expbudget_list(instance, oracle, partial, 0.5, depth=3)
        assert oracle_service.verify_alpha_list(candidates, instance, oracle, partial, alpha)


def test_expbudget_certificate_under_tight_budgets(rng):
    alpha = expbudget_alpha(0.2)
    for seed in range(100):
        n, m = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        k = float(rng.uniform(2.0, 6.0))
        instance = generator_service.random_general(n, m, k, forbidden_prob=0.1, seed=seed)
        oracle = generator_service.random_profit("coverage", n, seed)
        partial = random_partial(instance, rng)
        candidates = expbudget_service.build_expbudget_list(instance, oracle, partial, 0.2, depth=3)
        assert all(cost_service.in_family(instance, partial, c) for c in candidates)
        assert oracle_service.verify_alpha_list(candidates, instance, oracle, partial, alpha)


def test_cells_are_deterministic(table1, unit_weights):
    first = expbudget_service.build_ladder_cells(table1, unit_weights, partial_of(), 0.2)
    second = expbudget_service.build_ladder_cells(table1, unit_weights, partial_of(), 0.2)
    assert first == second
    assert np.all([cell.candidate.c_min > 0 for cell in first])
