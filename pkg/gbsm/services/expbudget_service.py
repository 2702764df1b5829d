import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from gbsm.core.config import settings
from gbsm.core.errors import AllCostsZeroError, InfeasibleSetError, InvalidConfigError
from gbsm.core.numeric import within_budget
from gbsm.models.instance import Instance
from gbsm.models.profit import ProfitOracle
from gbsm.models.solution import CandidateSet, ElementSet, PartialSolution
from gbsm.services.cost_service import cost_service

logger = logging.getLogger(__name__)

GainFn = Callable[[ElementSet], float]


@dataclass(frozen=True)
class BudgetLadder:
    """B_0 = c_hat, B_i = c_hat (1 + epsilon)^i while below k, then a final level k."""

    c_hat: float
    epsilon: float
    budget: float
    levels: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise InvalidConfigError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.c_hat <= 0:
            raise InvalidConfigError(f"c_hat must be positive, got {self.c_hat}")
        levels = []
        i = 0
        while self.c_hat * (1.0 + self.epsilon) ** i < self.budget:
            levels.append(self.c_hat * (1.0 + self.epsilon) ** i)
            i += 1
        levels.append(self.budget)
        object.__setattr__(self, "levels", tuple(levels))

    @property
    def q(self) -> int:
        """Index of the last geometric level (-1 when k <= c_hat)."""
        return len(self.levels) - 2

    def smallest_level_at_least(self, target: float) -> Optional[float]:
        for level in self.levels:
            if level >= target:
                return level
        return None


@dataclass
class KnapsackProblem:
    """Maximize a monotone submodular gain over `ground` under a knapsack budget."""

    ground: tuple[int, ...]
    item_cost: dict[int, float]
    budget: float
    gain: GainFn

    def cost_of(self, elements) -> float:
        return float(sum(self.item_cost[x] for x in elements))


@dataclass(frozen=True)
class LadderCell:
    """One (bin, level) cell of the exponential-budget list."""

    bin: int
    level: float
    candidate: CandidateSet


class MemoGain:
    """Memoized g(T) = f(X' + T) - f(X') for one partial solution."""

    def __init__(self, oracle: ProfitOracle, base: frozenset[int]):
        self._oracle = oracle
        self._base = base
        self._base_value = oracle.value(base)
        self._cache: dict[ElementSet, float] = {}

    def __call__(self, elements: ElementSet) -> float:
        value = self._cache.get(elements)
        if value is None:
            value = self._oracle.value(self._base | elements) - self._base_value
            self._cache[elements] = value
        return value


class ExpBudgetService:
    """
    (1 - 1/e)(1 - epsilon)-list for arbitrary costs: for every bin and every
    level of a geometric budget ladder, solve the knapsack subproblem restricted
    to that bin with GreedyMaxCover and keep the results.
    """

    def min_positive_cost(self, instance: Instance) -> float:
        """c_hat: smallest positive bin cost or finite assignment cost."""
        costs = np.concatenate([instance.bin_costs, instance.assign_cost.reshape(-1)])
        positive = costs[np.isfinite(costs) & (costs > 0)]
        if positive.size == 0:
            raise AllCostsZeroError("every bin and assignment cost is zero")
        return float(positive.min())

    def greedy_max_cover(self, problem: KnapsackProblem, depth: int = 3) -> ElementSet:
        """
        Partial enumeration plus density greedy. Every seed of at most `depth`
        affordable items is completed greedily by the item with the best
        gain/cost ratio that still fits; zero-cost items join every seed first.
        Returns the best completed set, ties going to the lexicographically
        smallest. depth=3 gives the (1 - 1/e) guarantee, depth=1 is fast mode.
        """
        if depth < 1:
            raise InvalidConfigError(f"enumeration depth must be >= 1, got {depth}")
        if problem.budget < -settings.GBSM_TOLERANCE:
            return frozenset()

        items = sorted(x for x in problem.ground if math.isfinite(problem.item_cost[x]))
        free_items = frozenset(x for x in items if problem.item_cost[x] == 0)
        priced = [x for x in items if problem.item_cost[x] > 0]

        best: ElementSet = frozenset()
        best_gain = problem.gain(best)
        best_key: tuple[int, ...] = ()
        for size in range(0, depth + 1):
            for seed in itertools.combinations(priced, size):
                spent = problem.cost_of(seed)
                if not within_budget(spent, problem.budget):
                    continue
                completed = self._complete(problem, free_items | frozenset(seed), spent, priced)
                gain = problem.gain(completed)
                key = tuple(sorted(completed))
                if gain > best_gain or (gain == best_gain and key < best_key):
                    best, best_gain, best_key = completed, gain, key
        return best

    def _complete(
        self, problem: KnapsackProblem, chosen: ElementSet, spent: float, priced: list[int]
    ) -> ElementSet:
        current_gain = problem.gain(chosen)
        while True:
            pick = None
            pick_density = 0.0
            pick_gain = current_gain
            for x in priced:
                if x in chosen:
                    continue
                cost = problem.item_cost[x]
                if not within_budget(spent + cost, problem.budget):
                    continue
                gain = problem.gain(chosen | {x})
                density = (gain - current_gain) / cost
                if density > pick_density:
                    pick, pick_density, pick_gain = x, density, gain
            if pick is None:
                return chosen
            chosen = chosen | {pick}
            spent += problem.item_cost[pick]
            current_gain = pick_gain

    def build_ladder_cells(
        self,
        instance: Instance,
        oracle: ProfitOracle,
        partial: PartialSolution,
        epsilon: float,
        depth: int = 3,
    ) -> list[LadderCell]:
        """
        Run GreedyMaxCover for every (bin, level) cell, bin-major and
        level-minor. Cells whose result is empty, has zero marginal cost or
        falls outside the feasible family are dropped; duplicates are kept.
        """
        ladder = BudgetLadder(self.min_positive_cost(instance), epsilon, instance.budget)
        free = tuple(x for x in instance.elements if x not in partial.chosen_elements)
        gain = MemoGain(oracle, frozenset(partial.chosen_elements))

        cells: list[LadderCell] = []
        for s in instance.bins:
            residual = cost_service.residual_bin_cost(instance, partial, s)
            item_cost = {x: float(instance.assign_cost[s, x]) for x in free}
            for level in ladder.levels:
                problem = KnapsackProblem(free, item_cost, level - residual, gain)
                T = self.greedy_max_cover(problem, depth)
                if not T:
                    continue
                try:
                    candidate = cost_service.marginal_cost(instance, oracle, partial, T)
                except InfeasibleSetError:
                    continue
                if candidate.c_min <= 0 or not cost_service.in_family(instance, partial, candidate):
                    continue
                cells.append(LadderCell(bin=s, level=level, candidate=candidate))
        return cells

    def build_expbudget_list(
        self,
        instance: Instance,
        oracle: ProfitOracle,
        partial: PartialSolution,
        epsilon: float,
        depth: int = 3,
    ) -> list[CandidateSet]:
        """The exponential-budget list, deduplicated keeping first occurrences."""
        seen: set[ElementSet] = set()
        candidates: list[CandidateSet] = []
        for cell in self.build_ladder_cells(instance, oracle, partial, epsilon, depth):
            if cell.candidate.elements in seen:
                continue
            seen.add(cell.candidate.elements)
            candidates.append(cell.candidate)
        logger.debug(
            "Exp-budget list built. epsilon=%.4g depth=%d size=%d",
            epsilon,
            depth,
            len(candidates),
        )
        return candidates

    def best_by_budget_level(self, cells: list[LadderCell]) -> Optional[LadderCell]:
        """The cell maximizing g(T) / B_i, first cell on ties."""
        best = None
        for cell in cells:
            if cell.level <= 0:
                continue
            if best is None or cell.candidate.gain / cell.level > best.candidate.gain / best.level:
                best = cell
        return best


expbudget_service = ExpBudgetService()
