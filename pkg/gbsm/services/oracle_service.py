import itertools
import logging
from typing import Optional, Sequence

import numpy as np

from gbsm.core.config import settings
from gbsm.core.errors import InfeasibleSetError, NoCandidateError, TooLargeError
from gbsm.core.numeric import within_budget
from gbsm.models.instance import Instance
from gbsm.models.profit import ProfitOracle
from gbsm.models.solution import CandidateSet, ElementSet, PartialSolution
from gbsm.services.cost_service import cost_service

logger = logging.getLogger(__name__)


def _subset_sums(values: Sequence[float]) -> np.ndarray:
    """Sums over all 2^len(values) subsets, indexed by bitmask (bit i = values[i])."""
    sums = np.zeros(1)
    for value in values:
        sums = np.concatenate([sums, sums + value])
    return sums


def _mask_members(mask: int, items: Sequence[int]) -> tuple[int, ...]:
    return tuple(items[i] for i in range(len(items)) if mask >> i & 1)


class OracleService:
    """
    Exact references by exhaustive enumeration: the global optimum, the best
    gain / marginal-cost ratio, an alpha-list certificate and the knapsack
    optimum. Each is guarded by a size limit (see Settings).
    """

    def _guard(self, what: str, size: int, kind: str, limit: Optional[int]) -> None:
        limit = limit if limit is not None else settings.guard_limit(kind)
        if limit is not None and size > limit:
            raise TooLargeError(what, size, limit)

    def brute_force_opt(
        self,
        instance: Instance,
        oracle: ProfitOracle,
        budget_cap: float,
        limit: Optional[int] = None,
    ) -> tuple[ElementSet, ElementSet, float]:
        """
        Maximize f over every (bin set, element set) pair with cost within
        budget_cap. Ties go to the lexicographically smallest (bins, elements).
        """
        self._guard("brute_force_opt", instance.n + instance.m, "opt", limit)
        elements = list(instance.elements)
        masks = range(1 << instance.n)
        members = [_mask_members(mask, elements) for mask in masks]
        profits = np.array([oracle.value(t) for t in members])

        best_key = None
        best = (frozenset(), frozenset(), float(profits[0]))
        for size in range(0, instance.m + 1):
            for bins in itertools.combinations(instance.bins, size):
                if bins:
                    per_element = instance.assign_cost[list(bins)].min(axis=0)
                    costs = float(instance.bin_costs[list(bins)].sum()) + _subset_sums(per_element)
                else:
                    costs = np.full(1 << instance.n, np.inf)
                    costs[0] = 0.0
                feasible = np.flatnonzero(
                    np.isfinite(costs) & (costs <= budget_cap + settings.GBSM_TOLERANCE)
                )
                if feasible.size == 0:
                    continue
                top = profits[feasible].max()
                chosen = min(members[i] for i in feasible if profits[i] == top)
                key = (-float(top), bins, chosen)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (frozenset(bins), frozenset(chosen), float(top))
        logger.debug(
            "Brute-force optimum. bins=%s elements=%s profit=%.6g",
            sorted(best[0]),
            sorted(best[1]),
            best[2],
        )
        return best

    def exact_best_ratio(
        self,
        instance: Instance,
        oracle: ProfitOracle,
        partial: PartialSolution,
        limit: Optional[int] = None,
    ) -> tuple[ElementSet, float]:
        """
        max g(T) / c_min(T) over the feasible family F (nonempty T outside X',
        c_min(T) > 0, c(S' + s_min(T), T) <= k), with one maximizer.
        """
        free = [x for x in instance.elements if x not in partial.chosen_elements]
        self._guard("exact_best_ratio", len(free), "ratio", limit)
        best: Optional[CandidateSet] = None
        for size in range(1, len(free) + 1):
            for T in itertools.combinations(free, size):
                try:
                    candidate = cost_service.marginal_cost(instance, oracle, partial, T)
                except InfeasibleSetError:
                    continue
                if candidate.c_min <= 0 or not cost_service.in_family(instance, partial, candidate):
                    continue
                if best is None or candidate.selection_key() < best.selection_key():
                    best = candidate
        if best is None:
            raise NoCandidateError("the feasible family is empty")
        return best.elements, best.ratio

    def verify_alpha_list(
        self,
        candidates: list[CandidateSet],
        instance: Instance,
        oracle: ProfitOracle,
        partial: PartialSolution,
        alpha: float,
        limit: Optional[int] = None,
    ) -> bool:
        """The list holds a set whose ratio is within alpha of the exact best ratio."""
        try:
            _, exact = self.exact_best_ratio(instance, oracle, partial, limit)
        except NoCandidateError:
            return True
        listed = max((c.ratio for c in candidates if c.c_min > 0), default=0.0)
        ok = listed >= alpha * exact - settings.GBSM_TOLERANCE
        if not ok:
            logger.warning(
                "Alpha-list check failed. alpha=%.6g list_best=%.6g exact=%.6g",
                alpha,
                listed,
                exact,
            )
        return ok

    def brute_force_knapsack(self, problem, limit: Optional[int] = None) -> tuple[ElementSet, float]:
        """Exact knapsack optimum of a KnapsackProblem, lexicographically smallest on ties."""
        self._guard("brute_force_knapsack", len(problem.ground), "ratio", limit)
        best: ElementSet = frozenset()
        best_gain = problem.gain(best)
        best_key: tuple[int, ...] = ()
        ground = sorted(problem.ground)
        for size in range(1, len(ground) + 1):
            for T in itertools.combinations(ground, size):
                if not within_budget(problem.cost_of(T), problem.budget):
                    continue
                gain = problem.gain(frozenset(T))
                if gain > best_gain or (gain == best_gain and T < best_key):
                    best, best_gain, best_key = frozenset(T), gain, T
        return best, best_gain


oracle_service = OracleService()
