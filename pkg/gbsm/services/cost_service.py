import itertools
import logging
from typing import Iterable

import numpy as np

from gbsm.core.errors import InfeasibleSetError
from gbsm.core.numeric import within_budget
from gbsm.models.instance import FORBIDDEN, Instance
from gbsm.models.profit import ProfitOracle, marginal_gain
from gbsm.models.solution import CandidateSet, PartialSolution

logger = logging.getLogger(__name__)


class CostService:
    """
    Cost model of GBSM: total cost c(S', X') of a solution and the marginal
    cost c_min(T) of attaching a set T through a single bin.

    Pure functions over immutable instances; safe under parallel use.
    """

    # ------------------------------------------------------------------
    # Total cost
    # ------------------------------------------------------------------

    def solution_cost(
        self, instance: Instance, bin_set: Iterable[int], element_set: Iterable[int]
    ) -> float:
        """
        c(S', X') = sum of bin costs in S' + sum over x in X' of min over S' of c(s, x).
        FORBIDDEN when X' is nonempty and S' is empty, or some element has no
        finite cost to any chosen bin.
        """
        bins = sorted(set(bin_set))
        elements = sorted(set(element_set))
        if not elements:
            return float(instance.bin_costs[bins].sum()) if bins else 0.0
        if not bins:
            return FORBIDDEN
        per_element = instance.assign_cost[np.ix_(bins, elements)].min(axis=0)
        return float(instance.bin_costs[bins].sum() + per_element.sum())

    def min_cover_cost(self, instance: Instance, element_set: Iterable[int]) -> float:
        """c(X'): cheapest total cost of X' over every choice of bins."""
        elements = frozenset(element_set)
        best = 0.0 if not elements else FORBIDDEN
        for size in range(1, instance.m + 1):
            for bins in itertools.combinations(instance.bins, size):
                best = min(best, self.solution_cost(instance, bins, elements))
        return best

    def assign(
        self, instance: Instance, bin_set: Iterable[int], element_set: Iterable[int]
    ) -> dict[int, int]:
        """Map each element to its cheapest chosen bin (smallest index on ties)."""
        bins = sorted(set(bin_set))
        assignment: dict[int, int] = {}
        for x in sorted(set(element_set)):
            column = instance.assign_cost[bins, x]
            best = int(np.argmin(column))
            if np.isinf(column[best]):
                raise InfeasibleSetError([x])
            assignment[x] = bins[best]
        return assignment

    # ------------------------------------------------------------------
    # Marginal cost
    # ------------------------------------------------------------------

    def residual_bin_cost(self, instance: Instance, partial: PartialSolution, s: int) -> float:
        """c_{S'}(s): 0 for an already opened bin, c(s) otherwise."""
        if s in partial.chosen_bins:
            return 0.0
        return float(instance.bin_costs[s])

    def residual_bin_costs(self, instance: Instance, partial: PartialSolution) -> np.ndarray:
        residual = np.array(instance.bin_costs, dtype=float)
        if partial.chosen_bins:
            residual[sorted(partial.chosen_bins)] = 0.0
        return residual

    def marginal_cost(
        self,
        instance: Instance,
        oracle: ProfitOracle,
        partial: PartialSolution,
        elements: Iterable[int],
    ) -> CandidateSet:
        """
        c_min(T) = min over bins s of c_{S'}(s) + sum_{x in T} c(s, x), with the
        minimizing bin (smallest index on ties) and the gain g(T).
        """
        T = frozenset(elements)
        if not T:
            raise ValueError("marginal_cost needs a nonempty set")
        if T & partial.chosen_elements:
            raise ValueError("candidate set overlaps the chosen elements")
        residual = self.residual_bin_costs(instance, partial)
        totals = residual + instance.assign_cost[:, sorted(T)].sum(axis=1)
        s_min = int(np.argmin(totals))
        c_min = float(totals[s_min])
        if np.isinf(c_min):
            raise InfeasibleSetError(T)
        return CandidateSet(
            elements=T,
            c_min=c_min,
            s_min=s_min,
            c_bar=c_min - float(residual[s_min]),
            gain=marginal_gain(oracle, partial.chosen_elements, T),
        )

    def feasible_extension(
        self,
        instance: Instance,
        partial: PartialSolution,
        candidate: CandidateSet,
        budget_cap: float,
    ) -> bool:
        """c(S' + s_min(T), X' + T) <= budget_cap (the solver's accept test)."""
        cost = self.solution_cost(
            instance,
            partial.chosen_bins | {candidate.s_min},
            partial.chosen_elements | candidate.elements,
        )
        return within_budget(cost, budget_cap)

    def in_family(
        self, instance: Instance, partial: PartialSolution, candidate: CandidateSet
    ) -> bool:
        """
        Membership of T in the family F: c(S' + s_min(T), T) <= k. The
        elements of X' do not count here, so a set in F may still be rejected by
        the accept test and become the second candidate.
        """
        cost = self.solution_cost(
            instance, partial.chosen_bins | {candidate.s_min}, candidate.elements
        )
        return within_budget(cost, instance.budget)


cost_service = CostService()
