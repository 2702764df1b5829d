import logging
from typing import Literal, Optional

from pydantic import BaseModel, Field

from gbsm.core.config import settings
from gbsm.core.errors import AllCostsZeroError
from gbsm.core.numeric import within_budget
from gbsm.models.instance import Instance
from gbsm.models.profit import ProfitOracle
from gbsm.models.solution import (
    CandidateSet,
    IterationRecord,
    PartialSolution,
    RunReport,
    Solution,
    SolveStatus,
)
from gbsm.services.bounds import greedy_factor
from gbsm.services.cost_service import cost_service
from gbsm.services.enum_list_service import EnumListConfig, enum_list_service
from gbsm.services.expbudget_service import expbudget_service
from gbsm.services.oracle_service import oracle_service

logger = logging.getLogger(__name__)


class SolverConfig(BaseModel):
    """beta = 1 is the plain greedy framework; beta > 1 allows spending up to beta * k."""

    beta: float = Field(default=1.0, ge=1.0)
    list_builder: Literal["enum", "expbudget"] = "expbudget"
    epsilon: float = Field(default_factory=lambda: settings.GBSM_DEFAULT_EPSILON, gt=0.0, lt=1.0)
    depth: int = Field(default_factory=lambda: settings.GBSM_DEFAULT_DEPTH, ge=1)


class SolverService:
    """
    Greedy framework over an alpha-list builder.

    Each iteration absorbs the elements reachable at zero cost through the
    open bins, builds an alpha-list relative to (S', X'), and adds the set with
    the best gain / marginal-cost ratio while the total stays within beta * k.
    The set rejected by the budget gives a second candidate (S_G + s_min, T);
    the better of the two is returned.
    """

    def solve(
        self, instance: Instance, oracle: ProfitOracle, config: Optional[SolverConfig] = None
    ) -> tuple[Solution, RunReport]:
        config = config or SolverConfig()
        cap = config.beta * instance.budget
        report = RunReport(
            builder=config.list_builder,
            epsilon=config.epsilon,
            depth=config.depth if config.list_builder == "expbudget" else None,
            beta=config.beta,
        )

        partial = PartialSolution()
        partial.chosen_bins = {s for s in instance.bins if instance.bin_costs[s] == 0}
        paid = 0.0
        discarded: Optional[CandidateSet] = None
        discarded_partial: Optional[PartialSolution] = None

        while True:
            absorbed = self._absorb_zero_cost(instance, partial)
            self._refresh(instance, oracle, partial)
            if len(partial.chosen_elements) == instance.n:
                report.stop_reason = "all_elements"
                break

            candidates = self._build_list(instance, oracle, partial, config)
            if not candidates:
                report.stop_reason = "empty_list"
                break

            best = min(candidates, key=CandidateSet.selection_key)
            if not cost_service.feasible_extension(instance, partial, best, cap):
                discarded = best
                discarded_partial = partial.copy()
                report.stop_reason = "budget"
                logger.debug(
                    "Candidate rejected by budget. elements=%s c_min=%.6g",
                    sorted(best.elements),
                    best.c_min,
                )
                break

            partial.chosen_bins.add(best.s_min)
            partial.chosen_elements |= best.elements
            self._refresh(instance, oracle, partial)
            paid += best.c_min
            report.iterations.append(
                IterationRecord(
                    candidate=best,
                    paid_cost=paid,
                    cost=partial.cached_cost,
                    profit=partial.cached_profit,
                    list_size=len(candidates),
                    absorbed=absorbed,
                )
            )
            logger.debug(
                "Iteration %d accepted. elements=%s bin=%d cost=%.6g profit=%.6g",
                len(report.iterations),
                sorted(best.elements),
                best.s_min,
                partial.cached_cost,
                partial.cached_profit,
            )

        report.greedy_candidate_profit = partial.cached_profit
        result = partial
        if discarded is not None:
            second = self._second_candidate(instance, oracle, discarded_partial, discarded)
            report.discarded = discarded
            report.second_candidate_profit = second.cached_profit
            if oracle.value(discarded.elements) >= oracle.value(partial.chosen_elements):
                result = second
                report.returned = "second"

        status = SolveStatus.SOLVED
        if not result.chosen_elements and not self._has_nonempty_feasible(instance, cap):
            status = SolveStatus.EMPTY_INFEASIBLE

        logger.info(
            "Solve complete. builder=%s iterations=%d returned=%s status=%s profit=%.6g cost=%.6g",
            config.list_builder,
            len(report.iterations),
            report.returned,
            status.value,
            result.cached_profit,
            result.cached_cost,
        )
        return Solution(partial=result, status=status), report

    def verify_ratio(
        self,
        solution: Solution,
        instance: Instance,
        oracle: ProfitOracle,
        alpha: float,
        beta: float = 1.0,
    ) -> float:
        """f(solution) / f(OPT_k); the optimum always uses the plain budget k."""
        _, _, opt_profit = oracle_service.brute_force_opt(instance, oracle, instance.budget)
        ratio = 1.0 if opt_profit <= 0 else solution.profit / opt_profit
        logger.info(
            "Ratio verified. ratio=%.6g bound=%.6g opt=%.6g",
            ratio,
            greedy_factor(alpha, beta),
            opt_profit,
        )
        return ratio

    # ------------------------------------------------------------------

    def _build_list(
        self,
        instance: Instance,
        oracle: ProfitOracle,
        partial: PartialSolution,
        config: SolverConfig,
    ) -> list[CandidateSet]:
        if config.list_builder == "enum":
            return enum_list_service.build_enum_list(
                instance, oracle, partial, EnumListConfig(epsilon=config.epsilon)
            )
        try:
            return expbudget_service.build_expbudget_list(
                instance, oracle, partial, config.epsilon, config.depth
            )
        except AllCostsZeroError:
            # Everything free was absorbed already; what is left is forbidden in every bin.
            logger.debug("No positive cost left; remaining elements are unreachable")
            return []

    def _absorb_zero_cost(self, instance: Instance, partial: PartialSolution) -> tuple[int, ...]:
        if not partial.chosen_bins:
            return ()
        bins = sorted(partial.chosen_bins)
        absorbed = tuple(
            x
            for x in instance.elements
            if x not in partial.chosen_elements and (instance.assign_cost[bins, x] == 0).any()
        )
        partial.chosen_elements.update(absorbed)
        return absorbed

    def _refresh(self, instance: Instance, oracle: ProfitOracle, partial: PartialSolution) -> None:
        partial.assignment = cost_service.assign(
            instance, partial.chosen_bins, partial.chosen_elements
        )
        partial.cached_cost = cost_service.solution_cost(
            instance, partial.chosen_bins, partial.chosen_elements
        )
        partial.cached_profit = oracle.value(partial.chosen_elements)

    def _second_candidate(
        self,
        instance: Instance,
        oracle: ProfitOracle,
        greedy: PartialSolution,
        discarded: CandidateSet,
    ) -> PartialSolution:
        second = PartialSolution(
            chosen_bins=greedy.chosen_bins | {discarded.s_min},
            chosen_elements=set(discarded.elements),
        )
        self._refresh(instance, oracle, second)
        return second

    def _has_nonempty_feasible(self, instance: Instance, cap: float) -> bool:
        for s in instance.bins:
            for x in instance.elements:
                if within_budget(float(instance.bin_costs[s] + instance.assign_cost[s, x]), cap):
                    return True
        return False


solver_service = SolverService()
