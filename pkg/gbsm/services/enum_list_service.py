import itertools
import logging
import math

import numpy as np
from pydantic import BaseModel, Field

from gbsm.core.errors import InfeasibleSetError
from gbsm.core.config import settings
from gbsm.models.instance import Instance
from gbsm.models.profit import ProfitOracle
from gbsm.models.solution import CandidateSet, PartialSolution
from gbsm.services.cost_service import cost_service

logger = logging.getLogger(__name__)


class EnumListConfig(BaseModel):
    epsilon: float = Field(gt=0.0, lt=1.0)

    @property
    def q(self) -> int:
        """Largest subset size enumerated, ceil(1/epsilon)."""
        # round() keeps 1/0.2 style quotients from drifting past an integer
        return max(1, math.ceil(round(1.0 / self.epsilon, 9)))


class EnumListService:
    """
    (1 - epsilon)-list by enumerating every small subset of the free elements.
    The guarantee holds when the instance satisfies the per-bin condition
    checked by `check_condition`.
    """

    def check_condition(self, instance: Instance, epsilon: float) -> bool:
        """
        For every bin s, the q cheapest finite assignment costs of s sum to at
        least c(s) / epsilon. Bins with fewer than q finite costs comply.
        """
        config = EnumListConfig(epsilon=epsilon)
        for s in instance.bins:
            finite = np.sort(instance.assign_cost[s][np.isfinite(instance.assign_cost[s])])
            if finite.size < config.q:
                continue
            required = float(instance.bin_costs[s]) / epsilon
            if float(finite[: config.q].sum()) < required - settings.GBSM_TOLERANCE:
                logger.debug(
                    "Condition fails. bin=%d cheapest_sum=%.6g required=%.6g",
                    s,
                    float(finite[: config.q].sum()),
                    required,
                )
                return False
        return True

    def build_enum_list(
        self,
        instance: Instance,
        oracle: ProfitOracle,
        partial: PartialSolution,
        config: EnumListConfig,
    ) -> list[CandidateSet]:
        """
        Every nonempty T of the free elements with |T| <= q, c_min(T) > 0 and T
        in the feasible family, ordered by size then lexicographically.
        """
        free = [x for x in instance.elements if x not in partial.chosen_elements]
        candidates: list[CandidateSet] = []
        for size in range(1, min(config.q, len(free)) + 1):
            for T in itertools.combinations(free, size):
                try:
                    candidate = cost_service.marginal_cost(instance, oracle, partial, T)
                except InfeasibleSetError:
                    continue
                if candidate.c_min <= 0:
                    continue
                if cost_service.in_family(instance, partial, candidate):
                    candidates.append(candidate)
        logger.debug("Enumeration list built. q=%d size=%d", config.q, len(candidates))
        return candidates


enum_list_service = EnumListService()
