import logging
from typing import Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field, model_validator

from gbsm.core.config import settings
from gbsm.core.errors import InvalidConfigError, UnsatisfiableError
from gbsm.core.numeric import within_budget
from gbsm.models.instance import FORBIDDEN, Instance
from gbsm.models.profit import (
    ConcaveModularProfit,
    ModularProfit,
    ProfitOracle,
    WeightedCoverageProfit,
)

logger = logging.getLogger(__name__)

ProfitKind = Literal["modular", "coverage", "concave_modular"]


class CostRanges(BaseModel):
    """Uniform sampling ranges [low, high] for bin and assignment costs."""

    bin_cost: tuple[float, float] = (1.0, 3.0)
    assign_cost: tuple[float, float] = (0.5, 2.0)

    @model_validator(mode="after")
    def check_ranges(self) -> "CostRanges":
        for low, high in (self.bin_cost, self.assign_cost):
            if low < 0 or high < low:
                raise ValueError(f"invalid cost range [{low}, {high}]")
        return self


class GeneratorService:
    """Instance factories. Every random generator is deterministic given its seed."""

    def random_general(
        self,
        n: int,
        m: int,
        k: float,
        cost_ranges: Optional[CostRanges] = None,
        forbidden_prob: float = 0.0,
        seed: int = 0,
    ) -> Instance:
        """
        Uniform random costs with FORBIDDEN cells drawn with probability
        forbidden_prob. Resamples until some single (bin, element) pair fits
        the budget; gives up after GBSM_RESAMPLE_LIMIT attempts.
        """
        if n < 1 or m < 1:
            raise InvalidConfigError("random_general needs n, m >= 1")
        if not 0.0 <= forbidden_prob < 1.0:
            raise InvalidConfigError(f"forbidden_prob must lie in [0, 1), got {forbidden_prob}")
        ranges = cost_ranges or CostRanges()
        rng = np.random.default_rng(seed)
        for attempt in range(settings.GBSM_RESAMPLE_LIMIT):
            bin_costs = rng.uniform(*ranges.bin_cost, size=m)
            assign_cost = rng.uniform(*ranges.assign_cost, size=(m, n))
            assign_cost[rng.random((m, n)) < forbidden_prob] = FORBIDDEN
            instance = Instance(bin_costs, assign_cost, k)
            if self._has_feasible_pair(instance):
                return instance
            logger.debug("Resampling infeasible instance. attempt=%d seed=%d", attempt, seed)
        raise UnsatisfiableError(
            f"no feasible nonempty solution after {settings.GBSM_RESAMPLE_LIMIT} attempts"
        )

    def unit_cost_instance(self, n: int, m: int, k: float, seed: int = 0) -> Instance:
        """c(s) = 1 and c(s, x) uniform in [1, 3]; meets the enumeration condition for every epsilon."""
        rng = np.random.default_rng(seed)
        return Instance(np.ones(m), rng.uniform(1.0, 3.0, size=(m, n)), k)

    def sfkc_instance(
        self,
        n: int,
        k: float,
        weights: Sequence[float],
        item_costs: Sequence[float],
    ) -> tuple[Instance, ModularProfit]:
        """Submodular knapsack as a single free bin; the weights give a modular profit."""
        if len(item_costs) != n or len(weights) != n:
            raise InvalidConfigError("weights and item_costs need one entry per element")
        instance = Instance(np.zeros(1), np.asarray(item_costs, dtype=float).reshape(1, n), k)
        return instance, ModularProfit(weights)

    def bmc_instance(
        self,
        sets: Sequence[tuple[float, Sequence[int]]],
        item_weights: Sequence[float],
        k: float,
    ) -> tuple[Instance, WeightedCoverageProfit]:
        """
        Budgeted maximum coverage: bins are the sets, elements are the items.
        An item joins free through a set that covers it and is FORBIDDEN elsewhere.
        """
        n = len(item_weights)
        assign_cost = np.full((len(sets), n), FORBIDDEN)
        for s, (_, items) in enumerate(sets):
            for x in items:
                assign_cost[s, x] = 0.0
        instance = Instance(np.array([cost for cost, _ in sets], dtype=float), assign_cost, k)
        return instance, WeightedCoverageProfit([[x] for x in range(n)], item_weights)

    def table1_instance(
        self, eps_param: float = 0.25, M: float = 100.0, budget: float = 2.0
    ) -> Instance:
        """Two unit-cost bins, three elements: the witness that c is not submodular."""
        if not 0.0 < eps_param < 1.0:
            raise InvalidConfigError("eps_param must lie in (0, 1)")
        return Instance(
            np.ones(2),
            np.array([[1.0, 1.0, M], [1.0 - eps_param, M, eps_param]]),
            budget,
        )

    def adaptive_seeding_instance(
        self,
        n_core: int,
        n_neighbors: int,
        edge_prob: float,
        k: float,
        seed: int = 0,
    ) -> tuple[Instance, WeightedCoverageProfit]:
        """
        Non-stochastic adaptive seeding with unit costs on a random bipartite
        graph. Core nodes are bins (cost 1), their neighbors are elements
        (cost 1 through an adjacent core node). Each neighbor influences a
        random part of a hidden audience; profit is the audience reached.
        """
        rng = np.random.default_rng(seed)
        adjacency = rng.random((n_core, n_neighbors)) < edge_prob
        # every neighbor needs at least one core node to be reachable at all
        for x in np.flatnonzero(~adjacency.any(axis=0)):
            adjacency[rng.integers(n_core), x] = True
        audience = 2 * n_neighbors
        covers = [
            np.flatnonzero(rng.random(audience) < 0.25).tolist() or [int(rng.integers(audience))]
            for _ in range(n_neighbors)
        ]
        instance = Instance(np.ones(n_core), np.where(adjacency, 1.0, FORBIDDEN), k)
        return instance, WeightedCoverageProfit(covers, np.ones(audience).tolist())

    def random_profit(self, kind: ProfitKind, n: int, seed: int = 0) -> ProfitOracle:
        """A random built-in oracle over n elements."""
        rng = np.random.default_rng(seed)
        if kind == "modular":
            return ModularProfit(rng.uniform(0.0, 10.0, size=n).tolist())
        if kind == "concave_modular":
            return ConcaveModularProfit(rng.uniform(0.0, 10.0, size=n).tolist())
        universe = max(2, 2 * n)
        covers = [
            np.flatnonzero(rng.random(universe) < 0.3).tolist() for _ in range(n)
        ]
        return WeightedCoverageProfit(covers, rng.uniform(0.5, 2.0, size=universe).tolist())

    def _has_feasible_pair(self, instance: Instance) -> bool:
        totals = instance.bin_costs[:, None] + instance.assign_cost
        return any(within_budget(float(c), instance.budget) for c in totals.reshape(-1))


class GeneratorSpec(BaseModel):
    """One generator entry of a bench configuration."""

    kind: Literal["random_general", "unit_cost", "adaptive_seeding", "sfkc"]
    n: int = Field(ge=1)
    m: int = Field(default=1, ge=1)
    k: float = Field(ge=0.0)
    count: int = Field(default=1, ge=0)
    profit: ProfitKind = "coverage"
    forbidden_prob: float = Field(default=0.0, ge=0.0, lt=1.0)
    cost_ranges: CostRanges = Field(default_factory=CostRanges)
    edge_prob: float = Field(default=0.5, gt=0.0, le=1.0)

    def build(self, seed: int) -> tuple[Instance, ProfitOracle]:
        service = generator_service
        if self.kind == "random_general":
            instance = service.random_general(
                self.n, self.m, self.k, self.cost_ranges, self.forbidden_prob, seed
            )
        elif self.kind == "unit_cost":
            instance = service.unit_cost_instance(self.n, self.m, self.k, seed)
        elif self.kind == "adaptive_seeding":
            return service.adaptive_seeding_instance(self.m, self.n, self.edge_prob, self.k, seed)
        else:
            rng = np.random.default_rng(seed)
            costs = rng.uniform(*self.cost_ranges.assign_cost, size=self.n).tolist()
            instance, _ = service.sfkc_instance(self.n, self.k, [1.0] * self.n, costs)
        return instance, service.random_profit(self.profit, self.n, seed + 1)


generator_service = GeneratorService()
