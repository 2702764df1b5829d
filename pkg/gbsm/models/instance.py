import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from gbsm.core.errors import InvalidInstanceError

# c(s, x) = inf forbids associating x with s. inf + v = inf and inf > every finite
# value, which is exactly the arithmetic a Forbidden cost needs.
FORBIDDEN: float = math.inf


def is_forbidden(cost: float) -> bool:
    return math.isinf(cost)


def cost_value(raw: Optional[float]) -> float:
    """Map a JSON cell (number or null) to a CostValue."""
    if raw is None:
        return FORBIDDEN
    value = float(raw)
    if math.isnan(value) or value < 0 or math.isinf(value):
        raise InvalidInstanceError(f"assignment cost must be finite and >= 0, got {raw!r}")
    return value


@dataclass(frozen=True)
class Instance:
    """
    A GBSM instance: m bins with opening costs, n elements, the m x n
    assignment-cost matrix (FORBIDDEN marks disallowed pairs) and a budget k.

    Bins and elements are the dense indices 0..m-1 and 0..n-1; that order is
    used for every tie-break in the library. Arrays are read-only once built.
    """

    bin_costs: np.ndarray
    assign_cost: np.ndarray
    budget: float

    def __post_init__(self):
        bin_costs = np.array(self.bin_costs, dtype=float).reshape(-1)
        assign_cost = np.array(self.assign_cost, dtype=float)
        if bin_costs.size < 1:
            raise InvalidInstanceError("an instance needs at least one bin")
        if assign_cost.size == 0:
            assign_cost = assign_cost.reshape(bin_costs.size, 0)
        if assign_cost.ndim != 2 or assign_cost.shape[0] != bin_costs.size:
            raise InvalidInstanceError(
                f"assign_cost must be {bin_costs.size} x n, got shape {assign_cost.shape}"
            )
        if not np.all(np.isfinite(bin_costs)) or np.any(bin_costs < 0):
            raise InvalidInstanceError("bin costs must be finite and >= 0")
        if np.any(np.isnan(assign_cost)) or np.any(assign_cost < 0):
            raise InvalidInstanceError("assignment costs must be >= 0 or FORBIDDEN")
        if np.any(np.isneginf(assign_cost)):
            raise InvalidInstanceError("assignment costs must be >= 0 or FORBIDDEN")
        budget = float(self.budget)
        if not math.isfinite(budget) or budget < 0:
            raise InvalidInstanceError(f"budget must be finite and >= 0, got {self.budget!r}")

        bin_costs.setflags(write=False)
        assign_cost.setflags(write=False)
        object.__setattr__(self, "bin_costs", bin_costs)
        object.__setattr__(self, "assign_cost", assign_cost)
        object.__setattr__(self, "budget", budget)

    @property
    def m(self) -> int:
        return int(self.bin_costs.size)

    @property
    def n(self) -> int:
        return int(self.assign_cost.shape[1])

    @property
    def bins(self) -> range:
        return range(self.m)

    @property
    def elements(self) -> range:
        return range(self.n)

    def with_budget(self, budget: float) -> "Instance":
        return Instance(self.bin_costs, self.assign_cost, budget)

    @classmethod
    def from_lists(
        cls,
        bin_costs: Sequence[float],
        assign_cost: Sequence[Sequence[Optional[float]]],
        budget: float,
    ) -> "Instance":
        """Build from plain lists, with None standing for FORBIDDEN."""
        matrix = [[cost_value(cell) for cell in row] for row in assign_cost]
        if matrix and len({len(row) for row in matrix}) > 1:
            raise InvalidInstanceError("assign_cost rows must all have the same length")
        width = len(matrix[0]) if matrix else 0
        return cls(
            np.asarray(bin_costs, dtype=float),
            np.asarray(matrix, dtype=float).reshape(len(matrix), width),
            budget,
        )
