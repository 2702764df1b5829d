import enum
from dataclasses import dataclass, field
from typing import Literal, Optional

ElementSet = frozenset[int]


class SolveStatus(str, enum.Enum):
    SOLVED = "solved"
    EMPTY_INFEASIBLE = "empty_infeasible"


@dataclass(frozen=True)
class CandidateSet:
    """
    A set T of elements outside X' with its marginal cost c_min(T), the bin
    s_min(T) realizing it, the assignment part c_bar(T) and the gain g(T).
    """

    elements: ElementSet
    c_min: float
    s_min: int
    c_bar: float
    gain: float

    @property
    def ratio(self) -> float:
        return self.gain / self.c_min if self.c_min > 0 else float("inf")

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))

    def selection_key(self) -> tuple:
        """Sort key for the greedy argmax: best ratio, then smaller c_min, then lexicographic T."""
        return (-self.ratio, self.c_min, self.key)

    def to_dict(self) -> dict:
        return {
            "elements": list(self.key),
            "c_min": self.c_min,
            "s_min": self.s_min,
            "c_bar": self.c_bar,
            "gain": self.gain,
        }


@dataclass
class PartialSolution:
    """
    (S', X') with an explicit element -> bin assignment and cached cost/profit.

    Single-owner and mutable; the solver keeps the caches in sync with
    solution_cost and the profit oracle after each update.
    """

    chosen_bins: set[int] = field(default_factory=set)
    chosen_elements: set[int] = field(default_factory=set)
    assignment: dict[int, int] = field(default_factory=dict)
    cached_cost: float = 0.0
    cached_profit: float = 0.0

    def copy(self) -> "PartialSolution":
        return PartialSolution(
            chosen_bins=set(self.chosen_bins),
            chosen_elements=set(self.chosen_elements),
            assignment=dict(self.assignment),
            cached_cost=self.cached_cost,
            cached_profit=self.cached_profit,
        )

    def to_dict(self) -> dict:
        return {
            "bins": sorted(self.chosen_bins),
            "elements": sorted(self.chosen_elements),
            "assignment": {str(x): self.assignment[x] for x in sorted(self.assignment)},
            "cost": self.cached_cost,
            "profit": self.cached_profit,
        }


@dataclass
class Solution:
    partial: PartialSolution
    status: SolveStatus

    @property
    def profit(self) -> float:
        return self.partial.cached_profit

    @property
    def cost(self) -> float:
        return self.partial.cached_cost

    @property
    def bins(self) -> ElementSet:
        return frozenset(self.partial.chosen_bins)

    @property
    def elements(self) -> ElementSet:
        return frozenset(self.partial.chosen_elements)


@dataclass(frozen=True)
class IterationRecord:
    candidate: CandidateSet
    # Sum of the marginal costs paid so far; solution_cost never exceeds it.
    paid_cost: float
    cost: float
    profit: float
    list_size: int
    absorbed: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            **self.candidate.to_dict(),
            "paid_cost": self.paid_cost,
            "cost": self.cost,
            "profit": self.profit,
            "list_size": self.list_size,
            "absorbed": list(self.absorbed),
        }


@dataclass
class RunReport:
    builder: str
    epsilon: float
    depth: Optional[int]
    beta: float
    iterations: list[IterationRecord] = field(default_factory=list)
    discarded: Optional[CandidateSet] = None
    greedy_candidate_profit: float = 0.0
    second_candidate_profit: Optional[float] = None
    returned: Literal["greedy", "second"] = "greedy"
    stop_reason: str = ""
    opt_profit: Optional[float] = None
    ratio: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "builder": self.builder,
            "epsilon": self.epsilon,
            "depth": self.depth,
            "beta": self.beta,
            "iterations": [record.to_dict() for record in self.iterations],
            "discarded": self.discarded.to_dict() if self.discarded else None,
            "greedy_candidate_profit": self.greedy_candidate_profit,
            "second_candidate_profit": self.second_candidate_profit,
            "returned": self.returned,
            "stop_reason": self.stop_reason,
            "opt_profit": self.opt_profit,
            "ratio": self.ratio,
        }
