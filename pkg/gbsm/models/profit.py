import math
from abc import ABC, abstractmethod
from typing import Annotated, Iterable, Literal, Sequence, Union

from pydantic import BaseModel, Field, NonNegativeFloat, NonNegativeInt

ElementSet = frozenset[int]


class ProfitOracle(ABC):
    """
    Value-oracle access to a profit f: 2^X -> R>=0.

    Built-in oracles are monotone and submodular with f(empty) = 0. The
    contract is not checked at call time; the property suites check it.
    Oracles are immutable and safe to share between threads.
    """

    @abstractmethod
    def value(self, elements: Iterable[int]) -> float:
        ...

    @abstractmethod
    def to_spec(self) -> "ProfitSpec":
        ...

    def gain(self, base: Iterable[int], extra: Iterable[int]) -> float:
        base = frozenset(base)
        return self.value(base | frozenset(extra)) - self.value(base)


class ModularProfit(ProfitOracle):
    """f(T) = sum of non-negative element weights."""

    def __init__(self, weights: Sequence[float]):
        if any(w < 0 or not math.isfinite(w) for w in weights):
            raise ValueError("modular weights must be finite and >= 0")
        self.weights = tuple(float(w) for w in weights)

    def value(self, elements: Iterable[int]) -> float:
        return float(sum(self.weights[x] for x in sorted(set(elements))))

    def to_spec(self) -> "ModularSpec":
        return ModularSpec(kind="modular", weights=list(self.weights))


class WeightedCoverageProfit(ProfitOracle):
    """f(T) = total weight of the universe items covered by the elements of T."""

    def __init__(self, covers: Sequence[Iterable[int]], item_weights: Sequence[float]):
        if any(w < 0 or not math.isfinite(w) for w in item_weights):
            raise ValueError("item weights must be finite and >= 0")
        self.covers = tuple(frozenset(items) for items in covers)
        self.item_weights = tuple(float(w) for w in item_weights)
        for items in self.covers:
            if any(i < 0 or i >= len(self.item_weights) for i in items):
                raise ValueError("coverage refers to an unknown universe item")

    def value(self, elements: Iterable[int]) -> float:
        covered: set[int] = set()
        for x in set(elements):
            covered |= self.covers[x]
        return float(sum(self.item_weights[i] for i in sorted(covered)))

    def to_spec(self) -> "CoverageSpec":
        return CoverageSpec(
            kind="coverage",
            covers=[sorted(items) for items in self.covers],
            item_weights=list(self.item_weights),
        )


class ConcaveModularProfit(ProfitOracle):
    """f(T) = sqrt(sum of weights); concave of modular, hence submodular."""

    def __init__(self, weights: Sequence[float]):
        if any(w < 0 or not math.isfinite(w) for w in weights):
            raise ValueError("weights must be finite and >= 0")
        self.weights = tuple(float(w) for w in weights)

    def value(self, elements: Iterable[int]) -> float:
        return math.sqrt(sum(self.weights[x] for x in sorted(set(elements))))

    def to_spec(self) -> "ConcaveModularSpec":
        return ConcaveModularSpec(kind="concave_modular", weights=list(self.weights))


def profit(oracle: ProfitOracle, elements: Iterable[int]) -> float:
    return oracle.value(elements)


def marginal_gain(oracle: ProfitOracle, base: Iterable[int], extra: Iterable[int]) -> float:
    """g(T) = f(base | T) - f(base)."""
    extra = frozenset(extra)
    if not extra:
        return 0.0
    return oracle.gain(base, extra)


# ---------------------------------------------------------------------------
# JSON specs
# ---------------------------------------------------------------------------

class ModularSpec(BaseModel):
    kind: Literal["modular"]
    weights: list[NonNegativeFloat]

    def build(self, n: int) -> ModularProfit:
        _check_length("weights", self.weights, n)
        return ModularProfit(self.weights)


class CoverageSpec(BaseModel):
    kind: Literal["coverage"]
    covers: list[list[NonNegativeInt]]
    item_weights: list[NonNegativeFloat]

    def build(self, n: int) -> WeightedCoverageProfit:
        _check_length("covers", self.covers, n)
        return WeightedCoverageProfit(self.covers, self.item_weights)


class ConcaveModularSpec(BaseModel):
    kind: Literal["concave_modular"]
    weights: list[NonNegativeFloat]

    def build(self, n: int) -> ConcaveModularProfit:
        _check_length("weights", self.weights, n)
        return ConcaveModularProfit(self.weights)


ProfitSpec = Annotated[
    Union[ModularSpec, CoverageSpec, ConcaveModularSpec],
    Field(discriminator="kind"),
]


def _check_length(field: str, values: list, n: int) -> None:
    if len(values) != n:
        raise ValueError(f"profit.{field} has {len(values)} entries, expected one per element ({n})")
