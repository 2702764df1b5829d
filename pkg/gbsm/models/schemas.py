import json
import math
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, NonNegativeFloat, NonNegativeInt, ValidationError, model_validator

from gbsm.core.errors import InvalidInstanceError
from gbsm.models.instance import Instance, is_forbidden
from gbsm.models.profit import ProfitOracle, ProfitSpec


class BinSpec(BaseModel):
    id: NonNegativeInt
    cost: NonNegativeFloat


class InstanceFile(BaseModel):
    """
    On-disk instance format. Row index of assign_cost is the bin, column the
    element; null marks a forbidden pair.
    """

    bins: list[BinSpec]
    elements: list[NonNegativeInt]
    assign_cost: list[list[Optional[NonNegativeFloat]]]
    budget: NonNegativeFloat
    profit: ProfitSpec

    @model_validator(mode="after")
    def check_shape(self) -> "InstanceFile":
        if not self.bins:
            raise ValueError("at least one bin is required")
        if [b.id for b in self.bins] != list(range(len(self.bins))):
            raise ValueError("bin ids must be 0..m-1 in order")
        if self.elements != list(range(len(self.elements))):
            raise ValueError("elements must be 0..n-1 in order")
        if len(self.assign_cost) != len(self.bins):
            raise ValueError("assign_cost needs one row per bin")
        for row in self.assign_cost:
            if len(row) != len(self.elements):
                raise ValueError("assign_cost rows need one column per element")
        if not math.isfinite(self.budget) or any(not math.isfinite(b.cost) for b in self.bins):
            raise ValueError("budget and bin costs must be finite")
        return self

    def to_problem(self) -> tuple[Instance, ProfitOracle]:
        instance = Instance.from_lists(
            [b.cost for b in self.bins], self.assign_cost, self.budget
        )
        try:
            oracle = self.profit.build(instance.n)
        except ValueError as exc:
            raise InvalidInstanceError(str(exc)) from exc
        return instance, oracle

    @classmethod
    def from_problem(cls, instance: Instance, oracle: ProfitOracle) -> "InstanceFile":
        return cls(
            bins=[BinSpec(id=s, cost=float(instance.bin_costs[s])) for s in instance.bins],
            elements=list(instance.elements),
            assign_cost=[
                [None if is_forbidden(c) else float(c) for c in instance.assign_cost[s]]
                for s in instance.bins
            ],
            budget=instance.budget,
            profit=oracle.to_spec(),
        )


def read_instance(path: Union[str, Path]) -> tuple[Instance, ProfitOracle]:
    """Load and validate an instance JSON file."""
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise InvalidInstanceError(f"cannot read {path}: {exc}") from exc
    try:
        return InstanceFile.model_validate(json.loads(raw)).to_problem()
    except (ValidationError, json.JSONDecodeError) as exc:
        raise InvalidInstanceError(f"malformed instance {path}: {exc}") from exc


def write_instance(path: Union[str, Path], instance: Instance, oracle: ProfitOracle) -> None:
    payload = InstanceFile.from_problem(instance, oracle).model_dump(mode="json")
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
