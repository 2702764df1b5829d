from typing import Optional


class GBSMError(Exception):
    """Base class for every error raised by the solver library."""


class InvalidInstanceError(GBSMError, ValueError):
    """The instance (or its JSON file) is malformed."""


class InvalidConfigError(GBSMError, ValueError):
    """A solver or bench configuration is out of range."""


class InfeasibleSetError(GBSMError):
    """No bin can take every element of a candidate set at finite cost."""

    def __init__(self, elements):
        self.elements = tuple(sorted(elements))
        super().__init__(f"no bin accepts all of {list(self.elements)} at finite cost")


class AllCostsZeroError(GBSMError):
    """The instance has no positive cost, so the budget ladder is undefined."""


class TooLargeError(GBSMError):
    """A brute-force oracle was asked to enumerate beyond its guard."""

    def __init__(self, what: str, size: int, limit: Optional[int]):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds guard {limit}")


class NoCandidateError(GBSMError):
    """The feasible family F is empty for the given partial solution."""


class UnsatisfiableError(GBSMError):
    """A generator could not produce an instance with a feasible nonempty solution."""
