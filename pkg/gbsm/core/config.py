from typing import Literal, Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    GBSM_LOG_LEVEL: str = "INFO"

    # Feasibility comparisons (cost <= budget) absorb summation round-off.
    GBSM_TOLERANCE: float = 1e-9

    GBSM_DEFAULT_EPSILON: float = 0.2
    GBSM_DEFAULT_DEPTH: int = 3

    # Brute-force guards: n + m for the global optimum, n for ratio/knapsack oracles
    GBSM_OPT_GUARD: int = 22
    GBSM_RATIO_GUARD: int = 16
    GBSM_GUARD_OVERRIDE: bool = False

    GBSM_RESAMPLE_LIMIT: int = 100
    GBSM_FLOAT_DIGITS: int = 12

    class Config:
        env_file = ".env"
        case_sensitive = True

    def guard_limit(self, kind: Literal["opt", "ratio"]) -> Optional[int]:
        """Return the enumeration guard for an oracle, or None when guards are lifted."""
        if self.GBSM_GUARD_OVERRIDE:
            return None
        return self.GBSM_OPT_GUARD if kind == "opt" else self.GBSM_RATIO_GUARD


settings = Settings()
