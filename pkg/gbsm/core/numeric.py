import math
from typing import Optional

from gbsm.core.config import settings


def within_budget(cost: float, budget: float) -> bool:
    """cost <= budget up to the configured tolerance. Forbidden (inf) never fits."""
    return not math.isinf(cost) and cost <= budget + settings.GBSM_TOLERANCE


def round_sig(value: float, digits: Optional[int] = None) -> float:
    """Round to a fixed number of significant digits for reproducible output."""
    if value == 0 or not math.isfinite(value):
        return value
    digits = digits or settings.GBSM_FLOAT_DIGITS
    return float(f"{value:.{digits}g}")
