"""Closed-form guarantees of the greedy framework and of its two list builders."""

import math


def greedy_factor(alpha: float, beta: float = 1.0) -> float:
    """1/2 (1 - e^(-alpha beta)): profit guarantee against the budget-k optimum."""
    return 0.5 * (1.0 - math.exp(-alpha * beta))


def enum_alpha(epsilon: float) -> float:
    return 1.0 - epsilon


def expbudget_alpha(epsilon: float) -> float:
    return (1.0 - 1.0 / math.e) * (1.0 - epsilon)


def builder_alpha(builder: str, epsilon: float) -> float:
    return enum_alpha(epsilon) if builder == "enum" else expbudget_alpha(epsilon)


def enum_composed_loss(epsilon: float) -> float:
    """epsilon' = (e^epsilon - 1) / (2e)."""
    return (math.exp(epsilon) - 1.0) / (2.0 * math.e)


def enum_composed_factor(epsilon: float) -> float:
    """1/2 (1 - 1/e) - epsilon'; identical to greedy_factor(1 - epsilon)."""
    return 0.5 * (1.0 - 1.0 / math.e) - enum_composed_loss(epsilon)


def beta_for_half_minus(alpha: float, epsilon: float) -> float:
    """Extra-budget factor (1/alpha) ln(1 / (2 epsilon)) that lifts the guarantee to 1/2 - epsilon."""
    if not 0.0 < epsilon < 0.5:
        raise ValueError("epsilon must lie in (0, 1/2)")
    return math.log(1.0 / (2.0 * epsilon)) / alpha


def ladder_size_bound(c_hat: float, budget: float, epsilon: float) -> int:
    """Upper bound q + 2 on the number of budget levels, q < log_{1+eps}(k / c_hat)."""
    if budget <= c_hat:
        return 1
    return math.floor(math.log(budget / c_hat, 1.0 + epsilon) + 1e-9) + 2


def enum_list_size_bound(n: int, q: int) -> int:
    """Number of nonempty subsets of at most q out of n elements."""
    return sum(math.comb(n, j) for j in range(1, q + 1))
