import numpy as np
import pytest

from gbsm.models.profit import ModularProfit, WeightedCoverageProfit
from gbsm.models.solution import PartialSolution
from gbsm.services.generator_service import generator_service


@pytest.fixture
def table1():
    """Two unit bins, three elements, eps = 0.25, M = 100, budget 2."""
    return generator_service.table1_instance(0.25, 100.0, 2.0)


@pytest.fixture
def unit_weights():
    return ModularProfit([1.0, 1.0, 1.0])


@pytest.fixture
def abc_coverage():
    """Universe {a, b, c} with unit weights: 0 -> {a, b}, 1 -> {b, c}, 2 -> {c}."""
    return WeightedCoverageProfit([[0, 1], [1, 2], [2]], [1.0, 1.0, 1.0])


@pytest.fixture
def empty_partial():
    return PartialSolution()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
