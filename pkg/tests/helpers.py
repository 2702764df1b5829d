import itertools

import numpy as np

from gbsm.models.solution import PartialSolution


def partial_of(bins=(), elements=()):
    """A PartialSolution with the given sets (caches left at zero)."""
    return PartialSolution(chosen_bins=set(bins), chosen_elements=set(elements))


def random_partial(instance, rng, keep=0.5):
    """A consistent partial solution: a few open bins and some elements reachable through them."""
    bins = {int(s) for s in np.flatnonzero(rng.random(instance.m) < 0.4)}
    elements = set()
    if bins:
        for x in instance.elements:
            reachable = np.isfinite(instance.assign_cost[sorted(bins), x]).any()
            if reachable and rng.random() < keep and len(elements) < instance.n - 1:
                elements.add(x)
    return partial_of(bins, elements)


def random_subset(rng, items, p=0.5):
    return frozenset(int(x) for x in items if rng.random() < p)


def nested_triple(rng, n):
    """Random S <= T <= X and x outside T, or None when T is the whole ground set."""
    T = random_subset(rng, range(n))
    S = random_subset(rng, T)
    outside = [x for x in range(n) if x not in T]
    if not outside:
        return None
    return S, T, int(rng.choice(outside))


def all_subsets(items):
    items = list(items)
    for size in range(len(items) + 1):
        yield from (frozenset(c) for c in itertools.combinations(items, size))
