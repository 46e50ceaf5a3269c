"""Shared fixtures and helpers for the test suite."""

import random
from pathlib import Path

from lexsamp import Poset, poset_from_pairs

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
DEMO5_FILE = FIXTURES / "demo5.poset"
DEMO5_EXTRA_FILE = FIXTURES / "demo5_extra.poset"

# Cover pairs of the bundled five-item demo order (0-based labels).
DEMO5_PAIRS = [(0, 2), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)]
DEMO5_EXTRA_PAIRS = DEMO5_PAIRS + [(1, 3)]

DEMO5_MATRIX = [
    [1, 0, 1, 0, 1],
    [0, 1, 1, 0, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]

# The demo poset's eight extensions in the fixed reporting order used by
# the golden frequency checks (not lexicographic).
DEMO5_BIN_ORDER = [
    (0, 1, 2, 3, 4),
    (0, 1, 3, 2, 4),
    (0, 3, 1, 2, 4),
    (3, 0, 1, 2, 4),
    (1, 0, 2, 3, 4),
    (1, 0, 3, 2, 4),
    (1, 3, 0, 2, 4),
    (3, 1, 0, 2, 4),
]

# Extensions killed by the extra relation, and the ones that survive.
DEMO5_DEAD = [(0, 3, 1, 2, 4), (3, 0, 1, 2, 4), (3, 1, 0, 2, 4)]
DEMO5_LIVE = [c for c in DEMO5_BIN_ORDER if c not in DEMO5_DEAD]


def demo5() -> Poset:
    return poset_from_pairs(DEMO5_PAIRS, 5)


def demo5_extra() -> Poset:
    return poset_from_pairs(DEMO5_EXTRA_PAIRS, 5)


def random_poset(n: int, rng: random.Random, density: float = 0.35) -> Poset:
    """A random partial order: random DAG pairs, then closure."""
    labels = list(range(n))
    rng.shuffle(labels)
    pairs = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                pairs.append((labels[a], labels[b]))
    return poset_from_pairs(pairs, n)


def random_bounding_state(poset, rng: random.Random):
    """A reachable bounding state: run a random number of bounding sweeps."""
    from lexsamp import initial_bounding_state, sweep

    y = initial_bounding_state(poset.n)
    for _ in range(rng.randrange(0, 3 * poset.n)):
        coins = [rng.randrange(2) for _ in range(poset.n - 1)]
        y = sweep(y, coins, poset)
    return y
