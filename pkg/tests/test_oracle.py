import itertools
import math
import random

import pytest

import lexsamp as lx
from lexsamp import (BitStream, CapExceeded, count_extensions,
                     enumerate_extensions, oracle_uniform_sample,
                     uniform_index)

from .util import DEMO5_BIN_ORDER, DEMO5_DEAD, demo5, demo5_extra, random_poset


def test_demo_poset_has_the_eight_known_extensions():
    ext = enumerate_extensions(demo5())
    assert ext.count == 8
    assert set(ext.extensions) == set(DEMO5_BIN_ORDER)
    assert list(ext.extensions) == sorted(ext.extensions)


def test_extra_relation_kills_three_extensions():
    ext = enumerate_extensions(demo5_extra())
    assert ext.count == 5
    missing = set(DEMO5_BIN_ORDER) - set(ext.extensions)
    assert missing == set(DEMO5_DEAD)


def test_antichain_and_chain_counts():
    antichain = lx.poset_from_pairs([], 3)
    assert enumerate_extensions(antichain).count == 6
    assert count_extensions(lx.poset_from_pairs([], 6)) == math.factorial(6)
    chain = lx.poset_from_pairs([(i, i + 1) for i in range(7)], 8)
    assert count_extensions(chain) == 1
    assert enumerate_extensions(chain).extensions == (tuple(range(8)),)


def test_enumeration_matches_predicate_filter_exhaustively():
    rng = random.Random(6)
    for n in range(1, 7):
        for _ in range(6):
            poset = random_poset(n, rng)
            brute = [p for p in itertools.permutations(range(n))
                     if lx.is_linear_extension(poset, p)]
            assert list(enumerate_extensions(poset).extensions) == brute


def test_downset_count_matches_enumeration():
    rng = random.Random(61)
    for _ in range(50):
        poset = random_poset(rng.randrange(1, 9), rng)
        assert count_extensions(poset) == enumerate_extensions(poset).count


def test_caps():
    big = lx.poset_from_pairs([], 11)
    with pytest.raises(CapExceeded):
        enumerate_extensions(big)
    with pytest.raises(CapExceeded):
        count_extensions(lx.poset_from_pairs([], 21))
    # raising the cap unlocks the computation
    assert count_extensions(big, cap=11) == math.factorial(11)


def test_uniform_index_is_unbiased():
    bits = BitStream(404)
    counts = [0] * 5
    trials = 50_000
    for _ in range(trials):
        counts[uniform_index(5, bits)] += 1
    for c in counts:
        assert abs(c - trials / 5) < 5 * math.sqrt(trials * 0.2 * 0.8)


def test_uniform_index_power_of_two_uses_exact_bits():
    bits = BitStream(1)
    uniform_index(8, bits)
    assert bits.consumed == 3
    assert uniform_index(1, bits) == 0
    assert bits.consumed == 3


def test_oracle_sample_frequencies_within_three_sigma():
    poset = demo5()
    bits = BitStream(2025)
    trials = 100_000
    counts = {}
    for _ in range(trials):
        s = oracle_uniform_sample(poset, bits)
        counts[s] = counts.get(s, 0) + 1
    assert set(counts) == set(DEMO5_BIN_ORDER)
    sigma = math.sqrt(0.125 * 0.875 / trials)
    for c in counts.values():
        assert abs(c / trials - 0.125) <= 3.5 * sigma


def test_oracle_sample_trivial_cases():
    chain = lx.poset_from_pairs([(0, 1), (1, 2)], 3)
    bits = BitStream(9)
    for _ in range(10):
        assert oracle_uniform_sample(chain, bits) == (0, 1, 2)
    single = lx.poset_from_pairs([], 1)
    assert oracle_uniform_sample(single, bits) == (0,)
