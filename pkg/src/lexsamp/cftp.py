"""Coupling-from-the-past drivers with replayable coin tapes.

A run proceeds in two phases. Phase one plays recursion levels forward:
each level draws its own tape of fresh coins, runs `t` bounding-only
sweeps from the all-stars state, and either collapses to a permutation
(k = n) or hands off to the next, deeper level. Phase two unwinds: the
deepest level's permutation seeds the coupled replay of every shallower
level, each replaying exactly the coins it drew in phase one. The result
is an exactly uniform draw from the linear extensions.

Recursion is unrolled into these two loops, so the call stack stays flat
no matter how many levels a run needs. Coins are never stored: a level
keeps only its 64-bit sub-seed and regenerates the identical stream for
the replay, so memory is O(levels) and the bit counter increases only
when coins are materialized for the first time.

The fixed-`t` driver keeps the same sweep count at every level; the
doubling driver doubles it, which tracks the instance's actual
coalescence time instead of the worst-case bound. Both produce exact
uniform samples for any starting sweep count the laws of the coins allow
to terminate.
"""

import math
from dataclasses import dataclass, field

from .bits import GENERATOR_ID, BitStream, derive_seed
from .chains import BoundingState, _bounding_sweep, _coupled_sweep
from .poset import Poset


@dataclass
class CoinTape:
    """A replayable block of `t` sweeps times (n-1) fair coins.

    `sweeps()` yields the per-sweep coin lists. The first full pass
    materializes the coins and counts them in `consumed`; every later
    pass regenerates the identical stream from `seed` without recounting.
    """

    seed: int
    n: int
    t: int
    consumed: int = 0
    _materialized: bool = field(default=False, repr=False)

    def sweeps(self):
        count = not self._materialized
        self._materialized = True
        stream = BitStream(self.seed)
        width = self.n - 1
        for _ in range(self.t):
            coins = stream.take(width)
            if count:
                self.consumed += width
            yield coins


@dataclass
class RunStats:
    """Counters for one complete run.

    A substep call is one position update (a coupled update counts once);
    `swap_ops` counts substeps that physically swapped, once per chain.
    `success` means the final bounding state was a full permutation, which
    holds for every completed CFTP run.
    """

    sweeps_executed: int = 0
    bits_consumed: int = 0
    swap_ops: int = 0
    substep_calls: int = 0
    recursion_depth: int = 0
    success: bool = False

    def to_dict(self) -> dict:
        return {
            "sweeps_executed": self.sweeps_executed,
            "bits_consumed": self.bits_consumed,
            "swap_ops": self.swap_ops,
            "substep_calls": self.substep_calls,
            "recursion_depth": self.recursion_depth,
            "success": self.success,
        }


@dataclass
class SampleReport:
    """One drawn permutation (original labels) plus its run accounting."""

    index: int
    permutation: tuple[int, ...]
    driver: str
    initial_sweeps: int
    generator: str
    stats: RunStats

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "permutation": list(self.permutation),
            "driver": self.driver,
            "initial_sweeps": self.initial_sweeps,
            "generator": self.generator,
            "stats": self.stats.to_dict(),
        }


def initial_bounding_state(n: int) -> BoundingState:
    """All stars except item 0 in the last slot; one active item."""
    if n < 1:
        raise ValueError("need at least one item")
    return BoundingState([n] * (n - 1) + [0], 1)


def recommended_t(n: int) -> int:
    """Sweep count after which a run collapses with probability >= 1/2.

    ceil((n^2 - n + 3) * ceil(log2 n) / 2); returns 1 for n < 2.
    """
    if n < 2:
        return 1
    log2ceil = (n - 1).bit_length()
    return ((n * n - n + 3) * log2ceil + 1) // 2


def map_output(sigma, poset: Poset) -> tuple[int, ...]:
    """Relabel an internal-label permutation back to the original labels."""
    return poset.to_original_perm(sigma)


def cftp_fixed(poset: Poset, t: int, seed: int) -> tuple[tuple[int, ...], RunStats]:
    """Exact uniform draw using `t` sweeps at every recursion level.

    `t` must be at least n-1: with fewer sweeps no level can ever promote
    all stars, so the run could not terminate.
    """
    n = poset.n
    if t < 1 or t < n - 1:
        raise ValueError(f"fixed driver needs t >= max(1, n-1) = {max(1, n - 1)}, got {t}")
    return _drive(poset, lambda level: t, seed)


def cftp_doubling(poset: Poset, t0: int, seed: int) -> tuple[tuple[int, ...], RunStats]:
    """Exact uniform draw doubling the sweep count at each deeper level."""
    if t0 < 1:
        raise ValueError(f"initial sweep count must be >= 1, got {t0}")
    return _drive(poset, lambda level: t0 << level, seed)


def _drive(poset, level_sweeps, seed):
    n = poset.n
    ext = poset.ext
    star = poset.star
    last = n - 1
    stats = RunStats()

    tapes: list[CoinTape] = []
    while True:
        level = len(tapes)
        tape = CoinTape(derive_seed(seed, level), n, level_sweeps(level))
        state = initial_bounding_state(n)
        r, k = state.r, state.k
        for coins in tape.sweeps():
            k, sw = _bounding_sweep(r, k, coins, ext, last, star)
            stats.swap_ops += sw
        stats.sweeps_executed += tape.t
        stats.substep_calls += tape.t * last
        stats.bits_consumed += tape.consumed
        tapes.append(tape)
        if k == n:
            break

    sigma = r
    for tape in reversed(tapes[:-1]):
        state = initial_bounding_state(n)
        r, k = state.r, state.k
        for coins in tape.sweeps():
            k, bsw, usw = _coupled_sweep(sigma, r, k, coins, ext, last, star)
            stats.swap_ops += bsw + usw
        stats.sweeps_executed += tape.t
        stats.substep_calls += tape.t * last

    stats.recursion_depth = len(tapes) - 1
    stats.success = True
    return tuple(sigma), stats


def make_sampler(poset: Poset, seed: int, driver: str = "doubling",
                 t0: int | None = None):
    """Callable mapping a replicate index to an internal-label draw.

    Replicate i runs with master seed derive_seed(seed, i), so replicates
    are independent yet reproducible in any order.
    """
    if driver == "doubling":
        start = t0 if t0 is not None else max(1, poset.n)
        run = lambda s: cftp_doubling(poset, start, s)
    elif driver == "fixed":
        start = t0 if t0 is not None else recommended_t(poset.n)
        run = lambda s: cftp_fixed(poset, start, s)
    else:
        raise ValueError(f"unknown driver {driver!r}")

    def draw(index: int) -> tuple[int, ...]:
        sigma, _ = run(derive_seed(seed, index))
        return sigma

    return draw


def sample_extensions(poset: Poset, n_samples: int, seed: int,
                      driver: str = "doubling", t0: int | None = None
                      ) -> tuple[list[tuple[int, ...]], list[SampleReport]]:
    """Draw `n_samples` uniform extensions in the caller's original labels."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if driver == "doubling":
        start = t0 if t0 is not None else max(1, poset.n)
        run = lambda s: cftp_doubling(poset, start, s)
    elif driver == "fixed":
        start = t0 if t0 is not None else recommended_t(poset.n)
        run = lambda s: cftp_fixed(poset, start, s)
    else:
        raise ValueError(f"unknown driver {driver!r}")

    perms: list[tuple[int, ...]] = []
    reports: list[SampleReport] = []
    for i in range(n_samples):
        sigma, stats = run(derive_seed(seed, i))
        mapped = map_output(sigma, poset)
        perms.append(mapped)
        reports.append(SampleReport(i, mapped, driver, start, GENERATOR_ID, stats))
    return perms, reports


def theoretical_bit_bound(n: int) -> float:
    """Average fair bits: 1.83 n^3 ln n."""
    return 1.83 * n ** 3 * math.log(n) if n > 1 else 0.0


def theoretical_op_bound(n: int) -> float:
    """Average substep operations: 2.75 n^3 ln n."""
    return 2.75 * n ** 3 * math.log(n) if n > 1 else 0.0
