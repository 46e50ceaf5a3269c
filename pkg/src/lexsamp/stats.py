"""Statistical harness: uniformity tests, star drift, and cost accounting.

The chi-square gate for every test here is fixed at significance 1e-3:
loose enough to keep 1e4-trial runs stable in CI, tight enough to catch
systematic bias. Replicates are independent (replicate i always runs on
seed derive_seed(seed, i)), so callers may fan them out and merge; the
implementations here run them sequentially.
"""

import math
from dataclasses import dataclass

from scipy.special import gammaincc

from .bits import BitStream, derive_seed
from .cftp import (RunStats, cftp_fixed, recommended_t,
                   theoretical_bit_bound, theoretical_op_bound)
from .oracle import enumerate_extensions, oracle_uniform_sample
from .poset import Poset, is_linear_extension

SIGNIFICANCE = 1e-3


def chi_square_uniform(observed, expected) -> tuple[float, int, float]:
    """Pearson statistic, degrees of freedom, and upper-tail p-value.

    `expected` holds cell probabilities. Zero-probability cells are
    excluded from both the statistic and the degrees of freedom; the
    caller asserts separately that they stay empty.
    """
    if len(observed) != len(expected):
        raise ValueError("observed and expected lengths differ")
    total = sum(observed)
    live = [(o, p) for o, p in zip(observed, expected) if p > 0]
    if abs(sum(p for _, p in live) - 1.0) > 1e-9:
        raise ValueError("live cell probabilities must sum to 1")
    stat = 0.0
    for o, p in live:
        mean = p * total
        stat += (o - mean) ** 2 / mean
    dof = len(live) - 1
    if dof == 0:
        return 0.0, 0, 1.0
    return stat, dof, float(gammaincc(dof / 2.0, stat / 2.0))


@dataclass
class FrequencyReport:
    """Observed cell counts against a uniform target.

    `cells` is the canonical binning (internal-label permutations in
    lexicographic order unless a baseline overrode it); `expected` are
    probabilities, zero for cells the poset forbids. `unbinned` counts
    samples matching no cell at all and should be zero.
    """

    cells: list[tuple[int, ...]]
    observed: list[int]
    expected: list[float]
    trials: int
    unbinned: int
    chi_square: float
    dof: int
    p_value: float

    @property
    def dead_hits(self) -> int:
        """Samples that landed in zero-probability cells."""
        return sum(o for o, p in zip(self.observed, self.expected) if p == 0)

    def frequencies(self) -> list[float]:
        return [o / self.trials for o in self.observed]

    def to_dict(self) -> dict:
        return {
            "cells": [list(c) for c in self.cells],
            "observed": self.observed,
            "expected": self.expected,
            "trials": self.trials,
            "unbinned": self.unbinned,
            "chi_square": self.chi_square,
            "dof": self.dof,
            "p_value": self.p_value,
        }

    def to_text(self, label=lambda c: " ".join(str(x) for x in c)) -> str:
        lines = [f"{'extension':<24}{'observed':>10}{'freq':>10}{'expected':>10}"]
        for cell, obs, exp in zip(self.cells, self.observed, self.expected):
            lines.append(f"{label(cell):<24}{obs:>10}{obs / self.trials:>10.4f}{exp:>10.4f}")
        lines.append(f"trials      {self.trials}")
        lines.append(f"unbinned    {self.unbinned}")
        lines.append(f"chi_square  {self.chi_square:.6f}")
        lines.append(f"dof         {self.dof}")
        lines.append(f"p_value     {self.p_value:.6g}")
        return "\n".join(lines)


def uniformity_test(poset: Poset, sampler, trials: int,
                    cells=None) -> FrequencyReport:
    """Draw `trials` samples and chi-square them against the uniform target.

    `sampler(i)` must return the i-th draw as an internal-label
    permutation. `cells` defaults to the poset's own extension list; pass
    the extension list of a looser poset to expose forbidden cells, which
    then carry expected probability zero.
    """
    own = enumerate_extensions(poset)
    if cells is None:
        cells = list(own.extensions)
    else:
        cells = [tuple(c) for c in cells]
    live = {tuple(e) for e in own.extensions}
    n_live = sum(1 for c in cells if c in live)
    if n_live == 0:
        raise ValueError("no cell is an extension of the poset")
    expected = [1.0 / n_live if c in live else 0.0 for c in cells]

    index = {c: i for i, c in enumerate(cells)}
    observed = [0] * len(cells)
    unbinned = 0
    for i in range(trials):
        at = index.get(tuple(sampler(i)))
        if at is None:
            unbinned += 1
        else:
            observed[at] += 1

    stat, dof, p = chi_square_uniform(observed, expected)
    return FrequencyReport(cells, observed, expected, trials, unbinned,
                           stat, dof, p)


def stationarity_test(poset: Poset, replicates: int, seed: int) -> FrequencyReport:
    """Start each replicate at an oracle-uniform extension, run one sweep.

    One deterministic-scan sweep of the transposition chain must leave the
    uniform distribution untouched; the report chi-squares the post-sweep
    states. Oracle bits and sweep coins come from separate streams.
    """
    ext = enumerate_extensions(poset)
    rows = poset.relation.rows()
    n = poset.n
    draw_bits = BitStream(derive_seed(seed, 0))
    coin_bits = BitStream(derive_seed(seed, 1))

    index = {e: i for i, e in enumerate(ext.extensions)}
    observed = [0] * ext.count
    for _ in range(replicates):
        sigma = list(oracle_uniform_sample(poset, draw_bits))
        coins = coin_bits.take(n - 1)
        for i in range(n - 1):
            if coins[i] and not rows[sigma[i]][sigma[i + 1]]:
                sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
        observed[index[tuple(sigma)]] += 1

    expected = [1.0 / ext.count] * ext.count
    stat, dof, p = chi_square_uniform(observed, expected)
    return FrequencyReport(list(ext.extensions), observed, expected,
                           replicates, 0, stat, dof, p)


@dataclass
class TauSample:
    """Per-replicate sweep counts until the slot-0 star is promoted."""

    n: int
    taus: list[int]

    @property
    def mean(self) -> float:
        return sum(self.taus) / len(self.taus)

    @property
    def se(self) -> float:
        m = self.mean
        var = sum((t - m) ** 2 for t in self.taus) / (len(self.taus) - 1)
        return math.sqrt(var / len(self.taus))

    @property
    def mean_bound(self) -> float:
        """Drift bound on the expected promotion time."""
        return (self.n * self.n - self.n + 2) / 2.0

    @property
    def tail_threshold(self) -> float:
        return (self.n * self.n - self.n + 3) / 2.0

    def tail_fraction(self, threshold=None) -> float:
        cut = self.tail_threshold if threshold is None else threshold
        return sum(1 for t in self.taus if t >= cut) / len(self.taus)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "replicates": len(self.taus),
            "mean": self.mean,
            "se": self.se,
            "mean_bound": self.mean_bound,
            "tail_threshold": self.tail_threshold,
            "tail_fraction": self.tail_fraction(),
        }


def tagged_star_sweep(p: int, last: int, bits: BitStream) -> int:
    """One sweep of the tagged-star walk; returns the new position.

    A star swaps with whichever neighbor the coin points at, whether that
    neighbor is an item or another star (two stars exchange their tags and
    leave the chain state unchanged), so the tagged position moves on the
    coins alone: at the substep left of the tag it steps left on a 1;
    otherwise it chains rightward while the coins stay 1. The walk is
    absorbed at `last`, where the promotion fires.
    """
    if p > 0 and bits.bit():
        return p - 1
    while p < last and bits.bit():
        p += 1
        if p == last:
            break
    return p


def measure_tau(n: int, replicates: int, seed: int) -> TauSample:
    """Sweeps until a star starting in slot 0 is promoted, per replicate.

    Star moves are independent of the partial order, so the walk is
    simulated directly from the coins; no poset is needed.
    """
    if n < 2:
        raise ValueError("tau needs n >= 2")
    last = n - 1
    taus = []
    for i in range(replicates):
        bits = BitStream(derive_seed(seed, i))
        p = 0
        sweeps = 0
        while True:
            sweeps += 1
            p = tagged_star_sweep(p, last, bits)
            if p == last:
                break
        taus.append(sweeps)
    return TauSample(n, taus)


def coalescence_sweeps(n: int, bits: BitStream, max_sweeps: int):
    """Sweeps until no stars remain, or None if over `max_sweeps`.

    Star positions move on the coins alone, so only the star/item mask is
    simulated; the result matches the full bounding chain coin for coin.
    """
    last = n - 1
    if last == 0:
        return 0
    star = [True] * last + [False]
    remaining = last
    for sweep in range(1, max_sweeps + 1):
        coins = bits.take(last)
        for i in range(last):
            if coins[i] and star[i] != star[i + 1]:
                star[i], star[i + 1] = star[i + 1], star[i]
            if star[last]:
                star[last] = False
                remaining -= 1
        if remaining == 0:
            return sweep
    return None


def success_curve(n: int, t_grid, replicates: int, seed: int) -> list[tuple[int, float]]:
    """Fraction of bounding-only runs fully collapsed by each t in `t_grid`."""
    t_grid = sorted(set(int(t) for t in t_grid))
    horizon = max(t_grid) if t_grid else 0
    finished = []
    for i in range(replicates):
        bits = BitStream(derive_seed(seed, i))
        finished.append(coalescence_sweeps(n, bits, horizon))
    out = []
    for t in t_grid:
        hits = sum(1 for f in finished if f is not None and f <= t)
        out.append((t, hits / replicates))
    return out


@dataclass
class CostReport:
    """Aggregated run counters for the fixed-t driver against its bounds.

    When each level succeeds with probability at least 1/2, the number of
    restarts is geometric with mean at most 2, which budgets a run at 2t
    sweeps of fresh coins and 3t sweeps of step work. Those budgets are
    reported in two unit conventions, per sweep and per substep (times
    n-1); the substep convention is the one consistent with the headline
    operation bound, and the one the cost gate asserts.
    """

    n: int
    t: int
    runs: int
    mean_bits: float
    max_bits: int
    mean_substeps: float
    max_substeps: int
    mean_sweeps: float
    max_sweeps: int
    mean_swaps: float
    max_swaps: int
    mean_depth: float
    max_depth: int

    @property
    def bit_bound(self) -> float:
        return theoretical_bit_bound(self.n)

    @property
    def op_bound(self) -> float:
        return theoretical_op_bound(self.n)

    @property
    def bit_budget_substeps(self) -> int:
        return 2 * self.t * (self.n - 1)

    @property
    def step_budget_substeps(self) -> int:
        return 3 * self.t * (self.n - 1)

    @property
    def bit_budget_sweeps(self) -> int:
        return 2 * self.t

    @property
    def step_budget_sweeps(self) -> int:
        return 3 * self.t

    def cost_vector(self) -> tuple:
        """The order-independent part of the accounting (no swap counts)."""
        return (self.mean_sweeps, self.mean_substeps, self.mean_bits, self.mean_depth)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "runs": self.runs,
            "mean_bits": self.mean_bits,
            "max_bits": self.max_bits,
            "mean_substeps": self.mean_substeps,
            "max_substeps": self.max_substeps,
            "mean_sweeps": self.mean_sweeps,
            "max_sweeps": self.max_sweeps,
            "mean_swaps": self.mean_swaps,
            "max_swaps": self.max_swaps,
            "mean_depth": self.mean_depth,
            "max_depth": self.max_depth,
            "bit_bound": self.bit_bound,
            "op_bound": self.op_bound,
            "bit_budget_substeps": self.bit_budget_substeps,
            "step_budget_substeps": self.step_budget_substeps,
            "bit_budget_sweeps": self.bit_budget_sweeps,
            "step_budget_sweeps": self.step_budget_sweeps,
        }

    def to_text(self) -> str:
        d = self.to_dict()
        width = max(len(k) for k in d)
        lines = [f"{k:<{width}}  {v:.4f}" if isinstance(v, float) else f"{k:<{width}}  {v}"
                 for k, v in d.items()]
        return "\n".join(lines)


def cost_report(poset: Poset, runs: int, seed: int, t: int | None = None) -> CostReport:
    """Run the fixed-t driver `runs` times and aggregate its counters."""
    n = poset.n
    if t is None:
        t = recommended_t(n)
    collected: list[RunStats] = []
    for i in range(runs):
        _, stats = cftp_fixed(poset, t, derive_seed(seed, i))
        collected.append(stats)

    def agg(attr):
        values = [getattr(s, attr) for s in collected]
        return sum(values) / len(values), max(values)

    mean_bits, max_bits = agg("bits_consumed")
    mean_sub, max_sub = agg("substep_calls")
    mean_sw, max_sw = agg("sweeps_executed")
    mean_swap, max_swap = agg("swap_ops")
    mean_depth, max_depth = agg("recursion_depth")
    return CostReport(n, t, runs, mean_bits, max_bits, mean_sub, max_sub,
                      mean_sw, max_sw, mean_swap, max_swap, mean_depth, max_depth)


def check_extensions(poset: Poset, perms) -> bool:
    """True iff every original-label permutation is a linear extension."""
    return all(is_linear_extension(poset.original, p) for p in perms)
