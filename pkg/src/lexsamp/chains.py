"""Step functions: transposition chain, bounding chain, and the coupled step.

All public step functions are pure: they copy their inputs and return new
states, so callers can keep histories and replicate chains across threads
by giving each its own states and coin source. The private ``_*_sweep``
kernels mutate caller-owned lists in place; the drivers use them.

Positions are 0-based: substep i compares slots i and i+1, for
i in 0..n-2. One deterministic-scan sweep applies the substep at every
position in ascending order, one fresh fair coin per position. The star
promotion check runs after every substep, not only the last one; a star
can only reach the final slot on substep n-2, so the two placements agree,
but the per-substep placement is what the replay semantics pin down.
"""

from dataclasses import dataclass

from .errors import BoundingViolation
from .poset import Poset


@dataclass
class BoundingState:
    """Vector `r` over items and stars, plus the active-item count `k`.

    Entries of `r` are internal item labels (all < k) or the star value n.
    The state stands for the set of permutations in which every active
    item sits at or to the left of its position in `r`. When k = n the
    set has collapsed to the single permutation `r`.
    """

    r: list[int]
    k: int

    @property
    def complete(self) -> bool:
        return self.k == len(self.r)

    def copy(self) -> "BoundingState":
        return BoundingState(list(self.r), self.k)


def adj_step(sigma, i: int, c: int, poset: Poset) -> tuple[int, ...]:
    """One transposition-chain substep at position i.

    Swaps slots i and i+1 iff c = 1 and the left item does not precede the
    right one. A linear extension stays a linear extension.
    """
    s = list(sigma)
    if c and not poset.ext[s[i]][s[i + 1]]:
        s[i], s[i + 1] = s[i + 1], s[i]
    return tuple(s)


def bc_step(y: BoundingState, i: int, c: int, poset: Poset) -> BoundingState:
    """One bounding-chain substep at position i.

    Same swap rule as :func:`adj_step` under the extended order; then, if
    the final slot holds a star, it is promoted to the next active item.
    """
    out = y.copy()
    r, ext, last = out.r, poset.ext, poset.n - 1
    if c and not ext[r[i]][r[i + 1]]:
        r[i], r[i + 1] = r[i + 1], r[i]
    if r[last] == poset.star:
        r[last] = out.k
        out.k += 1
    return out


def sim_step(sigma, y: BoundingState, i: int, c: int,
             poset: Poset) -> tuple[tuple[int, ...], BoundingState]:
    """One coupled substep: bounding chain on c, underlying chain on c'.

    c' flips to 1 - c exactly when the underlying item at slot i equals
    the bounding entry at slot i+1 (stars never match an item), which
    rules out the one move pattern that could push the underlying item
    past its bound. Order within the substep: compute c' from the
    pre-step states, apply the bounding swap and promotion, then the
    underlying swap.
    """
    c_prime = 1 - c if sigma[i] == y.r[i + 1] else c
    new_y = bc_step(y, i, c, poset)
    new_sigma = adj_step(sigma, i, c_prime, poset)
    return new_sigma, new_y


def bounds(y: BoundingState, sigma) -> bool:
    """True iff every active item sits no later in `sigma` than in `y.r`."""
    r = y.r
    sigma = list(sigma)
    for a in range(y.k):
        if sigma.index(a) > r.index(a):
            return False
    return True


def sweep(y: BoundingState, coins, poset: Poset, sigma=None, check=False):
    """One full deterministic-scan sweep, substeps i = 0..n-2 in order.

    Bounding-only mode (`sigma` is None) returns the new BoundingState.
    Coupled mode returns `(sigma, y)`. With `check=True` the coupled mode
    verifies after every substep that the permutation is still bounded and
    raises BoundingViolation otherwise; this is the slow, test-grade path.
    """
    n = poset.n
    if len(coins) != n - 1:
        raise ValueError(f"need {n - 1} coins per sweep, got {len(coins)}")
    if sigma is None:
        out = y.copy()
        out.k, _ = _bounding_sweep(out.r, out.k, coins, poset.ext, n - 1, poset.star)
        return out
    if check:
        for i in range(n - 1):
            sigma, y = sim_step(sigma, y, i, coins[i], poset)
            if not bounds(y, sigma):
                raise BoundingViolation(f"substep {i}: {sigma} escaped {y.r} (k={y.k})")
        return sigma, y
    out = y.copy()
    s = list(sigma)
    out.k, _, _ = _coupled_sweep(s, out.r, out.k, coins, poset.ext, n - 1, poset.star)
    return tuple(s), out


def check_invariants(y: BoundingState, poset: Poset) -> None:
    """Raise ValueError unless `y` satisfies the bounding-state invariants.

    Each active item a < k appears exactly once, no inactive item appears,
    stars fill the remaining n - k slots, and active items respect the
    partial order left to right.
    """
    n, star = poset.n, poset.star
    r, k = y.r, y.k
    if len(r) != n:
        raise ValueError(f"state length {len(r)} != n = {n}")
    if not 0 <= k <= n:
        raise ValueError(f"active count k = {k} out of range")
    seen = [0] * n
    stars = 0
    for v in r:
        if v == star:
            stars += 1
        elif 0 <= v < k:
            seen[v] += 1
        else:
            raise ValueError(f"inactive or invalid entry {v} with k = {k}")
    if stars != n - k:
        raise ValueError(f"{stars} stars with k = {k}")
    if any(count != 1 for count in seen[:k]):
        raise ValueError(f"active items not unique in {r}")
    rows = poset.relation.rows()
    pos = {v: i for i, v in enumerate(r) if v != star}
    for a in range(k):
        for b in range(k):
            if a != b and rows[a][b] and pos[a] >= pos[b]:
                raise ValueError(f"order violated: {a} before {b} expected in {r}")


def _bounding_sweep(r, k, coins, ext, last, star):
    """In-place bounding sweep. Returns (new k, swap count)."""
    swaps = 0
    for i in range(last):
        if coins[i] and not ext[r[i]][r[i + 1]]:
            r[i], r[i + 1] = r[i + 1], r[i]
            swaps += 1
        if r[last] == star:
            r[last] = k
            k += 1
    return k, swaps


def _coupled_sweep(sigma, r, k, coins, ext, last, star):
    """In-place coupled sweep. Returns (new k, bounding swaps, underlying swaps)."""
    bsw = usw = 0
    for i in range(last):
        c = coins[i]
        c_prime = (1 - c) if sigma[i] == r[i + 1] else c
        if c and not ext[r[i]][r[i + 1]]:
            r[i], r[i + 1] = r[i + 1], r[i]
            bsw += 1
        if r[last] == star:
            r[last] = k
            k += 1
        if c_prime and not ext[sigma[i]][sigma[i + 1]]:
            sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
            usw += 1
    return k, bsw, usw
