"""Ground truth for small posets: enumerate, count, and sample exactly.

Everything here works in internal labels, like the chain machinery.
These are the reference implementations the sampler is validated
against, so they stay deliberately independent of the chain code.
"""

from dataclasses import dataclass

from .bits import BitStream
from .errors import CapExceeded
from .poset import Poset

ENUM_CAP = 10
COUNT_CAP = 20


@dataclass(frozen=True)
class ExtensionSet:
    """All linear extensions of a poset, lexicographically sorted."""

    extensions: tuple[tuple[int, ...], ...]
    count: int

    def index_of(self, sigma) -> int:
        return self.extensions.index(tuple(sigma))


def _strict_pred_masks(poset: Poset) -> list[int]:
    rows = poset.relation.rows()
    n = poset.n
    masks = []
    for j in range(n):
        mask = 0
        for i in range(n):
            if i != j and rows[i][j]:
                mask |= 1 << i
        masks.append(mask)
    return masks


def enumerate_extensions(poset: Poset, cap: int = ENUM_CAP) -> ExtensionSet:
    """Backtrack over positions, placing any item whose predecessors are placed.

    Candidates are tried in ascending label order, so the output arrives
    already in lexicographic order. Worst case is n! permutations
    (an antichain), hence the size cap.
    """
    n = poset.n
    if n > cap:
        raise CapExceeded(n, cap)
    cached = poset._cache.get("extensions")
    if cached is not None:
        return cached

    preds = _strict_pred_masks(poset)
    full = (1 << n) - 1
    slots = [0] * n
    out: list[tuple[int, ...]] = []

    def place(placed: int, depth: int) -> None:
        if depth == n:
            out.append(tuple(slots))
            return
        for i in range(n):
            bit = 1 << i
            if not placed & bit and preds[i] & ~placed == 0:
                slots[depth] = i
                place(placed | bit, depth + 1)

    place(0, 0)
    result = ExtensionSet(tuple(out), len(out))
    poset._cache["extensions"] = result
    return result


def count_extensions(poset: Poset, cap: int = COUNT_CAP) -> int:
    """Count linear extensions by dynamic programming over downsets.

    Each valid prefix of an extension fills a predecessor-closed subset,
    so summing path counts over those subsets (at most 2^n of them) gives
    the total without materializing any permutation.
    """
    n = poset.n
    if n > cap:
        raise CapExceeded(n, cap, what="counting")
    preds = _strict_pred_masks(poset)
    level = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for placed, ways in level.items():
            for i in range(n):
                bit = 1 << i
                if not placed & bit and preds[i] & ~placed == 0:
                    key = placed | bit
                    nxt[key] = nxt.get(key, 0) + ways
        level = nxt
    return level[(1 << n) - 1]


def uniform_index(m: int, bits: BitStream) -> int:
    """Uniform draw from 0..m-1 via rejection on ceil(log2 m) fair bits."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return 0
    width = (m - 1).bit_length()
    while True:
        value = 0
        for b in bits.take(width):
            value = (value << 1) | b
        if value < m:
            return value


def oracle_uniform_sample(poset: Poset, bits: BitStream,
                          cap: int = ENUM_CAP) -> tuple[int, ...]:
    """Exact uniform extension by indexing into the enumerated list.

    The fair bits spent here are accounted to `bits`, never to any CFTP
    run counters.
    """
    ext = enumerate_extensions(poset, cap=cap)
    return ext.extensions[uniform_index(ext.count, bits)]
