"""Partial orders: closure, validation, relabeling, and precedence queries.

Items are labeled 0..n-1. A :class:`Relation` is the full
reflexive-transitive precedence table over the caller's labels; a
:class:`Poset` additionally carries a relabeling such that the identity
permutation of the internal labels is a linear extension, which is what
the chain machinery assumes. The bounding chain's star placeholder is
represented by the integer `n`, one past the largest item label, so the
extended precedence table is simply an (n+1) x (n+1) matrix.
"""

from collections import deque
from dataclasses import dataclass
import heapq

import numpy as np

from .errors import CycleError, PosetFormatError


@dataclass(frozen=True, eq=False)
class Relation:
    """A reflexive, antisymmetric, transitive 0/1 precedence table.

    `precedes[i, j]` means item i must come no later than item j.
    Instances are produced by :func:`close_and_validate` and are read-only;
    share them freely across threads.
    """

    n: int
    precedes: np.ndarray

    def __post_init__(self):
        self.precedes.flags.writeable = False

    def holds(self, i: int, j: int) -> bool:
        return bool(self.precedes[i, j])

    def rows(self) -> list[list[bool]]:
        """Plain nested-list copy of the table (fast scalar access)."""
        return self.precedes.tolist()

    def assert_valid(self) -> None:
        """Raise ValueError unless all three partial-order axioms hold."""
        m = self.precedes
        n = self.n
        if m.shape != (n, n):
            raise ValueError(f"table shape {m.shape} does not match n = {n}")
        if not m.diagonal().all():
            raise ValueError("relation is not reflexive")
        sym = m & m.T
        np.fill_diagonal(sym, False)
        if sym.any():
            i, j = map(int, np.argwhere(sym)[0])
            raise ValueError(f"relation is not antisymmetric: {i} <-> {j}")
        closure = (m.astype(np.uint8) @ m.astype(np.uint8)) > 0
        if (closure & ~m).any():
            i, j = map(int, np.argwhere(closure & ~m)[0])
            raise ValueError(f"relation is not transitive at ({i}, {j})")


def close_and_validate(pairs, n: int) -> Relation:
    """Build the reflexive-transitive closure of `pairs` over items 0..n-1.

    Raises IndexError for out-of-range items and CycleError (naming one
    offending cycle) if the closure would violate antisymmetry.
    """
    if n < 1:
        raise ValueError(f"need at least one item, got n = {n}")
    pairs = [(int(i), int(j)) for i, j in pairs]
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"pair ({i}, {j}) out of range for n = {n}")

    m = np.eye(n, dtype=bool)
    for i, j in pairs:
        m[i, j] = True
    # Warshall closure, one outer product per pivot.
    for k in range(n):
        m |= np.outer(m[:, k], m[k, :])

    mutual = m & m.T
    np.fill_diagonal(mutual, False)
    if mutual.any():
        i, j = map(int, np.argwhere(mutual)[0])
        raise CycleError(_find_cycle(pairs, i, j))
    return Relation(n, m)


def _find_cycle(pairs, i: int, j: int) -> list[int]:
    """A directed cycle through i and j in the raw pair digraph."""
    adj: dict[int, list[int]] = {}
    for a, b in pairs:
        if a != b:
            adj.setdefault(a, []).append(b)
    first = _bfs_path(adj, i, j)
    back = _bfs_path(adj, j, i)
    return first + back[1:]


def _bfs_path(adj, src: int, dst: int) -> list[int]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for v in adj.get(u, ()):
            if v not in prev:
                prev[v] = u
                queue.append(v)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


class Poset:
    """A validated partial order with topologically sorted internal labels.

    Internal labels 0..n-1 are arranged so that the identity permutation is
    a linear extension. `to_original[a]` gives the caller's label for
    internal item a; `to_internal` is the inverse. `ext` is the precedence
    table extended by the star placeholder (value `n`): a star precedes
    nothing, nothing precedes a star, and star-star compares as True so two
    adjacent stars never swap.

    Immutable after construction; safe to share read-only across threads.
    """

    def __init__(self, relation: Relation, original: Relation,
                 to_internal, to_original):
        self.relation = relation
        self.original = original
        self.to_internal = tuple(to_internal)
        self.to_original = tuple(to_original)
        self._ext = None
        self._cache = {}

    @property
    def n(self) -> int:
        return self.relation.n

    @property
    def star(self) -> int:
        """Sentinel value used for not-yet-active items in bounding states."""
        return self.relation.n

    @property
    def ext(self) -> list[list[bool]]:
        """(n+1) x (n+1) extended precedence table over internal labels."""
        if self._ext is None:
            rows = [row + [False] for row in self.relation.rows()]
            rows.append([False] * self.n + [True])
            self._ext = rows
        return self._ext

    def to_internal_perm(self, sigma) -> tuple[int, ...]:
        return tuple(self.to_internal[x] for x in sigma)

    def to_original_perm(self, sigma) -> tuple[int, ...]:
        return tuple(self.to_original[x] for x in sigma)


def normalize(relation: Relation) -> Poset:
    """Relabel items along a topological order of `relation`.

    Deterministic: among incomparable items the ascending original label
    wins, so normalizing an already-sorted relation yields identity maps.
    """
    n = relation.n
    m = relation.precedes
    strict = m.copy()
    np.fill_diagonal(strict, False)
    indeg = strict.sum(axis=0).tolist()
    heap = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in np.flatnonzero(strict[u]).tolist():
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    if len(order) != n:
        raise ValueError("relation is cyclic; validate it first")

    to_original = tuple(order)
    to_internal = [0] * n
    for internal, orig in enumerate(order):
        to_internal[orig] = internal
    internal_rel = Relation(n, m[np.ix_(order, order)].copy())
    return Poset(internal_rel, relation, to_internal, to_original)


def poset_from_pairs(pairs, n: int) -> Poset:
    """Closure, validation, and normalization in one call."""
    return normalize(close_and_validate(pairs, n))


def is_linear_extension(order, sigma) -> bool:
    """True iff no later position holds an item preceding an earlier one.

    `order` is a Relation, or a Poset in which case `sigma` is read as
    internal labels. All position pairs are checked, not just adjacent
    ones: adjacent-pair checking is not equivalent for arbitrary inputs.
    """
    rel = order.relation if isinstance(order, Poset) else order
    n = rel.n
    if len(sigma) != n or set(sigma) != set(range(n)):
        return False
    rows = rel.rows()
    for j in range(1, n):
        late = rows[sigma[j]]
        for i in range(j):
            if late[sigma[i]]:
                return False
    return True


def extended_precedes(a: int, b: int, relation: Relation) -> bool:
    """Precedence over items plus the star placeholder (value n).

    A star precedes no item, no item precedes a star, and star-star is
    True, which keeps two adjacent stars from swapping (a no-op either
    way, but fixed for determinism).
    """
    n = relation.n
    if a == n or b == n:
        return a == b
    return bool(relation.precedes[a, b])


def parse_poset_text(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Parse the poset text format into (n, zero-based pairs).

    Format: first significant line is `n <count>`; every following
    significant line is `<i> <j>` meaning item i precedes item j, with
    1-based labels. `#` starts a comment; blank lines are ignored.
    """
    n = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if tokens[0] != "n" or len(tokens) != 2:
                raise PosetFormatError(lineno, "expected header `n <count>`")
            try:
                n = int(tokens[1])
            except ValueError:
                raise PosetFormatError(lineno, f"bad item count {tokens[1]!r}") from None
            if n < 1:
                raise PosetFormatError(lineno, f"item count must be >= 1, got {n}")
            continue
        if len(tokens) != 2:
            raise PosetFormatError(lineno, f"expected `<i> <j>`, got {line!r}")
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise PosetFormatError(lineno, f"non-integer pair {line!r}") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise PosetFormatError(lineno, f"pair ({i}, {j}) out of range 1..{n}")
        pairs.append((i - 1, j - 1))
    if n is None:
        raise PosetFormatError(1, "missing `n <count>` header")
    return n, pairs


def load_poset(path) -> Poset:
    """Read, close, validate, and normalize a poset text file."""
    with open(path, encoding="utf-8") as handle:
        n, pairs = parse_poset_text(handle.read())
    return poset_from_pairs(pairs, n)
