"""Scikit-learn style front end for the sampler.

Fits on a precedence relation and then draws exact uniform linear
extensions, following the fit/sample shape of sklearn's generative
estimators (KernelDensity, mixture models). Plays nicely with clone(),
get_params/set_params, and pipelines that only need fit.
"""

import math

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .bits import MASK64, resolve_seed
from .cftp import sample_extensions
from .oracle import count_extensions
from .poset import is_linear_extension, poset_from_pairs


class LinearExtensionSampler(BaseEstimator):
    """Exactly-uniform sampler over the linear extensions of a partial order.

    Parameters
    ----------
    driver : {"doubling", "fixed"}, default="doubling"
        Doubling grows the sweep window per recursion level and tracks the
        instance's actual coalescence time; fixed reuses one window sized
        by the worst-case bound.
    t0 : int or None, default=None
        Initial sweeps (doubling) or the fixed sweep count. None picks
        n for doubling and the recommended worst-case count for fixed.
    random_state : int or None, default=None
        Master seed. None draws OS entropy on every sample() call; an int
        makes sample() reproducible call after call.

    Attributes
    ----------
    n_items_ : int
        Number of items in the fitted order.
    poset_ : Poset
        The validated, relabeled partial order.

    Examples
    --------
    >>> est = LinearExtensionSampler(random_state=0)
    >>> est.fit([(0, 2), (1, 2)], n_items=3)
    LinearExtensionSampler(random_state=0)
    >>> est.sample(2).shape
    (2, 3)
    """

    def __init__(self, driver="doubling", t0=None, random_state=None):
        self.driver = driver
        self.t0 = t0
        self.random_state = random_state

    def fit(self, X, y=None, n_items=None):
        """Validate and store the partial order.

        X is either an (n, n) 0/1 precedence matrix (reflexive diagonal)
        or a sequence of (i, j) pairs of 0-based item labels meaning
        i precedes j; pass `n_items` with pairs if the largest label is
        not n-1. Missing transitive edges are closed automatically; a
        cycle raises CycleError.
        """
        pairs, n = _as_pairs(X, n_items)
        self.poset_ = poset_from_pairs(pairs, n)
        self.n_items_ = n
        return self

    def sample(self, n_samples=1, random_state=None):
        """Draw exact uniform extensions, one row per sample, 0-based labels."""
        self._check_fitted()
        seed = resolve_seed(_seed_from(random_state if random_state is not None
                                       else self.random_state))
        perms, _ = sample_extensions(self.poset_, n_samples, seed,
                                     driver=self.driver, t0=self.t0)
        return np.asarray(perms, dtype=np.int64)

    def score_samples(self, X):
        """Log-probability of each permutation row under the fitted order.

        Uniform mass over the linear extensions: -log(count) for rows that
        are extensions, -inf otherwise. Needs the extension count, so the
        item count is capped like `count_extensions`.
        """
        self._check_fitted()
        X = np.asarray(X)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        log_p = -math.log(count_extensions(self.poset_))
        rel = self.poset_.original
        out = np.full(X.shape[0], -np.inf)
        for row in range(X.shape[0]):
            if is_linear_extension(rel, tuple(int(v) for v in X[row])):
                out[row] = log_p
        return out

    def score(self, X, y=None):
        """Mean log-probability of the rows of X."""
        return float(np.mean(self.score_samples(X)))

    def _check_fitted(self):
        if not hasattr(self, "poset_"):
            raise NotFittedError("fit the sampler before drawing from it")


def _seed_from(state):
    """Accept ints, None, and numpy Generators/RandomStates as seeds."""
    if state is None or isinstance(state, int):
        return state
    if isinstance(state, np.integer):
        return int(state)
    if isinstance(state, np.random.Generator):
        return int(state.integers(0, MASK64, dtype=np.uint64))
    if isinstance(state, np.random.RandomState):
        return int(state.randint(0, 1 << 32)) << 32 | int(state.randint(0, 1 << 32))
    raise TypeError(f"cannot use {type(state).__name__} as a seed")


def _as_pairs(X, n_items):
    """Normalize fit() input to (pairs, n)."""
    if isinstance(X, (list, tuple)) and len(X) == 0:
        if n_items is None:
            raise ValueError("empty pair list needs n_items")
        return [], int(n_items)
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ValueError(f"expected a matrix or a pair list, got shape {arr.shape}")
    square = arr.shape[0] == arr.shape[1]
    binary = np.isin(arr, (0, 1)).all()
    if square and binary and bool(np.diagonal(arr).all()) \
            and (n_items is None or n_items == arr.shape[0]):
        pairs = [(int(i), int(j)) for i, j in np.argwhere(arr.astype(bool))]
        return pairs, arr.shape[0]
    if arr.shape[1] != 2:
        raise ValueError("pair input must have two columns")
    pairs = [(int(i), int(j)) for i, j in arr]
    n = int(n_items) if n_items is not None else int(arr.max()) + 1
    return pairs, n
