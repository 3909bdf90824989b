"""scikit-learn style wrappers.

The graph is the training data: ``fit`` takes a graph, and
:class:`BootstrapPercolation` then maps batches of seed sets to their
closures. Hyperparameters follow the usual ``get_params``/``set_params``
protocol, so the estimators clone and grid-search like any other.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .graph import min_degree
from .percolation import ClosureTrace, check_threshold, closure, closure_mask
from .solver import EXACT, min_percolating_set, reichman_bound
from .validation import check_graph, check_seed_sets


class BootstrapPercolation(BaseEstimator):
    """r-neighbour bootstrap process on a fixed graph.

    Parameters
    ----------
    r : int, default=2
        Infection threshold.
    """

    def __init__(self, r=2):
        self.r = r

    def fit(self, X, y=None):
        check_threshold(self.r)
        self.graph_ = check_graph(X)
        self.n_vertices_ = self.graph_.n
        return self

    def transform(self, X):
        """Closure indicator, shape ``(n_samples, n_vertices)``."""
        check_is_fitted(self, "graph_")
        seeds = check_seed_sets(X, self.n_vertices_)
        masks = self.graph_.masks
        out = np.zeros_like(seeds)
        for i, row in enumerate(seeds):
            span = closure_mask(masks, int(sum(1 << int(v) for v in np.flatnonzero(row))), self.r)
            for v in range(self.n_vertices_):
                out[i, v] = span >> v & 1
        return out

    def predict(self, X):
        """Whether each seed set percolates."""
        return self.transform(X).all(axis=1)

    def score(self, X, y=None):
        """Fraction of seed sets that percolate."""
        return float(self.predict(X).mean()) if len(X) else 0.0

    def trace(self, seed) -> ClosureTrace:
        check_is_fitted(self, "graph_")
        return closure(self.graph_, seed, self.r)


class MinimumPercolatingSet(BaseEstimator):
    """Exact m(G, r) with a witness set.

    Parameters
    ----------
    r : int, default=2
    budget : int or None
        Closure-call limit for the exhaustive search.
    exact : bool, default=True
        If False only the greedy upper bound is computed.

    Attributes
    ----------
    value_, witness_, status_ : see :class:`~bootperc.solver.SolveResult`
    reichman_bound_ : fractions.Fraction
    min_degree_ : int
    """

    def __init__(self, r=2, budget=None, exact=True):
        self.r = r
        self.budget = budget
        self.exact = exact

    def fit(self, X, y=None):
        g = check_graph(X)
        self.result_ = min_percolating_set(g, self.r, self.budget, self.exact)
        self.value_ = self.result_.value
        self.witness_ = self.result_.witness
        self.status_ = self.result_.status
        self.is_exact_ = self.status_ == EXACT
        self.reichman_bound_ = reichman_bound(g, self.r)
        self.min_degree_ = min_degree(g) if g.n else None
        self.graph_ = g
        return self

    def transform(self, X=None):
        """Indicator row of the witness set."""
        check_is_fitted(self, "result_")
        out = np.zeros((1, self.graph_.n), dtype=bool)
        if self.witness_ is not None:
            out[0, sorted(self.witness_)] = True
        return out
