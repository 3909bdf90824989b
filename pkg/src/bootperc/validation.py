"""Input coercion for the estimator API."""

from __future__ import annotations

from typing import Any

import numpy as np

from .graph import Graph, parse_edge_list


def check_graph(X: Any) -> Graph:
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a ``Graph``, edge-list text, a networkx-style graph (anything
    with ``nodes`` and ``edges``; nodes are relabelled in sorted order) or
    a square symmetric 0/1 adjacency matrix with a zero diagonal.
    """
    if isinstance(X, Graph):
        return X
    if isinstance(X, str):
        return parse_edge_list(X)
    if hasattr(X, "nodes") and hasattr(X, "edges") and not isinstance(X, np.ndarray):
        nodes = sorted(X.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return Graph(len(nodes), [(index[u], index[v]) for u, v in X.edges()])
    if hasattr(X, "toarray"):
        X = X.toarray()
    A = np.asarray(X)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {A.shape}")
    if not np.isin(A, (0, 1)).all():
        raise ValueError("adjacency matrix must be 0/1")
    if (A != A.T).any():
        raise ValueError("adjacency matrix must be symmetric")
    if np.diagonal(A).any():
        raise ValueError("adjacency matrix has self-loops")
    us, vs = np.nonzero(np.triu(A, k=1))
    return Graph(A.shape[0], zip(us.tolist(), vs.tolist()))


def check_seed_sets(X: Any, n: int) -> np.ndarray:
    """Coerce seed sets to a boolean indicator matrix of shape ``(n_samples, n)``.

    ``X`` may already be such a matrix, or a sequence of vertex-id
    collections.
    """
    if isinstance(X, np.ndarray) and X.ndim == 2:
        if X.shape[1] != n:
            raise ValueError(f"expected {n} columns, got {X.shape[1]}")
        if not np.isin(X, (0, 1)).all():
            raise ValueError("indicator matrix must be 0/1")
        return X.astype(bool)
    rows = list(X)
    out = np.zeros((len(rows), n), dtype=bool)
    for i, row in enumerate(rows):
        ids = [int(v) for v in row]
        if any(not 0 <= v < n for v in ids):
            raise ValueError(f"seed set {i} has vertex ids outside [0, {n})")
        out[i, ids] = True
    return out
