"""Exact minimum percolating sets, bounds and complete bipartite subgraphs."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple

from .graph import Graph, VertexSet, from_mask, iter_bits
from .percolation import check_threshold, closure_mask

EXACT = "exact"
UPPER_BOUND_ONLY = "upper-bound-only"
BUDGET_EXHAUSTED = "budget-exhausted"

# distinct failed closures kept for pruning within one subset size
MAX_PRUNE_CLOSURES = 64


class BudgetExhausted(RuntimeError):
    """The closure-call budget ran out before the search finished."""

    def __init__(self, closures_used: int, subsets_examined: int):
        self.closures_used = closures_used
        self.subsets_examined = subsets_examined
        super().__init__(f"budget exhausted after {closures_used} closure calls")


class SearchStats:
    __slots__ = ("closures", "subsets")

    def __init__(self) -> None:
        self.closures = 0
        self.subsets = 0


@dataclass
class SolveResult:
    status: str
    value: Optional[int]
    witness: Optional[VertexSet]
    subsets_examined: int
    closures_used: int
    elapsed: float

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "status": self.status,
            "value": self.value,
            "witness": None if self.witness is None else sorted(self.witness),
            "subsets_examined": self.subsets_examined,
            "closures_used": self.closures_used,
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed * 1000.0, 3)
        return out


def _subset_masks(n: int, k: int) -> Iterator[int]:
    bits = [1 << v for v in range(n)]
    for combo in itertools.combinations(bits, k):
        yield sum(combo)


def exists_percolating_of_size(
    g: Graph,
    r: int,
    k: int,
    budget: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Optional[VertexSet]:
    """Lexicographically least percolating ``k``-subset, or ``None``.

    Subsets are visited in lexicographic order. A subset lying inside the
    closure of an earlier failed subset cannot percolate and is skipped
    without a closure call.

    Raises
    ------
    BudgetExhausted
        If more than ``budget`` closure calls would be needed.
    """
    r = check_threshold(r)
    if k < 0:
        raise ValueError(f"subset size must be >= 0, got {k}")
    if stats is None:
        stats = SearchStats()
    if k > g.n:
        return None
    masks = g.masks
    full = g.full_mask
    failed: List[int] = []
    seen = set()
    for subset in _subset_masks(g.n, k):
        stats.subsets += 1
        if any(subset & c == subset for c in failed):
            continue
        if budget is not None and stats.closures >= budget:
            raise BudgetExhausted(stats.closures, stats.subsets)
        stats.closures += 1
        span = closure_mask(masks, subset, r)
        if span == full:
            return from_mask(subset)
        if span != subset and span not in seen and len(failed) < MAX_PRUNE_CLOSURES:
            seen.add(span)
            failed.append(span)
    return None


def greedy_upper_bound(g: Graph, r: int, seed: int = 0) -> Tuple[int, VertexSet]:
    """Grow a percolating set by repeatedly adding the best uninfected vertex.

    The gain of a vertex is how much the closure grows when it is added;
    ties go to the lowest id, so ``seed`` does not affect the result.
    """
    r = check_threshold(r)
    masks = g.masks
    full = g.full_mask
    chosen = 0
    span = closure_mask(masks, 0, r)
    while span != full:
        best_v, best_span, best_size = -1, 0, -1
        for v in iter_bits(full & ~span):
            cand = closure_mask(masks, span | (1 << v), r)
            size = cand.bit_count()
            if size > best_size:
                best_v, best_span, best_size = v, cand, size
        chosen |= 1 << best_v
        span = best_span
    witness = from_mask(chosen)
    return len(witness), witness


def min_percolating_set(
    g: Graph,
    r: int,
    budget: Optional[int] = None,
    exact: bool = True,
) -> SolveResult:
    """Compute m(G, r) by searching sizes upward from ``min(r, n)``.

    A greedy set gives the starting upper bound. When the budget runs out
    the greedy bound and witness are reported with status
    ``"budget-exhausted"``; with ``exact=False`` only the greedy bound is
    computed.
    """
    r = check_threshold(r)
    start = time.perf_counter()
    stats = SearchStats()
    bound, greedy_witness = greedy_upper_bound(g, r)

    if not exact:
        return SolveResult(UPPER_BOUND_ONLY, bound, greedy_witness, 0, 0,
                           time.perf_counter() - start)

    # no set smaller than r percolates unless it is all of V
    for k in range(min(r, g.n), bound + 1):
        try:
            witness = exists_percolating_of_size(g, r, k, budget, stats)
        except BudgetExhausted:
            return SolveResult(BUDGET_EXHAUSTED, bound, greedy_witness, stats.subsets,
                               stats.closures, time.perf_counter() - start)
        if witness is not None:
            return SolveResult(EXACT, k, witness, stats.subsets, stats.closures,
                               time.perf_counter() - start)
    raise AssertionError("greedy witness percolates, so a set of its size must be found")


def reichman_bound(g: Graph, r: int) -> Fraction:
    """Sum over vertices of ``min(1, r / (deg + 1))`` as an exact fraction."""
    r = check_threshold(r)
    return sum((min(Fraction(1), Fraction(r, d + 1)) for d in g.degrees()), Fraction(0))


def reichman_ceiling(g: Graph, r: int) -> int:
    return math.ceil(reichman_bound(g, r))


def find_complete_bipartite(
    g: Graph, small: int, large: int
) -> Optional[Tuple[VertexSet, VertexSet]]:
    """Find ``(S, T)`` with ``|S| = small``, ``|T| = large`` and every S-T pair adjacent.

    ``S`` ranges lexicographically over ``small``-subsets of vertices with
    degree at least ``large``; ``T`` is the ``large`` lowest ids of the
    common neighbourhood of ``S``.
    """
    if not 0 <= small <= large:
        raise ValueError(f"need 0 <= small <= large, got small={small}, large={large}")
    candidates = [v for v in range(g.n) if g.degree(v) >= large]
    masks = g.masks
    for combo in itertools.combinations(candidates, small):
        common = g.full_mask
        for v in combo:
            common &= masks[v]
            if common.bit_count() < large:
                break
        if common.bit_count() >= large:
            t = list(itertools.islice(iter_bits(common), large))
            return frozenset(combo), frozenset(t)
    return None
