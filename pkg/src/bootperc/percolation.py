"""Synchronous r-neighbour bootstrap percolation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import AbstractSet, Any, Dict, List, Sequence

from .graph import Graph, VertexSet, from_mask, to_mask


def check_threshold(r: int) -> int:
    if isinstance(r, bool) or int(r) != r or r < 1:
        raise ValueError(f"threshold r must be an integer >= 1, got {r!r}")
    return int(r)


@dataclass(frozen=True)
class ClosureTrace:
    """Record of one bootstrap run.

    ``steps[t]`` holds the vertices newly infected at time ``t + 1``, so
    ``time == len(steps)``.
    """

    r: int
    initial: VertexSet
    steps: List[VertexSet] = field(default_factory=list)
    final: VertexSet = frozenset()

    @property
    def time(self) -> int:
        return len(self.steps)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "initial": sorted(self.initial),
            "steps": [sorted(s) for s in self.steps],
            "final": sorted(self.final),
            "time": self.time,
        }


def step(g: Graph, infected: AbstractSet[int], r: int) -> VertexSet:
    """Vertices outside ``infected`` with at least ``r`` infected neighbours."""
    r = check_threshold(r)
    inf = to_mask(infected)
    return frozenset(
        v for v in range(g.n) if not inf >> v & 1 and (g.masks[v] & inf).bit_count() >= r
    )


def closure(g: Graph, a: AbstractSet[int], r: int) -> ClosureTrace:
    """Run the process from ``a`` to its fixed point, recording each round.

    Each vertex keeps a counter of infected neighbours. Only vertices whose
    counter moved in the last round are re-examined, so a whole run costs
    O(sum of degrees) rather than O(n) per round.
    """
    r = check_threshold(r)
    initial = g.vertex_set(a)
    infected = bytearray(g.n)
    count = [0] * g.n
    for v in initial:
        infected[v] = 1

    adj = [g.neighbours(v) for v in range(g.n)]
    frontier: Sequence[int] = sorted(initial)
    steps: List[VertexSet] = []
    while True:
        touched = set()
        for v in frontier:
            for u in adj[v]:
                count[u] += 1
                touched.add(u)
        new = sorted(u for u in touched if not infected[u] and count[u] >= r)
        if not new:
            break
        for u in new:
            infected[u] = 1
        steps.append(frozenset(new))
        frontier = new

    final = frozenset(v for v in range(g.n) if infected[v])
    return ClosureTrace(r=r, initial=initial, steps=steps, final=final)


def closure_mask(masks: Sequence[int], seed: int, r: int) -> int:
    """Bitset closure: ``masks`` are neighbourhood masks, ``seed`` the start set.

    Used on hot paths (exhaustive search) where only the final set matters.
    """
    infected = seed
    frontier = seed
    while frontier:
        cand = 0
        while frontier:
            low = frontier & -frontier
            cand |= masks[low.bit_length() - 1]
            frontier ^= low
        cand &= ~infected
        new = 0
        while cand:
            low = cand & -cand
            if (masks[low.bit_length() - 1] & infected).bit_count() >= r:
                new |= low
            cand ^= low
        infected |= new
        frontier = new
    return infected


def closure_set(g: Graph, a: AbstractSet[int], r: int) -> VertexSet:
    r = check_threshold(r)
    return from_mask(closure_mask(g.masks, to_mask(g.vertex_set(a)), r))


def percolates(g: Graph, a: AbstractSet[int], r: int) -> bool:
    r = check_threshold(r)
    return closure_mask(g.masks, to_mask(g.vertex_set(a)), r) == g.full_mask


def is_closed(g: Graph, a: AbstractSet[int], r: int) -> bool:
    return not step(g, g.vertex_set(a), r)
