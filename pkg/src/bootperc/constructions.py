"""Generators for the extremal families and for seeded test instances."""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .graph import MAX_VERTICES, Graph, iter_bits as _bits

FAMILIES = (
    "double-clique-matching",
    "clique-pair-bipartite",
    "odd-deletion",
    "grid",
    "random-min-degree",
    "sidon-bipartite",
)
STRATEGIES = ("sidon", "random-matchings")
MATCHING_ATTEMPTS = 10_000


class ConstructionError(ValueError):
    """A generator could not produce a graph with the requested properties."""


def _clique_edges(vertices: Sequence[int]) -> List[tuple]:
    return list(itertools.combinations(vertices, 2))


def double_clique_matching(n: int) -> Graph:
    """Two cliques on ``0..n/2-1`` and ``n/2..n-1`` plus the matching ``i ~ i + n/2``."""
    if n < 4 or n % 2:
        raise ConstructionError(f"double-clique-matching needs even n >= 4, got {n}")
    half = n // 2
    edges = _clique_edges(range(half)) + _clique_edges(range(half, n))
    edges += [(i, i + half) for i in range(half)]
    return Graph(n, edges)


def has_bipartite_c4(g: Graph, half: int) -> bool:
    """True if two vertices of the first part share two neighbours in the second."""
    part_b = ((1 << (2 * half)) - 1) ^ ((1 << half) - 1)
    cross = [g.masks[i] & part_b for i in range(half)]
    for i in range(half):
        for j in range(i + 1, half):
            if (cross[i] & cross[j]).bit_count() >= 2:
                return True
    return False


def greedy_sidon_shifts(half: int, d: int) -> Optional[List[int]]:
    """Smallest-first shifts mod ``half`` whose ordered differences are distinct."""
    shifts: List[int] = []
    diffs: set = set()
    for s in range(half):
        new = set()
        ok = True
        for t in shifts:
            for diff in ((s - t) % half, (t - s) % half):
                if diff in diffs or diff in new:
                    ok = False
                    break
                new.add(diff)
            if not ok:
                break
        if ok:
            shifts.append(s)
            diffs |= new
            if len(shifts) == d:
                return shifts
    return None


def _circulant_bipartite(half: int, shifts: Sequence[int]) -> Graph:
    edges = [(i, half + (i + s) % half) for i in range(half) for s in shifts]
    return Graph(2 * half, edges)


def _random_matchings(half: int, d: int, seed: int) -> Graph:
    """Add ``d`` random perfect matchings one at a time.

    Each matching is drawn edge by edge: left vertices in random order, each
    paired with a uniform choice among the free right vertices that neither
    repeat an edge nor close a 4-cycle. A draw that gets stuck is rejected
    and redrawn; all draws share one budget of ``MATCHING_ATTEMPTS``.
    """
    rng = np.random.default_rng(seed)
    right = [0] * half  # left i -> mask of right neighbours (part-local ids)
    col = [0] * half  # right j -> mask of left neighbours
    accepted = 0
    attempts = 0
    while accepted < d and attempts < MATCHING_ATTEMPTS:
        attempts += 1
        new_right, new_col = list(right), list(col)
        free = (1 << half) - 1
        for i in (int(v) for v in rng.permutation(half)):
            sharing = 0  # left vertices already sharing a right neighbour with i
            for j in _bits(new_right[i]):
                sharing |= new_col[j]
            options = [j for j in _bits(free & ~new_right[i]) if not new_col[j] & sharing]
            if not options:
                break
            j = options[int(rng.integers(len(options)))]
            new_right[i] |= 1 << j
            new_col[j] |= 1 << i
            free &= ~(1 << j)
        else:
            right, col = new_right, new_col
            accepted += 1
    if accepted < d:
        raise ConstructionError(
            f"random-matchings: no C4-free {d}-regular bipartite graph on 2x{half} "
            f"vertices after {MATCHING_ATTEMPTS} attempts"
        )
    g = Graph(2 * half, [(i, half + j) for i in range(half) for j in range(half)
                         if right[i] >> j & 1])
    assert not has_bipartite_c4(g, half)
    return g


def sidon_bipartite(
    half: int,
    d: int,
    strategy: str = "sidon",
    seed: int = 0,
    shifts: Optional[Sequence[int]] = None,
) -> Graph:
    """A ``d``-regular C4-free bipartite graph on parts ``0..half-1`` and ``half..2*half-1``.

    With ``strategy="sidon"`` vertex ``i`` of the first part is joined to
    ``half + (i + s) % half`` for each shift ``s``. Shifts are taken from
    ``shifts`` if given, otherwise found greedily; if no greedy shift set
    exists the random-matchings strategy is used instead. The result is
    always checked for 4-cycles.
    """
    if not 1 <= d < half:
        raise ConstructionError(f"need 1 <= d < half, got d={d}, half={half}")
    if strategy not in STRATEGIES:
        raise ConstructionError(f"unknown strategy {strategy!r}")

    if strategy == "sidon":
        if shifts is None:
            shifts = greedy_sidon_shifts(half, d)
        elif len(set(s % half for s in shifts)) != d:
            raise ConstructionError(f"expected {d} distinct shifts mod {half}, got {list(shifts)}")
        if shifts is not None:
            g = _circulant_bipartite(half, shifts)
            if has_bipartite_c4(g, half):
                raise ConstructionError(f"shift set {list(shifts)} mod {half} yields a 4-cycle")
            return g
    return _random_matchings(half, d, seed)


def clique_pair_bipartite(n: int, r: int, strategy: str = "sidon", seed: int = 0) -> Graph:
    """Cliques on both halves joined by an (r-3)-regular C4-free bipartite graph."""
    if r < 4:
        raise ConstructionError(f"clique-pair-bipartite needs r >= 4, got {r}")
    if n % 2 or n < 2 * (r - 1):
        raise ConstructionError(f"clique-pair-bipartite needs even n >= 2(r-1) = {2 * (r - 1)}, got {n}")
    half = n // 2
    h = sidon_bipartite(half, r - 3, strategy, seed)
    edges = h.edges() + _clique_edges(range(half)) + _clique_edges(range(half, n))
    return Graph(n, edges)


def odd_deletion(n: int, r: int, strategy: str = "sidon", seed: int = 0) -> Graph:
    """The ``n + 1`` vertex clique-pair graph with its highest vertex removed."""
    if n % 2 == 0:
        raise ConstructionError(f"odd-deletion needs odd n, got {n}")
    g = clique_pair_bipartite(n + 1, r, strategy, seed)
    return g.remove_vertex(n)


def grid(side: int, dim: int) -> Graph:
    """The lattice ``[side]^dim``; vertex ids are mixed-radix coordinates."""
    if side < 1 or dim < 1:
        raise ConstructionError(f"grid needs side >= 1 and dim >= 1, got side={side}, dim={dim}")
    if side ** dim > MAX_VERTICES:
        raise ConstructionError(f"grid {side}^{dim} exceeds the {MAX_VERTICES} vertex cap")
    n = side ** dim
    edges = []
    for v in range(n):
        stride = 1
        for _ in range(dim):
            if (v // stride) % side < side - 1:
                edges.append((v, v + stride))
            stride *= side
    return Graph(n, edges)


def random_min_degree_graph(n: int, delta: int, edge_prob: float = 0.55, seed: int = 0) -> Graph:
    """G(n, p) sample repaired up to minimum degree ``delta``.

    Deficient vertices are visited in id order and joined to uniformly
    chosen non-neighbours until their degree reaches ``delta``.
    """
    if not 0 <= delta < max(n, 1):
        raise ConstructionError(f"need 0 <= delta < n, got delta={delta}, n={n}")
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < edge_prob, k=1)
    adj = [set() for _ in range(n)]
    for u, v in zip(*np.nonzero(upper)):
        adj[u].add(int(v))
        adj[v].add(int(u))
    for v in range(n):
        missing = delta - len(adj[v])
        if missing > 0:
            pool = [u for u in range(n) if u != v and u not in adj[v]]
            for u in rng.choice(pool, size=missing, replace=False):
                adj[v].add(int(u))
                adj[int(u)].add(v)
    return Graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    n: int
    r: Optional[int] = None
    d: Optional[int] = None
    strategy: str = "sidon"
    seed: int = 0
    edge_prob: float = 0.55

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConstructionError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.strategy not in STRATEGIES:
            raise ConstructionError(f"unknown strategy {self.strategy!r}")
        needs_r = {"clique-pair-bipartite", "odd-deletion"}
        needs_d = {"grid", "random-min-degree", "sidon-bipartite"}
        if self.family in needs_r and self.r is None:
            raise ConstructionError(f"{self.family} requires r")
        if self.family in needs_d and self.d is None:
            raise ConstructionError(f"{self.family} requires d")

    def build(self) -> Graph:
        f = self.family
        if f == "double-clique-matching":
            return double_clique_matching(self.n)
        if f == "clique-pair-bipartite":
            return clique_pair_bipartite(self.n, self.r, self.strategy, self.seed)
        if f == "odd-deletion":
            return odd_deletion(self.n, self.r, self.strategy, self.seed)
        if f == "grid":
            # n is the side length, d the dimension
            return grid(self.n, self.d)
        if f == "random-min-degree":
            return random_min_degree_graph(self.n, self.d, self.edge_prob, self.seed)
        if self.n % 2:
            raise ConstructionError(f"sidon-bipartite needs even n, got {self.n}")
        return sidon_bipartite(self.n // 2, self.d, self.strategy, self.seed)

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        if self.family != "random-min-degree":
            out.pop("edge_prob")
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ConstructionSpec":
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})

    @classmethod
    def from_json(cls, text: str) -> "ConstructionSpec":
        return cls.from_dict(json.loads(text))
