"""Immutable simple graphs on vertices ``0..n-1``.

Adjacency is kept twice: as frozensets for readable iteration and as Python
int bitmasks, so that set intersections and cardinalities used by the
percolation engine are single word-parallel operations.
"""

from __future__ import annotations

from typing import AbstractSet, FrozenSet, Iterable, Iterator, List, Tuple

MAX_VERTICES = 4096

VertexSet = FrozenSet[int]


class GraphFormatError(ValueError):
    """Raised when edge-list text cannot be parsed into a simple graph."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> VertexSet:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph with dense integer vertex ids.

    Parameters
    ----------
    n : int
        Number of vertices, ``0 <= n <= MAX_VERTICES``.
    edges : iterable of (int, int)
        Undirected edges. Duplicates (in either orientation) are merged;
        self-loops and out-of-range ids raise ``ValueError``.
    """

    __slots__ = ("_n", "_adj", "_masks", "_m")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        n = int(n)
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in [0, {MAX_VERTICES}], got {n}")
        masks = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._n = n
        self._masks = tuple(masks)
        self._adj = tuple(from_mask(m) for m in masks)
        self._m = sum(m.bit_count() for m in masks) // 2

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "Graph":
        masks = list(masks)
        edges = [(u, v) for u, m in enumerate(masks) for v in iter_bits(m) if u < v]
        g = cls(len(masks), edges)
        if g._masks != tuple(masks):
            raise ValueError("adjacency masks are not symmetric")
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def num_edges(self) -> int:
        return self._m

    @property
    def masks(self) -> Tuple[int, ...]:
        """Per-vertex neighbourhood bitmasks."""
        return self._masks

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def neighbours(self, v: int) -> VertexSet:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> List[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    def vertices(self) -> range:
        return range(self._n)

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return [(u, v) for u in range(self._n) for v in sorted(self._adj[u]) if u < v]

    def vertex_set(self, vertices: Iterable[int]) -> VertexSet:
        """Validate ``vertices`` against this graph and freeze them."""
        out = frozenset(int(v) for v in vertices)
        for v in out:
            if not 0 <= v < self._n:
                raise ValueError(f"vertex {v} out of range for n={self._n}")
        return out

    def remove_vertex(self, x: int) -> "Graph":
        """Delete ``x``; vertices above ``x`` shift down by one."""
        if not 0 <= x < self._n:
            raise ValueError(f"vertex {x} out of range for n={self._n}")

        def relabel(v: int) -> int:
            return v - 1 if v > x else v

        edges = [(relabel(u), relabel(v)) for u, v in self.edges() if x not in (u, v)]
        return Graph(self._n - 1, edges)

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        keep = sorted(self.vertex_set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph(len(keep), edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self._n, self._masks))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def parse_edge_list(text: str) -> Graph:
    """Parse the ``"n m"`` header + ``m`` lines of ``"u v"`` format.

    Blank lines and lines starting with ``#`` are ignored. Errors carry the
    1-based line number of the offending line.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            rows.append((lineno, stripped.split()))
    if not rows:
        raise GraphFormatError("missing header 'n m'")

    lineno, header = rows[0]
    try:
        if len(header) != 2:
            raise ValueError
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError(f"malformed header {' '.join(header)!r}", lineno) from None
    if not 0 <= n <= MAX_VERTICES:
        raise GraphFormatError(f"vertex count {n} outside [0, {MAX_VERTICES}]", lineno)
    if m < 0:
        raise GraphFormatError(f"negative edge count {m}", lineno)
    if len(rows) - 1 != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(rows) - 1}", lineno)

    edges = []
    for lineno, parts in rows[1:]:
        try:
            if len(parts) != 2:
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"malformed edge {' '.join(parts)!r}", lineno) from None
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range in edge ({u}, {v}) for n={n}", lineno)
        edges.append((u, v))
    return Graph(n, edges)


def serialize_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise ValueError("minimum degree of the empty graph is undefined")
    return min(m.bit_count() for m in g.masks)


def degree_in(g: Graph, x: int, a: AbstractSet[int]) -> int:
    """Number of neighbours of ``x`` inside ``a``."""
    return (g.masks[x] & to_mask(a)).bit_count()


def cross_edge_count(g: Graph, a: AbstractSet[int]) -> int:
    """Number of edges with exactly one endpoint in ``a``."""
    inside = to_mask(a)
    outside = g.full_mask & ~inside
    return sum((g.masks[x] & outside).bit_count() for x in a)


def common_neighbourhood(g: Graph, s: AbstractSet[int]) -> VertexSet:
    # empty intersection is the whole vertex set
    mask = g.full_mask
    for v in s:
        mask &= g.masks[v]
    return from_mask(mask)


def induced_is_clique(g: Graph, a: AbstractSet[int]) -> bool:
    inside = to_mask(a)
    return all((g.masks[v] | (1 << v)) & inside == inside for v in a)


def sigma2(g: Graph) -> int:
    """Minimum of ``deg(u) + deg(v)`` over non-adjacent pairs ``u != v``."""
    deg = g.degrees()
    full = g.full_mask
    best = None
    for u in range(g.n):
        non_nbrs = full & ~g.masks[u] & ~((1 << (u + 1)) - 1)
        for v in iter_bits(non_nbrs):
            s = deg[u] + deg[v]
            if best is None or s < best:
                best = s
    if best is None:
        raise ValueError("graph is complete: no non-adjacent pair")
    return best
