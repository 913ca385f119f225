"""Graph representation, edge-list I/O, BFS metrics, and disjoint sets.

Vertices are dense integers 0..n-1.  Vertex sets are plain Python ints used
as bit masks (bit z set = vertex z present), which keeps unions,
intersections, and popcounts word-parallel even when many of them are built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "Graph",
    "DistanceMatrix",
    "DisjointSet",
    "GraphFormatError",
    "DisconnectedGraphError",
    "parse_graph",
    "render_graph",
    "apsp",
    "is_connected",
    "induced_subgraph",
    "bits_of",
    "iter_bits",
]


class GraphFormatError(ValueError):
    """Malformed edge-list text, or an edge set violating simplicity."""


class DisconnectedGraphError(ValueError):
    """An operation that needs a connected graph received a disconnected one."""


def bits_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex indices into a bit mask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the vertex indices present in a bit mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Adjacency is stored twice: as sorted neighbor tuples for iteration and as
    per-vertex bit masks for set arithmetic (frontiers, coverage checks).
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    adj_bits: tuple[int, ...]
    edge_count: int

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], strict: bool = False) -> Graph:
        """Build a graph, validating simplicity.

        Self-loops and out-of-range endpoints are always errors; duplicate
        edges are errors only in strict mode, otherwise they collapse.
        """
        if n <= 0:
            raise GraphFormatError(f"vertex count must be positive, got {n}")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                if strict:
                    raise GraphFormatError(f"duplicate edge ({key[0]},{key[1]})")
                continue
            seen.add(key)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted(seen):
            nbrs[u].append(v)
            nbrs[v].append(u)
        adj = tuple(tuple(sorted(a)) for a in nbrs)
        bits = tuple(bits_of(a) for a in adj)
        return cls(n=n, adj=adj, adj_bits=bits, edge_count=len(seen))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


def parse_graph(text: str, strict: bool = False) -> Graph:
    """Parse the edge-list format: line 1 is n, each later line is "u v".

    Anything after '#' on a line is a comment.  Duplicate edges collapse
    unless strict is set, in which case they are rejected.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphFormatError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphFormatError(f"first line must be the vertex count, got {lines[0]!r}") from None
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer endpoint in {line!r}") from None
        edges.append((u, v))
    return Graph.from_edges(n, edges, strict=strict)


def render_graph(g: Graph) -> str:
    """Inverse of parse_graph; edges emitted sorted, one per line."""
    out = [str(g.n)]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs hop distances plus eccentricities and radius.

    Unreachable pairs hold the sentinel value n, which exceeds every real
    distance and fits the same integer width.  Eccentricities and radius are
    only meaningful when the graph is connected.
    """

    dist: np.ndarray  # (n, n) int16
    ecc: np.ndarray  # (n,) int16
    radius: int
    sentinel: int
    connected: bool

    @property
    def n(self) -> int:
        return self.dist.shape[0]


def apsp(g: Graph) -> DistanceMatrix:
    """Exact hop distances via one BFS per vertex, O(n*(n+m)) total."""
    n = g.n
    if n >= 32000:
        raise ValueError("distance tables use int16; graphs this large are unsupported")
    sentinel = n
    dist = np.empty((n, n), dtype=np.int16)
    adj = g.adj
    for s in range(n):
        row = [sentinel] * n
        row[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            du = row[u] + 1
            for w in adj[u]:
                if row[w] == sentinel:
                    row[w] = du
                    q.append(w)
        dist[s] = row
    ecc = dist.max(axis=1)
    connected = bool(int(ecc.max()) < sentinel) if n > 1 else True
    radius = int(ecc.min())
    return DistanceMatrix(dist=dist, ecc=ecc, radius=radius, sentinel=sentinel, connected=connected)


def is_connected(g: Graph) -> bool:
    """True iff a BFS from vertex 0 reaches every vertex (true for n=1)."""
    seen = 1
    stack = [0]
    count = 1
    adj = g.adj
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen >> w & 1:
                seen |= 1 << w
                count += 1
                stack.append(w)
    return count == g.n


def induced_subgraph(g: Graph, keep: int) -> tuple[Graph, list[int]]:
    """Subgraph on the masked vertex set, renumbered densely.

    Returns the subgraph together with the map from new index back to the
    original vertex.  The result may be disconnected.
    """
    if keep == 0:
        raise ValueError("keep set is empty")
    back = list(iter_bits(keep))
    index = {v: i for i, v in enumerate(back)}
    edges = []
    for i, v in enumerate(back):
        for w in iter_bits(g.adj_bits[v] & keep):
            if w > v:
                edges.append((i, index[w]))
    return Graph.from_edges(len(back), edges), back


class DisjointSet:
    """Union-find over vertex indices with explicit activation.

    Roots are maintained eagerly: every union relabels the smaller class, so
    find is a single array lookup.  That trades O(n log n) total relabel work
    for O(1) finds, the right balance when callers scan all active vertices
    far more often than they merge.  `parent[x]` always points directly at
    the root of x, or is -1 while x is inactive.
    """

    def __init__(self, n: int):
        self.n = n
        self.parent: list[int] = [-1] * n
        self._members: dict[int, list[int]] = {}
        self.active_count = 0

    def is_active(self, x: int) -> bool:
        return self.parent[x] >= 0

    def activate(self, x: int) -> None:
        if self.parent[x] >= 0:
            raise ValueError(f"vertex {x} already active")
        self.parent[x] = x
        self._members[x] = [x]
        self.active_count += 1

    def find(self, x: int) -> int:
        r = self.parent[x]
        if r < 0:
            raise ValueError(f"vertex {x} is not active")
        return r

    def union(self, x: int, y: int) -> bool:
        """Merge the classes of x and y; True iff they were distinct."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        mx, my = self._members[rx], self._members[ry]
        if len(mx) < len(my) or (len(mx) == len(my) and ry < rx):
            rx, ry, mx, my = ry, rx, my, mx
        parent = self.parent
        for z in my:
            parent[z] = rx
        mx.extend(my)
        del self._members[ry]
        return True

    def size(self, x: int) -> int:
        return len(self._members[self.find(x)])

    def component_sizes(self) -> dict[int, int]:
        return {r: len(m) for r, m in self._members.items()}
