"""Deterministic benchmark graph families.

Random families draw from splitmix64, so an instance is pinned down by
(family, n, seed, params) alone, with no dependence on Python's RNG.  The
same spec always reproduces the same edge set, in any process.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush

from .graph import Graph, is_connected

__all__ = [
    "FAMILIES",
    "GeneratorSpec",
    "SplitMix64",
    "generate",
    "path_graph",
    "cycle_graph",
    "star_graph",
    "wheel_graph",
    "barbell_graph",
    "random_tree",
    "sparse_random",
]

FAMILIES = ("path", "cycle", "random-tree", "sparse-random", "barbell", "star", "wheel")

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """The standard splitmix64 generator; tiny and portable.

    State advances by the 64-bit golden ratio; output is the finalizer
    z ^= z>>30; z *= 0xBF58476D1CE4E5B9; z ^= z>>27; z *= 0x94D049BB133111EB;
    z ^= z>>31.  Bounded draws use unbiased rejection.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform draw from [0, bound) by rejection."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            z = self.next_u64()
            if z < limit:
                return z % bound


@dataclass
class GeneratorSpec:
    family: str
    n: int
    seed: int = 0
    extra: dict = field(default_factory=dict)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Center 0 joined to n-1 leaves."""
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def wheel_graph(n: int) -> Graph:
    """Hub 0 joined to every vertex of the cycle 1..n-1."""
    if n < 4:
        raise ValueError(f"wheel needs n >= 4, got {n}")
    edges = [(0, i) for i in range(1, n)]
    edges += [(i, i + 1) for i in range(1, n - 1)]
    edges.append((n - 1, 1))
    return Graph.from_edges(n, edges)


def barbell_graph(n: int, bell: int | None = None) -> Graph:
    """Two cliques of size floor(n/3) joined by a path of the rest."""
    if bell is None:
        bell = n // 3
    middle = n - 2 * bell
    if bell < 2 or middle < 1:
        raise ValueError(f"barbell with n={n}, bell={bell} is not decomposable")
    edges = []
    for i in range(bell):
        for j in range(i + 1, bell):
            edges.append((i, j))
            edges.append((n - bell + i, n - bell + j))
    for i in range(bell, n - bell - 1):
        edges.append((i, i + 1))
    edges.append((bell - 1, bell))
    edges.append((n - bell - 1, n - bell))
    return Graph.from_edges(n, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree via a sampled Pruefer sequence."""
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    rng = SplitMix64(seed)
    seq = [rng.below(n) for _ in range(n - 2)]
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapify(leaves)
    edges = []
    for x in seq:
        v = heappop(leaves)
        edges.append((v, x))
        deg[x] -= 1
        if deg[x] == 1:
            heappush(leaves, x)
    edges.append((heappop(leaves), heappop(leaves)))
    return Graph.from_edges(n, edges)


def sparse_random(n: int, seed: int, p: float | None = None, max_attempts: int = 10000) -> Graph:
    """Connected Erdos-Renyi graph by rejection sampling.

    Default edge probability 3/n keeps the expected degree at 3.  Each edge
    slot consumes one 53-bit draw compared against an integer threshold, so
    the instance is exact, not float-rounding dependent.
    """
    if n == 1:
        return Graph.from_edges(1, [])
    if p is None:
        p = min(1.0, 3.0 / n)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0,1], got {p}")
    thresh = int(p * (1 << 53))
    rng = SplitMix64(seed)
    for _ in range(max_attempts):
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.next_u64() >> 11 < thresh:
                    edges.append((u, v))
        g = Graph.from_edges(n, edges)
        if is_connected(g):
            return g
    raise ValueError(f"no connected sample for n={n}, p={p} after {max_attempts} attempts")


def generate(spec: GeneratorSpec) -> Graph:
    """Dispatch on the family name; the result is always connected."""
    family, n = spec.family, spec.n
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if family == "path":
        g = path_graph(n)
    elif family == "cycle":
        g = cycle_graph(n)
    elif family == "star":
        g = star_graph(n)
    elif family == "wheel":
        g = wheel_graph(n)
    elif family == "barbell":
        bell = spec.extra.get("bell")
        g = barbell_graph(n, bell=int(bell) if bell is not None else None)
    elif family == "random-tree":
        g = random_tree(n, spec.seed)
    elif family == "sparse-random":
        p = spec.extra.get("p")
        g = sparse_random(n, spec.seed, p=float(p) if p is not None else None)
    else:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
    assert is_connected(g)
    return g
