"""Shared helpers: exhaustive small-graph enumeration and seeded randoms."""

from __future__ import annotations

from itertools import combinations

import pytest

from broadcast_domination.generators import SplitMix64, random_tree
from broadcast_domination.graph import Graph, is_connected


def connected_graphs(n):
    """Every connected labeled graph on n vertices, by edge subset."""
    slots = list(combinations(range(n), 2))
    for bits in range(1 << len(slots)):
        edges = [slots[i] for i in range(len(slots)) if bits >> i & 1]
        g = Graph.from_edges(n, edges)
        if is_connected(g):
            yield g


def random_connected_graph(n: int, seed: int) -> Graph:
    """Seeded random connected graph: a uniform tree plus extra edges."""
    tree = random_tree(n, seed)
    rng = SplitMix64(seed ^ 0x5EED5EED)
    edges = set(tree.edges())
    for _ in range(rng.below(n)):
        u, v = rng.below(n), rng.below(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(edges))


def random_suite(count: int, n_lo: int, n_hi: int, base_seed: int = 1000):
    """Deterministic list of random connected graphs cycling over sizes."""
    span = n_hi - n_lo + 1
    return [random_connected_graph(n_lo + i % span, base_seed + i) for i in range(count)]


@pytest.fixture(scope="session")
def small_random_graphs():
    return random_suite(60, 4, 10, base_seed=7000)
