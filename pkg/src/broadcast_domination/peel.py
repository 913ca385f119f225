"""Peel-one-ball outer loop: the exact optimal broadcast solver.

Some optimal efficient broadcast has a ball whose removal leaves either
nothing or a connected graph that admits a path-shaped optimum.  So trying
every (center, power) ball, solving the residual with the path-case solver,
and keeping the cheapest feasible combination is exact.  A residual that is
a single vertex is handled explicitly: it sits outside the peeled ball, so
it must receive power 1 rather than the zero-cost one-vertex convention of
the standalone path problem.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import numpy as np

from .graph import DisconnectedGraphError, DistanceMatrix, Graph, apsp, bits_of, induced_subgraph, is_connected
from .pathdag import solve_path
from .verify import Broadcast, verify_dominating

__all__ = [
    "Candidate",
    "iter_candidates",
    "radial_broadcast",
    "solve_optimal",
]

RESIDUAL_EMPTY = "empty"
RESIDUAL_SINGLETON = "singleton"
RESIDUAL_CONNECTED = "connected"
RESIDUAL_SKIPPED = "skipped-disconnected"


@dataclass(frozen=True)
class Candidate:
    """One peel attempt: ball (x, k) plus the residual solution, if any."""

    peel_center: int
    peel_power: int
    residual_kind: str
    total_cost: Optional[int]
    broadcast: Optional[Broadcast]


def radial_broadcast(dm: DistanceMatrix) -> Broadcast:
    """Single broadcast of power rad(G) from the lowest-index center."""
    center = int(np.argmin(dm.ecc))
    return Broadcast(((center, dm.radius),)) if dm.radius > 0 else Broadcast(())


def _evaluate_candidate(
    g: Graph,
    dm: DistanceMatrix,
    x: int,
    k: int,
    path_solver: Callable[[Graph], Broadcast],
    cap: bool = True,
) -> Candidate:
    dist_row = dm.dist[x]
    outside = np.nonzero(dist_row > k)[0]
    if outside.size == 0:
        cand = Candidate(x, k, RESIDUAL_EMPTY, k, Broadcast(((x, k),)))
    elif outside.size == 1:
        y = int(outside[0])
        cand = Candidate(x, k, RESIDUAL_SINGLETON, k + 1, Broadcast.from_pairs([(x, k), (y, 1)]))
    else:
        keep = bits_of(int(z) for z in outside)
        h, back = induced_subgraph(g, keep)
        if not is_connected(h):
            return Candidate(x, k, RESIDUAL_SKIPPED, None, None)
        sub = path_solver(h)
        assignment = [(x, k)]
        total = k
        for v_h, p_h in sub.assignment:
            orig = back[v_h]
            power = min(p_h, int(dm.ecc[orig])) if cap else p_h
            assignment.append((orig, power))
            total += power
        cand = Candidate(x, k, RESIDUAL_CONNECTED, total, Broadcast.from_pairs(assignment))
    # every non-skipped candidate is a dominating broadcast of the input
    assert verify_dominating(g, dm, cand.broadcast).ok
    return cand


def iter_candidates(
    g: Graph,
    dm: Optional[DistanceMatrix] = None,
    path_solver: Callable[[Graph], Broadcast] = solve_path,
    cap: bool = True,
) -> Iterator[Candidate]:
    """Every peel candidate (x, k), without the incumbent pruning the solver
    applies; used to check feasibility of the full candidate family."""
    if dm is None:
        dm = apsp(g)
    for x in range(g.n):
        for k in range(1, dm.radius + 1):
            yield _evaluate_candidate(g, dm, x, k, path_solver, cap=cap)


def _best_candidate_for_center(
    g: Graph,
    dm: DistanceMatrix,
    x: int,
    path_solver: Callable[[Graph], Broadcast],
    incumbent: int,
) -> tuple[int, int, int, Broadcast] | None:
    """Cheapest candidate for one peel center, pruned against the incumbent.

    Pruning a candidate whose residual is nonempty when k + 1 >= incumbent is
    safe: the residual contributes at least 1, so such a candidate can never
    strictly improve.  Returns (cost, x, k, broadcast) or None.
    """
    n = g.n
    counts = np.bincount(dm.dist[x].astype(np.int64), minlength=n + 1).cumsum()
    best: tuple[int, int, int, Broadcast] | None = None
    bound = incumbent
    for k in range(1, dm.radius + 1):
        ball_size = int(counts[k])
        if ball_size < n and k + 1 >= bound:
            continue
        cand = _evaluate_candidate(g, dm, x, k, path_solver)
        if cand.total_cost is None:
            continue
        if cand.total_cost < bound:
            bound = cand.total_cost
            best = (cand.total_cost, x, k, cand.broadcast)
    return best


_POOL_STATE: dict = {}


def _pool_init(n: int, edges: tuple, path_solver: Callable, radius_bound: int) -> None:
    g = Graph.from_edges(n, edges)
    _POOL_STATE["g"] = g
    _POOL_STATE["dm"] = apsp(g)
    _POOL_STATE["solver"] = path_solver
    _POOL_STATE["incumbent"] = radius_bound


def _pool_worker(x: int):
    best = _best_candidate_for_center(
        _POOL_STATE["g"], _POOL_STATE["dm"], x, _POOL_STATE["solver"], _POOL_STATE["incumbent"]
    )
    if best is None:
        return None
    cost, cx, ck, bc = best
    return cost, cx, ck, bc.assignment


def solve_optimal(
    g: Graph,
    path_solver: Callable[[Graph], Broadcast] = solve_path,
    threads: int = 1,
) -> Broadcast:
    """Optimal dominating broadcast of a connected graph.

    Starts from the radial broadcast, then peels every ball (x, k) with
    1 <= k <= rad(G): an empty residual costs k, a singleton costs k + 1,
    a connected residual costs k plus the path solution with each residual
    power capped at its eccentricity in g, and a disconnected residual is
    skipped.  Ties keep the earliest candidate in (x, k) order, with the
    radial broadcast preceding all of them, so the result is independent of
    the worker count.
    """
    if g.n == 1:
        return Broadcast(())
    dm = apsp(g)
    if not dm.connected:
        raise DisconnectedGraphError("solve_optimal requires a connected graph")
    best_bc = radial_broadcast(dm)
    best_cost = dm.radius
    if threads > 1:
        results = []
        with ProcessPoolExecutor(
            max_workers=threads,
            initializer=_pool_init,
            initargs=(g.n, tuple(g.edges()), path_solver, dm.radius),
        ) as pool:
            for res in pool.map(_pool_worker, range(g.n), chunksize=max(1, g.n // (4 * threads))):
                if res is not None:
                    results.append(res)
        if results:
            cost, x, k, assignment = min(results, key=lambda r: (r[0], r[1], r[2]))
            if cost < best_cost:
                return Broadcast(assignment)
        return best_bc
    for x in range(g.n):
        found = _best_candidate_for_center(g, dm, x, path_solver, best_cost)
        if found is not None and found[0] < best_cost:
            best_cost, _, _, best_bc = found
    return best_bc
