"""Ball complements: residual components and frontier requirement tables.

For a candidate ball the path solver needs three things: how many pieces
the rest of the graph falls into once the ball is removed, which piece each
outside vertex belongs to, and, for every other center w, how large a power
a ball at w needs before it swallows the ball's frontier into a given
piece.  All of it is built for every (center, power) pair in one cubic
sweep; balls whose complement has more than two components never become
states, so only their component count is kept.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DisconnectedGraphError, DisjointSet, DistanceMatrix, Graph

__all__ = [
    "Ball",
    "ResidualTable",
    "RequirementTable",
    "ball",
    "residual_decompositions",
    "requirement_table",
    "residual_table_csv",
]


@dataclass(frozen=True)
class Ball:
    center: int
    power: int
    members: int  # bit mask


def ball(dm: DistanceMatrix, v: int, p: int) -> Ball:
    """Vertices within distance p of v, as a bit mask."""
    if p < 0:
        raise ValueError(f"power must be nonnegative, got {p}")
    members = 0
    for z in (dm.dist[v] <= p).nonzero()[0]:
        members |= 1 << int(z)
    return Ball(center=v, power=p, members=members)


@dataclass(frozen=True, eq=False)
class ResidualTable:
    """Component structure of the ball complements.

    kappa[v, p] counts the components of the graph minus B(v, p).
    comp_label[v, p, z] is the 1-based component label of z, or 0 for
    vertices inside the ball; labels follow first-touch order over ascending
    vertex index.  Rows and sizes are materialized only for balls with at
    most two components (label 0 is reserved for the empty side of a state).
    """

    n: int
    rho: int
    kappa: np.ndarray  # (n, rho+1) int16
    comp_label: np.ndarray  # (n, rho+1, n) int16
    comp_size: np.ndarray  # (n, rho+1, 3) int32; index = label

    def kept(self, v: int, p: int) -> bool:
        return int(self.kappa[v, p]) <= 2

    def components(self, v: int, p: int) -> int:
        return int(self.kappa[v, p])

    def label_of(self, v: int, p: int, z: int) -> int:
        return int(self.comp_label[v, p, z])

    def size_of(self, v: int, p: int, label: int) -> int:
        return int(self.comp_size[v, p, label])

    def members(self, v: int, p: int, label: int) -> int:
        """Bit mask of the component, built on demand."""
        m = 0
        for z in (self.comp_label[v, p] == label).nonzero()[0]:
            m |= 1 << int(z)
        return m


def residual_decompositions(g: Graph, dm: DistanceMatrix) -> ResidualTable:
    """Component structure of H - B(v, p) for every v and 1 <= p <= radius.

    Radii are processed in decreasing order per center: stepping from p+1 to
    p activates exactly the distance-(p+1) shell (ascending vertex index),
    merging each new vertex with its already-active neighbors through a
    disjoint set.  A scan after each step records labels; the total work per
    center is O(n^2).
    """
    n = g.n
    if n < 2:
        raise ValueError("residual decompositions need at least two vertices")
    if not dm.connected:
        raise DisconnectedGraphError("residual decompositions require a connected graph")
    rho = dm.radius
    kappa = np.zeros((n, rho + 1), dtype=np.int16)
    comp_label = np.zeros((n, rho + 1, n), dtype=np.int16)
    comp_size = np.zeros((n, rho + 1, 3), dtype=np.int32)
    adj = g.adj
    for v in range(n):
        dr = dm.dist[v].tolist()
        ecc_v = int(dm.ecc[v])
        shells: list[list[int]] = [[] for _ in range(ecc_v + 1)]
        for z in range(n):
            shells[dr[z]].append(z)
        dsu = DisjointSet(n)
        ncomp = 0
        for p in range(ecc_v - 1, 0, -1):
            for z in shells[p + 1]:
                dsu.activate(z)
                ncomp += 1
                for y in adj[z]:
                    if dsu.is_active(y) and dsu.union(z, y):
                        ncomp -= 1
            if p > rho:
                continue
            kappa[v, p] = ncomp
            if ncomp > 2:
                continue
            root = dsu.parent
            acts = []
            if ncomp == 1:
                for z in range(n):
                    if dr[z] > p:
                        acts.append(z)
                comp_label[v, p, acts] = 1
                comp_size[v, p, 1] = len(acts)
            else:  # ncomp == 2
                labs = []
                first_root = -1
                c1 = c2 = 0
                for z in range(n):
                    if dr[z] <= p:
                        continue
                    acts.append(z)
                    r = root[z]
                    if first_root < 0:
                        first_root = r
                    if r == first_root:
                        labs.append(1)
                        c1 += 1
                    else:
                        labs.append(2)
                        c2 += 1
                comp_label[v, p, acts] = labs
                comp_size[v, p, 1] = c1
                comp_size[v, p, 2] = c2
    return ResidualTable(n=n, rho=rho, kappa=kappa, comp_label=comp_label, comp_size=comp_size)


@dataclass(frozen=True, eq=False)
class RequirementTable:
    """req[v, p, label-1, w] = max dist(w, z) over frontier vertices z of
    B(v, p) lying in the labeled component; 0 when the frontier is empty.

    A ball (w, q) covers that frontier slice iff the stored value is <= q,
    which is the constant-time form of the arc coverage condition.
    """

    rho: int
    req: np.ndarray  # (n, rho+1, 2, n) int16

    def value(self, v: int, p: int, label: int, w: int) -> int:
        return int(self.req[v, p, label - 1, w])


def requirement_table(g: Graph, dm: DistanceMatrix, rt: ResidualTable) -> RequirementTable:
    """Fill the requirement table in O(n^3).

    A vertex z neighbors B(v, p) exactly when dist(v, z) = p + 1, so every
    ordered pair (v, z) contributes to one radius only.  Pairs are grouped
    by (radius, component) per center and the max over each group's distance
    rows is taken vectorized.
    """
    n = g.n
    rho = rt.rho
    req = np.zeros((n, rho + 1, 2, n), dtype=np.int16)
    dist = dm.dist
    kappa = rt.kappa
    comp_label = rt.comp_label
    for v in range(n):
        p_z = dist[v].astype(np.int64) - 1
        zs = np.nonzero((p_z >= 1) & (p_z <= rho))[0]
        if zs.size == 0:
            continue
        ps = p_z[zs]
        k = kappa[v, ps]
        m = (k >= 1) & (k <= 2)
        zs, ps = zs[m], ps[m]
        if zs.size == 0:
            continue
        labs = comp_label[v, ps, zs].astype(np.int64)
        key = ps * 2 + labs - 1
        order = np.argsort(key, kind="stable")
        zs, key = zs[order], key[order]
        starts = np.nonzero(np.r_[True, key[1:] != key[:-1]])[0]
        gmax = np.maximum.reduceat(dist[zs], starts, axis=0)
        gkey = key[starts]
        req[v, gkey // 2, gkey % 2] = gmax
    return RequirementTable(rho=rho, req=req)


def residual_table_csv(rt: ResidualTable) -> str:
    """Debug dump, one row per ball: v,p,kappa,size1,size2 (sizes blank for
    balls whose decomposition is not kept).  Meant for golden-file diffs."""
    lines = ["v,p,kappa,size1,size2"]
    for v in range(rt.n):
        for p in range(1, rt.rho + 1):
            k = rt.components(v, p)
            if k <= 2:
                s1 = rt.size_of(v, p, 1) if k >= 1 else 0
                s2 = rt.size_of(v, p, 2) if k == 2 else 0
                lines.append(f"{v},{p},{k},{s1},{s2}")
            else:
                lines.append(f"{v},{p},{k},,")
    return "\n".join(lines) + "\n"
