"""Hot-link graph analysis: components, communities, degree centrality.

The graph is undirected and simple: a flagged cell and its reverse merge
into one edge whose weight is the summed score magnitude. Community
detection is a multilevel modularity optimization (local moves to a local
optimum, aggregate, repeat) that is fully deterministic for a given seed:
node visiting order is a seeded shuffle and equal-gain moves resolve to the
lowest community id.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import DataError

# Minimum modularity gain for another multilevel pass.
_MIN_LEVEL_GAIN = 1e-9


@dataclass(frozen=True)
class HotLinkGraph:
    """Undirected weighted graph of flagged links; no loops, no isolates."""

    nodes: tuple
    edges: tuple

    @classmethod
    def from_edges(cls, edges: Iterable[tuple]) -> "HotLinkGraph":
        merged: dict[tuple, float] = {}
        for u, v, w in edges:
            if u == v:
                raise DataError(f"self-loop on {u!r}; loops must be removed upstream")
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0.0) + w
        edge_tuple = tuple((u, v, merged[(u, v)]) for u, v in sorted(merged))
        nodes = set()
        for u, v, _ in edge_tuple:
            nodes.add(u)
            nodes.add(v)
        return cls(nodes=tuple(sorted(nodes)), edges=edge_tuple)

    @cached_property
    def adjacency(self) -> dict:
        adj: dict = {v: {} for v in self.nodes}
        for u, v, w in self.edges:
            adj[u][v] = w
            adj[v][u] = w
        return adj

    @property
    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)

    def degree(self, node) -> int:
        return len(self.adjacency[node])

    def strength(self, node) -> float:
        return sum(self.adjacency[node].values())


def build_graph(hot_links: Iterable[tuple]) -> HotLinkGraph:
    """Symmetrize flagged (citing, cited, score) cells; weight = |score|."""
    return HotLinkGraph.from_edges((u, v, abs(s)) for u, v, s in hot_links)


@dataclass(frozen=True)
class ComponentPartition:
    """Connectivity partition; components ordered by size descending,
    ties broken by smallest member."""

    assignment: dict
    components: tuple


def connected_components(graph: HotLinkGraph) -> ComponentPartition:
    adj = graph.adjacency
    seen: set = set()
    raw: list[list] = []
    for start in graph.nodes:
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        members = []
        while queue:
            v = queue.pop()
            members.append(v)
            for u in sorted(adj[v]):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        raw.append(sorted(members))
    raw.sort(key=lambda comp: (-len(comp), comp[0]))
    assignment = {v: i for i, comp in enumerate(raw) for v in comp}
    return ComponentPartition(assignment=assignment, components=tuple(tuple(c) for c in raw))


def degree_centrality(graph: HotLinkGraph) -> dict:
    """Unweighted incident-edge count per node."""
    return {v: graph.degree(v) for v in graph.nodes}


def modularity(graph: HotLinkGraph, partition: Mapping) -> float:
    """Q = sum_c [e_c/m - (d_c/2m)^2] with weighted edges.

    e_c is the intra-community edge weight, d_c the community degree sum and
    m the total edge weight. An edgeless graph has Q = 0 by convention.
    """
    missing = [v for v in graph.nodes if v not in partition]
    if missing:
        raise DataError(f"partition is missing nodes: {missing[:5]}")
    m = graph.total_weight
    if m <= 0:
        return 0.0
    intra: dict = defaultdict(float)
    deg: dict = defaultdict(float)
    for u, v, w in graph.edges:
        cu, cv = partition[u], partition[v]
        deg[cu] += w
        deg[cv] += w
        if cu == cv:
            intra[cu] += w
    return sum(intra[c] / m - (deg[c] / (2.0 * m)) ** 2 for c in deg)


@dataclass(frozen=True)
class CommunityPartition:
    """Modularity partition; every community is internally connected."""

    assignment: dict
    q: float
    seed: int


def _level_modularity(adj: list[dict], comm: list[int], m: float) -> float:
    # adj uses the A[v][v] = 2*loop convention, so the inner sums count every
    # internal edge twice and every loop twice as well.
    twice_intra: dict[int, float] = defaultdict(float)
    deg: dict[int, float] = defaultdict(float)
    for v, nbrs in enumerate(adj):
        cv = comm[v]
        for u, w in nbrs.items():
            deg[cv] += w
            if comm[u] == cv:
                twice_intra[cv] += w
    return sum(
        twice_intra[c] / (2.0 * m) - (deg[c] / (2.0 * m)) ** 2 for c in deg
    )


def _move_nodes(adj: list[dict], m: float, rng: random.Random) -> list[int]:
    """One local-move phase: iterate to a local optimum of the gain rule."""
    n = len(adj)
    comm = list(range(n))
    k = [sum(nbrs.values()) for nbrs in adj]
    tot = k[:]
    order = list(range(n))
    rng.shuffle(order)
    two_m_sq = 2.0 * m * m
    while True:
        improved = False
        for v in order:
            c_old = comm[v]
            tot[c_old] -= k[v]
            links: dict[int, float] = defaultdict(float)
            for u, w in adj[v].items():
                if u != v:
                    links[comm[u]] += w
            gain_old = links.get(c_old, 0.0) / m - tot[c_old] * k[v] / two_m_sq
            best_c, best_gain = c_old, gain_old
            for c in sorted(links):
                gain = links[c] / m - tot[c] * k[v] / two_m_sq
                if gain > best_gain or (gain == best_gain and c < best_c):
                    best_c, best_gain = c, gain
            comm[v] = best_c
            tot[best_c] += k[v]
            if best_c != c_old and best_gain > gain_old:
                improved = True
        if not improved:
            return comm


def _aggregate(adj: list[dict], comm: list[int]) -> tuple[list[dict], dict[int, int]]:
    renum = {c: i for i, c in enumerate(sorted(set(comm)))}
    new_adj: list[dict] = [defaultdict(float) for _ in range(len(renum))]
    for v, nbrs in enumerate(adj):
        cv = renum[comm[v]]
        for u, w in nbrs.items():
            if u < v:
                continue
            if u == v:
                new_adj[cv][cv] += w
            else:
                cu = renum[comm[u]]
                if cu == cv:
                    new_adj[cv][cv] += 2.0 * w
                else:
                    new_adj[cu][cv] += w
                    new_adj[cv][cu] += w
    return [dict(nbrs) for nbrs in new_adj], renum


def _split_disconnected(graph: HotLinkGraph, assignment: dict) -> dict:
    """Split internally disconnected communities into their connected
    pieces. This never lowers Q: the intra weight is preserved while the
    squared-degree penalty strictly shrinks."""
    members: dict = defaultdict(list)
    for v, c in assignment.items():
        members[c].append(v)
    adj = graph.adjacency
    pieces: list[list] = []
    for c in sorted(members):
        todo = set(members[c])
        while todo:
            start = min(todo)
            queue = [start]
            todo.discard(start)
            piece = [start]
            while queue:
                v = queue.pop()
                for u in sorted(adj[v]):
                    if u in todo:
                        todo.discard(u)
                        piece.append(u)
                        queue.append(u)
            pieces.append(sorted(piece))
    pieces.sort(key=lambda p: p[0])
    return {v: i for i, piece in enumerate(pieces) for v in piece}


def _multilevel(adj0: list[dict], m: float, rng: random.Random) -> list[int]:
    """One full multilevel run; returns the community of every base node."""
    node2agg = list(range(len(adj0)))
    adj = adj0
    q_level = _level_modularity(adj, list(range(len(adj))), m)
    while True:
        comm = _move_nodes(adj, m, rng)
        q_new = _level_modularity(adj, comm, m)
        assert q_new >= q_level - 1e-12, "local moves must never lower Q"
        adj, renum = _aggregate(adj, comm)
        node2agg = [renum[comm[agg]] for agg in node2agg]
        if q_new - q_level <= _MIN_LEVEL_GAIN or len(adj) == 1:
            return node2agg
        q_level = q_new


def louvain(graph: HotLinkGraph, seed: int = 0, restarts: int = 8) -> CommunityPartition:
    """Multilevel modularity optimization, deterministic for a given seed.

    The multilevel pass is greedy, so it is repeated ``restarts`` times with
    fresh visiting orders drawn from the seeded stream and the best
    partition kept (first achieved wins ties). Identical seed, identical
    partition.
    """
    if not graph.nodes:
        raise DataError("community detection requires a non-empty graph")
    nodes = list(graph.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    adj: list[dict] = [dict() for _ in nodes]
    for u, v, w in graph.edges:
        adj[index[u]][index[v]] = w
        adj[index[v]][index[u]] = w
    m = graph.total_weight
    rng = random.Random(seed)

    if m <= 0:
        assignment = {v: i for i, v in enumerate(nodes)}
        return CommunityPartition(assignment=assignment, q=0.0, seed=seed)

    best_assignment: dict | None = None
    best_q = -float("inf")
    for _ in range(max(1, restarts)):
        node2agg = _multilevel(adj, m, rng)
        assignment = {v: node2agg[i] for i, v in enumerate(nodes)}
        assignment = _split_disconnected(graph, assignment)
        q = modularity(graph, assignment)
        if q > best_q:
            best_assignment, best_q = assignment, q
    return CommunityPartition(assignment=best_assignment, q=best_q, seed=seed)
