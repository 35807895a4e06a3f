"""Skeleton of the perfect matching polytope and its diameters.

The skeleton has one node per perfect matching and an edge whenever the
symmetric difference of two matchings is a single cycle.  The monotone
diameter is computed by its graph characterization: the maximum number of
cycles in the symmetric difference of two perfect matchings.  The witness
cost function provides the independent certificate for that value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import DisconnectedSkeleton, NoPerfectMatching, UnreachableOptimum
from .graphs import (
    DEFAULT_MATCHING_CAP,
    BipartiteGraph,
    Edge,
    PerfectMatching,
    enumerate_perfect_matchings,
    symmetric_difference_cycle_count,
)


@dataclass(frozen=True)
class SkeletonGraph:
    """Nodes are perfect matchings in enumeration order; adjacency is the
    one-cycle criterion and is symmetric with no self-loops."""

    nodes: tuple[PerfectMatching, ...]
    adjacency: tuple[frozenset[int], ...]

    @cached_property
    def index(self) -> dict[PerfectMatching, int]:
        return {m: i for i, m in enumerate(self.nodes)}

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2


@dataclass(frozen=True)
class CostFunction:
    """Nonnegative integer weight for every edge of the graph."""

    weights: dict[Edge, int]

    def of_matching(self, m: PerfectMatching) -> int:
        return sum(self.weights[e] for e in m.edges)


def build_skeleton(g: BipartiteGraph, cap: int = DEFAULT_MATCHING_CAP) -> SkeletonGraph:
    matchings = enumerate_perfect_matchings(g, cap)
    if not matchings:
        raise NoPerfectMatching("graph has no perfect matching")
    n = len(matchings)
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if symmetric_difference_cycle_count(matchings[i], matchings[j]) == 1:
                adj[i].add(j)
                adj[j].add(i)
    return SkeletonGraph(tuple(matchings), tuple(frozenset(a) for a in adj))


def _bfs_levels(s: SkeletonGraph, start: int) -> list[int]:
    dist = [-1] * len(s.nodes)
    dist[start] = 0
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in sorted(s.adjacency[i]):
            if dist[j] < 0:
                dist[j] = dist[i] + 1
                queue.append(j)
    return dist


def diameter(s: SkeletonGraph) -> int:
    """Max over all node pairs of BFS distance."""
    if not s.nodes:
        raise ValueError("empty skeleton")
    best = 0
    for i in range(len(s.nodes)):
        dist = _bfs_levels(s, i)
        if min(dist) < 0:
            raise DisconnectedSkeleton("skeleton is disconnected")
        best = max(best, max(dist))
    return best


def monotone_diameter(g: BipartiteGraph, cap: int = DEFAULT_MATCHING_CAP) -> int:
    """Maximum number of cycles in the symmetric difference of two perfect
    matchings of ``g``; equals the monotone diameter of the polytope."""
    matchings = enumerate_perfect_matchings(g, cap)
    if not matchings:
        raise NoPerfectMatching("graph has no perfect matching")
    best = 0
    for i in range(len(matchings)):
        for j in range(i + 1, len(matchings)):
            best = max(best, symmetric_difference_cycle_count(matchings[i], matchings[j]))
    return best


def witness_cost_function(g: BipartiteGraph, m: PerfectMatching,
                          mstar: PerfectMatching) -> CostFunction:
    """Weights 0 on mstar, 1 on m-minus-mstar, |V| elsewhere.

    Under these costs the shortest monotone walk from m to the optimum
    flips exactly the cycles of m XOR mstar.
    """
    big = len(g.vertices)
    weights: dict[Edge, int] = {}
    for e in g.edges:
        if e in mstar.edges:
            weights[e] = 0
        elif e in m.edges:
            weights[e] = 1
        else:
            weights[e] = big
    return CostFunction(weights)


def monotone_distance(s: SkeletonGraph, cost: CostFunction, start: int) -> int:
    """Length of the shortest cost-non-increasing path from node ``start``
    to some cost-optimal node; BFS on the directed monotone skeleton."""
    if not 0 <= start < len(s.nodes):
        raise ValueError(f"start index {start} out of range")
    node_cost = [cost.of_matching(m) for m in s.nodes]
    optimum = min(node_cost)
    if node_cost[start] == optimum:
        return 0
    dist = {start: 0}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in sorted(s.adjacency[i]):
            if j in dist or node_cost[j] > node_cost[i]:
                continue
            dist[j] = dist[i] + 1
            if node_cost[j] == optimum:
                return dist[j]
            queue.append(j)
    raise UnreachableOptimum("no monotone path reaches a cost-optimal node")
