"""Bipartite graphs, perfect matchings, alternating cycles, and flips.

This is the vocabulary every other module speaks.  All values are immutable
after construction and every operation is a pure function, so everything here
is safe to share across threads.

Vertices are opaque string tokens.  An edge is stored as a sorted pair of
vertex names; :func:`edge_key` produces that canonical form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .errors import CapExceeded, NotAlternating

Edge = tuple[str, str]

#: Default ceiling for exhaustive matching enumeration.  Exceeding it raises
#: CapExceeded rather than silently truncating.
DEFAULT_MATCHING_CAP = 1_000_000


def edge_key(u: str, v: str) -> Edge:
    """Canonical (sorted) form of an undirected edge."""
    if u == v:
        raise ValueError(f"self-loop at {u!r}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class BipartiteGraph:
    """A simple bipartite graph with a declared two-sided vertex partition."""

    left: frozenset[str]
    right: frozenset[str]
    edges: frozenset[Edge]

    def __post_init__(self):
        overlap = self.left & self.right
        if overlap:
            raise ValueError(f"sides not disjoint: {sorted(overlap)}")
        for u, v in self.edges:
            if not ((u in self.left and v in self.right)
                    or (u in self.right and v in self.left)):
                raise ValueError(f"edge {{{u},{v}}} does not join left to right")

    @classmethod
    def of(cls, left: Iterable[str], right: Iterable[str],
           edges: Iterable[tuple[str, str]]) -> "BipartiteGraph":
        """Build from iterables, normalizing edge pairs."""
        return cls(frozenset(left), frozenset(right),
                   frozenset(edge_key(u, v) for u, v in edges))

    @cached_property
    def vertices(self) -> frozenset[str]:
        return self.left | self.right

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        """Sorted neighbor lists for every vertex (isolated ones included)."""
        nbrs: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.edges

    def side_of(self, v: str) -> str:
        if v in self.left:
            return "left"
        if v in self.right:
            return "right"
        raise ValueError(f"unknown vertex {v!r}")

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class SimpleGraph:
    """A general simple graph; source instances for the reductions."""

    vertices: frozenset[str]
    edges: frozenset[Edge]

    def __post_init__(self):
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {{{u},{v}}} has endpoint outside the vertex set")

    @classmethod
    def of(cls, vertices: Iterable[str],
           edges: Iterable[tuple[str, str]]) -> "SimpleGraph":
        return cls(frozenset(vertices), frozenset(edge_key(u, v) for u, v in edges))

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        nbrs: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.edges


@dataclass(frozen=True)
class PerfectMatching:
    """An edge set covering every vertex of its graph exactly once.

    The graph is not stored; :meth:`of` validates against one, and operations
    that need graph context take it explicitly.
    """

    edges: frozenset[Edge]

    @classmethod
    def of(cls, g: BipartiteGraph, pairs: Iterable[tuple[str, str]]) -> "PerfectMatching":
        """Validate ``pairs`` as a perfect matching of ``g``."""
        edges = frozenset(edge_key(u, v) for u, v in pairs)
        seen: set[str] = set()
        for u, v in edges:
            if (u, v) not in g.edges:
                raise ValueError(f"edge {{{u},{v}}} not in graph")
            if u in seen or v in seen:
                raise ValueError(f"vertex covered twice by {{{u},{v}}}")
            seen.add(u)
            seen.add(v)
        missing = g.vertices - seen
        if missing:
            raise ValueError(f"vertices not covered: {sorted(missing)[:4]}")
        return cls(edges)

    @cached_property
    def partner(self) -> dict[str, str]:
        p: dict[str, str] = {}
        for u, v in self.edges:
            p[u] = v
            p[v] = u
        return p

    @cached_property
    def vertices(self) -> frozenset[str]:
        return frozenset(self.partner)

    def __contains__(self, edge: tuple[str, str]) -> bool:
        return edge_key(*edge) in self.edges


def is_perfect_matching(g: BipartiteGraph, m: PerfectMatching) -> bool:
    """True iff ``m`` is a valid perfect matching of ``g``."""
    try:
        PerfectMatching.of(g, m.edges)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class Cycle:
    """A simple cycle given by its cyclic vertex sequence.

    The stored rotation is canonical: the lexicographically smallest vertex
    comes first, oriented toward the smaller of its two neighbors.  Bipartite
    graphs only have even cycles, so length must be even and at least 4.
    """

    vertices: tuple[str, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) < 4 or len(vs) % 2 != 0:
            raise ValueError(f"cycle length must be even and >= 4, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise ValueError("cycle vertices must be distinct")
        k = vs.index(min(vs))
        rot = vs[k:] + vs[:k]
        if rot[-1] < rot[1]:
            rot = (rot[0],) + tuple(reversed(rot[1:]))
        object.__setattr__(self, "vertices", rot)

    def __len__(self) -> int:
        return len(self.vertices)

    def edges_in_order(self) -> list[Edge]:
        vs = self.vertices
        return [edge_key(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges_in_order())

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def in_graph(self, g: BipartiteGraph) -> bool:
        return all(e in g.edges for e in self.edges_in_order())


def enumerate_perfect_matchings(g: BipartiteGraph,
                                cap: int = DEFAULT_MATCHING_CAP) -> list[PerfectMatching]:
    """All perfect matchings of ``g`` in deterministic order.

    Backtracks on the lexicographically smallest uncovered left vertex,
    trying right neighbors in lexicographic order, so the output order is
    the lexicographic order of partner sequences.  Raises CapExceeded once
    more than ``cap`` matchings have been found.
    """
    lefts = sorted(g.left)
    if len(g.left) != len(g.right):
        return []
    n = len(lefts)
    if n == 0:
        return [PerfectMatching(frozenset())]
    adj = [g.adjacency[u] for u in lefts]
    out: list[PerfectMatching] = []
    used: set[str] = set()
    chosen: list[str] = []
    next_idx = [0]
    while next_idx:
        level = len(chosen)
        nbrs = adj[level]
        j = next_idx[-1]
        while j < len(nbrs) and nbrs[j] in used:
            j += 1
        if j == len(nbrs):
            next_idx.pop()
            if chosen:
                used.discard(chosen.pop())
            continue
        next_idx[-1] = j + 1
        used.add(nbrs[j])
        chosen.append(nbrs[j])
        if len(chosen) == n:
            out.append(PerfectMatching(frozenset(
                edge_key(lefts[k], chosen[k]) for k in range(n))))
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} perfect matchings")
            used.discard(chosen.pop())
        else:
            next_idx.append(0)
    return out


def has_perfect_matching(g: BipartiteGraph) -> bool:
    """Cheap existence check (augmenting paths), no enumeration."""
    if len(g.left) != len(g.right):
        return False
    match: dict[str, str] = {}

    def augment(u: str, seen: set[str]) -> bool:
        for v in g.adjacency[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match or augment(match[v], seen):
                match[v] = u
                return True
        return False

    for u in sorted(g.left):
        if not augment(u, set()):
            return False
    return True


def random_perfect_matching(g: BipartiteGraph, rng: random.Random) -> Optional[PerfectMatching]:
    """A uniformly-shuffled backtracking sample; None if no matching exists.

    Not uniform over matchings, but deterministic for a given rng state.
    """
    lefts = sorted(g.left)
    if len(g.left) != len(g.right):
        return None

    used: set[str] = set()
    picks: list[Edge] = []

    def rec(i: int) -> bool:
        if i == len(lefts):
            return True
        options = [v for v in g.adjacency[lefts[i]] if v not in used]
        rng.shuffle(options)
        for v in options:
            used.add(v)
            picks.append(edge_key(lefts[i], v))
            if rec(i + 1):
                return True
            picks.pop()
            used.discard(v)
        return False

    if not rec(0):
        return None
    return PerfectMatching(frozenset(picks))


def _check_same_vertex_set(m1: PerfectMatching, m2: PerfectMatching) -> None:
    if m1.vertices != m2.vertices:
        raise ValueError("matchings do not cover the same vertex set")


def symmetric_difference_cycles(m1: PerfectMatching, m2: PerfectMatching) -> list[Cycle]:
    """Vertex-disjoint cycles whose edge union is exactly m1 XOR m2.

    Every returned cycle alternates between m1-edges and m2-edges, so it is
    alternating with respect to both matchings.
    """
    _check_same_vertex_set(m1, m2)
    delta = m1.edges ^ m2.edges
    nbr: dict[str, list[str]] = {}
    for u, v in delta:
        nbr.setdefault(u, []).append(v)
        nbr.setdefault(v, []).append(u)
    cycles: list[Cycle] = []
    seen: set[str] = set()
    for start in sorted(nbr):
        if start in seen:
            continue
        # each vertex of the symmetric difference has exactly two delta-edges
        path = [start]
        seen.add(start)
        prev, cur = start, min(nbr[start])
        while cur != start:
            path.append(cur)
            seen.add(cur)
            a, b = nbr[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(Cycle(tuple(path)))
    cycles.sort(key=lambda c: c.vertices)
    return cycles


def symmetric_difference_cycle_count(m1: PerfectMatching, m2: PerfectMatching) -> int:
    """len(symmetric_difference_cycles(m1, m2)) without building the cycles."""
    _check_same_vertex_set(m1, m2)
    p1, p2 = m1.partner, m2.partner
    seen: set[str] = set()
    count = 0
    for v in p1:
        if v in seen or p1[v] == p2[v]:
            continue
        count += 1
        w = v
        while w not in seen:
            seen.add(w)
            u = p1[w]
            seen.add(u)
            w = p2[u]
    return count


def flip(m: PerfectMatching, c: Cycle) -> PerfectMatching:
    """Flip the alternating cycle ``c``: return m XOR c.

    Raises NotAlternating when every other edge of ``c`` does not lie in
    ``m`` (in particular when no edge of ``c`` does).
    """
    flags = [e in m.edges for e in c.edges_in_order()]
    if not flags[0] and not flags[1]:
        raise NotAlternating("cycle has two consecutive non-matching edges")
    for i, f in enumerate(flags):
        if f == flags[(i + 1) % len(flags)]:
            raise NotAlternating(f"cycle not alternating at position {i}")
    return PerfectMatching(m.edges ^ c.edge_set)


def adjacent(m1: PerfectMatching, m2: PerfectMatching) -> bool:
    """True iff the symmetric difference is the edge set of exactly one cycle."""
    return symmetric_difference_cycle_count(m1, m2) == 1


def enumerate_cycles(g: BipartiteGraph, cap: int = 1_000_000) -> list[Cycle]:
    """All simple cycles of ``g``, canonical and sorted.

    Each cycle is found once: enumeration roots at its smallest vertex and
    fixes the orientation by requiring first neighbor < last neighbor.
    """
    adj = g.adjacency
    cycles: list[Cycle] = []
    order = sorted(g.vertices)
    rank = {v: i for i, v in enumerate(order)}

    def extend(start: str, path: list[str], on_path: set[str]) -> None:
        cur = path[-1]
        for nxt in adj[cur]:
            if nxt == start and len(path) >= 4:
                if path[1] < path[-1]:
                    cycles.append(Cycle(tuple(path)))
                    if len(cycles) > cap:
                        raise CapExceeded(f"more than {cap} cycles")
            elif rank[nxt] > rank[start] and nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                extend(start, path, on_path)
                on_path.discard(nxt)
                path.pop()

    for s in order:
        extend(s, [s], {s})
    cycles.sort(key=lambda c: c.vertices)
    return cycles


def alternating_cycles(g: BipartiteGraph, m: PerfectMatching,
                       cap: int = 1_000_000) -> list[Cycle]:
    """All m-alternating simple cycles of ``g``."""
    out = []
    for c in enumerate_cycles(g, cap):
        flags = [e in m.edges for e in c.edges_in_order()]
        if all(flags[i] != flags[(i + 1) % len(flags)] for i in range(len(flags))):
            out.append(c)
    return out
