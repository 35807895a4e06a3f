"""Tower gadgets, multi-tower chains, and the split-graph construction.

A tower of height h on an edge {v,w} removes the edge and inserts a ladder
of 2h+2 fresh vertices::

    a_h -- b_h
     |      |        horizontals {a_i, b_i},  i = 0..h
    a_1 -- b_1       verticals   {a_i, a_i+1}, {b_i, b_i+1}
     |      |        boundary    {v, a_0}, {b_0, w}
    a_0    b_0
     |      |
     v      w

Chaining t towers on one edge builds the next tower on {b_0 of the previous
tower, w}.  The split construction duplicates every vertex of a general
source graph into a pair joined by an edge, redirects source edges across
the copies, and then chains towers onto every split edge.

Tower vertices are named "t{k}:a{i}" / "t{k}:b{i}" where k is the tower's
registry index; split copies of a source vertex v are "v:1" and "v:2".
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Optional, Union

from .errors import WrongOrigin
from .graphs import (
    BipartiteGraph,
    Cycle,
    Edge,
    PerfectMatching,
    SimpleGraph,
    edge_key,
)


@dataclass(frozen=True)
class TowerDescriptor:
    """One tower: its registry index, the (ordered) edge it replaced when it
    was built, the ladder vertex names bottom-up, and its current
    attachments.

    ``base`` never changes; ``attach`` starts equal to it but is updated
    when a later tower is chained onto one of this tower's boundary edges,
    so ``attach`` always names the vertices currently joined to a_0 and b_0.
    """

    index: int
    base: tuple[str, str]  # edge replaced at construction; a_0 went to base[0]
    height: int
    a: tuple[str, ...]
    b: tuple[str, ...]
    attach: tuple[str, str] = ()  # current (neighbor of a_0, neighbor of b_0)

    def __post_init__(self):
        if not self.attach:
            object.__setattr__(self, "attach", self.base)

    @property
    def boundary(self) -> tuple[Edge, Edge]:
        """The two edges joining the tower to the rest of the graph."""
        v, w = self.attach
        return edge_key(v, self.a[0]), edge_key(self.b[0], w)

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.a) | frozenset(self.b)

    def horizontal(self, i: int) -> Edge:
        return edge_key(self.a[i], self.b[i])

    @property
    def interior_edges(self) -> frozenset[Edge]:
        h = self.height
        es = [self.horizontal(i) for i in range(h + 1)]
        es += [edge_key(self.a[i], self.a[i + 1]) for i in range(h)]
        es += [edge_key(self.b[i], self.b[i + 1]) for i in range(h)]
        return frozenset(es)

    @property
    def edge_set(self) -> frozenset[Edge]:
        """E_T: horizontals, verticals, and the two current boundary edges."""
        return self.interior_edges | frozenset(self.boundary)

    def path(self, k: int) -> tuple[str, ...]:
        """The unique v-w path through the tower using horizontal k:
        (v, a_0, ..., a_k, b_k, ..., b_0, w) for current attachments v, w."""
        if not 0 <= k <= self.height:
            raise ValueError(f"path index {k} out of range 0..{self.height}")
        v, w = self.attach
        return (v,) + self.a[:k + 1] + tuple(reversed(self.b[:k + 1])) + (w,)


@dataclass(frozen=True)
class GHOrigin:
    """Provenance of a split-construction graph: the source graph, the split
    map, and the tower chain on every split edge."""

    vertices: tuple[str, ...]
    edges: frozenset[Edge]
    split: dict[str, tuple[str, str]]
    chains: dict[str, tuple[int, ...]]

    def source_graph(self) -> SimpleGraph:
        return SimpleGraph(frozenset(self.vertices), self.edges)

    @cached_property
    def split_vertices(self) -> frozenset[str]:
        return frozenset(x for pair in self.split.values() for x in pair)


@dataclass(frozen=True)
class ToweredGraph:
    """A bipartite graph plus the registry of towers living inside it."""

    graph: BipartiteGraph
    towers: tuple[TowerDescriptor, ...]
    origin: Optional[GHOrigin] = None

    def __post_init__(self):
        seen: set[str] = set()
        for t in self.towers:
            if t.vertex_set & seen:
                raise ValueError(f"tower {t.index} shares vertices with another tower")
            seen |= t.vertex_set
            if not t.edge_set <= self.graph.edges:
                raise ValueError(f"tower {t.index} edges missing from graph")
            if edge_key(*t.base) in self.graph.edges:
                raise ValueError(f"replaced base edge of tower {t.index} still present")

    def tower(self, index: int) -> TowerDescriptor:
        for t in self.towers:
            if t.index == index:
                return t
        raise ValueError(f"no tower with index {index}")


def _tower_names(index: int, h: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    a = tuple(f"t{index}:a{i}" for i in range(h + 1))
    b = tuple(f"t{index}:b{i}" for i in range(h + 1))
    return a, b


def add_tower(g: Union[BipartiteGraph, ToweredGraph], e: tuple[str, str],
              h: int) -> ToweredGraph:
    """Replace the edge ``e = (v, w)`` by a tower of height ``h``.

    The order of ``e`` matters: a_0 attaches to v and b_0 to w.  The
    bipartition extends consistently (a_0 on w's side, alternating upward).
    """
    if h < 1:
        raise ValueError(f"invalid height {h}; towers need h >= 1")
    if isinstance(g, ToweredGraph):
        base_graph, towers, origin = g.graph, g.towers, g.origin
    else:
        base_graph, towers, origin = g, (), None
    v, w = e
    if not base_graph.has_edge(v, w):
        raise ValueError(f"edge {{{v},{w}}} absent from graph")

    index = max((t.index for t in towers), default=0) + 1
    a, b = _tower_names(index, h)
    fresh = set(a) | set(b)
    if fresh & base_graph.vertices:
        raise ValueError(f"tower {index} vertex names collide with the host graph")
    desc = TowerDescriptor(index, (v, w), h, a, b)

    # chaining onto a boundary edge of an existing tower moves that tower's
    # attachment to the new ladder
    removed = edge_key(v, w)
    rewired = []
    for t in towers:
        pa, na = t.attach
        if edge_key(pa, t.a[0]) == removed:
            pa = desc.a[0] if t.a[0] == v else desc.b[0]
        if edge_key(t.b[0], na) == removed:
            na = desc.a[0] if t.b[0] == v else desc.b[0]
        rewired.append(t if (pa, na) == t.attach else replace(t, attach=(pa, na)))
    towers = tuple(rewired)

    v_left = v in base_graph.left
    # a_0 sits opposite v; levels alternate; b_i sits opposite a_i
    new_left, new_right = set(base_graph.left), set(base_graph.right)
    for i in range(h + 1):
        a_on_left = v_left == (i % 2 == 1)
        (new_left if a_on_left else new_right).add(a[i])
        (new_right if a_on_left else new_left).add(b[i])

    edges = set(base_graph.edges)
    edges.discard(edge_key(v, w))
    edges |= desc.edge_set
    new_graph = BipartiteGraph(frozenset(new_left), frozenset(new_right),
                               frozenset(edges))
    return ToweredGraph(new_graph, towers + (desc,), origin)


def add_towers(g: Union[BipartiteGraph, ToweredGraph], e: tuple[str, str],
               t: int, h: int) -> ToweredGraph:
    """Chain ``t`` towers of height ``h`` on the edge ``e = (v, w)``."""
    if t < 1:
        raise ValueError(f"invalid tower count {t}; need t >= 1")
    v, w = e
    tg = add_tower(g, (v, w), h)
    for _ in range(t - 1):
        tg = add_tower(tg, (tg.towers[-1].b[0], w), h)
    return tg


def split_names(v: str) -> tuple[str, str]:
    return f"{v}:1", f"{v}:2"


def build_GH(h_graph: SimpleGraph, h: int, t: int) -> ToweredGraph:
    """Split every source vertex into a joined pair, redirect source edges
    across the copies, then chain ``t`` towers of height ``h`` on every
    split edge.  The origin map records splits and tower chains."""
    if h < 1:
        raise ValueError(f"invalid height {h}")
    if t < 1:
        raise ValueError(f"invalid tower count {t}")
    sources = sorted(h_graph.vertices)
    left = {split_names(v)[0] for v in sources}
    right = {split_names(v)[1] for v in sources}
    edges: set[Edge] = set()
    for v in sources:
        edges.add(edge_key(*split_names(v)))
    for u, v in h_graph.edges:
        u1, u2 = split_names(u)
        v1, v2 = split_names(v)
        edges.add(edge_key(u1, v2))
        edges.add(edge_key(v1, u2))
    prime = BipartiteGraph(frozenset(left), frozenset(right), frozenset(edges))

    tg: Union[BipartiteGraph, ToweredGraph] = prime
    chains: dict[str, tuple[int, ...]] = {}
    for v in sources:
        v1, v2 = split_names(v)
        before = tg.towers[-1].index if isinstance(tg, ToweredGraph) else 0
        tg = add_towers(tg, (v1, v2), t, h)
        chains[v] = tuple(range(before + 1, before + 1 + t))
    origin = GHOrigin(tuple(sources), h_graph.edges,
                      {v: split_names(v) for v in sources}, chains)
    assert isinstance(tg, ToweredGraph)
    return replace(tg, origin=origin)


def require_origin(tg: ToweredGraph) -> GHOrigin:
    if tg.origin is None:
        raise WrongOrigin("towered graph lacks split-construction origin metadata")
    return tg.origin


def horizontal_indices(tg: ToweredGraph, tower: TowerDescriptor,
                       m: PerfectMatching) -> frozenset[int]:
    """{ i : horizontal edge {a_i, b_i} lies in m }."""
    if m.vertices != tg.graph.vertices:
        raise ValueError("matching does not cover the towered graph")
    return frozenset(i for i in range(tower.height + 1)
                     if tower.horizontal(i) in m.edges)


def depth(tg: ToweredGraph, tower: TowerDescriptor,
          m: PerfectMatching) -> Optional[int]:
    """min of the horizontal indices, or None when there are none."""
    hs = horizontal_indices(tg, tower, m)
    return min(hs) if hs else None


def touches(c: Cycle, tower: TowerDescriptor) -> bool:
    """True iff the cycle contains both boundary edges of the tower."""
    lo, hi = tower.boundary
    return lo in c.edge_set and hi in c.edge_set


def tower_path(tower: TowerDescriptor, k: int) -> tuple[str, ...]:
    """The v-w path through the tower whose horizontal edge is {a_k, b_k}."""
    return tower.path(k)


def contract_matching(tg: ToweredGraph, tower: TowerDescriptor,
                      m: PerfectMatching) -> PerfectMatching:
    """Image of ``m`` in the graph where ``tower`` is replaced by an edge
    joining its attachments: tower-incident edges drop, the contracted edge
    appears iff the boundary edges were matched (both in or both out, by
    parity)."""
    lo, hi = tower.boundary
    if (lo in m.edges) != (hi in m.edges):
        raise ValueError("matching uses exactly one boundary edge; not a perfect matching")
    kept = {e for e in m.edges
            if not (e[0] in tower.vertex_set or e[1] in tower.vertex_set)}
    if lo in m.edges:
        kept.add(edge_key(*tower.attach))
    return PerfectMatching(frozenset(kept))


def contract_tower(tg: ToweredGraph, tower: TowerDescriptor) -> ToweredGraph:
    """Remove one tower, joining its attachments by an edge."""
    ladder = tower.vertex_set
    prev, nxt = tower.attach
    keep_left = frozenset(x for x in tg.graph.left if x not in ladder)
    keep_right = frozenset(x for x in tg.graph.right if x not in ladder)
    edges = {e for e in tg.graph.edges
             if e[0] not in ladder and e[1] not in ladder}
    edges.add(edge_key(prev, nxt))
    graph = BipartiteGraph(keep_left, keep_right, frozenset(edges))
    towers = []
    for t in tg.towers:
        if t.index == tower.index:
            continue
        pa, na = t.attach
        if pa in ladder:
            pa = nxt if pa == tower.a[0] else prev
        if na in ladder:
            na = nxt if na == tower.a[0] else prev
        towers.append(t if (pa, na) == t.attach else replace(t, attach=(pa, na)))
    origin = tg.origin
    if origin is not None:
        chains = {v: tuple(i for i in chain if i != tower.index)
                  for v, chain in origin.chains.items()}
        origin = replace(origin, chains=chains)
    return ToweredGraph(graph, tuple(towers), origin)
