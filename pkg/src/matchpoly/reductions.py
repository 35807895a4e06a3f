"""The two hardness reductions with invertible certificates, plus exact
brute-force decision oracles for all four decision problems.

Reduction one: Hamiltonian cycle -> diameter of the matching polytope of
the split-and-towered graph, with h = 2n^2 - n + 1, t = 4h and decision
threshold 2h + 4n.  Reduction two: 4-dimensional matching -> vertex-disjoint
4-cycle cover, via a 12-vertex, 28-edge gadget per hyperedge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import CapExceeded, NotSpanning
from .gadgets import ToweredGraph, build_GH, require_origin
from .graphs import BipartiteGraph, Cycle, Edge, SimpleGraph, edge_key


@dataclass(frozen=True)
class Hypergraph4DM:
    """A 4-dimensional matching instance over four disjoint element sets."""

    w_set: tuple[str, ...]
    x_set: tuple[str, ...]
    y_set: tuple[str, ...]
    z_set: tuple[str, ...]
    hyperedges: tuple[tuple[str, str, str, str], ...]

    def __post_init__(self):
        sets = [set(self.w_set), set(self.x_set), set(self.y_set), set(self.z_set)]
        names = ["W", "X", "Y", "Z"]
        for i in range(4):
            for j in range(i + 1, 4):
                if sets[i] & sets[j]:
                    raise ValueError(f"element sets {names[i]} and {names[j]} overlap")
        if len(set(self.hyperedges)) != len(self.hyperedges):
            raise ValueError("duplicate hyperedges")
        for quad in self.hyperedges:
            for k, elem in enumerate(quad):
                if elem not in sets[k]:
                    raise ValueError(f"hyperedge {quad} component {elem!r} "
                                     f"is not in set {names[k]}")

    @classmethod
    def of(cls, w_set: Iterable[str], x_set: Iterable[str], y_set: Iterable[str],
           z_set: Iterable[str], hyperedges) -> "Hypergraph4DM":
        return cls(tuple(sorted(w_set)), tuple(sorted(x_set)),
                   tuple(sorted(y_set)), tuple(sorted(z_set)),
                   tuple(tuple(q) for q in hyperedges))

    @property
    def elements(self) -> tuple[str, ...]:
        return self.w_set + self.x_set + self.y_set + self.z_set


@dataclass(frozen=True)
class ReductionCertificate:
    """Forward maps from source objects to constructed objects plus the
    parameters used; injective on their domains and invertible on
    gadget-owned vertices."""

    kind: str
    parameters: dict = field(default_factory=dict)
    vertex_map: dict = field(default_factory=dict)
    edge_map: dict = field(default_factory=dict)


def choose_height(n: int) -> int:
    return 2 * n * n - n + 1


def reduce_hamiltonian_to_diameter(h_graph: SimpleGraph,
                                   h_override: Optional[int] = None,
                                   t_override: Optional[int] = None
                                   ) -> tuple[ToweredGraph, int, ReductionCertificate]:
    """Build the split-and-towered graph whose polytope diameter decides
    Hamiltonicity; returns (graph, threshold, certificate)."""
    n = len(h_graph.vertices)
    if n < 3:
        raise ValueError(f"too small: need at least 3 source vertices, got {n}")
    h = choose_height(n) if h_override is None else h_override
    t = 4 * h if t_override is None else t_override
    tg = build_GH(h_graph, h, t)
    origin = require_origin(tg)
    threshold = 2 * h + 4 * n
    cert = ReductionCertificate(
        kind="hamiltonian-to-diameter",
        parameters={"n": n, "h": h, "t": t, "threshold": threshold,
                    "chains": {v: list(c) for v, c in origin.chains.items()}},
        vertex_map={v: list(origin.split[v]) for v in origin.vertices},
        edge_map={f"{u},{v}": [list(edge_key(origin.split[u][0], origin.split[v][1])),
                               list(edge_key(origin.split[v][0], origin.split[u][1]))]
                  for u, v in sorted(h_graph.edges)},
    )
    return tg, threshold, cert


def extract_hamiltonian_from_cycle(tg: ToweredGraph, c: Cycle) -> tuple[str, ...]:
    """Contract each split-to-split subpath of the cycle back to its source
    vertex, yielding a Hamiltonian cycle of the source graph."""
    origin = require_origin(tg)
    by_index = {t.index: t for t in tg.towers}
    label: dict[str, str] = {}
    chain_interior: set[str] = set()
    for v in origin.vertices:
        v1, v2 = origin.split[v]
        label[v1] = v
        label[v2] = v
        for idx in origin.chains[v]:
            for name in by_index[idx].vertex_set:
                label[name] = v
                chain_interior.add(name)
    try:
        labels = [label[x] for x in c.vertices]
    except KeyError as exc:
        raise ValueError(f"cycle vertex {exc} is not part of the construction") from None

    runs: list[str] = []
    for lab in labels:
        if not runs or runs[-1] != lab:
            runs.append(lab)
    if len(runs) > 1 and runs[0] == runs[-1]:
        runs.pop()

    touched = {label[x] for x in c.vertices if x in chain_interior}
    for v in origin.vertices:
        if v not in touched:
            raise NotSpanning(f"cycle touches no tower on the chain of {v!r}")
    if sorted(runs) != sorted(origin.vertices):
        raise NotSpanning("contracted cycle does not visit every source vertex exactly once")
    for i, u in enumerate(runs):
        if edge_key(u, runs[(i + 1) % len(runs)]) not in origin.edges:
            raise NotSpanning(f"contracted step {u}->{runs[(i + 1) % len(runs)]} "
                              "is not a source edge")
    return tuple(runs)


def is_hamiltonian_cycle(h_graph: SimpleGraph, seq: Sequence[str]) -> bool:
    vs = list(seq)
    if len(vs) >= 2 and vs[0] == vs[-1]:
        vs = vs[:-1]
    if len(vs) < 3 or sorted(vs) != sorted(h_graph.vertices):
        return False
    return all(h_graph.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def brute_hamiltonian(h_graph: SimpleGraph, cap: int = 20) -> Optional[tuple[str, ...]]:
    """Exhaustive backtracking search for a Hamiltonian cycle."""
    n = len(h_graph.vertices)
    if n > cap:
        raise CapExceeded(f"Hamiltonian search capped at {cap} vertices, got {n}")
    if n < 3:
        return None
    order = sorted(h_graph.vertices)
    start = order[0]
    adj = h_graph.adjacency
    path = [start]
    on_path = {start}

    def rec() -> bool:
        if len(path) == n:
            return h_graph.has_edge(path[-1], start)
        for nxt in adj[path[-1]]:
            if nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                if rec():
                    return True
                on_path.discard(path.pop())
        return False

    return tuple(path) if rec() else None


def brute_4dm(inst: Hypergraph4DM, cap: int = 10
              ) -> Optional[tuple[tuple[str, str, str, str], ...]]:
    """Exact-cover backtracking for 4-dimensional matching."""
    if len(inst.hyperedges) > cap:
        raise CapExceeded(f"4DM search capped at {cap} hyperedges")
    elements = inst.elements
    if not elements:
        return ()
    sizes = {len(inst.w_set), len(inst.x_set), len(inst.y_set), len(inst.z_set)}
    if len(sizes) != 1:
        return None
    containing: dict[str, list[tuple[str, str, str, str]]] = {e: [] for e in elements}
    for quad in inst.hyperedges:
        for elem in quad:
            containing[elem].append(quad)
    order = sorted(elements)
    covered: set[str] = set()
    picked: list[tuple[str, str, str, str]] = []

    def rec() -> bool:
        free = next((e for e in order if e not in covered), None)
        if free is None:
            return True
        for quad in containing[free]:
            if any(elem in covered for elem in quad):
                continue
            covered.update(quad)
            picked.append(quad)
            if rec():
                return True
            picked.pop()
            covered.difference_update(quad)
        return False

    return tuple(picked) if rec() else None


def four_cycles(g: BipartiteGraph) -> list[Cycle]:
    """All 4-cycles of a bipartite graph, via common-neighbor pairs."""
    out = []
    lefts = sorted(g.left)
    for i, u in enumerate(lefts):
        nu = set(g.adjacency[u])
        for up in lefts[i + 1:]:
            common = sorted(nu & set(g.adjacency[up]))
            for a in range(len(common)):
                for b in range(a + 1, len(common)):
                    out.append(Cycle((u, common[a], up, common[b])))
    out.sort(key=lambda c: c.vertices)
    return out


def has_4cycle_cover(g: BipartiteGraph, cap: int = 40) -> Optional[list[Cycle]]:
    """A set of vertex-disjoint 4-cycles covering every vertex exactly once,
    or None; backtracking over the lexicographically smallest uncovered
    vertex."""
    n = len(g.vertices)
    if n > cap:
        raise CapExceeded(f"cover search capped at {cap} vertices, got {n}")
    if n % 4 != 0:
        return None
    cycles = four_cycles(g)
    at: dict[str, list[Cycle]] = {v: [] for v in g.vertices}
    for c in cycles:
        for v in c.vertices:
            at[v].append(c)
    order = sorted(g.vertices)
    covered: set[str] = set()
    picked: list[Cycle] = []

    def rec() -> bool:
        free = next((v for v in order if v not in covered), None)
        if free is None:
            return True
        for c in at[free]:
            if any(v in covered for v in c.vertices):
                continue
            covered.update(c.vertices)
            picked.append(c)
            if rec():
                return True
            picked.pop()
            covered.difference_update(c.vertices)
        return False

    return list(picked) if rec() else None


def lift_3dm_to_4dm(x_set: Iterable[str], y_set: Iterable[str], z_set: Iterable[str],
                    triples: Iterable[tuple[str, str, str]]) -> Hypergraph4DM:
    """Reduce 3-dimensional matching to 4DM: add a fresh fourth set of the
    common size and cross it with every triple."""
    xs, ys, zs = tuple(sorted(x_set)), tuple(sorted(y_set)), tuple(sorted(z_set))
    q = len(xs)
    if not len(xs) == len(ys) == len(zs):
        raise ValueError(f"unbalanced sets: sizes {len(xs)}/{len(ys)}/{len(zs)}")
    trips = [tuple(t) for t in triples]
    taken = set(xs) | set(ys) | set(zs)
    prefix = "w"
    while any(f"{prefix}{i}" in taken for i in range(q)):
        prefix = "_" + prefix
    ws = tuple(f"{prefix}{i}" for i in range(q))
    quads = [(w, x, y, z) for (x, y, z) in trips for w in ws]
    return Hypergraph4DM.of(ws, xs, ys, zs, quads)


def _gadget_names(idx: int, quad: tuple[str, str, str, str]) -> dict[str, list[str]]:
    return {a: [f"{idx}:{a}:{i}" for i in (1, 2, 3)] for a in quad}


def reduce_4dm_to_4cycle_cover(inst: Hypergraph4DM
                               ) -> tuple[BipartiteGraph, ReductionCertificate]:
    """One exterior vertex per element plus a 12-vertex, 28-edge gadget per
    hyperedge; the graph has a vertex-disjoint 4-cycle cover iff the
    instance has a 4-dimensional matching."""
    # exterior sides: X and Z on one side, W and Y on the other
    left: set[str] = set(inst.x_set) | set(inst.z_set)
    right: set[str] = set(inst.w_set) | set(inst.y_set)
    edges: set[Edge] = set()
    vertex_map: dict = {}
    for idx, quad in enumerate(inst.hyperedges):
        w, x, y, z = quad
        names = _gadget_names(idx, quad)
        if any(n in left or n in right for aux in names.values() for n in aux):
            raise ValueError("gadget vertex names collide with element names")
        # copies 1 and 3 sit opposite their element's exterior side, copy 2 with it
        for elem in (x, z):
            n1, n2, n3 = names[elem]
            right.update((n1, n3))
            left.add(n2)
        for elem in (w, y):
            n1, n2, n3 = names[elem]
            left.update((n1, n3))
            right.add(n2)
        for elem in quad:
            n1, n2, n3 = names[elem]
            edges |= {edge_key(elem, n1), edge_key(n1, n2),
                      edge_key(n2, n3), edge_key(n3, elem)}
        for i in range(3):
            ring = [names[w][i], names[x][i], names[y][i], names[z][i]]
            for k in range(4):
                edges.add(edge_key(ring[k], ring[(k + 1) % 4]))
        vertex_map[str(idx)] = {elem: names[elem] for elem in quad}
    g = BipartiteGraph(frozenset(left), frozenset(right), frozenset(edges))
    cert = ReductionCertificate(
        kind="4dm-to-4cycle-cover",
        parameters={"hyperedges": len(inst.hyperedges),
                    "elements": len(inst.elements)},
        vertex_map=vertex_map,
    )
    return g, cert
