"""Flip sequences: verification, the tower-extension schedule, far-apart
matchings, the Hamiltonian upper-bound walk, and brute-force distance
oracles.

A flip sequence (C_1, ..., C_l) from M to M' requires each C_i to be
alternating with respect to the running matching and the final matching to
equal M'.  The extension schedule over a tower replaces the contracted base
edge in each cycle by a ladder path: first the paths for the start
matching's horizontal indices in ascending order, then the paths for the
target's indices in descending order, then bottom paths P_0 as padding.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import (
    CapExceeded,
    NotHamiltonian,
    PreconditionViolation,
    Unreachable,
    WrongOrigin,
)
from .gadgets import (
    GHOrigin,
    TowerDescriptor,
    ToweredGraph,
    contract_matching,
    horizontal_indices,
    require_origin,
    touches,
)
from .graphs import (
    DEFAULT_MATCHING_CAP,
    BipartiteGraph,
    Cycle,
    Edge,
    PerfectMatching,
    edge_key,
    flip,
    is_perfect_matching,
    symmetric_difference_cycles,
)
from .skeleton import build_skeleton


@dataclass(frozen=True)
class FlipSequence:
    """An ordered list of cycles; validity is relative to a start matching."""

    cycles: tuple[Cycle, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


@dataclass(frozen=True)
class FlipVerification:
    """Outcome of verify_flip_sequence; falsy on failure, with the first
    offending cycle index (1-based) when one exists."""

    ok: bool
    failed_index: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_flip_sequence(g: BipartiteGraph, m1: PerfectMatching,
                         seq: FlipSequence, m2: PerfectMatching) -> FlipVerification:
    """Check that ``seq`` transforms m1 into m2 by valid alternating flips."""
    for name, m in (("start", m1), ("end", m2)):
        if not is_perfect_matching(g, m):
            raise ValueError(f"{name} matching is not a perfect matching of the graph")
    cur = m1
    for i, c in enumerate(seq, start=1):
        if not c.in_graph(g):
            return FlipVerification(False, i, "cycle uses a non-edge of the graph")
        flags = [e in cur.edges for e in c.edges_in_order()]
        if any(flags[k] == flags[(k + 1) % len(flags)] for k in range(len(flags))):
            return FlipVerification(False, i, "cycle not alternating for the running matching")
        cur = flip(cur, c)
    if cur != m2:
        return FlipVerification(False, None, "sequence does not end at the target matching")
    return FlipVerification(True)


def aux_matching(tg: ToweredGraph) -> PerfectMatching:
    """The canonical matching of a split-construction graph: every other
    edge along each towered chain (including the edges at both split
    copies), plus the horizontals {a_i, b_i}, i >= 1, inside each tower."""
    origin = require_origin(tg)
    edges: set[Edge] = set()
    for v in origin.vertices:
        v1, v2 = origin.split[v]
        chain = [tg.tower(i) for i in origin.chains[v]]
        edges.add(edge_key(v1, chain[0].a[0]))
        for first, second in zip(chain, chain[1:]):
            edges.add(edge_key(first.b[0], second.a[0]))
        edges.add(edge_key(chain[-1].b[0], v2))
        for t in chain:
            for i in range(1, t.height + 1):
                edges.add(t.horizontal(i))
    return PerfectMatching.of(tg.graph, edges)


def normalize_to_aux(tg: ToweredGraph,
                     m: PerfectMatching) -> tuple[PerfectMatching, FlipSequence]:
    """Flip exactly the cycles of m XOR aux that meet a split vertex.

    The result agrees with the canonical matching on all split copies and,
    by tower parity, on every tower boundary vertex; at most 2n cycles are
    flipped, n the number of source vertices.
    """
    origin = require_origin(tg)
    aux = aux_matching(tg)
    split = origin.split_vertices
    chosen = [c for c in symmetric_difference_cycles(m, aux)
              if c.vertex_set & split]
    cur = m
    for c in chosen:
        cur = flip(cur, c)
    return cur, FlipSequence(tuple(chosen))


def _splice(vertices: tuple[str, ...], v: str, w: str,
            interior: tuple[str, ...]) -> tuple[str, ...]:
    """Replace the edge (v, w) of a cycle's vertex sequence by the path
    v, interior..., w (interior given in v-to-w order)."""
    n = len(vertices)
    for i in range(n):
        x, y = vertices[i], vertices[(i + 1) % n]
        if (x, y) == (v, w):
            return vertices[:i + 1] + interior + vertices[i + 1:]
        if (x, y) == (w, v):
            return vertices[:i + 1] + tuple(reversed(interior)) + vertices[i + 1:]
    raise PreconditionViolation(f"cycle does not contain the edge {{{v},{w}}}")


def _ladder_interior(tower: TowerDescriptor, k: int) -> tuple[str, ...]:
    # interior of tower.path(k): a_0..a_k, b_k..b_0
    return tower.path(k)[1:-1]


def _tower_schedule(tower: TowerDescriptor, hs_from: frozenset[int],
                    hs_to: frozenset[int], length: int) -> list[int]:
    ks = sorted(hs_from) + sorted(hs_to, reverse=True)
    pad = length - len(ks)
    if pad < 0 or pad % 2 != 0:
        raise PreconditionViolation(
            f"horizontal index sets of sizes {len(hs_from)}/{len(hs_to)} do not fit "
            f"a schedule of length {length}")
    return ks + [0] * pad


def extend_over_tower(base_seq: FlipSequence, tower: TowerDescriptor,
                      m1: PerfectMatching, m2: PerfectMatching) -> FlipSequence:
    """Extend a length-2h flip sequence over a tower of height h.

    ``base_seq`` lives in the graph where the tower is contracted to its
    base edge e, runs from the contraction of m1 to the contraction of m2,
    and every cycle of it must contain e.  The result replaces e in the
    i-th cycle by the ladder path chosen by the schedule, and has length
    exactly 2h.
    """
    h = tower.height
    v, w = tower.attach
    if len(base_seq) != 2 * h:
        raise PreconditionViolation(
            f"base sequence has length {len(base_seq)}, need exactly 2h = {2 * h}")
    lo, hi = tower.boundary
    for name, m in (("m1", m1), ("m2", m2)):
        if lo not in m.edges or hi not in m.edges:
            raise PreconditionViolation(f"{name} does not contain both tower boundary edges")
    for i, c in enumerate(base_seq, start=1):
        if c.vertex_set & tower.vertex_set:
            raise PreconditionViolation(f"base cycle {i} uses tower vertices")
        if edge_key(v, w) not in c.edge_set:
            raise PreconditionViolation(f"base cycle {i} does not contain the contracted edge")

    # structural check that base_seq is a flip sequence between the contractions
    mt1 = PerfectMatching(frozenset(
        e for e in m1.edges if not (e[0] in tower.vertex_set or e[1] in tower.vertex_set))
        | {edge_key(v, w)})
    mt2 = PerfectMatching(frozenset(
        e for e in m2.edges if not (e[0] in tower.vertex_set or e[1] in tower.vertex_set))
        | {edge_key(v, w)})
    cur = mt1
    for i, c in enumerate(base_seq, start=1):
        flags = [e in cur.edges for e in c.edges_in_order()]
        if any(flags[k] == flags[(k + 1) % len(flags)] for k in range(len(flags))):
            raise PreconditionViolation(f"base cycle {i} is not alternating")
        cur = flip(cur, c)
    if cur != mt2:
        raise PreconditionViolation("base sequence does not transform contraction of m1 "
                                    "into contraction of m2")

    hs1 = frozenset(i for i in range(h + 1) if tower.horizontal(i) in m1.edges)
    hs2 = frozenset(i for i in range(h + 1) if tower.horizontal(i) in m2.edges)
    schedule = _tower_schedule(tower, hs1, hs2, 2 * h)
    out = []
    for c, k in zip(base_seq, schedule):
        out.append(Cycle(_splice(c.vertices, v, w, _ladder_interior(tower, k))))
    return FlipSequence(tuple(out))


def far_matchings(tg: ToweredGraph, tower: TowerDescriptor,
                  mt1: PerfectMatching, mt2: PerfectMatching
                  ) -> tuple[PerfectMatching, PerfectMatching]:
    """The two matchings that are hard to connect without entering the tower.

    M_1 takes all horizontals 1..h; M_2 swaps the top two horizontals for
    verticals.  ``mt1``/``mt2`` are matchings of the tower-contracted graph,
    both containing the base edge.
    """
    h = tower.height
    if h < 2:
        raise ValueError("far matchings need tower height >= 2")
    e = edge_key(*tower.attach)
    for name, mt in (("mt1", mt1), ("mt2", mt2)):
        if e not in mt.edges:
            raise ValueError(f"{name} does not contain the tower's base edge")
    lo, hi = tower.boundary
    common = [lo, hi]
    m1_edges = set(mt1.edges) - {e} | set(common)
    m1_edges |= {tower.horizontal(i) for i in range(1, h + 1)}
    m2_edges = set(mt2.edges) - {e} | set(common)
    m2_edges |= {tower.horizontal(i) for i in range(1, h - 1)}
    m2_edges |= {edge_key(tower.a[h - 1], tower.a[h]),
                 edge_key(tower.b[h - 1], tower.b[h])}
    return (PerfectMatching.of(tg.graph, m1_edges),
            PerfectMatching.of(tg.graph, m2_edges))


def _check_hamiltonian(origin: GHOrigin, ham_cycle) -> list[str]:
    seq = list(ham_cycle)
    if len(seq) >= 2 and seq[0] == seq[-1]:
        seq = seq[:-1]
    if sorted(seq) != sorted(origin.vertices):
        raise NotHamiltonian("sequence does not visit every source vertex exactly once")
    if len(seq) < 3:
        raise NotHamiltonian("a cycle needs at least three vertices")
    for i, u in enumerate(seq):
        if edge_key(u, seq[(i + 1) % len(seq)]) not in origin.edges:
            raise NotHamiltonian(f"consecutive vertices {u},{seq[(i + 1) % len(seq)]} "
                                 "are not adjacent in the source graph")
    return seq


def hamiltonian_upper_walk(tg: ToweredGraph, ham_cycle, m1: PerfectMatching,
                           m2: PerfectMatching) -> FlipSequence:
    """A flip sequence from m1 to m2 of length at most 2h + 4n.

    Normalizes both endpoints toward the canonical matching, then runs 2h
    copies of the lifted source cycle, each extended tower by tower with
    the ladder-path schedule, then undoes the second normalization.
    """
    origin = require_origin(tg)
    seq = _check_hamiltonian(origin, ham_cycle)
    n1, f1 = normalize_to_aux(tg, m1)
    n2, f2 = normalize_to_aux(tg, m2)

    heights = {t.height for t in tg.towers}
    if len(heights) != 1:
        raise ValueError("split-construction graphs have towers of a single height")
    h = heights.pop()

    # lifted source cycle: v:1, v:2 for each source vertex in cycle order
    lifted: list[str] = []
    for v in seq:
        v1, v2 = origin.split[v]
        lifted += [v1, v2]
    middles = [tuple(lifted)] * (2 * h)

    # extend over every tower in construction order; each tower's base edge
    # is still present in the partially extended cycles
    extended = [list(c) for c in middles]
    for t in sorted(tg.towers, key=lambda t: t.index):
        hs1 = horizontal_indices(tg, t, n1)
        hs2 = horizontal_indices(tg, t, n2)
        schedule = _tower_schedule(t, hs1, hs2, 2 * h)
        v, w = t.base
        for i in range(2 * h):
            extended[i] = list(_splice(tuple(extended[i]), v, w,
                                       _ladder_interior(t, schedule[i])))
    middle_cycles = tuple(Cycle(tuple(c)) for c in extended)
    return FlipSequence(f1.cycles + middle_cycles + tuple(reversed(f2.cycles)))


def min_flip_distance(g: BipartiteGraph, m1: PerfectMatching, m2: PerfectMatching,
                      cap: int = DEFAULT_MATCHING_CAP) -> int:
    """Exact BFS distance between two matchings on the skeleton."""
    s = build_skeleton(g, cap)
    try:
        start, goal = s.index[m1], s.index[m2]
    except KeyError:
        raise ValueError("matching is not a perfect matching of the graph") from None
    if start == goal:
        return 0
    dist = {start: 0}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in sorted(s.adjacency[i]):
            if j not in dist:
                dist[j] = dist[i] + 1
                if j == goal:
                    return dist[j]
                queue.append(j)
    raise Unreachable("matchings lie in different skeleton components")


def min_touching_flips(tg: ToweredGraph, tower: TowerDescriptor,
                       m1: PerfectMatching, m2: PerfectMatching,
                       cap: int = DEFAULT_MATCHING_CAP) -> int:
    """Minimum number of tower-touching cycles over all flip sequences from
    m1 to m2 that never flip a cycle fully contained in the tower.

    0/1-weighted shortest path over the full matching state space: moves
    flipping a tower-internal cycle are deleted, touching moves cost 1,
    all other moves cost 0.
    """
    s = build_skeleton(tg.graph, cap)
    try:
        start, goal = s.index[m1], s.index[m2]
    except KeyError:
        raise ValueError("matching is not a perfect matching of the towered graph") from None
    if start == goal:
        return 0

    weights: dict[tuple[int, int], int] = {}
    for i in range(len(s.nodes)):
        for j in s.adjacency[i]:
            if j < i:
                continue
            cycle = symmetric_difference_cycles(s.nodes[i], s.nodes[j])[0]
            if cycle.vertex_set <= tower.vertex_set:
                continue  # tower-internal moves are excluded
            weights[(i, j)] = 1 if touches(cycle, tower) else 0

    dist: dict[int, int] = {start: 0}
    dq: deque[int] = deque([start])
    while dq:
        i = dq.popleft()
        for j in sorted(s.adjacency[i]):
            key = (i, j) if i < j else (j, i)
            if key not in weights:
                continue
            nd = dist[i] + weights[key]
            if j not in dist or nd < dist[j]:
                dist[j] = nd
                if weights[key]:
                    dq.append(j)
                else:
                    dq.appendleft(j)
    if goal not in dist:
        raise Unreachable("every sequence needs a tower-internal cycle")
    return dist[goal]
