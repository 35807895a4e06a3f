"""Brute-force circuits and circuit moves of the matching polytope.

The polytope lives in R^E with one degree equality per vertex and one
nonnegativity constraint per edge (the B matrix is a negated identity, so
support-minimality of Bg is support-minimality of g itself).  Circuits are
the support-minimal nonzero kernel vectors of the degree system, stored
content-normalized with the first nonzero entry positive in edge order.
All arithmetic is exact rational; no floating point anywhere.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Optional, Sequence

from .errors import CapExceeded, Error, UnboundedDirection, UnreachableOptimum, ZeroStep
from .graphs import (
    BipartiteGraph,
    Edge,
    PerfectMatching,
    enumerate_cycles,
    enumerate_perfect_matchings,
)
from .skeleton import CostFunction

SUPPORT_ENUM_CAP = 16


@dataclass(frozen=True)
class HalfspaceSystem:
    """Degree equalities (one per vertex, rhs 1) and nonnegativities (one
    per edge), with the variable order fixed to the edge order."""

    vertex_order: tuple[str, ...]
    edge_order: tuple[Edge, ...]

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edge_order)}

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Per vertex, the indices of its incident edges."""
        rows = []
        for v in self.vertex_order:
            rows.append(tuple(i for i, (a, b) in enumerate(self.edge_order)
                              if v in (a, b)))
        return tuple(rows)

    def satisfies_equalities(self, coords: Sequence[Fraction]) -> bool:
        return all(sum(coords[i] for i in row) == 1 for row in self.incidence)

    def in_kernel(self, coords: Sequence) -> bool:
        return all(sum(coords[i] for i in row) == 0 for row in self.incidence)

    def is_feasible(self, coords: Sequence[Fraction]) -> bool:
        return self.satisfies_equalities(coords) and all(x >= 0 for x in coords)

    def to_text(self) -> str:
        """Plain-text rendering, one constraint per line, exact integers."""
        lines = [f"# variables: {len(self.edge_order)} edges in order"]
        for i, (u, v) in enumerate(self.edge_order):
            lines.append(f"# x{i} = edge {u}--{v}")
        for v, row in zip(self.vertex_order, self.incidence):
            terms = " + ".join(f"x{i}" for i in row) if row else "0"
            lines.append(f"{terms} = 1  # vertex {v}")
        for i in range(len(self.edge_order)):
            lines.append(f"x{i} >= 0")
        return "\n".join(lines)


@dataclass(frozen=True)
class IncidenceVector:
    """A point of the polytope: rational coordinates in edge order."""

    coords: tuple[Fraction, ...]

    @classmethod
    def from_matching(cls, sys: HalfspaceSystem, m: PerfectMatching) -> "IncidenceVector":
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(one if e in m.edges else zero for e in sys.edge_order))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.coords)


@dataclass(frozen=True)
class CircuitVector:
    """Integer coordinates, coprime, first nonzero entry positive."""

    coords: tuple[int, ...]

    def __neg__(self) -> "CircuitVector":
        return CircuitVector(tuple(-x for x in self.coords))

    @classmethod
    def normalized(cls, coords: Sequence) -> "CircuitVector":
        if all(x == 0 for x in coords):
            raise ValueError("zero vector is not a circuit")
        if any(isinstance(x, Fraction) for x in coords):
            denom = 1
            for x in coords:
                denom = denom * Fraction(x).denominator // gcd(denom, Fraction(x).denominator)
            ints = [int(Fraction(x) * denom) for x in coords]
        else:
            ints = [int(x) for x in coords]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        ints = [x // g for x in ints]
        first = next(x for x in ints if x != 0)
        if first < 0:
            ints = [-x for x in ints]
        return cls(tuple(ints))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.coords) if x != 0)


def pmp_halfspaces(g: BipartiteGraph) -> HalfspaceSystem:
    """Halfspace encoding of the matching polytope in deterministic order."""
    return HalfspaceSystem(tuple(sorted(g.vertices)), tuple(g.sorted_edges()))


def _circuits_from_cycles(g: BipartiteGraph, sys: HalfspaceSystem) -> list[CircuitVector]:
    out = []
    for c in enumerate_cycles(g):
        coords = [0] * len(sys.edge_order)
        sign = 1
        for e in c.edges_in_order():
            coords[sys.edge_index[e]] = sign
            sign = -sign
        out.append(CircuitVector.normalized(coords))
    return sorted(set(out), key=lambda cv: cv.coords)


def _kernel_vector(rows: list[tuple[int, ...]], ncols: int) -> Optional[list[Fraction]]:
    """Nullspace of an integer matrix if it is one-dimensional, else None.

    Plain Gauss elimination over exact rationals.
    """
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = mat[r][col]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        return None
    sol = [Fraction(0)] * ncols
    sol[free[0]] = Fraction(1)
    for row_i, col in enumerate(pivots):
        sol[col] = -mat[row_i][free[0]]
    return sol


def _circuits_by_support(g: BipartiteGraph, sys: HalfspaceSystem,
                         cap: int) -> list[CircuitVector]:
    n = len(sys.edge_order)
    if n > cap:
        raise CapExceeded(f"support enumeration capped at {cap} edges, got {n}")
    inc_mask = {v: 0 for v in sys.vertex_order}
    for i, (a, b) in enumerate(sys.edge_order):
        inc_mask[a] |= 1 << i
        inc_mask[b] |= 1 << i
    masks = list(inc_mask.values())

    candidates: list[tuple[int, CircuitVector]] = []
    for mask in range(1, 1 << n):
        # a kernel vector with full support needs >= 2 support edges at
        # every touched vertex, since each degree row must sum to zero
        ok = True
        for vm in masks:
            inter = vm & mask
            if inter and inter & (inter - 1) == 0:
                ok = False
                break
        if not ok:
            continue
        cols = [i for i in range(n) if mask >> i & 1]
        col_pos = {c: k for k, c in enumerate(cols)}
        rows = []
        for vm in masks:
            if vm & mask:
                row = [0] * len(cols)
                for c in cols:
                    if vm >> c & 1:
                        row[col_pos[c]] = 1
                rows.append(tuple(row))
        sol = _kernel_vector(rows, len(cols))
        if sol is None or any(x == 0 for x in sol):
            continue
        full = [Fraction(0)] * n
        for c, x in zip(cols, sol):
            full[c] = x
        candidates.append((mask, CircuitVector.normalized(full)))

    keep: list[tuple[int, CircuitVector]] = []
    for mask, vec in sorted(candidates, key=lambda mv: bin(mv[0]).count("1")):
        if not any(km & mask == km for km, _ in keep):
            keep.append((mask, vec))
    return sorted({vec for _, vec in keep}, key=lambda cv: cv.coords)


def enumerate_circuits(g: BipartiteGraph, method: str = "cycles",
                       cap: int = SUPPORT_ENUM_CAP) -> list[CircuitVector]:
    """All circuits up to sign, sorted.

    method "cycles": alternating +-1 vectors on the simple cycles of the
    graph (fast, usable beyond the support cap).  method "support": brute
    force over edge subsets solving the degree kernel on each support and
    keeping inclusion-minimal ones; the independent oracle.
    """
    sys = pmp_halfspaces(g)
    if method == "cycles":
        return _circuits_from_cycles(g, sys)
    if method == "support":
        return _circuits_by_support(g, sys, cap)
    raise ValueError(f"unknown method {method!r}")


def circuit_move(sys: HalfspaceSystem, x: IncidenceVector,
                 gvec: CircuitVector) -> IncidenceVector:
    """One maximal-step move x + alpha*g staying inside the polytope."""
    if not sys.is_feasible(x.coords):
        raise ValueError("point is not in the polytope")
    alpha: Optional[Fraction] = None
    for xi, gi in zip(x.coords, gvec.coords):
        if gi < 0:
            bound = xi / -gi
            if alpha is None or bound < alpha:
                alpha = bound
    if alpha is None:
        raise UnboundedDirection("no nonnegativity constraint limits the step")
    if alpha == 0:
        raise ZeroStep("circuit direction infeasible at this point")
    return IncidenceVector(tuple(xi + alpha * gi
                                 for xi, gi in zip(x.coords, gvec.coords)))


def one_step_set(g: BipartiteGraph, m: PerfectMatching,
                 circuits: Optional[list[CircuitVector]] = None,
                 sys: Optional[HalfspaceSystem] = None) -> set[IncidenceVector]:
    """All points reachable from the matching's vertex by one circuit move,
    both signs of every circuit."""
    sys = sys or pmp_halfspaces(g)
    circuits = circuits if circuits is not None else enumerate_circuits(g)
    x = IncidenceVector.from_matching(sys, m)
    return _one_step_points(sys, x, circuits)


def _one_step_points(sys: HalfspaceSystem, x: IncidenceVector,
                     circuits: list[CircuitVector]) -> set[IncidenceVector]:
    out: set[IncidenceVector] = set()
    for c in circuits:
        for gvec in (c, -c):
            try:
                out.add(circuit_move(sys, x, gvec))
            except ZeroStep:
                continue
    return out


def circuit_diameter_small(g: BipartiteGraph,
                           circuits: Optional[list[CircuitVector]] = None,
                           cap: int = 1_000_000,
                           neighbor_cache: Optional[dict] = None) -> int:
    """Max over vertex pairs of BFS distance where moves are circuit moves.

    The BFS runs over whatever points the moves produce; on matching
    polytopes those are exactly the vertices.  ``neighbor_cache`` lets
    callers share the one-step map across calls on the same graph.
    """
    sys = pmp_halfspaces(g)
    circuits = circuits if circuits is not None else enumerate_circuits(g)
    matchings = enumerate_perfect_matchings(g, cap)
    starts = [IncidenceVector.from_matching(sys, m) for m in matchings]
    targets = set(starts)
    neighbors = neighbor_cache if neighbor_cache is not None else {}

    def nbrs(p: IncidenceVector) -> set[IncidenceVector]:
        if p not in neighbors:
            neighbors[p] = _one_step_points(sys, p, circuits)
        return neighbors[p]

    best = 0
    for src in starts:
        dist = {src: 0}
        queue = deque([src])
        reached = 1
        while queue:
            p = queue.popleft()
            for q in nbrs(p):
                if q not in dist:
                    dist[q] = dist[p] + 1
                    queue.append(q)
                    if q in targets:
                        reached += 1
        if reached < len(targets):
            raise Error("circuit walks do not connect all vertices; "
                        "this should be impossible")
        best = max(best, max(d for p, d in dist.items() if p in targets))
    return best


def monotone_circuit_distance(g: BipartiteGraph, cost: CostFunction,
                              start: PerfectMatching,
                              circuits: Optional[list[CircuitVector]] = None,
                              cap: int = 1_000_000,
                              neighbor_cache: Optional[dict] = None) -> int:
    """Length of the shortest cost-monotone circuit walk from the matching's
    vertex to some cost-optimal vertex of the polytope."""
    sys = pmp_halfspaces(g)
    circuits = circuits if circuits is not None else enumerate_circuits(g)
    weights = tuple(Fraction(cost.weights[e]) for e in sys.edge_order)
    neighbors = neighbor_cache if neighbor_cache is not None else {}
    values: dict[IncidenceVector, Fraction] = {}

    def value(p: IncidenceVector) -> Fraction:
        if p not in values:
            values[p] = sum(w * x for w, x in zip(weights, p.coords))
        return values[p]

    def nbrs(p: IncidenceVector) -> set[IncidenceVector]:
        if p not in neighbors:
            neighbors[p] = _one_step_points(sys, p, circuits)
        return neighbors[p]

    matchings = enumerate_perfect_matchings(g, cap)
    vertex_points = {IncidenceVector.from_matching(sys, m) for m in matchings}
    optimum = min(value(p) for p in vertex_points)

    src = IncidenceVector.from_matching(sys, start)
    if value(src) == optimum:
        return 0
    dist = {src: 0}
    queue = deque([src])
    while queue:
        p = queue.popleft()
        for q in nbrs(p):
            if q in dist or value(q) > value(p):
                continue
            dist[q] = dist[p] + 1
            if q in vertex_points and value(q) == optimum:
                return dist[q]
            queue.append(q)
    raise UnreachableOptimum("no monotone circuit walk reaches an optimal vertex")
