"""Matplotlib figure rendering for graphs and towered graphs.

Correctness lives in the JSON/DOT exports; these figures are for eyeballs.
Towers are drawn as ladders standing on their base edge, split pairs around
a circle, plain bipartite graphs as two columns.
"""

from __future__ import annotations

import math

from .gadgets import ToweredGraph
from .graphs import BipartiteGraph, PerfectMatching

Point = tuple[float, float]


def _bipartite_layout(g: BipartiteGraph) -> dict[str, Point]:
    pos = {}
    for x, side in ((0.0, sorted(g.left)), (1.0, sorted(g.right))):
        for i, v in enumerate(side):
            pos[v] = (x, -float(i))
    return pos


def _towered_layout(tg: ToweredGraph) -> dict[str, Point]:
    pos: dict[str, Point] = {}
    base_vertices = sorted(tg.graph.vertices - frozenset(
        x for t in tg.towers for x in t.vertex_set))
    k = max(len(base_vertices), 1)
    radius = 3.0 + 0.4 * len(tg.towers)
    for i, v in enumerate(base_vertices):
        ang = 2 * math.pi * i / k
        pos[v] = (radius * math.cos(ang), radius * math.sin(ang))

    # walk each chain of towers between known anchors; towers whose base
    # vertices are other towers' b_0 get positioned iteratively
    remaining = list(tg.towers)
    while remaining:
        progressed = False
        for t in list(remaining):
            v, w = t.base
            if v not in pos or w not in pos:
                continue
            remaining.remove(t)
            progressed = True
            (vx, vy), (wx, wy) = pos[v], pos[w]
            dx, dy = wx - vx, wy - vy
            norm = math.hypot(dx, dy) or 1.0
            ux, uy = dx / norm, dy / norm  # along the base edge
            px, py = -uy, ux  # perpendicular, ladder direction
            rung = 0.55
            a0 = (vx + dx * 0.35, vy + dy * 0.35)
            b0 = (vx + dx * 0.65, vy + dy * 0.65)
            for i in range(t.height + 1):
                pos[t.a[i]] = (a0[0] + px * rung * (i + 1), a0[1] + py * rung * (i + 1))
                pos[t.b[i]] = (b0[0] + px * rung * (i + 1), b0[1] + py * rung * (i + 1))
        if not progressed:  # disconnected leftovers; dump on a line
            for j, t in enumerate(remaining):
                for i in range(t.height + 1):
                    pos[t.a[i]] = (2.0 * j, float(i))
                    pos[t.b[i]] = (2.0 * j + 1.0, float(i))
            break
    return pos


def render_graph(g, path: str, matching: PerfectMatching | None = None,
                 labels: bool = True) -> None:
    """Draw a BipartiteGraph or ToweredGraph to an image file."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if isinstance(g, ToweredGraph):
        pos = _towered_layout(g)
        graph = g.graph
    else:
        pos = _bipartite_layout(g)
        graph = g

    fig, ax = plt.subplots(figsize=(8, 8))
    for u, v in graph.sorted_edges():
        in_m = matching is not None and (u, v) in matching.edges
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2],
                color="black" if in_m else "0.65",
                linewidth=2.4 if in_m else 0.9, zorder=1)
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    ax.scatter(xs, ys, s=120, facecolor="white", edgecolor="black", zorder=2)
    if labels and len(pos) <= 120:
        for v, (x, y) in pos.items():
            ax.annotate(v, (x, y), fontsize=6, ha="center", va="center", zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
