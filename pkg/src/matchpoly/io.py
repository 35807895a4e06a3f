"""JSON and DOT serialization for every artifact the CLI reads or writes.

Emitted JSON is deterministic: keys sorted, list orders canonical, so
identical inputs produce byte-identical outputs.
"""

from __future__ import annotations

import json
from typing import Any

from .gadgets import GHOrigin, TowerDescriptor, ToweredGraph
from .graphs import BipartiteGraph, Cycle, PerfectMatching, SimpleGraph
from .reductions import Hypergraph4DM, ReductionCertificate
from .skeleton import SkeletonGraph


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def graph_to_json(g: BipartiteGraph) -> dict:
    return {"left": sorted(g.left), "right": sorted(g.right),
            "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_json(data: dict) -> BipartiteGraph:
    return BipartiteGraph.of(data["left"], data["right"], data["edges"])


def simple_graph_to_json(g: SimpleGraph) -> dict:
    return {"vertices": sorted(g.vertices),
            "edges": [list(e) for e in sorted(g.edges)]}


def simple_graph_from_json(data: dict) -> SimpleGraph:
    return SimpleGraph.of(data["vertices"], data["edges"])


def matching_to_json(m: PerfectMatching) -> dict:
    return {"edges": [list(e) for e in sorted(m.edges)]}


def matching_from_json(g: BipartiteGraph, data: dict) -> PerfectMatching:
    return PerfectMatching.of(g, data["edges"])


def cycle_to_json(c: Cycle) -> dict:
    return {"vertices": list(c.vertices)}


def cycle_from_json(data: dict) -> Cycle:
    return Cycle(tuple(data["vertices"]))


def flip_sequence_to_json(cycles) -> list:
    return [list(c.vertices) for c in cycles]


def flip_sequence_from_json(data: list) -> list[Cycle]:
    return [Cycle(tuple(vs)) for vs in data]


def towered_to_json(tg: ToweredGraph) -> dict:
    towers = [{"index": t.index, "base": list(t.base), "height": t.height,
               "a": list(t.a), "b": list(t.b), "attach": list(t.attach)}
              for t in tg.towers]
    origin = None
    if tg.origin is not None:
        origin = {"vertices": list(tg.origin.vertices),
                  "edges": [list(e) for e in sorted(tg.origin.edges)],
                  "split": {v: list(p) for v, p in tg.origin.split.items()},
                  "chains": {v: list(c) for v, c in tg.origin.chains.items()}}
    return {"graph": graph_to_json(tg.graph), "towers": towers, "origin": origin}


def towered_from_json(data: dict) -> ToweredGraph:
    towers = tuple(TowerDescriptor(t["index"], tuple(t["base"]), t["height"],
                                   tuple(t["a"]), tuple(t["b"]),
                                   tuple(t.get("attach", t["base"])))
                   for t in data["towers"])
    origin = None
    if data.get("origin"):
        o = data["origin"]
        origin = GHOrigin(tuple(o["vertices"]),
                          frozenset(tuple(sorted(e)) for e in o["edges"]),
                          {v: tuple(p) for v, p in o["split"].items()},
                          {v: tuple(c) for v, c in o["chains"].items()})
    return ToweredGraph(graph_from_json(data["graph"]), towers, origin)


def hypergraph_to_json(inst: Hypergraph4DM) -> dict:
    return {"W": list(inst.w_set), "X": list(inst.x_set),
            "Y": list(inst.y_set), "Z": list(inst.z_set),
            "edges": [list(q) for q in inst.hyperedges]}


def hypergraph_from_json(data: dict) -> Hypergraph4DM:
    return Hypergraph4DM.of(data["W"], data["X"], data["Y"], data["Z"],
                            [tuple(q) for q in data["edges"]])


def certificate_to_json(cert: ReductionCertificate) -> dict:
    return {"kind": cert.kind, "parameters": cert.parameters,
            "vertex_map": cert.vertex_map, "edge_map": cert.edge_map}


def graph_to_dot(g: BipartiteGraph, matching: PerfectMatching | None = None) -> str:
    """DOT text; matching edges drawn bold when a matching is given."""
    lines = ["graph G {", "  node [shape=circle];"]
    for v in sorted(g.left):
        lines.append(f'  "{v}" [rank=min];')
    for v in sorted(g.right):
        lines.append(f'  "{v}" [rank=max];')
    for u, v in g.sorted_edges():
        style = " [penwidth=3]" if matching is not None and (u, v) in matching.edges else ""
        lines.append(f'  "{u}" -- "{v}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def towered_to_dot(tg: ToweredGraph, matching: PerfectMatching | None = None) -> str:
    """DOT text with one cluster per tower so layouts draw them as ladders."""
    lines = ["graph G {", "  node [shape=circle];"]
    for t in tg.towers:
        lines.append(f"  subgraph cluster_t{t.index} {{")
        lines.append(f'    label="tower {t.index}";')
        for name in list(t.a) + list(t.b):
            lines.append(f'    "{name}";')
        lines.append("  }")
    for u, v in tg.graph.sorted_edges():
        style = " [penwidth=3]" if matching is not None and (u, v) in matching.edges else ""
        lines.append(f'  "{u}" -- "{v}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def skeleton_to_dot(s: SkeletonGraph) -> str:
    """DOT text; nodes labeled by matching index."""
    lines = ["graph skeleton {", "  node [shape=circle];"]
    for i in range(len(s.nodes)):
        lines.append(f'  "{i}" [label="{i}"];')
    for i, nbrs in enumerate(s.adjacency):
        for j in sorted(nbrs):
            if i < j:
                lines.append(f'  "{i}" -- "{j}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def skeleton_to_json(s: SkeletonGraph) -> dict:
    return {"nodes": [matching_to_json(m) for m in s.nodes],
            "adjacency": [sorted(a) for a in s.adjacency]}
