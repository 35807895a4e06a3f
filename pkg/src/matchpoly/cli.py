"""Command-line entry point.

Machine-readable JSON goes to stdout, human diagnostics to stderr.
Exit codes: 0 for computations and yes-decisions, 1 for no-decisions,
2 for any error (bad input, caps, I/O).

Input is a JSON file given with --input (stdin when omitted).  Formats:

  bipartite graph   {"left": [...], "right": [...], "edges": [[u,v], ...]}
  source graph      {"vertices": [...], "edges": [[u,v], ...]}
  matching          {"edges": [[u,v], ...]}
  4DM instance      {"W": [...], "X": [...], "Y": [...], "Z": [...],
                     "edges": [[w,x,y,z], ...]}
  verify-flipseq    {"graph": G, "start": M, "cycles": [[v, ...], ...], "end": M}
  upper-walk        {"towered": TG, "hamiltonian_cycle": [...],
                     "m1": M?, "m2": M?}           (absent matchings are
                                                    sampled with --seed)
  far-matchings     {"towered": TG, "tower": k, "mt1": M, "mt2": M}
  flip-distance     {"graph": G, "m1": M, "m2": M}
  lift 3dm          {"X": [...], "Y": [...], "Z": [...],
                     "triples": [[x,y,z], ...]}
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import circuits as circ
from . import flips, gadgets, io, reductions, skeleton
from .errors import Error
from .graphs import DEFAULT_MATCHING_CAP, enumerate_perfect_matchings


def _read_input(args) -> dict:
    if args.input in (None, "-"):
        return json.load(sys.stdin)
    with open(args.input, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _maybe_render(args, g, matching=None) -> None:
    if getattr(args, "render", None):
        from .render import render_graph
        render_graph(g, args.render, matching=matching)
        print(f"figure written to {args.render}", file=sys.stderr)


def _load_matching(g, data):
    return io.matching_from_json(g, data)


def cmd_enumerate(args) -> int:
    g = io.graph_from_json(_read_input(args))
    ms = enumerate_perfect_matchings(g, args.cap_matchings)
    _emit(args, io.dumps({"count": len(ms),
                          "matchings": [io.matching_to_json(m) for m in ms]}))
    return 0


def cmd_skeleton(args) -> int:
    g = io.graph_from_json(_read_input(args))
    s = skeleton.build_skeleton(g, args.cap_matchings)
    if args.format == "dot":
        _emit(args, io.skeleton_to_dot(s))
    else:
        _emit(args, io.dumps(io.skeleton_to_json(s)))
    _maybe_render(args, g)
    return 0


def cmd_diameter(args) -> int:
    g = io.graph_from_json(_read_input(args))
    s = skeleton.build_skeleton(g, args.cap_matchings)
    _emit(args, io.dumps({"diameter": skeleton.diameter(s)}))
    return 0


def cmd_mdiam(args) -> int:
    g = io.graph_from_json(_read_input(args))
    _emit(args, io.dumps({"mdiam": skeleton.monotone_diameter(g, args.cap_matchings)}))
    return 0


def cmd_circuits(args) -> int:
    g = io.graph_from_json(_read_input(args))
    sys_ = circ.pmp_halfspaces(g)
    if args.format == "lp":
        _emit(args, sys_.to_text() + "\n")
        return 0
    vecs = circ.enumerate_circuits(g)
    _emit(args, io.dumps({"edge_order": [list(e) for e in sys_.edge_order],
                          "circuits": [list(v.coords) for v in vecs]}))
    return 0


def cmd_cdiam(args) -> int:
    g = io.graph_from_json(_read_input(args))
    _emit(args, io.dumps({"cdiam": circ.circuit_diameter_small(g, cap=args.cap_matchings)}))
    return 0


def cmd_gadget_tower(args) -> int:
    g = io.graph_from_json(_read_input(args))
    u, v = args.edge.split(",")
    tg = gadgets.add_towers(g, (u, v), args.towers, args.height)
    _emit(args, io.dumps(io.towered_to_json(tg)))
    _maybe_render(args, tg)
    return 0


def cmd_gadget_gh(args) -> int:
    h_graph = io.simple_graph_from_json(_read_input(args))
    tg = gadgets.build_GH(h_graph, args.height, args.towers)
    _emit(args, io.dumps(io.towered_to_json(tg)))
    _maybe_render(args, tg)
    return 0


def cmd_reduce_ham(args) -> int:
    h_graph = io.simple_graph_from_json(_read_input(args))
    tg, threshold, cert = reductions.reduce_hamiltonian_to_diameter(
        h_graph, args.height, args.towers)
    _emit(args, io.dumps({"graph": io.towered_to_json(tg),
                          "threshold": threshold,
                          "certificate": io.certificate_to_json(cert)}))
    return 0


def cmd_reduce_4dm(args) -> int:
    inst = io.hypergraph_from_json(_read_input(args))
    g, cert = reductions.reduce_4dm_to_4cycle_cover(inst)
    _emit(args, io.dumps({"graph": io.graph_to_json(g),
                          "certificate": io.certificate_to_json(cert)}))
    _maybe_render(args, g)
    return 0


def cmd_lift_3dm(args) -> int:
    data = _read_input(args)
    inst = reductions.lift_3dm_to_4dm(data["X"], data["Y"], data["Z"],
                                      [tuple(t) for t in data["triples"]])
    _emit(args, io.dumps(io.hypergraph_to_json(inst)))
    return 0


def cmd_solve_ham(args) -> int:
    h_graph = io.simple_graph_from_json(_read_input(args))
    cycle = reductions.brute_hamiltonian(h_graph)
    if cycle is None:
        _emit(args, io.dumps({"feasible": False}))
        return 1
    _emit(args, io.dumps({"feasible": True, "cycle": list(cycle)}))
    return 0


def cmd_solve_4dm(args) -> int:
    inst = io.hypergraph_from_json(_read_input(args))
    m = reductions.brute_4dm(inst)
    if m is None:
        _emit(args, io.dumps({"feasible": False}))
        return 1
    _emit(args, io.dumps({"feasible": True, "matching": [list(q) for q in m]}))
    return 0


def cmd_solve_cover(args) -> int:
    g = io.graph_from_json(_read_input(args))
    cover = reductions.has_4cycle_cover(g)
    if cover is None:
        _emit(args, io.dumps({"feasible": False}))
        return 1
    _emit(args, io.dumps({"feasible": True,
                          "cover": [list(c.vertices) for c in cover]}))
    return 0


def cmd_verify_flipseq(args) -> int:
    data = _read_input(args)
    g = io.graph_from_json(data["graph"])
    m1 = _load_matching(g, data["start"])
    m2 = _load_matching(g, data["end"])
    seq = flips.FlipSequence(tuple(io.flip_sequence_from_json(data["cycles"])))
    res = flips.verify_flip_sequence(g, m1, seq, m2)
    out = {"valid": res.ok}
    if not res.ok:
        out["failed_index"] = res.failed_index
        out["reason"] = res.reason
    _emit(args, io.dumps(out))
    return 0 if res.ok else 1


def cmd_upper_walk(args) -> int:
    data = _read_input(args)
    tg = io.towered_from_json(data["towered"])
    rng = random.Random(args.seed)
    ms = []
    for key in ("m1", "m2"):
        if data.get(key):
            ms.append(_load_matching(tg.graph, data[key]))
        else:
            from .graphs import random_perfect_matching
            m = random_perfect_matching(tg.graph, rng)
            if m is None:
                raise Error("towered graph has no perfect matching to sample")
            ms.append(m)
    seq = flips.hamiltonian_upper_walk(tg, data["hamiltonian_cycle"], ms[0], ms[1])
    res = flips.verify_flip_sequence(tg.graph, ms[0], seq, ms[1])
    _emit(args, io.dumps({"cycles": io.flip_sequence_to_json(seq),
                          "length": len(seq), "verified": bool(res),
                          "m1": io.matching_to_json(ms[0]),
                          "m2": io.matching_to_json(ms[1])}))
    return 0


def cmd_far_matchings(args) -> int:
    data = _read_input(args)
    tg = io.towered_from_json(data["towered"])
    tower = tg.tower(data["tower"])
    contracted = gadgets.contract_tower(tg, tower)
    mt1 = _load_matching(contracted.graph, data["mt1"])
    mt2 = _load_matching(contracted.graph, data["mt2"])
    m1, m2 = flips.far_matchings(tg, tower, mt1, mt2)
    _emit(args, io.dumps({"m1": io.matching_to_json(m1),
                          "m2": io.matching_to_json(m2)}))
    return 0


def cmd_flip_distance(args) -> int:
    data = _read_input(args)
    g = io.graph_from_json(data["graph"])
    m1 = _load_matching(g, data["m1"])
    m2 = _load_matching(g, data["m2"])
    d = flips.min_flip_distance(g, m1, m2, args.cap_matchings)
    _emit(args, io.dumps({"distance": d}))
    return 0


def _add_common(p, cap=False, fmt=None, render=False):
    p.add_argument("--input", help="input JSON path ('-' or omitted: stdin)")
    p.add_argument("--output", help="output path (omitted: stdout)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for any sampling (default 0)")
    if cap:
        p.add_argument("--cap-matchings", type=int, default=DEFAULT_MATCHING_CAP,
                       help="enumeration cap; exceeding it is an error")
    if fmt:
        p.add_argument("--format", choices=fmt, default=fmt[0])
    if render:
        p.add_argument("--render", help="also draw a matplotlib figure to this file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="matchpoly",
                                 description="perfect matching polytopes at desk scale")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="all perfect matchings")
    _add_common(p, cap=True)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("skeleton", help="polytope skeleton")
    _add_common(p, cap=True, fmt=["json", "dot"], render=True)
    p.set_defaults(fn=cmd_skeleton)

    p = sub.add_parser("diameter", help="combinatorial diameter")
    _add_common(p, cap=True)
    p.set_defaults(fn=cmd_diameter)

    p = sub.add_parser("mdiam", help="monotone diameter")
    _add_common(p, cap=True)
    p.set_defaults(fn=cmd_mdiam)

    p = sub.add_parser("circuits", help="circuits of the matching polytope")
    _add_common(p, fmt=["json", "lp"])
    p.set_defaults(fn=cmd_circuits)

    p = sub.add_parser("cdiam", help="circuit diameter (brute force)")
    _add_common(p, cap=True)
    p.set_defaults(fn=cmd_cdiam)

    p = sub.add_parser("gadget", help="gadget constructions")
    gsub = p.add_subparsers(dest="gadget", required=True)
    pt = gsub.add_parser("tower", help="chain towers on an edge")
    _add_common(pt, render=True)
    pt.add_argument("--edge", required=True, help="base edge 'v,w' (a_0 attaches to v)")
    pt.add_argument("--height", type=int, required=True)
    pt.add_argument("--towers", type=int, default=1)
    pt.set_defaults(fn=cmd_gadget_tower)
    pg = gsub.add_parser("gh", help="split construction over a source graph")
    _add_common(pg, render=True)
    pg.add_argument("--height", type=int, required=True)
    pg.add_argument("--towers", type=int, required=True)
    pg.set_defaults(fn=cmd_gadget_gh)

    p = sub.add_parser("reduce", help="hardness reductions")
    rsub = p.add_subparsers(dest="reduction", required=True)
    rh = rsub.add_parser("ham", help="Hamiltonian cycle -> polytope diameter")
    _add_common(rh)
    rh.add_argument("--height", type=int, help="override h (default 2n^2-n+1)")
    rh.add_argument("--towers", type=int, help="override t (default 4h)")
    rh.set_defaults(fn=cmd_reduce_ham)
    r4 = rsub.add_parser("4dm", help="4DM -> vertex-disjoint 4-cycle cover")
    _add_common(r4, render=True)
    r4.set_defaults(fn=cmd_reduce_4dm)

    p = sub.add_parser("lift", help="problem lifts")
    lsub = p.add_subparsers(dest="lift", required=True)
    l3 = lsub.add_parser("3dm", help="3DM -> 4DM")
    _add_common(l3)
    l3.set_defaults(fn=cmd_lift_3dm)

    p = sub.add_parser("solve", help="exact decision oracles")
    ssub = p.add_subparsers(dest="problem", required=True)
    for name, fn in (("ham", cmd_solve_ham), ("4dm", cmd_solve_4dm),
                     ("cover", cmd_solve_cover)):
        ps = ssub.add_parser(name)
        _add_common(ps)
        ps.set_defaults(fn=fn)

    p = sub.add_parser("verify-flipseq", help="check a flip sequence")
    _add_common(p)
    p.set_defaults(fn=cmd_verify_flipseq)

    p = sub.add_parser("upper-walk", help="Hamiltonian upper-bound walk")
    _add_common(p)
    p.set_defaults(fn=cmd_upper_walk)

    p = sub.add_parser("far-matchings", help="the far-apart matching pair")
    _add_common(p)
    p.set_defaults(fn=cmd_far_matchings)

    p = sub.add_parser("flip-distance", help="exact skeleton distance")
    _add_common(p, cap=True)
    p.set_defaults(fn=cmd_flip_distance)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (Error, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(io.dumps({"error": f"{type(exc).__name__}: {exc}"}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
