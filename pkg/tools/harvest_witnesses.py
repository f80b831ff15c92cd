"""Search random hard extension instances and keep the smallest one per case label.

A hard instance is a 3-sparse graph G, a qualifying edge xy, and an acyclic
coloring of G - xy with Delta+1 colors under which no candidate is valid.
Output is JSON consumed by tests/test_extender.py.
"""

from __future__ import annotations

import argparse
import json
import random
import time

from acyclic3.coloring import Palette, PartialColoring, valid_colors
from acyclic3.extender import Exhausted, extend
from acyclic3.generators import GenerationError, gen_random_3sparse
from acyclic3.graph import edge_degree


def random_coloring(g, skip, palette, rnd, tries=50):
    for _ in range(tries):
        c = PartialColoring(g)
        order = [e for e in range(g.edge_count) if e != skip]
        rnd.shuffle(order)
        for e in order:
            options = valid_colors(c, e, palette)
            if not options:
                break
            c.assign(e, rnd.choice(options))
        else:
            return c
    return None


def local_graph(rnd, t, low_y):
    """x of degree <= 3 next to y; neighbors of both hang off a small pool of hubs."""
    x, y = 0, 1
    dy = rnd.randint(2, 3) if low_y else t
    dx = rnd.randint(2, 3)
    nxt = 2
    edges = {(x, y)}
    xs = list(range(nxt, nxt + dx - 1)); nxt += dx - 1
    ys = list(range(nxt, nxt + dy - 1)); nxt += dy - 1
    edges |= {(x, v) for v in xs} | {(y, v) for v in ys}
    hubs = list(range(nxt, nxt + rnd.randint(1, 4))); nxt += len(hubs)
    spare = list(range(nxt, nxt + rnd.randint(0, 4))); nxt += len(spare)
    low = xs + ys + spare
    deg = {v: 1 for v in xs + ys}
    for v in low:
        for _ in range(rnd.randint(1, 2)):
            if deg.get(v, 0) >= 3:
                break
            w = rnd.choice(hubs + low)
            if w == v or (min(v, w), max(v, w)) in edges:
                continue
            if w in low and deg.get(w, 0) >= 3:
                continue
            edges.add((min(v, w), max(v, w)))
            deg[v] = deg.get(v, 0) + 1
            if w in low:
                deg[w] = deg.get(w, 0) + 1
    from acyclic3.graph import build_graph, is_three_sparse
    g = build_graph(nxt, sorted(edges))
    if not is_three_sparse(g) or g.max_degree() > t:
        return None, None
    return g, g.edge_id(x, y)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--seconds", type=float, default=60)
    ap.add_argument("--nmax", type=int, default=14)
    ap.add_argument("--out", required=True)
    ap.add_argument("--merge", action="store_true")
    ap.add_argument("--local", action="store_true", help="build the neighborhood of xy directly")
    args = ap.parse_args()
    rnd = random.Random(args.seed)
    best: dict[str, dict] = {}
    if args.merge:
        try:
            with open(args.out) as fh:
                best = json.load(fh)
        except FileNotFoundError:
            pass
    stop = time.time() + args.seconds
    while time.time() < stop:
        if args.local:
            g, e = local_graph(rnd, rnd.randint(4, 6), rnd.random() < 0.3)
            if g is None:
                continue
            t = g.max_degree()
            if edge_degree(g, e) > t:
                continue
        else:
            n = rnd.randint(5, args.nmax)
            cap = rnd.randint(3, 7)
            try:
                g = gen_random_3sparse(n, cap, min(2 * (n - n // 3), rnd.randint(n, 2 * n)), rnd.getrandbits(32))
            except GenerationError:
                continue
            t = g.max_degree()
            qualifying = [f for f in range(g.edge_count) if edge_degree(g, f) <= t]
            if t < 3 or not qualifying:
                continue
            e = rnd.choice(qualifying)
        palette = Palette(t + 1)
        c = random_coloring(g, e, palette, rnd)
        if c is None or valid_colors(c, e, palette):
            continue
        before = list(c.colors)
        try:
            trace = extend(c, e, palette, checked=True)
        except Exhausted:
            label = "EXHAUSTED"
        else:
            label = trace.fallback or trace.case
        size = (g.edge_count, g.vertex_count)
        if label not in best or size < (best[label]["m"], best[label]["n"]):
            best[label] = {"n": g.vertex_count, "m": g.edge_count, "edges": [list(p) for p in g.edges],
                           "colors": before, "edge": e, "delta": t}
    with open(args.out, "w") as fh:
        json.dump(dict(sorted(best.items())), fh, indent=1)
    for label, w in sorted(best.items()):
        print(label, w["m"])


if __name__ == "__main__":
    main()
