"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]

Both modules are imported directly, so the environment switch is not needed.
Node counts from the search kernel are compared as a consistency check.
"""

from __future__ import annotations

import argparse
import sys
import time

from acyclic3 import _kernels_py
from acyclic3 import acyclic_color, gen_corpus_instance
from acyclic3.generators import complete_bipartite
from acyclic3.oracle import search_order

try:
    from acyclic3 import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def best_of(repeat, fn):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def search_cases():
    # (label, graph, k, symmetry, max_solutions); each walks the whole search tree
    return [
        ("K33 enumerate k=5", complete_bipartite(3, 3), 5, False, 10**9),
        ("K34 enumerate k=5", complete_bipartite(3, 4), 5, False, 10**9),
        ("K33 enumerate k=6", complete_bipartite(3, 3), 6, False, 10**9),
    ]


def verify_cases(count):
    out = []
    for seed in range(1, count + 1):
        g = gen_corpus_instance(seed)
        out.append((g, acyclic_color(g, "theorem").coloring.colors))
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--verify-graphs", type=int, default=200)
    args = p.parse_args(argv)
    if _kernels_c is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return 1
    backends = [("cython", _kernels_c), ("python", _kernels_py)]

    print(f"{'kernel':<34} {'cython ms':>10} {'python ms':>10} {'speedup':>8}")
    for label, g, k, symmetry, cap in search_cases():
        eu = [u for u, _ in g.edges]
        ev = [v for _, v in g.edges]
        order = search_order(g)
        timings, nodes = [], []
        for _, mod in backends:
            t, (_, used, _) = best_of(args.repeat, lambda mod=mod: mod.search(g.vertex_count, eu, ev, order, k,
                                                                             symmetry, cap))
            timings.append(t)
            nodes.append(used)
        assert nodes[0] == nodes[1], f"node counts differ on {label}: {nodes}"
        print(f"{'search ' + label:<34} {timings[0] * 1e3:>10.2f} {timings[1] * 1e3:>10.2f} "
              f"{timings[1] / timings[0]:>7.1f}x  ({nodes[0]} nodes)")

    cases = verify_cases(args.verify_graphs)
    packed = [(g.vertex_count, [u for u, _ in g.edges], [v for _, v in g.edges], colors, max(colors))
              for g, colors in cases]
    timings = []
    for _, mod in backends:
        t, found = best_of(args.repeat, lambda mod=mod: [mod.find_bichromatic_cycle(*a) for a in packed])
        assert all(f is None for f in found)
        timings.append(t)
    label = f"acyclicity check x{len(packed)}"
    print(f"{label:<34} {timings[0] * 1e3:>10.2f} {timings[1] * 1e3:>10.2f} {timings[1] / timings[0]:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
