"""Random instance builders shared by tests."""

import random

from acyclic3 import Palette, PartialColoring, candidate_colors
from acyclic3.generators import gen_random_3sparse
from acyclic3.testing import valid_by_simulation


def random_acyclic_partial(g, palette_size, rnd, fill=0.8, skip=()):
    """Acyclic partial coloring built by random valid assignments (validity by simulation)."""
    c = PartialColoring(g)
    palette = Palette(palette_size)
    order = [e for e in range(g.edge_count) if e not in skip]
    rnd.shuffle(order)
    for e in order:
        if rnd.random() > fill:
            continue
        options = [b for b in sorted(candidate_colors(c, e, palette)) if valid_by_simulation(c, e, b)]
        if options:
            c.assign(e, rnd.choice(options))
    return c


def random_instance(seed, n_range=(6, 16), cap_range=(3, 6), fill=0.85, palette_extra=1):
    """(graph, acyclic partial coloring, uncolored edge, palette) with at least one candidate."""
    rnd = random.Random(seed)
    while True:
        n = rnd.randint(*n_range)
        cap = rnd.randint(*cap_range)
        m = rnd.randint(n - 1, 2 * (n - n // 3))
        g = gen_random_3sparse(n, cap, m, rnd.getrandbits(32))
        if g.edge_count == 0:
            continue
        e = rnd.randrange(g.edge_count)
        palette = Palette(max(g.max_degree() + palette_extra, 2))
        c = random_acyclic_partial(g, palette.size, rnd, fill, skip=(e,))
        if candidate_colors(c, e, palette):
            return g, c, e, palette


def independent_is_proper(g, colors):
    for v in range(g.vertex_count):
        seen = [colors[e] for _, e in g.adjacency[v] if colors[e]]
        if len(seen) != len(set(seen)):
            return False
    return True


def independent_is_acyclic(g, colors):
    """Union-find over every two-color subgraph; a repeated union closes a cycle."""
    palette = sorted({c for c in colors if c})
    for i, a in enumerate(palette):
        for b in palette[i + 1:]:
            parent = list(range(g.vertex_count))

            def find(v):
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                return v

            for e, (u, v) in enumerate(g.edges):
                if colors[e] in (a, b):
                    ru, rv = find(u), find(v)
                    if ru == rv:
                        return False
                    parent[ru] = rv
    return True
