"""Graph families: named graphs, 3-by-Delta biregular bipartite graphs, random 3-sparse graphs.

Randomness comes from SplitMix64 (Steele, Lea and Flood), so a seed yields the
same graph on every platform and in every language that follows these steps:

    state += 0x9E3779B97F4A7C15                       (mod 2**64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9         (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB         (mod 2**64)
    return z ^ (z >> 31)

Bounded draws ``below(n)`` reject values at or above ``2**64 - (2**64 % n)``
and return ``value % n``, so they carry no modulo bias.
"""

from __future__ import annotations

from .graph import Graph, build_graph, connected_components, has_qualifying_edge, is_three_sparse

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class GenerationError(ValueError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next()
            if r < limit:
                return r % n

    def shuffle(self, items: list) -> None:
        """Fisher-Yates, drawing j = below(i + 1) for i from the end down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def complete(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def path(n: int) -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges)."""
    if n < 1:
        raise GenerationError("path needs at least 1 vertex")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GenerationError("cycle needs at least 3 vertices")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    if leaves < 0:
        raise GenerationError("star needs a nonnegative leaf count")
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


NAMED = ("k4", "k33", "path", "cycle", "star")


def gen_named(name: str, n: int | None = None) -> Graph:
    """``k4``, ``k33``, or a sized family: ``path(n)``, ``cycle(n)``, ``star(n)`` (n leaves)."""
    key = name.lower()
    if key == "k4":
        return complete(4)
    if key == "k33":
        return complete_bipartite(3, 3)
    sized = {"path": path, "cycle": cycle, "star": star}
    if key not in sized:
        raise GenerationError(f"unknown graph family {name!r}; expected one of {NAMED}")
    if n is None:
        raise GenerationError(f"family {name!r} needs a size")
    return sized[key](n)


def gen_biregular_3_delta(a: int, delta: int) -> Graph:
    """Bipartite graph with ``a`` left vertices of degree 3 and ``3a/delta`` right vertices of degree ``delta``.

    Left vertex i joins right vertices (3i + j) mod b for j = 0, 1, 2, where
    b = 3a/delta.  Consecutive blocks of three wrap around the right side, so
    every right vertex is hit exactly delta times and no pair repeats while
    b >= 3.  With a = delta this is K_{3,delta}.  Left vertices are 0..a-1.
    """
    if delta < 4:
        raise GenerationError(f"delta must be at least 4, got {delta}")
    if a < 1 or (3 * a) % delta:
        raise GenerationError(f"3*a = {3 * a} is not divisible by delta = {delta}")
    b = 3 * a // delta
    if b < 3:
        raise GenerationError(f"right side would have {b} < 3 vertices; left degree 3 is infeasible")
    edges = [(i, a + (3 * i + j) % b) for i in range(a) for j in range(3)]
    return build_graph(a + b, edges)


def gen_random_3sparse(
    n: int,
    delta_cap: int,
    m_target: int,
    seed: int,
    require_qualifying: bool = False,
    max_attempts: int = 100,
) -> Graph:
    """Random simple 3-sparse graph with exactly ``m_target`` edges.

    Vertices split 2:1 into a low pool (capacity 3) and a high pool
    (capacity ``delta_cap``); the first ``n - n // 3`` vertices are low.
    Every edge takes a low vertex with spare capacity as one endpoint, so
    each edge ends at a vertex of final degree <= 3.  The partner is a high
    vertex with probability 1/2 when one is available, otherwise any vertex
    with spare capacity.  With ``require_qualifying`` every nontrivial
    component must have an edge uv with d(u) + d(v) < Delta + 3 (Delta taken
    over the whole graph); failed draws are retried from the advanced
    generator state up to ``max_attempts`` times.
    """
    if n < 2 or delta_cap < 1 or m_target < 0:
        raise GenerationError("need n >= 2, delta_cap >= 1, m_target >= 0")
    n_high = n // 3
    n_low = n - n_high
    low = list(range(n_low))
    high = list(range(n_low, n))
    # low-low edges use two units of low capacity, so 3*n_low bounds m
    if m_target > 3 * n_low:
        raise GenerationError(
            f"m_target = {m_target} exceeds the low-vertex capacity 3*{n_low} = {3 * n_low}"
        )
    rng = SplitMix64(seed)
    for _ in range(max_attempts):
        g = _draw(rng, n, low, high, delta_cap, m_target)
        if g is None:
            continue
        assert is_three_sparse(g)
        if require_qualifying and not _every_component_qualifies(g):
            continue
        return g
    raise GenerationError(f"no acceptable graph after {max_attempts} attempts (seed {seed})")


def _draw(rng: SplitMix64, n: int, low: list[int], high: list[int],
          delta_cap: int, m_target: int) -> Graph | None:
    cap = [3] * len(low) + [delta_cap] * len(high)
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    stuck = 0
    while len(edges) < m_target:
        if stuck > 50 * (m_target + 1):
            return None
        open_low = [v for v in low if cap[v] > 0]
        if not open_low:
            return None
        u = open_low[rng.below(len(open_low))]
        open_high = [w for w in high if cap[w] > 0]
        if open_high and rng.below(2) == 0:
            pool = open_high
        else:
            pool = [w for w in range(n) if w != u and cap[w] > 0]
        if not pool:
            stuck += 1
            continue
        w = pool[rng.below(len(pool))]
        key = (min(u, w), max(u, w))
        if key in seen:
            stuck += 1
            continue
        seen.add(key)
        edges.append(key)
        cap[u] -= 1
        cap[w] -= 1
    return build_graph(n, edges)


def _every_component_qualifies(g: Graph) -> bool:
    delta = g.max_degree()
    return all(
        comp.trivial or has_qualifying_edge(comp.graph, delta) is not None
        for comp in connected_components(g)
    )


def corpus_params(seed: int, n_max: int = 60) -> tuple[int, int, int]:
    """(n, delta_cap, m_target) drawn from ``seed`` for the theorem-bound corpus."""
    rng = SplitMix64(seed ^ 0x5EED)
    n = 12 + rng.below(n_max - 11)
    delta_cap = 4 + rng.below(5)
    n_low = n - n // 3
    m_target = min(3 * n_low, n + rng.below(n // 2 + 1))
    return n, delta_cap, m_target


def gen_corpus_instance(seed: int, n_max: int = 60, delta_range: tuple[int, int] = (4, 8)) -> Graph:
    """A 3-sparse graph with a qualifying edge in every component and Delta in ``delta_range``.

    Parameters come from ``corpus_params(seed)``; draws whose Delta falls
    outside the range are discarded and the generator is reseeded with
    ``seed + k * 2**32`` for k = 1, 2, ...
    """
    n, cap, m = corpus_params(seed, n_max)
    lo, hi = delta_range
    for k in range(64):
        g = gen_random_3sparse(n, cap, m, seed + (k << 32), require_qualifying=True)
        if lo <= g.max_degree() <= hi:
            return g
    raise GenerationError(f"seed {seed}: no draw with Delta in {delta_range}")
