"""Partial edge colorings, bichromatic paths and the proper/acyclic verifiers.

Colors are positive integers; 0 never denotes a color.  A
:class:`PartialColoring` keeps, for every vertex, a ``color -> edge`` index so
that a step along a two-colored path costs a dict lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence, Union

from ._backend import kernels
from .graph import Graph


class ColoringError(ValueError):
    """An operation would break properness or its precondition does not hold."""


@dataclass(frozen=True)
class Palette:
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"palette size must be positive, got {self.size}")

    @property
    def colors(self) -> range:
        return range(1, self.size + 1)

    def __contains__(self, color: object) -> bool:
        return isinstance(color, int) and 1 <= color <= self.size

    def __len__(self) -> int:
        return self.size


class PartialColoring:
    """Colors for a subset of the edges of ``graph``.

    ``colors[e]`` is 0 for an uncolored edge.  Properness is enforced on every
    mutation; acyclicity is not (see :func:`verify_acyclic`).
    """

    __slots__ = ("graph", "colors", "at")

    def __init__(self, graph: Graph, assignment: Mapping[int, int] | Sequence[int] | None = None):
        self.graph = graph
        self.colors: list[int] = [0] * graph.edge_count
        self.at: list[dict[int, int]] = [{} for _ in range(graph.vertex_count)]
        if assignment is None:
            return
        items = assignment.items() if isinstance(assignment, Mapping) else enumerate(assignment)
        for e, color in items:
            if color:
                self.assign(e, color)

    def copy(self) -> "PartialColoring":
        other = PartialColoring.__new__(PartialColoring)
        other.graph = self.graph
        other.colors = list(self.colors)
        other.at = [dict(d) for d in self.at]
        return other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialColoring):
            return NotImplemented
        return self.graph == other.graph and self.colors == other.colors

    def __repr__(self) -> str:
        return f"PartialColoring({self.assignment})"

    def __len__(self) -> int:
        return sum(1 for c in self.colors if c)

    @property
    def assignment(self) -> dict[int, int]:
        return {e: c for e, c in enumerate(self.colors) if c}

    def color(self, e: int) -> int | None:
        return self.colors[e] or None

    def is_colored(self, e: int) -> bool:
        return self.colors[e] != 0

    def is_total(self) -> bool:
        return all(self.colors)

    def colors_at(self, v: int) -> set[int]:
        """Colors on edges incident to ``v`` (the set F_v)."""
        return set(self.at[v])

    def colors_past(self, x: int, y: int) -> set[int]:
        """Colors at ``y`` other than the color of ``xy`` (F_xy); all of F_y if ``xy`` is uncolored."""
        out = set(self.at[y])
        if self.graph.has_edge(x, y):
            c = self.colors[self.graph.edge_id(x, y)]
            out.discard(c)
        return out

    def degree(self, v: int) -> int:
        """Number of colored edges at ``v``."""
        return len(self.at[v])

    def edge_at(self, v: int, color: int) -> int | None:
        return self.at[v].get(color)

    def neighbor_via(self, v: int, color: int) -> int | None:
        e = self.at[v].get(color)
        return None if e is None else self.graph.other(e, v)

    def colored_neighbors(self, v: int) -> list[tuple[int, int, int]]:
        """``(neighbor, edge, color)`` for colored edges at ``v``, by color."""
        g = self.graph
        return [(g.other(e, v), e, c) for c, e in sorted(self.at[v].items())]

    def assign(self, e: int, color: int) -> None:
        if self.colors[e]:
            raise ColoringError(f"edge {e} is already colored {self.colors[e]}")
        if color < 1:
            raise ColoringError(f"invalid color {color}")
        u, v = self.graph.edges[e]
        for w in (u, v):
            clash = self.at[w].get(color)
            if clash is not None:
                raise ColoringError(f"color {color} already used at vertex {w} by edge {clash}")
        self.colors[e] = color
        self.at[u][color] = e
        self.at[v][color] = e

    def unassign(self, e: int) -> int:
        color = self.colors[e]
        if not color:
            raise ColoringError(f"edge {e} is not colored")
        u, v = self.graph.edges[e]
        del self.at[u][color]
        del self.at[v][color]
        self.colors[e] = 0
        return color

    def recolor(self, changes: Mapping[int, int]) -> dict[int, int]:
        """Apply several color changes at once; 0 uncolors.  Returns the old colors.

        The change is atomic: on a properness clash nothing is modified.
        """
        old = {e: self.colors[e] for e in changes}
        for e, c in old.items():
            if c:
                self.unassign(e)
        done: list[int] = []
        try:
            for e, c in changes.items():
                if c:
                    self.assign(e, c)
                    done.append(e)
        except ColoringError:
            for e in done:
                self.unassign(e)
            for e, c in old.items():
                if c:
                    self.assign(e, c)
            raise
        return old

    def index_is_coherent(self) -> bool:
        """True iff the per-vertex index is exactly the inverse of ``colors``."""
        expect: list[dict[int, int]] = [{} for _ in range(self.graph.vertex_count)]
        for e, c in enumerate(self.colors):
            if c:
                u, v = self.graph.edges[e]
                if c in expect[u] or c in expect[v]:
                    return False
                expect[u][c] = e
                expect[v][c] = e
        return expect == self.at


ColorInput = Union[PartialColoring, Mapping[int, int], Sequence[int]]


def _raw_colors(g: Graph, c: ColorInput) -> list[int]:
    if isinstance(c, PartialColoring):
        return list(c.colors)
    out = [0] * g.edge_count
    items = c.items() if isinstance(c, Mapping) else enumerate(c)
    for e, color in items:
        out[e] = int(color or 0)
    return out


@dataclass(frozen=True)
class BichromaticPath:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    colors: tuple[int, int]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]


@dataclass(frozen=True)
class BichromaticCycle:
    """A cycle using exactly two colors; ``vertices`` starts at its smallest vertex."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    colors: tuple[int, int]

    def __len__(self) -> int:
        return len(self.edges)


def _cycle_from_edges(g: Graph, edges: Sequence[int], colors: Sequence[int]) -> BichromaticCycle:
    # orient the closed walk, then rotate to the smallest vertex and pick the
    # direction towards its smaller cycle neighbor
    u0, v0 = g.edges[edges[0]]
    if len(edges) > 1 and u0 in g.edges[edges[1]]:
        u0, v0 = v0, u0
    verts = [u0]
    v = u0
    for e in edges:
        v = g.other(e, v)
        verts.append(v)
    verts.pop()
    ring_edges = list(edges)
    i = verts.index(min(verts))
    verts = verts[i:] + verts[:i]
    ring_edges = ring_edges[i:] + ring_edges[:i]
    if len(verts) > 2 and verts[-1] < verts[1]:
        verts = [verts[0]] + verts[:0:-1]
        ring_edges = ring_edges[::-1]
    pair = tuple(sorted({colors[e] for e in ring_edges}))
    return BichromaticCycle(tuple(verts), tuple(ring_edges), pair)  # type: ignore[arg-type]


def _walk(c: PartialColoring, start: int, first: int, second: int) -> tuple[list[int], list[int], bool]:
    """Follow ``first``, ``second``, ``first``, ... from ``start``.

    Returns ``(vertices, edges, closed)``; ``closed`` means the walk came back
    to ``start``.
    """
    g = c.graph
    verts = [start]
    edges: list[int] = []
    v = start
    want = first
    while True:
        e = c.at[v].get(want)
        if e is None:
            return verts, edges, False
        w = g.other(e, v)
        edges.append(e)
        if w == start:
            return verts, edges, True
        verts.append(w)
        v = w
        want = second if want == first else first


def max_bichromatic_path(
    c: PartialColoring, start: int, first_color: int, second_color: int
) -> BichromaticPath | BichromaticCycle:
    """The maximal ``(first, second)``-path through ``start``, or the cycle it lies on.

    The path is oriented so that, read left to right, it leaves ``start``
    along its ``first_color`` edge.  If ``start`` also carries a
    ``second_color`` edge, the path extends backwards past ``start``.
    """
    fwd_v, fwd_e, closed = _walk(c, start, first_color, second_color)
    if closed:
        return _cycle_from_edges(c.graph, fwd_e, c.colors)
    back_v, back_e, _ = _walk(c, start, second_color, first_color)
    vertices = back_v[:0:-1] + fwd_v
    edges = back_e[::-1] + fwd_e
    return BichromaticPath(tuple(vertices), tuple(edges), (first_color, second_color))


def critical_path_exists(c: PartialColoring, alpha: int, beta: int, x: int, y: int) -> bool:
    """Is there a maximal (alpha, beta)-path leaving ``x`` on alpha and entering ``y`` on alpha?"""
    if alpha not in c.at[x] or beta in c.at[x]:
        return False
    verts, edges, closed = _walk(c, x, alpha, beta)
    if closed:
        return False
    return verts[-1] == y and len(edges) % 2 == 1


def candidate_colors(c: PartialColoring, e: int, palette: Palette) -> set[int]:
    """Palette colors missing from both endpoints of the uncolored edge ``e``."""
    if c.colors[e]:
        raise ColoringError(f"edge {e} is already colored")
    x, y = c.graph.edges[e]
    return set(palette.colors) - c.at[x].keys() - c.at[y].keys()


def is_valid_color(c: PartialColoring, e: int, beta: int) -> bool:
    """Whether coloring ``e`` with candidate ``beta`` keeps the coloring acyclic.

    ``beta`` is blocked exactly when some color alpha present at both ends
    has an (alpha, beta) critical path between them.
    """
    x, y = c.graph.edges[e]
    if c.colors[e] or beta < 1 or beta in c.at[x] or beta in c.at[y]:
        raise ColoringError(f"color {beta} is not a candidate for edge {e}")
    for alpha in sorted(c.at[x].keys() & c.at[y].keys()):
        if critical_path_exists(c, alpha, beta, x, y):
            return False
    return True


def valid_colors(c: PartialColoring, e: int, palette: Palette) -> list[int]:
    return [b for b in sorted(candidate_colors(c, e, palette)) if is_valid_color(c, e, b)]


def _valid_by_simulation(c: PartialColoring, e: int, beta: int) -> bool:
    """Assign ``beta`` to ``e`` in a scratch copy and look for a two-colored cycle through it.

    Uses union-find over each two-color subgraph, independent of path walking.
    """
    g = c.graph
    x, y = g.edges[e]
    if c.colors[e] or beta < 1 or beta in c.at[x] or beta in c.at[y]:
        raise ColoringError(f"color {beta} is not a candidate for edge {e}")
    colors = list(c.colors)
    colors[e] = beta
    for other in set(c.at[x]) | set(c.at[y]):
        parent = list(range(g.vertex_count))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for f, col in enumerate(colors):
            if f != e and col in (beta, other):
                a, b = g.edges[f]
                parent[find(a)] = find(b)
        if find(x) == find(y):
            return False
    return True


def color_exchange(c: PartialColoring, w: int, e1: int, e2: int) -> None:
    """Swap the colors of two colored edges that share vertex ``w``."""
    g = c.graph
    if w not in g.edges[e1] or w not in g.edges[e2]:
        raise ColoringError(f"edges {e1} and {e2} must both be incident to {w}")
    c1, c2 = c.colors[e1], c.colors[e2]
    if not c1 or not c2:
        raise ColoringError("both edges must be colored")
    if c1 == c2:
        raise ColoringError(f"edges {e1} and {e2} carry the same color {c1}")
    c.recolor({e1: c2, e2: c1})


def cycle_through(c: PartialColoring, e: int) -> BichromaticCycle | None:
    """A two-colored cycle containing the colored edge ``e``, if any."""
    a = c.colors[e]
    if not a:
        return None
    u, v = c.graph.edges[e]
    for b in sorted(c.at[u].keys() & c.at[v].keys()):
        if b == a:
            continue
        _, edges, closed = _walk(c, u, b, a)
        if closed:
            return _cycle_from_edges(c.graph, edges, c.colors)
    return None


class ProperViolation(NamedTuple):
    vertex: int
    color: int
    edges: tuple[int, int]


class Verdict(NamedTuple):
    ok: bool
    witness: ProperViolation | BichromaticCycle | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_proper(g: Graph, c: ColorInput) -> Verdict:
    """No vertex sees the same color twice.  Scans vertices, then incident edges, in order."""
    colors = _raw_colors(g, c)
    for v in range(g.vertex_count):
        seen: dict[int, int] = {}
        for _, e in g.adjacency[v]:
            col = colors[e]
            if not col:
                continue
            if col in seen:
                return Verdict(False, ProperViolation(v, col, (seen[col], e)))
            seen[col] = e
    return Verdict(True)


def verify_acyclic(g: Graph, c: ColorInput) -> Verdict:
    """No cycle uses exactly two colors.  The coloring must already be proper."""
    colors = _raw_colors(g, c)
    if not verify_proper(g, colors).ok:
        raise ColoringError("verify_acyclic needs a proper coloring; run verify_proper first")
    k = max(colors, default=0)
    if k < 2:
        return Verdict(True)
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    found = kernels.find_bichromatic_cycle(g.vertex_count, eu, ev, colors, k)
    if found is None:
        return Verdict(True)
    return Verdict(False, _cycle_from_edges(g, found, colors))


def is_acyclic_coloring(g: Graph, c: ColorInput) -> bool:
    return bool(verify_proper(g, c)) and bool(verify_acyclic(g, c))
