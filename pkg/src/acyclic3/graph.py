"""Simple undirected graphs, sparseness predicates and edge-degeneracy peeling."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised when an edge list does not describe a simple graph."""


class PeelStall(Exception):
    """Peeling stopped: every residual edge has edge degree above the threshold."""

    def __init__(self, k: int, residual: list[int], peeled: "PeelOrder"):
        self.k = k
        self.residual = residual
        self.peeled = peeled
        super().__init__(
            f"peeling stalled at step {len(peeled.sequence)}: "
            f"{len(residual)} residual edges all have edge degree > {k}"
        )


class Graph:
    """Immutable simple undirected graph on vertices ``0 .. n-1``.

    Edge identifiers are assigned in input order.  ``adjacency[v]`` lists
    ``(neighbor, edge_id)`` pairs.
    """

    __slots__ = ("vertex_count", "edges", "adjacency", "_index")

    def __init__(self, vertex_count: int, edge_list: Iterable[Sequence[int]] = ()):
        if vertex_count < 0:
            raise GraphError(f"negative vertex count {vertex_count}")
        self.vertex_count = vertex_count
        edges: list[tuple[int, int]] = []
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(vertex_count)]
        index: dict[tuple[int, int], int] = {}
        for pair in edge_list:
            u, v = int(pair[0]), int(pair[1])
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {vertex_count})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise GraphError(f"duplicate edge ({u}, {v})")
            eid = len(edges)
            index[key] = eid
            edges.append((u, v))
            adjacency[u].append((v, eid))
            adjacency[v].append((u, eid))
        self.edges: tuple[tuple[int, int], ...] = tuple(edges)
        self.adjacency: tuple[tuple[tuple[int, int], ...], ...] = tuple(map(tuple, adjacency))
        self._index = index

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return self.vertex_count

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adjacency[v]]

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self.edges[e]
        except (IndexError, TypeError):
            raise KeyError(f"unknown edge identifier {e!r}") from None

    def other(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if u == v else u

    def edge_id(self, u: int, v: int) -> int:
        """Identifier of the edge ``uv``; ``KeyError`` if absent."""
        key = (u, v) if u < v else (v, u)
        return self._index[key]

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._index

    def without_edges(self, removed: Iterable[int]) -> tuple["Graph", list[int]]:
        """Copy with some edges deleted; returns the graph and new-to-old edge ids."""
        drop = set(removed)
        keep = [e for e in range(self.edge_count) if e not in drop]
        return Graph(self.vertex_count, [self.edges[e] for e in keep]), keep


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    return Graph(n, edge_list)


def edge_degree(g: Graph, e: int) -> int:
    """Number of edges adjacent to ``e``: ``d(u) + d(v) - 2``."""
    u, v = g.endpoints(e)
    return g.degree(u) + g.degree(v) - 2


def is_three_sparse(g: Graph) -> bool:
    return three_sparse_violation(g) is None


def three_sparse_violation(g: Graph) -> int | None:
    """First edge whose endpoints both have degree above 3, if any."""
    for e, (u, v) in enumerate(g.edges):
        if g.degree(u) > 3 and g.degree(v) > 3:
            return e
    return None


def has_qualifying_edge(g: Graph, delta: int | None = None) -> int | None:
    """Smallest edge id with ``d(u) + d(v) < delta + 3``; ``None`` if there is none.

    ``delta`` defaults to the maximum degree of ``g``.  Passing a larger value
    lets a component be judged against the palette of a bigger host graph.
    """
    if delta is None:
        delta = g.max_degree()
    for e, (u, v) in enumerate(g.edges):
        if g.degree(u) + g.degree(v) < delta + 3:
            return e
    return None


@dataclass
class PeelOrder:
    sequence: list[int] = field(default_factory=list)
    residual_edge_degrees: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.sequence)

    def insertion_order(self) -> list[int]:
        return self.sequence[::-1]


def peel_order(g: Graph, k: int, edges: Iterable[int] | None = None) -> PeelOrder:
    """Repeatedly remove a minimum edge-degree edge while that degree is at most ``k``.

    Ties go to the smallest edge id.  ``edges`` restricts peeling to a subset
    of ``g`` (the rest is treated as absent).  Raises :class:`PeelStall` when
    edges remain but all of them have edge degree above ``k``.
    """
    active = set(range(g.edge_count)) if edges is None else set(edges)
    deg = [0] * g.vertex_count
    for e in active:
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1

    def current(e: int) -> int:
        u, v = g.edges[e]
        return deg[u] + deg[v] - 2

    heap = [(current(e), e) for e in active]
    heapq.heapify(heap)
    order = PeelOrder()
    while heap:
        d, e = heapq.heappop(heap)
        if e not in active or d != current(e):
            continue  # stale entry
        if d > k:
            heapq.heappush(heap, (d, e))
            raise PeelStall(k, sorted(active), order)
        active.discard(e)
        order.sequence.append(e)
        order.residual_edge_degrees.append(d)
        u, v = g.edges[e]
        deg[u] -= 1
        deg[v] -= 1
        for w in (u, v):
            for _, f in g.adjacency[w]:
                if f in active:
                    heapq.heappush(heap, (current(f), f))
    return order


@dataclass
class Component:
    """A connected piece of a host graph with back-mappings into it."""

    graph: Graph
    vertices: list[int]  # local -> host vertex
    edges: list[int]  # local -> host edge id

    @property
    def trivial(self) -> bool:
        return self.graph.edge_count == 0


def connected_components(g: Graph) -> list[Component]:
    """Maximal connected subgraphs, ordered by smallest host vertex."""
    seen = [False] * g.vertex_count
    out: list[Component] = []
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        verts = [root]
        stack = [root]
        while stack:
            v = stack.pop()
            for w, _ in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    verts.append(w)
                    stack.append(w)
        verts.sort()
        local = {v: i for i, v in enumerate(verts)}
        host_edges = sorted({e for v in verts for _, e in g.adjacency[v]})
        sub = Graph(len(verts), [(local[g.edges[e][0]], local[g.edges[e][1]]) for e in host_edges])
        out.append(Component(sub, verts, host_edges))
    return out
