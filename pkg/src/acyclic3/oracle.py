"""Exact acyclic chromatic index by iterative-deepening backtracking.

The search itself lives in the kernel backend (compiled when available).
Each level assigns the next edge the smallest color that keeps the coloring
proper and closes no two-colored cycle through that edge; only cycles
through the new edge can appear, so the check walks one path per color
present at both endpoints.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator

from ._backend import kernels
from .coloring import PartialColoring, verify_acyclic, verify_proper
from .graph import Graph, PeelStall, is_three_sparse, peel_order

DEFAULT_MAX_EDGES = 18


@dataclass
class OracleResult:
    aci: int
    witness: PartialColoring
    nodes_explored: int


class BudgetExceeded(Exception):
    """The node or time budget ran out before the index was pinned down."""

    def __init__(self, lower_bound: int, upper_bound: int | None, nodes: int):
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.nodes = nodes
        span = f"[{lower_bound}, {upper_bound}]" if upper_bound is not None else f">= {lower_bound}"
        super().__init__(f"search budget exceeded after {nodes} nodes; index in {span}")


def search_order(g: Graph) -> list[int]:
    """Reverse peel order when the graph peels at k = Delta, otherwise input order."""
    try:
        return peel_order(g, g.max_degree()).insertion_order()
    except PeelStall:
        return list(range(g.edge_count))


def _upper_bound(g: Graph) -> int | None:
    if not is_three_sparse(g):
        return None
    from .solver import acyclic_color

    return acyclic_color(g, "auto", checked=False).colors_used


def exact_aci(
    g: Graph,
    k_max: int | None = None,
    *,
    node_limit: int = 0,
    time_limit: float = 0.0,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> OracleResult:
    """Smallest k admitting an acyclic edge coloring, with a witness.

    Tries k = Delta, Delta+1, ... up to ``k_max`` (default: the edge count,
    which always suffices).  ``node_limit`` and ``time_limit`` cap the whole
    call; 0 means unlimited.
    """
    m = g.edge_count
    if m > max_edges:
        raise ValueError(f"graph has {m} edges; the oracle guard is {max_edges} (raise max_edges to override)")
    if m == 0:
        return OracleResult(0, PartialColoring(g), 0)
    if k_max is None:
        k_max = m
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    order = search_order(g)
    deadline = time.perf_counter() + time_limit if time_limit > 0 else 0.0
    nodes = 0
    k = g.max_degree()
    while k <= k_max:
        left_nodes = max(node_limit - nodes, 1) if node_limit else 0
        left_time = max(deadline - time.perf_counter(), 1e-6) if deadline else 0.0
        solutions, used, complete = kernels.search(
            g.vertex_count, eu, ev, order, k, True, 1, left_nodes, left_time
        )
        nodes += used
        if solutions:
            witness = PartialColoring(g, solutions[0])
            assert verify_proper(g, witness).ok and verify_acyclic(g, witness).ok
            return OracleResult(k, witness, nodes)
        if not complete:
            raise BudgetExceeded(k, _upper_bound(g), nodes)
        k += 1
    raise BudgetExceeded(k, _upper_bound(g), nodes)


def all_acyclic_colorings(g: Graph, k: int, cap: int) -> Iterator[PartialColoring]:
    """Up to ``cap`` distinct total acyclic colorings with colors 1..k.

    No symmetry breaking; edges are filled in input order with colors tried
    in increasing order, so the stream is lexicographic in the color vector.
    """
    if cap <= 0:
        return
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    solutions, _, _ = kernels.search(
        g.vertex_count, eu, ev, list(range(g.edge_count)), k, False, cap, 0, 0.0
    )
    for colors in solutions:
        yield PartialColoring(g, colors)
