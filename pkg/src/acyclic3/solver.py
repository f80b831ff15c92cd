"""Peel-and-extend pipeline: acyclic edge colorings with Delta+1 or Delta+2 colors."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .coloring import Palette, PartialColoring, verify_acyclic, verify_proper
from .extender import CaseStall, Exhausted, ExtensionTrace, TraceEvent, extend
from .graph import (
    Component,
    Graph,
    GraphError,
    PeelStall,
    connected_components,
    has_qualifying_edge,
    peel_order,
    three_sparse_violation,
)

MODES = ("auto", "theorem", "corollary")


class NotThreeSparse(GraphError):
    def __init__(self, edge: int, endpoints: tuple[int, int], degrees: tuple[int, int]):
        self.edge = edge
        self.endpoints = endpoints
        super().__init__(
            f"graph is not 3-sparse: edge {edge} {endpoints} joins vertices of degree {degrees}"
        )


class NoQualifyingEdge(ValueError):
    """Theorem mode was requested for a component with no edge of edge degree <= Delta."""

    def __init__(self, component: Component, delta: int):
        self.component = component
        self.delta = delta
        super().__init__(
            f"no qualifying edge: every edge uv of the component containing vertex "
            f"{component.vertices[0]} has d(u) + d(v) >= {delta + 3}"
        )


class SolverAbort(RuntimeError):
    """Theorem-mode failure; carries everything needed to reproduce it."""

    def __init__(self, message: str, graph: Graph, coloring: PartialColoring,
                 events: list[TraceEvent], residual: list[int], cause: Exception | None = None):
        self.graph = graph
        self.coloring = coloring
        self.events = events
        self.residual = residual
        self.cause = cause
        super().__init__(message)

    def diagnostics(self) -> dict:
        return {
            "error": str(self),
            "n": self.graph.vertex_count,
            "edges": [list(e) for e in self.graph.edges],
            "coloring": list(self.coloring.colors),
            "residual": self.residual,
            "trace": [ev.to_dict() for ev in self.events],
        }


@dataclass
class SolveStats:
    n: int
    m: int
    delta: int
    mode: str
    colors_used: int = 0
    palette_size: int = 0
    fallback_count: int = 0
    case_histogram: Counter = field(default_factory=Counter)
    fallback_cases: Counter = field(default_factory=Counter)
    component_modes: list[str] = field(default_factory=list)
    reserved_edges: list[int] = field(default_factory=list)
    insertion_edge_degrees: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "delta": self.delta,
            "mode": self.mode,
            "colors_used": self.colors_used,
            "palette_size": self.palette_size,
            "fallback_count": self.fallback_count,
            "case_histogram": dict(sorted(self.case_histogram.items())),
            "fallback_cases": dict(sorted(self.fallback_cases.items())),
            "component_modes": list(self.component_modes),
        }


@dataclass
class SolveResult:
    coloring: PartialColoring
    palette_size: int
    stats: SolveStats
    traces: list[ExtensionTrace]
    events: list[TraceEvent]

    @property
    def colors_used(self) -> int:
        return color_count(self.coloring)


def color_count(c: PartialColoring) -> int:
    return len(used_palette(c))


def used_palette(c: PartialColoring) -> set[int]:
    return {col for col in c.colors if col}


def _checked_default() -> bool:
    return os.environ.get("ACYCLIC3_CHECKED", "") not in ("", "0")


class _Run:
    def __init__(self, g: Graph, t: int, checked: bool, fallback: bool, radius: int):
        self.g = g
        self.t = t
        self.checked = checked
        self.fallback = fallback
        self.radius = radius
        self.c = PartialColoring(g)
        self.events: list[TraceEvent] = []
        self.traces: list[ExtensionTrace] = []
        self.stats: SolveStats | None = None

    def put(self, label: str, e: int, color: int) -> None:
        self.c.assign(e, color)
        self.events.append(TraceEvent(label, "assign", (e,), (color,), (0,)))

    def abort(self, message: str, residual: Iterable[int] = (), cause: Exception | None = None) -> SolverAbort:
        return SolverAbort(message, self.g, self.c.copy(), list(self.events), sorted(residual), cause)

    def closed_form(self, comp: Component) -> None:
        """Paths alternate 1, 2; cycles use 1, 2, ..., 1/2 and close with 3."""
        g = self.g
        verts = set(comp.vertices)
        ends = [v for v in comp.vertices if g.degree(v) == 1]
        start = ends[0] if ends else comp.vertices[0]
        order: list[int] = []
        prev_edge = -1
        v = start
        while len(order) < len(comp.edges):
            step = [(w, f) for w, f in g.adjacency[v] if f != prev_edge and w in verts]
            w, f = min(step)
            order.append(f)
            prev_edge, v = f, w
        is_cycle = not ends
        for i, f in enumerate(order):
            color = 3 if is_cycle and i == len(order) - 1 else 1 + i % 2
            self.put("closed-form:" + ("cycle" if is_cycle else "path"), f, color)

    def theorem(self, edges: list[int]) -> None:
        assert self.stats is not None
        try:
            order = peel_order(self.g, self.t, edges)
        except PeelStall as stall:
            raise self.abort(str(stall), stall.residual, stall) from stall
        palette = Palette(self.t + 1)
        for e in order.insertion_order():
            u, v = self.g.edges[e]
            degree_now = self.c.degree(u) + self.c.degree(v)
            self.stats.insertion_edge_degrees.append(degree_now)
            if degree_now > self.t:
                raise self.abort(f"edge {e} reinserted with edge degree {degree_now} > {self.t}", [e])
            before = self.c.copy() if self.checked else None
            try:
                trace = extend(self.c, e, palette, checked=self.checked,
                               fallback=self.fallback, radius=self.radius)
            except (Exhausted, CaseStall) as exc:
                raise self.abort(str(exc), [e], exc) from exc
            if before is not None and trace.replay(before) != self.c:
                raise self.abort(f"trace for edge {e} does not replay", [e])
            self.traces.append(trace)
            self.events.extend(trace.events)
            self.stats.case_histogram[trace.case] += 1
            if trace.fallback is not None:
                self.stats.fallback_count += 1
                self.stats.fallback_cases[trace.fallback] += 1


def acyclic_color(
    g: Graph,
    mode: str = "auto",
    *,
    checked: bool | None = None,
    fallback: bool = True,
    radius: int = 2,
) -> SolveResult:
    """Acyclically edge-color a 3-sparse graph.

    Components are handled separately against one palette sized by the
    global maximum degree Delta.  ``theorem`` mode peels and re-extends with
    Delta+1 colors and needs an edge of edge degree <= Delta in every
    component; ``corollary`` mode sets the smallest edge aside, colors the
    rest with Delta+1 colors and gives that edge the fresh color Delta+2;
    ``auto`` picks per component.  Components of maximum degree <= 2 get a
    closed-form coloring except in ``corollary`` mode.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if checked is None:
        checked = _checked_default()
    bad = three_sparse_violation(g)
    if bad is not None:
        u, v = g.edges[bad]
        raise NotThreeSparse(bad, (u, v), (g.degree(u), g.degree(v)))

    t = g.max_degree()
    run = _Run(g, t, checked, fallback, radius)
    stats = run.stats = SolveStats(g.vertex_count, g.edge_count, t, mode)

    for comp in connected_components(g):
        if comp.trivial:
            continue
        if mode != "corollary" and comp.graph.max_degree() <= 2:
            run.closed_form(comp)
            stats.component_modes.append("theorem")
            continue
        qualifies = has_qualifying_edge(comp.graph, t) is not None
        use = mode if mode != "auto" else ("theorem" if qualifies else "corollary")
        if use == "theorem" and not qualifies:
            raise NoQualifyingEdge(comp, t)
        if use == "theorem":
            run.theorem(comp.edges)
        else:
            reserved = min(comp.edges)
            run.theorem([e for e in comp.edges if e != reserved])
            run.put("corollary:reserved", reserved, t + 2)
            stats.reserved_edges.append(reserved)
        stats.component_modes.append(use)

    used = set(stats.component_modes)
    if mode == "auto":
        stats.mode = used.pop() if len(used) == 1 else ("mixed" if used else "theorem")
    stats.palette_size = t + 2 if "corollary" in stats.component_modes else t + 1
    stats.colors_used = color_count(run.c)

    if checked:
        if not verify_proper(g, run.c).ok or not verify_acyclic(g, run.c).ok:
            raise run.abort("final coloring failed verification")
    return SolveResult(run.c, stats.palette_size, stats, run.traces, run.events)
