"""Extend an acyclic coloring of ``G - xy`` to ``G`` with at most ``t + 1`` colors.

The extension follows the case analysis for 3-sparse graphs: when no
candidate color for ``xy`` is valid, a short ladder of recolorings and color
exchanges near ``x`` and ``y`` frees one.  Every recoloring is applied
tentatively, checked for properness and for two-colored cycles through the
changed edges, and rolled back if it fails, so a gap in the case analysis
surfaces as :class:`CaseStall` instead of a bad coloring.

Case labels used in traces:

* ``a`` / ``lemma-ge3:1`` - no color is shared by the ends of ``xy``.
* ``direct`` - some candidate is valid although colors are shared.
* ``b.1``, ``b.2:g0`` .. ``b.2:g3``, ``b.3:g'`` - one shared color, ``d(y) >= 4``.
* ``c`` - two shared colors, ``d(y) >= 4``.
* ``lemma-ge3:2.*:f0`` .. ``f3`` and ``lemma-ge3:3*:h1`` .. ``h15`` - both ends
  have degree at most 3.
* ``fallback:<label>`` - bounded local search after a stall at ``<label>``.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping

from .coloring import (
    ColoringError,
    Palette,
    PartialColoring,
    candidate_colors,
    cycle_through,
    is_valid_color,
    max_bichromatic_path,
    verify_acyclic,
    verify_proper,
)

DEFAULT_FALLBACK_NODES = 200_000


@dataclass(frozen=True)
class TraceEvent:
    case_label: str
    action: str  # "assign" | "exchange" | "recolor"
    edges: tuple[int, ...]
    colors: tuple[int, ...]
    previous: tuple[int, ...]
    proper: bool | None = None
    acyclic: bool | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping) -> "TraceEvent":
        return cls(
            d["case_label"],
            d["action"],
            tuple(d["edges"]),
            tuple(d["colors"]),
            tuple(d["previous"]),
            d.get("proper"),
            d.get("acyclic"),
        )


def replay(events: Iterable[TraceEvent], coloring: PartialColoring) -> PartialColoring:
    """Apply ``events`` to a copy of ``coloring``."""
    out = coloring.copy()
    for ev in events:
        out.recolor(dict(zip(ev.edges, ev.colors)))
    return out


@dataclass
class ExtensionTrace:
    edge: int
    x: int
    y: int
    events: list[TraceEvent] = field(default_factory=list)
    case: str = ""
    fallback: str | None = None  # label of the stall the fallback recovered from

    def replay(self, coloring: PartialColoring) -> PartialColoring:
        return replay(self.events, coloring)


class CaseStall(Exception):
    """No branch of the case analysis produced a valid extension."""

    def __init__(self, label: str, context: "ExtensionContext", trace: ExtensionTrace):
        self.label = label
        self.context = context
        self.trace = trace
        super().__init__(f"extension of edge {trace.edge} stalled at case {label}: {context}")


class Exhausted(Exception):
    """The bounded fallback search found no valid extension."""

    def __init__(self, edge: int, radius: int, nodes: int, label: str):
        self.edge = edge
        self.radius = radius
        self.nodes = nodes
        self.label = label
        super().__init__(
            f"fallback search for edge {edge} exhausted (radius {radius}, {nodes} nodes, stalled at {label})"
        )


class CheckedModeError(AssertionError):
    def __init__(self, message: str, trace: ExtensionTrace):
        self.trace = trace
        super().__init__(message)


@dataclass(frozen=True)
class ExtensionContext:
    edge: int
    x: int
    y: int
    t: int
    degree_x: int
    degree_y: int
    candidates: tuple[int, ...]
    shared: tuple[int, ...]


class _Extension:
    def __init__(self, c: PartialColoring, e: int, palette: Palette, checked: bool):
        if c.colors[e]:
            raise ColoringError(f"edge {e} is already colored")
        self.c = c
        self.g = c.graph
        self.e = e
        self.palette = palette
        self.t = palette.size - 1
        self.checked = checked
        u, v = self.g.edges[e]
        du, dv = c.degree(u) + 1, c.degree(v) + 1
        # x is the low end: smaller degree, then smaller id
        self.x, self.y = (u, v) if (du, u) <= (dv, v) else (v, u)
        self.trace = ExtensionTrace(e, self.x, self.y)
        self.where = "dispatch"

    # -- small queries -------------------------------------------------

    def deg(self, v: int) -> int:
        return self.c.degree(v) + (1 if v in (self.x, self.y) else 0)

    def cands(self) -> list[int]:
        return sorted(candidate_colors(self.c, self.e, self.palette))

    def shared(self) -> list[int]:
        return sorted(self.c.at[self.x].keys() & self.c.at[self.y].keys())

    def nb(self, v: int, color: int) -> tuple[int, int]:
        f = self.c.at[v][color]
        return self.g.other(f, v), f

    def others(self, v: int, color: int) -> set[int]:
        """Colors at ``v`` except ``color``: F_{uv} for the edge ``uv`` colored ``color``."""
        return self.c.at[v].keys() - {color}

    def context(self) -> ExtensionContext:
        return ExtensionContext(
            self.e, self.x, self.y, self.t, self.deg(self.x), self.deg(self.y),
            tuple(self.cands()) if not self.c.colors[self.e] else (), tuple(self.shared()),
        )

    # -- transactional edits -------------------------------------------

    def _emit(self, label: str, action: str, changes: Mapping[int, int], old: Mapping[int, int]) -> None:
        edges = tuple(changes)
        ev = TraceEvent(label, action, edges, tuple(changes[f] for f in edges), tuple(old[f] for f in edges))
        if self.checked:
            proper = verify_proper(self.g, self.c).ok
            acyclic = proper and verify_acyclic(self.g, self.c).ok
            ev = TraceEvent(ev.case_label, action, ev.edges, ev.colors, ev.previous, proper, acyclic)
            self.trace.events.append(ev)
            if not (proper and acyclic):
                raise CheckedModeError(f"coloring broken after {label} {action}", self.trace)
            return
        self.trace.events.append(ev)

    def apply(self, label: str, changes: Mapping[int, int], action: str = "recolor") -> bool:
        """Tentatively recolor; keep it only if proper and free of new two-colored cycles."""
        try:
            old = self.c.recolor(changes)
        except ColoringError:
            return False
        if any(cycle_through(self.c, f) is not None for f in changes):
            self.c.recolor(old)
            return False
        self._emit(label, action, changes, old)
        return True

    def rollback(self, mark: int) -> None:
        while len(self.trace.events) > mark:
            ev = self.trace.events.pop()
            self.c.recolor(dict(zip(ev.edges, ev.previous)))

    def assign_any(self, label: str, prefer: Iterable[int] = ()) -> bool:
        S = self.cands()
        first = [b for b in prefer if b in S]
        for b in first + [b for b in S if b not in first]:
            if is_valid_color(self.c, self.e, b):
                self.c.assign(self.e, b)
                self._emit(label, "assign", {self.e: b}, {self.e: 0})
                self.trace.case = label
                return True
        return False

    def attempt(self, label: str, changes: Mapping[int, int], prefer: Iterable[int] = (),
                action: str = "recolor") -> bool:
        self.where = label
        mark = len(self.trace.events)
        if not self.apply(label, changes, action):
            return False
        if self.assign_any(label, prefer):
            return True
        self.rollback(mark)
        return False

    def reduce_to_case2(self, label: str, changes: Mapping[int, int]) -> bool:
        """Recolor so that two colors are shared, then run the two-shared-colors case."""
        self.where = label
        mark = len(self.trace.events)
        if not self.apply(label, changes):
            return False
        if self.lemma_case2():
            return True
        self.rollback(mark)
        return False

    # -- dispatcher ----------------------------------------------------

    def run(self) -> None:
        x, y = self.x, self.y
        if not self.cands():
            self.where = "no-candidate"
            raise CaseStall(self.where, self.context(), self.trace)
        shared = self.shared()
        both_low = self.deg(y) <= 3
        if not shared:
            label = "lemma-ge3:1" if both_low else "a"
        else:
            label = "direct"
        if self.assign_any(label):
            return
        if self.deg(x) > 3:
            self.where = "not-3-sparse"
            ok = False
        elif both_low:
            ok = self.lemma_case2() if len(shared) == 2 else self.lemma_case3()
        elif len(shared) == 1:
            ok = self.case_b()
        else:
            ok = self.case_c()
        if not ok:
            raise CaseStall(self.where, self.context(), self.trace)

    # -- one shared color, d(y) >= 4 ------------------------------------

    def case_b(self) -> bool:
        self.where = "b"
        (alpha,) = self.shared()
        y1, e_y1 = self.nb(self.y, alpha)
        S = self.cands()
        # every candidate is blocked by a critical path through y1, and
        # d(y1) <= 3, so exactly two candidates remain, both seen at y1
        if len(S) != 2 or not set(S) <= self.others(y1, alpha):
            self.where = "b:setup"
            return False
        mu, nu = S
        groups: dict[int, list[tuple[int, int, int, set[int]]]] = {0: [], 1: [], 2: []}
        for w, f, gamma in self.c.colored_neighbors(self.y):
            if w == y1:
                continue
            rest = self.others(w, gamma)
            groups[len(rest & {mu, nu})].append((w, f, gamma, rest))

        if groups[2]:
            for w, f, gamma, rest in groups[2]:
                if self.attempt("b.1", {e_y1: gamma, f: alpha}, (mu, nu), "exchange"):
                    return True
            return False

        if groups[1]:
            for w, f, gamma, rest in groups[1]:
                m, n = (mu, nu) if mu in rest else (nu, mu)
                left = rest - {m}
                kappa = min(left) if left else None
                if kappa == alpha:
                    if self.attempt("b.2:g0", {f: n}, (gamma,)):
                        return True
                    continue
                if self.attempt("b.2:g1", {e_y1: gamma, f: alpha}, (n,), "exchange"):
                    return True
                if self.attempt("b.2:g2", {e_y1: gamma, f: n}, (m,)):
                    return True
                if kappa is not None and kappa in self.c.at[self.y]:
                    y2, f2 = self.nb(self.y, kappa)
                    if f2 != f and self.attempt("b.2:g3", {e_y1: kappa, f: alpha, f2: gamma}, (n,)):
                        return True
            return False

        for w, f, gamma, rest in groups[0]:
            for m, n in ((mu, nu), (nu, mu)):
                if self.attempt("b.3:g'", {e_y1: gamma, f: m}, (n,)):
                    return True
        return False

    # -- two shared colors, d(y) >= 4 -----------------------------------

    def case_c(self) -> bool:
        self.where = "c"
        alpha, beta = self.shared()
        S = set(self.cands())
        for a, b in ((alpha, beta), (beta, alpha)):
            p, ep = self.nb(self.y, a)
            q, _ = self.nb(self.y, b)
            at_p = self.others(p, a)
            if len(at_p) != 2 or not at_p <= S:
                continue
            for mu in sorted((self.others(q, b) & S) - at_p):
                if self.attempt("c", {ep: mu}, sorted(at_p)):
                    return True
        return False

    # -- both ends of degree at most 3 ----------------------------------

    def lemma_case2(self) -> bool:
        L = "lemma-ge3:2"
        self.where = L
        shared = self.shared()
        if len(shared) != 2:
            return False
        a, b = shared
        x, y = self.x, self.y
        x1, ex1 = self.nb(x, a)
        x2, ex2 = self.nb(x, b)
        y1, ey1 = self.nb(y, a)
        y2, ey2 = self.nb(y, b)
        S = self.cands()
        Fyy1, Fyy2 = self.others(y1, a), self.others(y2, b)

        if a in Fyy2 and b in Fyy1:
            for mi in [m for m in S if m not in Fyy1]:
                prefer = [m for m in S if m not in Fyy2 and m != mi]
                if self.attempt(L + ".1:f0", {ey1: mi}, prefer):
                    return True
            return False

        if (a in Fyy2) != (b in Fyy1):
            if a not in Fyy2:  # mirror so that a is seen at y2 and b is not seen at y1
                a, b = b, a
                x1, ex1, x2, ex2 = x2, ex2, x1, ex1
                y1, ey1, y2, ey2 = y2, ey2, y1, ey1
                Fyy1, Fyy2 = Fyy2, Fyy1
            Fxx2 = self.others(x2, b)
            free = [m for m in S if m not in Fyy2]
            for mi in free:
                if self.attempt(L + ".2:f0", {ey2: mi}, [m for m in S if m != mi]):
                    return True
            if not free:
                return False
            mi = free[0]
            if self.attempt(L + ".2:f1", {ex1: b, ex2: a}, (mi,), "exchange"):
                return True
            for mj in [m for m in S if m not in Fxx2]:
                if self.attempt(L + ".2:f2", {ex2: mj, ey2: mi}, (b,)):
                    return True
            return False

        # a not seen at y2 and b not seen at y1
        if self.attempt(L + ".3:f0", {ey1: b, ey2: a}, (), "exchange"):
            return True
        # walks that leave x, reach x1 (resp. x2) and carry on past it
        through_x1 = sum(1 for m in S if len(max_bichromatic_path(self.c, x, a, m)) >= 2)
        through_x2 = sum(1 for m in S if len(max_bichromatic_path(self.c, x, b, m)) >= 2)
        if len(S) != self.t - 1 or through_x1 != self.t - 1 or through_x2 != self.t - 1:
            self.where = L + ".3:claim1"
            return False
        if self.attempt(L + ".3:f1", {ex1: b, ex2: a}, (), "exchange"):
            return True
        if self.attempt(L + ".3:f2", {ex1: b, ey1: b, ex2: a, ey2: a}):
            return True
        for hub, hub_color in ((y1, a), (y2, b)):
            for z, f, col in self.c.colored_neighbors(hub):
                if col != hub_color and self.others(z, col) != {a, b}:
                    self.where = L + ".3:claim2"
                    return False
        at_y1 = [m for m in S if m in self.c.at[y1]]
        for m1, m2 in itertools.combinations(at_y1, 2):
            if m1 not in self.c.at[y2] or m2 not in self.c.at[y2]:
                continue
            changes = {
                self.c.at[y1][m1]: m2, self.c.at[y1][m2]: m1,
                self.c.at[y2][m1]: m2, self.c.at[y2][m2]: m1,
            }
            if self.attempt(L + ".3:f3", changes, (m1, m2), "exchange"):
                return True
        self.where = L + ".3:f3"
        return False

    def lemma_case3(self) -> bool:
        L = "lemma-ge3:3"
        self.where = L
        (a,) = self.shared()
        dx, dy = self.deg(self.x), self.deg(self.y)
        if dx == 2 and dy == 2:
            self.where = L + ":deg2"
            return False
        if dx == 2:
            y = self.y
            _, ey1 = self.nb(y, a)
            ((y2, ey2, b),) = [n for n in self.c.colored_neighbors(y) if n[2] != a]
            S = self.cands()
            for mk in [m for m in S if m not in self.others(y2, b)]:
                if self.attempt(L + ":c", {ey2: mk}, (b,)):
                    return True
            return self.attempt(L + ":c'", {ey1: b, ey2: a}, (), "exchange")
        return self._ladder(self.x, self.y, a) or self._ladder(self.y, self.x, a)

    def _ladder(self, X: int, Y: int, a: int) -> bool:
        """Both ends of degree 3 sharing exactly the color ``a``."""
        L = "lemma-ge3:3"
        x1, ex1 = self.nb(X, a)
        y1, ey1 = self.nb(Y, a)
        ((y2, ey2, b),) = [n for n in self.c.colored_neighbors(Y) if n[2] != a]
        ((x2, ex2, c3),) = [n for n in self.c.colored_neighbors(X) if n[2] != a]
        S = self.cands()
        Fyy1, Fyy2 = self.others(y1, a), self.others(y2, b)
        Fxx1, Fxx2 = self.others(x1, a), self.others(x2, c3)

        if b in Fyy1:
            if c3 not in Fyy2 and self.reduce_to_case2(L + ".1:h1", {ey2: c3}):
                return True
            if a not in Fyy2 and self.reduce_to_case2(L + ".1:h2", {ey1: c3, ey2: a}):
                return True
            for mi in [m for m in S if m not in Fyy2]:
                if self.attempt(L + ".1:h3", {ey2: mi}, (b,)):
                    return True
            if b not in Fxx2 and self.reduce_to_case2(L + ".1.1:h4", {ex2: b}):
                return True
            for mi in [m for m in S if m not in Fxx2]:
                if self.attempt(L + ".1.2:h5", {ex2: mi}, (c3,)):
                    return True
            return False

        for mi in [m for m in S if m not in Fyy2]:
            if self.attempt(L + ".2:h6", {ey2: mi}, (b,)):
                return True
        if a not in Fyy2 and self.attempt(L + ".2:h7", {ey1: b, ey2: a}, (), "exchange"):
            return True
        if self.reduce_to_case2(L + ".2:h8", {ey2: c3}):
            return True
        for mi in [m for m in S if m not in Fxx2]:
            if self.attempt(L + ".2:h9", {ex2: mi}, (c3,)):
                return True
        if b not in Fxx2:
            if self.reduce_to_case2(L + ".2.1:h10", {ex2: b}):
                return True
            if self.attempt(L + ".2.1:h11", {ey1: b, ey2: c3}):
                return True
            if self.attempt(L + ".2.1:h12", {ex1: c3, ex2: b}):
                return True
            at_x2 = [(m, self.c.at[x2][m]) for m in S if m in self.c.at[x2]]
            for (mi, wi), (mj, wj) in itertools.combinations(at_x2, 2):
                changes = {ex1: c3, ex2: b, wi: mj, wj: mi}
                if self.attempt(L + ".2.1:h13", changes, (mi, mj)):
                    return True
            return False
        if b in Fxx1:
            return self.attempt(L + ".2.2:h14", {ex1: c3, ex2: a})
        return self.reduce_to_case2(L + ".2.2:h15", {ex1: b, ex2: a})


def extend(
    c: PartialColoring,
    e: int,
    palette: Palette,
    *,
    checked: bool = False,
    fallback: bool = True,
    radius: int = 2,
    fallback_nodes: int = DEFAULT_FALLBACK_NODES,
) -> ExtensionTrace:
    """Color the uncolored edge ``e`` in place, recoloring nearby edges if needed.

    ``c`` must be proper and acyclic on its colored edges.  The colored edges
    plus ``e`` form the graph being extended; ``e`` should have edge degree at
    most ``palette.size - 1`` in it.  On a stall the bounded fallback search
    runs unless ``fallback`` is False, in which case :class:`CaseStall`
    propagates.
    """
    ext = _Extension(c, e, palette, checked)
    try:
        ext.run()
    except CaseStall as stall:
        if not fallback:
            raise
        ext.rollback(0)
        label = f"fallback:{stall.label}"
        for ev in fallback_bounded_search(c, e, palette, radius, label=label, node_limit=fallback_nodes):
            ext.trace.events.append(ev)
            if checked:
                ok = verify_proper(c.graph, c).ok and verify_acyclic(c.graph, c).ok
                if not ok:
                    raise CheckedModeError(f"fallback broke the coloring at {label}", ext.trace)
        ext.trace.case = label
        ext.trace.fallback = stall.label
    return ext.trace


def _region(c: PartialColoring, x: int, y: int, radius: int) -> list[int]:
    """Colored edges with an endpoint at distance < ``radius`` from ``{x, y}``."""
    seen = {x, y}
    frontier = [x, y]
    region: list[int] = []
    marked: set[int] = set()
    for _ in range(radius):
        nxt: list[int] = []
        for v in frontier:
            for w, f, _ in c.colored_neighbors(v):
                if f not in marked:
                    marked.add(f)
                    region.append(f)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return region


def fallback_bounded_search(
    c: PartialColoring,
    e: int,
    palette: Palette,
    radius: int = 2,
    *,
    label: str = "fallback",
    node_limit: int = DEFAULT_FALLBACK_NODES,
) -> list[TraceEvent]:
    """Exhaustively recolor edges near ``e`` until ``e`` gets a valid color.

    Tries, in order: a direct valid color, one recolored edge in the region,
    then a backtracking search over the whole region (original colors tried
    first).  Mutates ``c`` on success and returns the events; raises
    :class:`Exhausted` otherwise, leaving ``c`` untouched.
    """
    g = c.graph
    x, y = g.edges[e]
    region = _region(c, x, y, radius)

    def valid_now() -> int | None:
        for b in sorted(candidate_colors(c, e, palette)):
            if is_valid_color(c, e, b):
                return b
        return None

    def finish(changes: dict[int, int], old: dict[int, int], b: int) -> list[TraceEvent]:
        events = []
        if changes:
            events.append(TraceEvent(label, "recolor", tuple(changes), tuple(changes.values()),
                                     tuple(old[f] for f in changes)))
        c.assign(e, b)
        events.append(TraceEvent(label, "assign", (e,), (b,), (0,)))
        return events

    b = valid_now()
    if b is not None:
        return finish({}, {}, b)

    for f in region:
        for col in palette.colors:
            if col == c.colors[f]:
                continue
            try:
                old = c.recolor({f: col})
            except ColoringError:
                continue
            if cycle_through(c, f) is None:
                b = valid_now()
                if b is not None:
                    return finish({f: col}, old, b)
            c.recolor(old)

    original = {f: c.colors[f] for f in region}
    c.recolor({f: 0 for f in region})
    order = [e] + region
    nodes = 0

    def options(f: int) -> list[int]:
        first = original.get(f, 0)
        rest = [col for col in palette.colors if col != first]
        return ([first] if first else []) + rest

    def dfs(i: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        f = order[i]
        for col in options(f):
            if nodes >= node_limit:
                return False
            try:
                c.assign(f, col)
            except ColoringError:
                continue
            nodes += 1
            if cycle_through(c, f) is None and dfs(i + 1):
                return True
            c.unassign(f)
        return False

    if dfs(0):
        b = c.colors[e]
        final = {f: c.colors[f] for f in region}
        c.recolor({f: 0 for f in order})
        c.recolor(original)
        changes = {f: final[f] for f in region if final[f] != original[f]}
        c.recolor(changes)
        return finish(changes, original, b)
    c.recolor({f: 0 for f in order if c.colors[f]})
    c.recolor(original)
    raise Exhausted(e, radius, nodes, label)
