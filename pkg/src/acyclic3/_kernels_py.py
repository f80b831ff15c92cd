"""Pure-Python kernels.  Mirrors ``_kernels.pyx`` exactly, including node counts."""

from __future__ import annotations

import time

BACKEND = "python"


def find_bichromatic_cycle(n, eu, ev, colors, k):
    """Edges of the first two-colored cycle, in walk order, or ``None``.

    Color pairs are scanned as ``(a, b)`` with ``a < b``; within a pair, walks
    start from ``a``-colored edges in id order.  ``colors[e] == 0`` means
    uncolored.  The coloring must be proper.
    """
    m = len(eu)
    width = k + 1
    at = [-1] * (n * width)
    by_color = [[] for _ in range(width)]
    for e in range(m):
        c = colors[e]
        if c:
            at[eu[e] * width + c] = e
            at[ev[e] * width + c] = e
            by_color[c].append(e)
    stamp = [0] * m
    pid = 0
    for a in range(1, width):
        if not by_color[a]:
            continue
        for b in range(a + 1, width):
            if not by_color[b]:
                continue
            pid += 1
            for e0 in by_color[a]:
                if stamp[e0] == pid:
                    continue
                stamp[e0] = pid
                start = eu[e0]
                walk = [e0]
                v = ev[e0]
                want = b
                closed = False
                while True:
                    f = at[v * width + want]
                    if f < 0:
                        break
                    if f == e0:
                        closed = True
                        break
                    stamp[f] = pid
                    walk.append(f)
                    v = eu[f] if ev[f] == v else ev[f]
                    want = a if want == b else b
                if closed:
                    return walk
                # mark the other direction so it is not rescanned
                v = start
                want = b
                while True:
                    f = at[v * width + want]
                    if f < 0 or stamp[f] == pid:
                        break
                    stamp[f] = pid
                    v = eu[f] if ev[f] == v else ev[f]
                    want = a if want == b else b
    return None


def search(n, eu, ev, order, k, symmetry=True, max_solutions=1, node_limit=0, time_limit=0.0):
    """Backtracking search for total acyclic edge colorings with colors ``1..k``.

    Edges are colored in ``order``, smallest feasible color first.  With
    ``symmetry`` a new color may only be ``1 + max color used so far``.
    Returns ``(solutions, nodes, complete)``; ``complete`` is False when the
    node or time budget stopped the search early.
    """
    m = len(order)
    if m == 0:
        return [[0] * len(eu)], 0, True
    width = k + 1
    at = [-1] * (n * width)
    colors = [0] * len(eu)
    choice = [0] * m
    maxused = [0] * (m + 1)
    solutions = []
    nodes = 0
    deadline = time.perf_counter() + time_limit if time_limit > 0 else 0.0
    level = 0
    while level >= 0:
        e = order[level]
        u = eu[e]
        v = ev[e]
        prev = choice[level]
        if prev:
            at[u * width + prev] = -1
            at[v * width + prev] = -1
            colors[e] = 0
        lim = maxused[level] + 1 if symmetry else k
        if lim > k:
            lim = k
        c = prev + 1
        while c <= lim:
            if at[u * width + c] < 0 and at[v * width + c] < 0:
                ok = True
                for b in range(1, width):
                    if b == c or at[u * width + b] < 0 or at[v * width + b] < 0:
                        continue
                    # walk u -b- ... alternating b, c; reaching v closes a cycle
                    w = u
                    want = b
                    while True:
                        f = at[w * width + want]
                        if f < 0:
                            break
                        w = eu[f] if ev[f] == w else ev[f]
                        if w == v:
                            ok = False
                            break
                        want = c if want == b else b
                    if not ok:
                        break
                if ok:
                    break
            c += 1
        if c > lim:
            choice[level] = 0
            level -= 1
            continue
        at[u * width + c] = e
        at[v * width + c] = e
        colors[e] = c
        choice[level] = c
        nodes += 1
        maxused[level + 1] = maxused[level] if maxused[level] > c else c
        if level + 1 == m:
            solutions.append(list(colors))
            if len(solutions) >= max_solutions:
                return solutions, nodes, True
        else:
            level += 1
            choice[level] = 0
        if node_limit and nodes >= node_limit:
            return solutions, nodes, False
        if deadline and (nodes & 4095) == 0 and time.perf_counter() > deadline:
            return solutions, nodes, False
    return solutions, nodes, True
