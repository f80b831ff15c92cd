"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are echoed live and collected into the terminal summary.  Run the
module directly (``python tests/test_acceptance.py``) to get just the lines.
"""

import random
import sys
import time
from collections import Counter

import pytest

from acyclic3 import (
    BichromaticCycle,
    PeelStall,
    PartialColoring,
    Palette,
    ProperViolation,
    acyclic_color,
    build_graph,
    candidate_colors,
    connected_components,
    exact_aci,
    gen_biregular_3_delta,
    gen_corpus_instance,
    gen_random_3sparse,
    has_qualifying_edge,
    is_three_sparse,
    is_valid_color,
    peel_order,
    verify_acyclic,
    verify_proper,
)
from acyclic3.bench import format_table, run_manifest, summarize
from acyclic3.extender import replay
from acyclic3.generators import GenerationError, complete, complete_bipartite, cycle
from acyclic3.testing import valid_by_simulation
from helpers import independent_is_acyclic, independent_is_proper, random_acyclic_partial

REPORT: list[str] = []
CORPUS_SEEDS = range(1, 501)


def report(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    REPORT.append(line)
    sys.__stdout__.write("\n" + line + "\n")
    sys.__stdout__.flush()
    return ok


def corollary_instances():
    out = []
    for delta in (4, 5, 6):
        for a in range(delta, 4 * delta + 1):
            if (3 * a) % delta == 0:
                out.append((f"biregular({a},{delta})", gen_biregular_3_delta(a, delta)))
    out.append(("K4", complete(4)))
    out.append(("K33", complete_bipartite(3, 3)))
    return out


# 1 ---------------------------------------------------------------------

def test_criterion_1_oracle_constants():
    results = {}
    for name, g, limit in (("K4", complete(4), 1.0), ("K33", complete_bipartite(3, 3), 30.0)):
        start = time.perf_counter()
        r = exact_aci(g)
        elapsed = time.perf_counter() - start
        witness_ok = independent_is_proper(g, r.witness.colors) and independent_is_acyclic(g, r.witness.colors)
        results[name] = (r.aci, elapsed, elapsed < limit and witness_ok)
    ok = all(aci == 5 and fine for aci, _, fine in results.values())
    detail = ", ".join(f"{k} aci={v[0]} in {v[1] * 1000:.1f} ms" for k, v in results.items())
    assert report(1, ok, detail + " (expected 5 and 5)")


# 2 ---------------------------------------------------------------------

def run_theorem_corpus(checked):
    failures, worst, stats = [], 0.0, Counter()
    results = []
    for seed in CORPUS_SEEDS:
        g = gen_corpus_instance(seed)
        assert is_three_sparse(g) and 4 <= g.max_degree() <= 8 and g.vertex_count <= 60
        start = time.perf_counter()
        r = acyclic_color(g, "theorem", checked=checked)
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        colors = r.coloring.colors
        good = (
            r.coloring.is_total()
            and r.colors_used <= g.max_degree() + 1
            and verify_proper(g, r.coloring).ok
            and verify_acyclic(g, r.coloring).ok
            and independent_is_proper(g, colors)
            and independent_is_acyclic(g, colors)
            and elapsed < 1.0
        )
        if not good:
            failures.append(seed)
        stats[g.max_degree()] += 1
        results.append((g, r))
    return failures, worst, stats, results


def test_criterion_2_theorem_bound():
    failures, worst, deltas, _ = run_theorem_corpus(checked=False)
    ok = not failures
    spread = " ".join(f"D{d}:{n}" for d, n in sorted(deltas.items()))
    detail = (f"{len(CORPUS_SEEDS) - len(failures)}/{len(CORPUS_SEEDS)} within Delta+1 and verified, "
              f"slowest {worst * 1000:.1f} ms [{spread}]")
    if failures:
        detail += f"; failing seeds {failures[:10]}"
    assert report(2, ok, detail)


# 3 ---------------------------------------------------------------------

def test_criterion_3_corollary_bound():
    bad = []
    for name, g in corollary_instances():
        r = acyclic_color(g)
        top = g.max_degree() + 2
        comps = [c for c in connected_components(g) if not c.trivial]
        per_comp = [sum(1 for e in c.edges if r.coloring.colors[e] == top) for c in comps]
        good = (
            r.coloring.is_total()
            and r.colors_used <= top
            and per_comp == [1] * len(comps)
            and independent_is_proper(g, r.coloring.colors)
            and independent_is_acyclic(g, r.coloring.colors)
        )
        if not good:
            bad.append(name)
    n = len(corollary_instances())
    assert report(3, not bad, f"{n - len(bad)}/{n} instances within Delta+2 with one reserved-color edge"
                  + (f"; failing {bad}" if bad else ""))


# 4 ---------------------------------------------------------------------

def validity_trial(rnd):
    while True:
        n = rnd.randint(5, 18)
        cap = rnd.randint(3, 7)
        m = rnd.randint(n - 1, 2 * (n - n // 3))
        try:
            g = gen_random_3sparse(n, cap, m, rnd.getrandbits(32))
        except GenerationError:
            continue
        e = rnd.randrange(g.edge_count)
        palette = Palette(max(2, g.max_degree() + rnd.choice((0, 1, 1, 2))))
        c = random_acyclic_partial(g, palette.size, rnd, fill=rnd.choice((0.7, 1.0, 1.0)), skip=(e,))
        options = sorted(candidate_colors(c, e, palette))
        if options:
            return c, e, rnd.choice(options)


def test_criterion_4_validity_routes_agree():
    rnd = random.Random(20240501)
    disagreements = 0
    tally = Counter()
    for _ in range(10_000):
        c, e, beta = validity_trial(rnd)
        a = is_valid_color(c, e, beta)
        b = valid_by_simulation(c, e, beta)
        disagreements += a != b
        x, y = c.graph.edges[e]
        tally["shared" if c.at[x].keys() & c.at[y].keys() else "disjoint"] += 1
        tally["invalid" if not b else "valid"] += 1
    detail = (f"10000 trials, {disagreements} disagreements "
              f"({tally['invalid']} invalid, {tally['shared']} with shared colors)")
    assert report(4, disagreements == 0 and tally["invalid"] > 0, detail)


# 5 ---------------------------------------------------------------------

def small_instances(count, seed):
    rnd = random.Random(seed)
    out = []
    while len(out) < count:
        n = rnd.randint(3, 7)
        cap = rnd.randint(2, 6)
        m = rnd.randint(1, min(12, 2 * (n - n // 3)))
        try:
            g = gen_random_3sparse(n, cap, m, rnd.getrandbits(32))
        except GenerationError:
            continue
        out.append(g)
    return out


def test_criterion_5_oracle_cross_check():
    start = time.perf_counter()
    bad = []
    graphs = small_instances(200, 5)
    for i, g in enumerate(graphs):
        aci = exact_aci(g).aci
        used = acyclic_color(g).colors_used
        if not (used >= aci and aci <= g.max_degree() + 2):
            bad.append(i)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    assert report(5, ok, f"{200 - len(bad)}/200 graphs with solver >= exact index <= Delta+2, "
                  f"{elapsed:.1f} s" + (f"; failing {bad}" if bad else ""))


# 6 ---------------------------------------------------------------------

def test_criterion_6_peeling():
    bad = []
    for seed in range(1, 1001):
        g = gen_corpus_instance(seed)
        delta = g.max_degree()
        assert all(c.trivial or has_qualifying_edge(c.graph, delta) is not None for c in connected_components(g))
        try:
            order = peel_order(g, delta)
        except PeelStall:
            bad.append(seed)
            continue
        deg = [g.degree(v) for v in range(g.vertex_count)]
        recomputed = []
        for e in order.sequence:
            u, v = g.edges[e]
            recomputed.append(deg[u] + deg[v] - 2)
            deg[u] -= 1
            deg[v] -= 1
        if sorted(order.sequence) != list(range(g.edge_count)) or recomputed != order.residual_edge_degrees \
                or max(recomputed, default=0) > delta:
            bad.append(seed)
    assert report(6, not bad, f"{1000 - len(bad)}/1000 graphs fully peeled with residual edge degree <= Delta"
                  + (f"; failing {bad[:10]}" if bad else ""))


# 7 ---------------------------------------------------------------------

def test_criterion_7_checked_traces():
    failures, _, _, results = run_theorem_corpus(checked=True)
    replay_bad = []
    for seed, (g, r) in zip(CORPUS_SEEDS, results):
        state = PartialColoring(g)
        position = 0
        for trace in r.traces:
            # closed-form events for paths and cycles sit between traces
            while r.events[position] is not trace.events[0]:
                state = replay([r.events[position]], state)
                position += 1
            after = trace.replay(state)
            if replay(trace.events, state) != after or not all(ev.proper and ev.acyclic for ev in trace.events):
                replay_bad.append(seed)
                break
            state = after
            position += len(trace.events)
        state = replay(r.events[position:], state)
        if state != r.coloring:
            replay_bad.append(seed)
    ok = not failures and not replay_bad
    n_traces = sum(len(r.traces) for _, r in results)
    assert report(7, ok, f"checked mode on {len(CORPUS_SEEDS)} graphs: {len(failures)} failures, "
                  f"{n_traces} traces, {len(replay_bad)} replay mismatches")


# 8 ---------------------------------------------------------------------

def test_criterion_8_fallback_telemetry():
    entries = [{"family": "corpus", "seed": s} for s in CORPUS_SEEDS]
    rows = run_manifest(entries, mode="theorem")
    cor = []
    for name, g in corollary_instances():
        r = acyclic_color(g)
        cor.append((name, r))
    summary = summarize(rows)
    table = format_table(rows, summary)
    fallback_lines = table[table.index("fallback invocations"):].strip().splitlines()
    cor_fallbacks = Counter()
    for _, r in cor:
        cor_fallbacks.update(r.stats.fallback_cases)
    each_verified = all(row.verified for row in rows if row.fallback_count) and all(
        verify_acyclic(r.coloring.graph, r.coloring).ok for _, r in cor if r.stats.fallback_count
    )
    ok = summary.aborts == 0 and summary.verified == len(rows) and each_verified
    by_case = dict(summary.fallback_by_case)
    for label, n in cor_fallbacks.items():
        by_case[label] = by_case.get(label, 0) + n
    detail = (f"0 aborts over {len(rows) + len(cor)} runs; fallback invocations "
              f"{summary.fallback_total + sum(cor_fallbacks.values())} by case {by_case or '{}'}; "
              f"bench summary reports '{fallback_lines[0]}'")
    if summary.aborts:
        detail = f"{summary.aborts} aborts; " + detail
    assert report(8, ok, detail)


# 9 ---------------------------------------------------------------------

def test_criterion_9_negative_verifier():
    c4 = cycle(4)
    cyc = verify_acyclic(c4, [1, 2, 1, 2])
    cyc_ok = (not cyc.ok and isinstance(cyc.witness, BichromaticCycle)
              and cyc.witness.vertices == (0, 1, 2, 3) and cyc.witness.edges == (0, 1, 2, 3)
              and cyc.witness.colors == (1, 2))
    k3 = build_graph(3, [(0, 1), (0, 2), (1, 2)])
    clash = verify_proper(k3, [1, 1, 2])
    clash_ok = not clash.ok and clash.witness == ProperViolation(vertex=0, color=1, edges=(0, 1))
    detail = f"C4 witness {cyc.witness.vertices if cyc.witness else None}, K3 clash {clash.witness}"
    assert report(9, cyc_ok and clash_ok, detail)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
