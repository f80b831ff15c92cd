"""Batch runner: materialize manifest instances, solve, verify, tabulate.

A manifest is JSON, either a list of entries or ``{"instances": [...]}``.
Each entry names a family and its parameters::

    {"family": "corpus", "seed": 17}
    {"family": "random", "params": {"n": 30, "delta_cap": 6, "m_target": 40,
                                    "require_qualifying": true}, "seed": 3}
    {"family": "biregular", "params": {"a": 4, "delta": 4}}
    {"family": "named", "params": {"name": "cycle", "n": 5}}
    {"family": "file", "params": {"path": "graphs/foo.txt"}}
"""

from __future__ import annotations

import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Mapping

from .coloring import verify_acyclic, verify_proper
from .generators import gen_biregular_3_delta, gen_corpus_instance, gen_named, gen_random_3sparse
from .graph import Graph
from .io import parse_edge_list, read_text
from .solver import SolverAbort, acyclic_color


class ManifestError(ValueError):
    pass


def load_manifest(text: str) -> list[dict]:
    data = json.loads(text)
    if isinstance(data, Mapping):
        data = data.get("instances", [])
    if not isinstance(data, list) or not all(isinstance(d, Mapping) for d in data):
        raise ManifestError("manifest must be a list of objects or {'instances': [...]}")
    return [dict(d) for d in data]


def corpus_manifest(count: int, first_seed: int = 1) -> list[dict]:
    return [{"family": "corpus", "seed": s} for s in range(first_seed, first_seed + count)]


def materialize(entry: Mapping[str, Any], base_dir: str = ".") -> Graph:
    family = entry.get("family")
    params = dict(entry.get("params", {}))
    seed = entry.get("seed")
    try:
        if family == "corpus":
            return gen_corpus_instance(int(seed), **params)
        if family == "random":
            return gen_random_3sparse(seed=int(seed), **params)
        if family == "biregular":
            return gen_biregular_3_delta(**params)
        if family == "named":
            return gen_named(params.pop("name"), **params)
        if family == "file":
            path = os.path.join(base_dir, params["path"])
            return parse_edge_list(read_text(path), source=path)
    except (TypeError, KeyError) as exc:
        raise ManifestError(f"bad parameters for family {family!r}: {exc}") from None
    raise ManifestError(f"unknown family {family!r}")


def describe(entry: Mapping[str, Any]) -> str:
    family = entry.get("family", "?")
    params = entry.get("params", {})
    bits = [f"{k}={v}" for k, v in sorted(params.items())]
    if "seed" in entry:
        bits.append(f"seed={entry['seed']}")
    return f"{family}(" + ",".join(bits) + ")"


@dataclass
class Row:
    index: int
    label: str
    n: int = 0
    m: int = 0
    delta: int = 0
    mode: str = ""
    colors_used: int = 0
    bound: int = 0
    verified: bool = False
    within_bound: bool = False
    fallback_count: int = 0
    fallback_cases: dict[str, int] = field(default_factory=dict)
    seconds: float = 0.0
    error: str = ""


def run_entry(index: int, entry: Mapping[str, Any], mode: str = "auto",
              checked: bool = False, base_dir: str = ".") -> Row:
    row = Row(index, describe(entry))
    try:
        g = materialize(entry, base_dir)
    except (ManifestError, ValueError) as exc:
        row.error = f"input: {exc}"
        return row
    row.n, row.m, row.delta = g.vertex_count, g.edge_count, g.max_degree()
    start = time.perf_counter()
    try:
        result = acyclic_color(g, mode, checked=checked)
    except SolverAbort as exc:
        row.seconds = time.perf_counter() - start
        row.error = f"abort: {exc}"
        return row
    except ValueError as exc:
        row.seconds = time.perf_counter() - start
        row.error = f"input: {exc}"
        return row
    row.seconds = time.perf_counter() - start
    stats = result.stats
    row.mode = stats.mode
    row.colors_used = stats.colors_used
    row.bound = stats.palette_size
    row.verified = verify_proper(g, result.coloring).ok and verify_acyclic(g, result.coloring).ok \
        and result.coloring.is_total()
    row.within_bound = row.colors_used <= row.bound
    row.fallback_count = stats.fallback_count
    row.fallback_cases = dict(stats.fallback_cases)
    return row


def _run_star(args: tuple) -> Row:
    return run_entry(*args)


def run_manifest(entries: list[dict], mode: str = "auto", jobs: int = 1,
                 checked: bool = False, base_dir: str = ".") -> list[Row]:
    work = [(i, e, mode, checked, base_dir) for i, e in enumerate(entries)]
    if jobs <= 1 or len(work) <= 1:
        return [_run_star(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_star, work, chunksize=max(1, len(work) // (4 * jobs))))


@dataclass
class Summary:
    instances: int
    verified: int
    bound_violations: int
    aborts: int
    input_errors: int
    fallback_total: int
    fallback_by_case: dict[str, int]
    max_seconds: float
    total_seconds: float


def summarize(rows: list[Row]) -> Summary:
    by_case: Counter = Counter()
    for r in rows:
        by_case.update(r.fallback_cases)
    return Summary(
        instances=len(rows),
        verified=sum(r.verified for r in rows),
        bound_violations=sum(1 for r in rows if not r.error and not r.within_bound),
        aborts=sum(1 for r in rows if r.error.startswith("abort")),
        input_errors=sum(1 for r in rows if r.error.startswith("input")),
        fallback_total=sum(r.fallback_count for r in rows),
        fallback_by_case=dict(sorted(by_case.items())),
        max_seconds=max((r.seconds for r in rows), default=0.0),
        total_seconds=sum(r.seconds for r in rows),
    )


def format_table(rows: list[Row], summary: Summary) -> str:
    head = f"{'#':>4} {'instance':<40} {'n':>4} {'m':>5} {'D':>3} {'mode':<9} {'col':>4} {'bound':>5} {'ok':<3} {'fb':>3} {'ms':>8}"
    lines = [head, "-" * len(head)]
    for r in rows:
        ok = "yes" if r.verified and r.within_bound else "NO"
        lines.append(
            f"{r.index:>4} {r.label[:40]:<40} {r.n:>4} {r.m:>5} {r.delta:>3} {r.mode or '-':<9} "
            f"{r.colors_used:>4} {r.bound:>5} {ok:<3} {r.fallback_count:>3} {r.seconds * 1000:>8.1f}"
            + (f"  {r.error}" if r.error else "")
        )
    lines.append("")
    lines.append(
        f"instances: {summary.instances}  verified: {summary.verified}  "
        f"bound violations: {summary.bound_violations}  aborts: {summary.aborts}  "
        f"input errors: {summary.input_errors}"
    )
    lines.append(f"max time: {summary.max_seconds * 1000:.1f} ms  total: {summary.total_seconds:.2f} s")
    lines.append(f"fallback invocations: {summary.fallback_total}")
    for label, count in summary.fallback_by_case.items():
        lines.append(f"  {label}: {count}")
    return "\n".join(lines) + "\n"


def rows_as_dicts(rows: list[Row]) -> list[dict]:
    return [asdict(r) for r in rows]
