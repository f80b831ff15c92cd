"""Command-line front end.

Exit codes: 0 success, 2 input rejection, 3 verification failure,
4 aborted computation (theorem-mode abort or exhausted oracle budget).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .bench import ManifestError, corpus_manifest, format_table, load_manifest, rows_as_dicts, run_manifest, summarize
from .coloring import BichromaticCycle, ProperViolation, verify_acyclic, verify_proper
from .generators import GenerationError, gen_biregular_3_delta, gen_corpus_instance, gen_named, gen_random_3sparse
from .graph import Graph, GraphError
from .io import ParseError, format_coloring, format_edge_list, parse_coloring, parse_edge_list, read_text
from .oracle import BudgetExceeded, exact_aci
from .solver import MODES, NoQualifyingEdge, SolverAbort, acyclic_color

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_ABORT = 4


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _load_graph(path: str) -> Graph:
    try:
        return parse_edge_list(read_text(path), source=path)
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from None
    except (ParseError, GraphError) as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from None


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _witness_text(g: Graph, witness: object) -> str:
    if isinstance(witness, ProperViolation):
        e1, e2 = witness.edges
        return (f"vertex {witness.vertex} sees color {witness.color} on edges "
                f"{e1} {g.edges[e1]} and {e2} {g.edges[e2]}")
    if isinstance(witness, BichromaticCycle):
        return (f"bichromatic cycle with colors {tuple(witness.colors)} through vertices "
                f"{tuple(witness.vertices)} (edges {tuple(witness.edges)})")
    return str(witness)


def cmd_color(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    try:
        result = acyclic_color(g, args.mode, checked=args.checked or None,
                               fallback=not args.no_fallback)
    except NoQualifyingEdge as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from None
    except GraphError as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from None
    except SolverAbort as exc:
        sys.stderr.write(f"error: theorem-mode abort: {exc}\n")
        sys.stderr.write(json.dumps(exc.diagnostics(), sort_keys=True) + "\n")
        return EXIT_ABORT
    proper = verify_proper(g, result.coloring)
    verified = proper.ok and verify_acyclic(g, result.coloring).ok and result.coloring.is_total()
    stats = result.stats
    record = {
        "input": args.input,
        "mode": stats.mode,
        "delta": stats.delta,
        "palette_size": stats.palette_size,
        "colors_used": stats.colors_used,
        "verified": verified,
        "fallback_count": stats.fallback_count,
    }
    trace = [ev.to_dict() for ev in result.events]
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump(trace, fh, indent=1)
    if args.format == "structured":
        doc = dict(record, coloring=[{"u": u, "v": v, "color": result.coloring.colors[e]}
                                     for e, (u, v) in enumerate(g.edges)])
        if args.trace:
            doc["trace"] = trace
        _emit(json.dumps(doc, sort_keys=True) + "\n", args.output)
    else:
        _emit(format_coloring(g, result.coloring, record), args.output)
    if not verified:
        sys.stderr.write("error: produced coloring failed verification\n")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        colors, _ = parse_coloring(read_text(args.coloring), g, source=args.coloring)
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"cannot read {args.coloring}: {exc.strerror}") from None
    except ParseError as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from None
    proper = verify_proper(g, colors)
    if not proper.ok:
        print(f"not proper: {_witness_text(g, proper.witness)}")
        return EXIT_VERIFY
    acyclic = verify_acyclic(g, colors)
    if not acyclic.ok:
        print(f"not acyclic: {_witness_text(g, acyclic.witness)}")
        return EXIT_VERIFY
    missing = [e for e, col in enumerate(colors) if not col]
    if missing and not args.partial:
        e = missing[0]
        print(f"incomplete: {len(missing)} uncolored edges, first {e} {g.edges[e]}")
        return EXIT_VERIFY
    used = len({col for col in colors if col})
    print(f"ok: proper and acyclic, {used} colors")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_graph(args.input)
    try:
        result = exact_aci(g, args.kmax, node_limit=args.budget, time_limit=args.time_limit,
                           max_edges=args.max_edges)
    except BudgetExceeded as exc:
        print(f"budget exceeded: lower_bound: {exc.lower_bound} upper_bound: {exc.upper_bound} "
              f"nodes_explored: {exc.nodes}")
        return EXIT_ABORT
    except ValueError as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from None
    print(f"aci: {result.aci}")
    print(f"nodes_explored: {result.nodes_explored}")
    if args.witness:
        _emit(format_coloring(g, result.witness), args.witness)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        entries = load_manifest(read_text(args.manifest))
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"cannot read {args.manifest}: {exc.strerror}") from None
    except (ValueError, ManifestError) as exc:
        raise _Fail(EXIT_INPUT, f"{args.manifest}: {exc}") from None
    base = os.path.dirname(os.path.abspath(args.manifest)) if args.manifest != "-" else "."
    rows = run_manifest(entries, args.mode, args.jobs, args.checked, base)
    summary = summarize(rows)
    if args.format == "structured":
        _emit(json.dumps({"rows": rows_as_dicts(rows), "summary": summary.__dict__}, sort_keys=True) + "\n",
              args.output)
    else:
        _emit(format_table(rows, summary), args.output)
    if summary.aborts:
        return EXIT_ABORT
    if summary.input_errors:
        return EXIT_INPUT
    if summary.bound_violations or summary.verified < summary.instances:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        if args.family == "named":
            g = gen_named(args.name, args.n)
        elif args.family == "biregular":
            g = gen_biregular_3_delta(args.a, args.delta)
        elif args.family == "random":
            g = gen_random_3sparse(args.n, args.delta_cap, args.m, args.seed, args.require_qualifying)
        elif args.family == "corpus":
            g = gen_corpus_instance(args.seed)
        else:
            manifest = corpus_manifest(args.count, args.first_seed)
            _emit(json.dumps({"instances": manifest}, indent=1) + "\n", args.output)
            return EXIT_OK
    except GenerationError as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from None
    _emit(format_edge_list(g), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="acyclic3", description="Acyclic edge coloring of 3-sparse graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("color", help="color an edge-list graph")
    c.add_argument("input", help="edge-list file, or - for stdin")
    c.add_argument("--mode", choices=MODES, default="auto")
    c.add_argument("--checked", action="store_true", help="verify after every recoloring step")
    c.add_argument("--no-fallback", action="store_true", help="abort instead of searching when a case stalls")
    c.add_argument("--trace", metavar="PATH", help="write the recoloring trace as JSON")
    c.add_argument("--format", choices=("text", "structured"), default="text")
    c.add_argument("--output", "-o", metavar="PATH")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a coloring for properness and acyclicity")
    v.add_argument("graph")
    v.add_argument("coloring", help="coloring file, or - for stdin")
    v.add_argument("--partial", action="store_true", help="accept uncolored edges")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact acyclic chromatic index of a small graph")
    o.add_argument("input")
    o.add_argument("--kmax", type=int, default=None)
    o.add_argument("--budget", type=int, default=0, help="node limit (0 = none)")
    o.add_argument("--time-limit", type=float, default=0.0, help="seconds (0 = none)")
    o.add_argument("--max-edges", type=int, default=18)
    o.add_argument("--witness", metavar="PATH", help="write the witness coloring (- for stdout)")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="run a manifest of instances")
    b.add_argument("manifest")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--mode", choices=MODES, default="auto")
    b.add_argument("--checked", action="store_true")
    b.add_argument("--format", choices=("text", "structured"), default="text")
    b.add_argument("--output", "-o", metavar="PATH")
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("gen", help="generate graphs or a corpus manifest")
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--output", "-o", metavar="PATH")
    gsub = g.add_subparsers(dest="family", required=True)
    gn = gsub.add_parser("named", parents=[out])
    gn.add_argument("name", help="k4, k33, path, cycle, star")
    gn.add_argument("n", type=int, nargs="?")
    gb = gsub.add_parser("biregular", parents=[out])
    gb.add_argument("a", type=int)
    gb.add_argument("delta", type=int)
    gr = gsub.add_parser("random", parents=[out])
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--delta-cap", type=int, required=True)
    gr.add_argument("--m", type=int, required=True)
    gr.add_argument("--seed", type=int, required=True)
    gr.add_argument("--require-qualifying", action="store_true")
    gc = gsub.add_parser("corpus", parents=[out], help="one theorem-corpus instance")
    gc.add_argument("--seed", type=int, required=True)
    gm = gsub.add_parser("manifest", parents=[out], help="corpus manifest JSON")
    gm.add_argument("--count", type=int, default=500)
    gm.add_argument("--first-seed", type=int, default=1)
    g.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
