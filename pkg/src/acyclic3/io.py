"""Text formats for graphs and colorings.

Edge list::

    # comment
    n m
    u v        (m lines, 0-indexed endpoints)

Coloring: one ``u v c`` line per colored edge.  Lines of the form
``# key: value`` before the first edge are metadata; other ``#`` lines are
comments.
"""

from __future__ import annotations

import json
import sys
from typing import Any, Iterable, Sequence, TextIO

from .coloring import PartialColoring
from .graph import Graph, build_graph


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _ints(line: str, count: int, number: int, source: str, what: str) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers ({what}), got {len(parts)} fields", number, source)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-integer field in {line!r}", number, source) from None


def parse_edge_list(text: str, source: str = "<input>") -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing header line 'n m'", None, source)
    number, header = lines[0]
    n, m = _ints(header, 2, number, source, "n m")
    if n < 0 or m < 0:
        raise ParseError("n and m must be nonnegative", number, source)
    body = lines[1:]
    if len(body) != m:
        at = body[m][0] if len(body) > m else None
        raise ParseError(f"header declares {m} edges but {len(body)} edge lines follow", at, source)
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for number, line in body:
        u, v = _ints(line, 2, number, source, "u v")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range in ({u}, {v}); vertices are 0..{n - 1}", number, source)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", number, source)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge ({u}, {v})", number, source)
        seen.add(key)
        pairs.append((u, v))
    return build_graph(n, pairs)


def format_edge_list(g: Graph) -> str:
    out = [f"{g.vertex_count} {g.edge_count}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def parse_coloring(text: str, g: Graph, source: str = "<coloring>") -> tuple[list[int], dict[str, str]]:
    """Read ``u v c`` lines against ``g``; returns a color per edge id (0 = uncolored) and the metadata.

    The colors may be improper, which is the verifier's business.  Only
    structural problems (unknown edge, repeated edge, color < 1) are errors.
    """
    meta: dict[str, str] = {}
    colors = [0] * g.edge_count
    seen_edge = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if not seen_edge and ":" in line:
                key, _, value = line[1:].partition(":")
                meta[key.strip()] = value.strip()
            continue
        seen_edge = True
        u, v, col = _ints(line, 3, number, source, "u v color")
        if not g.has_edge(u, v):
            raise ParseError(f"({u}, {v}) is not an edge of the graph", number, source)
        if col < 1:
            raise ParseError(f"color must be >= 1, got {col}", number, source)
        e = g.edge_id(u, v)
        if colors[e]:
            raise ParseError(f"edge ({u}, {v}) colored twice", number, source)
        colors[e] = col
    return colors, meta


def coloring_records(g: Graph, c: PartialColoring | Sequence[int]) -> list[dict[str, int]]:
    colors = c.colors if isinstance(c, PartialColoring) else c
    return [{"u": u, "v": v, "color": colors[e]} for e, (u, v) in enumerate(g.edges) if colors[e]]


def format_coloring(g: Graph, c: PartialColoring | Sequence[int], meta: dict[str, Any] | None = None) -> str:
    out = [f"# {key}: {_meta_text(value)}" for key, value in (meta or {}).items()]
    out.extend(f"{r['u']} {r['v']} {r['color']}" for r in coloring_records(g, c))
    return "\n".join(out) + "\n"


def _meta_text(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def read_text(path: str, stdin: TextIO | None = None) -> str:
    if path == "-":
        return (stdin or sys.stdin).read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()
