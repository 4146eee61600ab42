"""Edge-list text format and DOT export.

Edge list: a header line ``n m`` followed by ``m`` lines ``u v`` (0-based).
"""

from __future__ import annotations

from .errors import FormatError, GraphError
from .graph import Graph


def _ints(line: str, lineno: int, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"expected {count} integers, got {line!r}", f"line {lineno}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"non-integer token in {line!r}", f"line {lineno}") from None


def parse_graph(text: str) -> Graph:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise FormatError("empty input, expected header 'n m'", "line 1")
    n, m = _ints(lines[0], 1, 2)
    if n < 0 or m < 0:
        raise FormatError("negative count in header", "line 1")
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header announces {m} edges but {len(body)} edge lines follow", "line 1")
    edges = []
    for i, line in enumerate(body, start=2):
        u, v = _ints(line, i, 2)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", f"line {i}")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"endpoint out of range 0..{n - 1}: {u} {v}", f"line {i}")
        edges.append((u, v))
    try:
        return Graph(n, edges)
    except GraphError as exc:  # pragma: no cover - checked above
        raise FormatError(str(exc)) from exc


def emit_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(out) + "\n"


def emit_dot(g: Graph, name: str = "") -> str:
    head = f"graph {name} {{" if name else "graph {"
    out = [head]
    out.extend(f"  {v};" for v in range(g.n))
    out.extend(f"  {u} -- {v};" for u, v in g.edge_list())
    out.append("}")
    return "\n".join(out) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
