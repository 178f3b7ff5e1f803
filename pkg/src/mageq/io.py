"""Reading and writing the line-oriented ``.ag`` graph format.

::

    # comment
    nodes: a b c
    a -> b
    b <-> c
    c -- d

The canonical form lists every vertex on the ``nodes:`` line, then one edge
per line sorted by endpoint pair, directed edges written tail first.
"""

from __future__ import annotations

import re
from pathlib import Path

from mageq.errors import BadName, ParseError
from mageq.graph import ARROW, TAIL, Edge, MixedGraph, check_name

_EDGE_RE = re.compile(r"^\s*(\S+?)\s*(<->|->|--)\s*(\S+)\s*$")


def parse_edge(text: str) -> Edge:
    m = _EDGE_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse edge {text!r}")
    a, op, b = m.groups()
    try:
        check_name(a)
        check_name(b)
    except BadName as exc:
        raise ParseError(f"cannot parse edge {text!r}: {exc}") from None
    if op == "->":
        return Edge(a, b, TAIL, ARROW)
    if op == "<->":
        return Edge(a, b, ARROW, ARROW)
    return Edge(a, b, TAIL, TAIL)


def parse_graph(text: str) -> MixedGraph:
    vertices: list[str] = []
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("nodes:"):
            for name in line[len("nodes:"):].split():
                try:
                    vertices.append(check_name(name))
                except BadName as exc:
                    raise ParseError(f"line {lineno}: {exc}") from None
            continue
        try:
            edges.append(parse_edge(line))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return MixedGraph(vertices, edges, auto_declare=True)


def serialize_graph(g: MixedGraph) -> str:
    lines = [" ".join(["nodes:", *g.vertices])]
    lines.extend(str(e) for e in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path) -> MixedGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: MixedGraph, path) -> None:
    Path(path).write_text(serialize_graph(g), encoding="utf-8")
