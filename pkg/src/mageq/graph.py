"""Mixed graphs with directed, bidirected and undirected edges.

A :class:`MixedGraph` is immutable.  Every edge carries one endpoint mark per
end (tail or arrowhead); the edge kind follows from the pair of marks.  The
ancestral conditions are evaluated once, when the graph is built, and stored
as a tuple of :class:`AncestralViolation` records.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from mageq.errors import BadName, DuplicateEdge, SelfLoop, UnknownVertex

_NAME_RE = re.compile(r"^[^\s#,<>\-]+$")


class Mark(enum.Enum):
    TAIL = "tail"
    ARROW = "arrow"


TAIL = Mark.TAIL
ARROW = Mark.ARROW

_KIND_BY_MARKS = {
    (TAIL, TAIL): "undirected",
    (TAIL, ARROW): "directed",
    (ARROW, TAIL): "directed",
    (ARROW, ARROW): "bidirected",
}


def check_name(name) -> str:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise BadName(f"invalid vertex name {name!r}")
    return name


@dataclass(frozen=True)
class Edge:
    """An edge between ``u`` and ``v`` with a mark at each end.

    The pair is stored with ``u < v``; marks are swapped to follow.
    """

    u: str
    v: str
    mark_u: Mark
    mark_v: Mark

    def __post_init__(self):
        check_name(self.u)
        check_name(self.v)
        if self.u == self.v:
            raise SelfLoop(f"self-loop on {self.u!r}")
        if self.u > self.v:
            u, v, mu, mv = self.v, self.u, self.mark_v, self.mark_u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)
            object.__setattr__(self, "mark_u", mu)
            object.__setattr__(self, "mark_v", mv)

    @classmethod
    def directed(cls, tail: str, head: str) -> "Edge":
        return cls(tail, head, TAIL, ARROW)

    @classmethod
    def bidirected(cls, a: str, b: str) -> "Edge":
        return cls(a, b, ARROW, ARROW)

    @classmethod
    def undirected(cls, a: str, b: str) -> "Edge":
        return cls(a, b, TAIL, TAIL)

    @classmethod
    def parse(cls, text: str) -> "Edge":
        """Parse ``a -> b``, ``a <-> b`` or ``a -- b``."""
        from mageq.io import parse_edge

        return parse_edge(text)

    @property
    def pair(self) -> tuple[str, str]:
        return (self.u, self.v)

    @property
    def kind(self) -> str:
        return _KIND_BY_MARKS[(self.mark_u, self.mark_v)]

    def mark_at(self, x: str) -> Mark:
        if x == self.u:
            return self.mark_u
        if x == self.v:
            return self.mark_v
        raise UnknownVertex(f"{x!r} is not an endpoint of {self}")

    def other(self, x: str) -> str:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise UnknownVertex(f"{x!r} is not an endpoint of {self}")

    def __str__(self) -> str:
        kind = self.kind
        if kind == "undirected":
            return f"{self.u} -- {self.v}"
        if kind == "bidirected":
            return f"{self.u} <-> {self.v}"
        if self.mark_v is ARROW:
            return f"{self.u} -> {self.v}"
        return f"{self.v} -> {self.u}"


class Relations(NamedTuple):
    parents: frozenset
    children: frozenset
    spouses: frozenset
    neighbors: frozenset


@dataclass(frozen=True)
class AncestralViolation:
    """One failure of the ancestral conditions.

    ``kind`` is ``"DirectedCycle"`` (witness ``a, ..., a``),
    ``"BidirectedAncestor"`` (witness is a directed path between the two
    endpoints of a bidirected edge) or ``"UndirectedWithArrowNeighbor"``
    (witness ``c, a, b`` with an arrowhead at ``a`` from ``c`` and ``a -- b``).
    """

    kind: str
    witness: tuple

    def replays(self, g: "MixedGraph") -> bool:
        """True if the witness still exhibits the violation in ``g``."""
        w = self.witness
        if self.kind == "DirectedCycle":
            return (
                len(w) >= 3
                and w[0] == w[-1]
                and all(g.is_directed(w[i], w[i + 1]) for i in range(len(w) - 1))
            )
        if self.kind == "BidirectedAncestor":
            return (
                len(w) >= 2
                and g.is_bidirected(w[0], w[-1])
                and all(g.is_directed(w[i], w[i + 1]) for i in range(len(w) - 1))
            )
        if self.kind == "UndirectedWithArrowNeighbor":
            c, a, b = w
            return g.adjacent(c, a) and g.mark(a, c) is ARROW and g.is_undirected(a, b)
        return False


class MixedGraph:
    """A simple mixed graph.

    ``vertices`` may be any iterable of names; ``edges`` may hold
    :class:`Edge` objects or edge strings such as ``"a -> b"``.  With
    ``auto_declare`` endpoints missing from ``vertices`` are added, otherwise
    they raise :class:`UnknownVertex`.
    """

    __slots__ = (
        "_vertices",
        "_vertex_set",
        "_edges",
        "_adj",
        "_pa",
        "_ch",
        "_sp",
        "_ne",
        "_violations",
    )

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable = (), auto_declare: bool = False):
        vset = set()
        for v in vertices:
            vset.add(check_name(v))
        parsed = []
        for e in edges:
            if isinstance(e, str):
                e = Edge.parse(e)
            elif not isinstance(e, Edge):
                raise TypeError(f"expected Edge or str, got {type(e).__name__}")
            parsed.append(e)
        for e in parsed:
            for x in e.pair:
                if x not in vset:
                    if not auto_declare:
                        raise UnknownVertex(f"edge {e} uses undeclared vertex {x!r}")
                    vset.add(x)
        self._vertices = tuple(sorted(vset))
        self._vertex_set = frozenset(vset)
        self._edges: dict[tuple[str, str], Edge] = {}
        adj: dict[str, dict[str, tuple[Mark, Mark]]] = {v: {} for v in self._vertices}
        for e in parsed:
            if e.pair in self._edges:
                raise DuplicateEdge(f"more than one edge between {e.u!r} and {e.v!r}")
            self._edges[e.pair] = e
            adj[e.u][e.v] = (e.mark_u, e.mark_v)
            adj[e.v][e.u] = (e.mark_v, e.mark_u)
        self._adj = adj
        pa, ch, sp, ne = {}, {}, {}, {}
        for v, nbrs in adj.items():
            p, c, s, n = [], [], [], []
            for w, (mv, mw) in nbrs.items():
                if mv is ARROW:
                    (s if mw is ARROW else p).append(w)
                elif mw is ARROW:
                    c.append(w)
                else:
                    n.append(w)
            pa[v], ch[v], sp[v], ne[v] = frozenset(p), frozenset(c), frozenset(s), frozenset(n)
        self._pa, self._ch, self._sp, self._ne = pa, ch, sp, ne
        self._violations = tuple(_find_violations(self))

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> list[Edge]:
        return [self._edges[k] for k in sorted(self._edges)]

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._vertex_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self._edges.values())))

    def __repr__(self) -> str:
        body = ", ".join(str(e) for e in self.edges)
        return f"MixedGraph(vertices={list(self._vertices)}, edges=[{body}])"

    def num_edges(self) -> int:
        return len(self._edges)

    def require(self, *vs: str) -> None:
        for v in vs:
            if v not in self._vertex_set:
                raise UnknownVertex(f"unknown vertex {v!r}")

    def edge(self, a: str, b: str) -> Edge | None:
        return self._edges.get((a, b) if a < b else (b, a))

    def adjacent(self, a: str, b: str) -> bool:
        return b in self._adj.get(a, ())

    def adjacencies(self) -> frozenset:
        """Adjacent pairs, each as a sorted tuple."""
        return frozenset(self._edges)

    def neighbors_of(self, v: str):
        """Every vertex adjacent to ``v`` (any edge kind)."""
        return self._adj[v].keys()

    def incident(self, v: str) -> dict[str, tuple[Mark, Mark]]:
        """Map ``w -> (mark at v, mark at w)`` over edges incident to ``v``."""
        return self._adj[v]

    def mark(self, at: str, other: str) -> Mark:
        """The mark at ``at`` on the edge between ``at`` and ``other``."""
        return self._adj[at][other][0]

    def is_directed(self, tail: str, head: str) -> bool:
        m = self._adj.get(tail, {}).get(head)
        return m is not None and m == (TAIL, ARROW)

    def is_bidirected(self, a: str, b: str) -> bool:
        m = self._adj.get(a, {}).get(b)
        return m is not None and m == (ARROW, ARROW)

    def is_undirected(self, a: str, b: str) -> bool:
        m = self._adj.get(a, {}).get(b)
        return m is not None and m == (TAIL, TAIL)

    def is_collider(self, a: str, b: str, c: str) -> bool:
        """Both edge ends at ``b`` on ``a * b * c`` are arrowheads."""
        nb = self._adj[b]
        return nb[a][0] is ARROW and nb[c][0] is ARROW

    # -- vertex relations ------------------------------------------------

    def parents(self, v: str) -> frozenset:
        return self._pa[v]

    def children(self, v: str) -> frozenset:
        return self._ch[v]

    def spouses(self, v: str) -> frozenset:
        return self._sp[v]

    def neighbors(self, v: str) -> frozenset:
        """Vertices joined to ``v`` by an undirected edge."""
        return self._ne[v]

    def relations(self, v: str) -> Relations:
        self.require(v)
        return Relations(self._pa[v], self._ch[v], self._sp[v], self._ne[v])

    def _closure(self, X: Iterable[str], step) -> frozenset:
        seen = set()
        for x in X:
            self.require(x)
            seen.add(x)
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for w in step(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def ancestors(self, X: Iterable[str]) -> frozenset:
        if isinstance(X, str):
            X = (X,)
        return self._closure(X, self._pa.__getitem__)

    def descendants(self, X: Iterable[str]) -> frozenset:
        if isinstance(X, str):
            X = (X,)
        return self._closure(X, self._ch.__getitem__)

    def anteriors(self, X: Iterable[str]) -> frozenset:
        """Vertices with a path into ``X`` whose edges are ``--`` or ``->``
        pointing toward ``X``."""
        if isinstance(X, str):
            X = (X,)
        return self._closure(X, lambda v: self._pa[v] | self._ne[v])

    # -- ancestral status --------------------------------------------------

    @property
    def violations(self) -> tuple[AncestralViolation, ...]:
        return self._violations

    @property
    def is_ancestral(self) -> bool:
        return not self._violations

    @property
    def is_dag(self) -> bool:
        return not self._violations and all(e.kind == "directed" for e in self._edges.values())

    def with_edges(self, extra: Iterable[Edge]) -> "MixedGraph":
        """A new graph with ``extra`` edges added."""
        return MixedGraph(self._vertices, list(self._edges.values()) + list(extra))

    def restricted_to(self, keep: Iterable[str]) -> "MixedGraph":
        """Induced subgraph on ``keep``."""
        keep = set(keep)
        self.require(*keep)
        return MixedGraph(keep, [e for e in self._edges.values() if e.u in keep and e.v in keep])

    def relabeled(self, mapping: dict[str, str]) -> "MixedGraph":
        vs = [mapping.get(v, v) for v in self._vertices]
        es = [Edge(mapping.get(e.u, e.u), mapping.get(e.v, e.v), e.mark_u, e.mark_v) for e in self._edges.values()]
        return MixedGraph(vs, es)


def _directed_path(g: MixedGraph, src: str, dst: str) -> list[str] | None:
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in sorted(g._ch[v]):
            if w in parent:
                continue
            parent[w] = v
            if w == dst:
                path = [w]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(w)
    return None


def _find_violations(g: MixedGraph) -> list[AncestralViolation]:
    out = []
    # (a) directed cycles, iterative DFS with colours; one witness per back edge
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(g._vertices, WHITE)
    for root in g._vertices:
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(sorted(g._ch[root])))]
        colour[root] = GREY
        onstack = [root]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if colour[w] == WHITE:
                    colour[w] = GREY
                    stack.append((w, iter(sorted(g._ch[w]))))
                    onstack.append(w)
                    advanced = True
                    break
                if colour[w] == GREY:
                    i = onstack.index(w)
                    out.append(AncestralViolation("DirectedCycle", tuple(onstack[i:]) + (w,)))
            if not advanced:
                colour[v] = BLACK
                stack.pop()
                onstack.pop()
    # (b) no directed path between the ends of a bidirected edge
    for (a, b), e in sorted(g._edges.items()):
        if e.kind != "bidirected":
            continue
        for x, y in ((a, b), (b, a)):
            path = _directed_path(g, x, y)
            if path is not None:
                out.append(AncestralViolation("BidirectedAncestor", tuple(path)))
    # (c) undirected-edge endpoints have no parents or spouses
    for (a, b), e in sorted(g._edges.items()):
        if e.kind != "undirected":
            continue
        for x, y in ((a, b), (b, a)):
            for c in sorted(g._pa[x] | g._sp[x]):
                out.append(AncestralViolation("UndirectedWithArrowNeighbor", (c, x, y)))
    return out


def build_graph(vertices: Iterable[str], edges: Iterable, auto_declare: bool = False) -> MixedGraph:
    """Build a validated :class:`MixedGraph` (strict about undeclared vertices
    unless ``auto_declare`` is set)."""
    return MixedGraph(vertices, edges, auto_declare=auto_declare)


def graph(*edges: str, nodes: Iterable[str] = ()) -> MixedGraph:
    """Shorthand: ``graph("a -> b", "b <-> c")``; vertices are inferred."""
    return MixedGraph(nodes, edges, auto_declare=True)


def relations(g: MixedGraph, v: str) -> Relations:
    return g.relations(v)


def ancestors(g: MixedGraph, X) -> frozenset:
    return g.ancestors(X)


def descendants(g: MixedGraph, X) -> frozenset:
    return g.descendants(X)


def anteriors(g: MixedGraph, X) -> frozenset:
    return g.anteriors(X)


def validate_ancestral(g: MixedGraph) -> list[AncestralViolation]:
    """Violations of the ancestral conditions; empty when ``g`` is ancestral."""
    return list(g.violations)


def is_dag(g: MixedGraph) -> bool:
    return g.is_dag
