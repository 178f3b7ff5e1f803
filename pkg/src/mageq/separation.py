"""m-separation queries and independence-model enumeration.

Connection is decided by breadth-first search over walk states
``(vertex, arrived with an arrowhead?)``.  A step out of an interior vertex is
allowed when the vertex is a collider on the walk and lies in ``an(Z)``, or is
a noncollider outside ``Z``.  An m-connecting walk exists exactly when an
m-connecting path exists, so the search is linear in the number of edges.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from mageq.errors import (
    DisjointnessError,
    EmptySetError,
    GuardExceeded,
    NotAncestral,
    OverlapError,
)
from mageq.graph import ARROW, Edge, MixedGraph

DEFAULT_GUARD = 12


def require_ancestral(g: MixedGraph) -> None:
    if not g.is_ancestral:
        v = g.violations[0]
        raise NotAncestral(f"graph is not ancestral: {v.kind} {list(v.witness)}")


@dataclass(frozen=True)
class Walk:
    """A walk ``vertices[0] ... vertices[-1]``; ``edges[i]`` joins
    ``vertices[i]`` and ``vertices[i + 1]``."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @property
    def is_path(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def interior_types(self):
        """Yield ``(vertex, is_collider)`` for each interior occurrence."""
        vs, es = self.vertices, self.edges
        for i in range(1, len(vs) - 1):
            v = vs[i]
            yield v, es[i - 1].mark_at(v) is ARROW and es[i].mark_at(v) is ARROW

    def certifies(self, g: MixedGraph, given: Iterable[str]) -> bool:
        """Check the m-connection conditions on this walk in ``g``."""
        Z = frozenset(given)
        anZ = g.ancestors(Z)
        vs = self.vertices
        if len(vs) < 2 or len(self.edges) != len(vs) - 1:
            return False
        for i, e in enumerate(self.edges):
            if g.edge(vs[i], vs[i + 1]) != e:
                return False
        for v, collider in self.interior_types():
            if collider and v not in anZ:
                return False
            if not collider and v in Z:
                return False
        return True

    def __str__(self) -> str:
        out = [self.vertices[0]]
        for i, e in enumerate(self.edges):
            out.append(_edge_glyph(e, self.vertices[i], self.vertices[i + 1]))
            out.append(self.vertices[i + 1])
        return " ".join(out)


def _edge_glyph(e: Edge, a: str, b: str) -> str:
    ma, mb = e.mark_at(a), e.mark_at(b)
    return ("<" if ma is ARROW else "-") + "-" + (">" if mb is ARROW else "-")


def _remove_loops(vertices: list[str], edges: list[Edge]) -> tuple[list[str], list[Edge]]:
    out_v: list[str] = []
    out_e: list[Edge] = []
    pos: dict[str, int] = {}
    for i, v in enumerate(vertices):
        if v in pos:
            k = pos[v]
            for dropped in out_v[k + 1:]:
                del pos[dropped]
            del out_v[k + 1:]
            del out_e[k:]
        else:
            pos[v] = len(out_v)
            out_v.append(v)
        if i < len(edges):
            out_e.append(edges[i])
    return out_v, out_e[: len(out_v) - 1]


def _reach(g: MixedGraph, x: str, Z: frozenset, anZ: frozenset, target: str | None = None):
    """BFS over walk states from ``x``.

    Returns ``(reached vertices, parent map, final state)``; ``final state``
    is the first state at ``target`` when one is given.
    """
    start = (x, None)
    parent = {start: None}
    reached = {x}
    queue = deque([start])
    adj = g._adj
    while queue:
        state = queue.popleft()
        v, arrow_in = state
        if arrow_in is not None and v == target:
            continue
        for w, (mark_v, mark_w) in adj[v].items():
            if arrow_in is not None:
                if arrow_in and mark_v is ARROW:
                    if v not in anZ:
                        continue
                elif v in Z:
                    continue
            nxt = (w, mark_w is ARROW)
            if nxt in parent:
                continue
            parent[nxt] = state
            reached.add(w)
            if w == target:
                return reached, parent, nxt
            queue.append(nxt)
    return reached, parent, None


def _check_query(g: MixedGraph, x: str, y: str, Z: frozenset) -> None:
    g.require(x, y, *Z)
    if x == y:
        raise OverlapError("endpoints must differ")
    if x in Z or y in Z:
        raise OverlapError("endpoints may not be in the conditioning set")


def find_m_connecting_walk(g: MixedGraph, x: str, y: str, given: Iterable[str] = ()) -> Walk | None:
    """A certified m-connecting walk from ``x`` to ``y`` given ``given``, or
    ``None`` when they are m-separated.

    The walk is shortened to a simple path when loop removal keeps it
    m-connecting; otherwise the raw walk is returned.
    """
    Z = frozenset(given)
    _check_query(g, x, y, Z)
    require_ancestral(g)
    anZ = g.ancestors(Z)
    _, parent, end = _reach(g, x, Z, anZ, target=y)
    if end is None:
        return None
    states = [end]
    while parent[states[-1]] is not None:
        states.append(parent[states[-1]])
    vs = [s[0] for s in reversed(states)]
    es = [g.edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]
    walk = Walk(tuple(vs), tuple(es))
    pv, pe = _remove_loops(vs, es)
    path = Walk(tuple(pv), tuple(pe))
    if path.certifies(g, Z):
        return path
    return walk


def m_connected(g: MixedGraph, x: str, y: str, given: Iterable[str] = ()) -> bool:
    Z = frozenset(given)
    _check_query(g, x, y, Z)
    require_ancestral(g)
    _, _, end = _reach(g, x, Z, g.ancestors(Z), target=y)
    return end is not None


def m_separated(g: MixedGraph, x: str, y: str, given: Iterable[str] = ()) -> bool:
    return not m_connected(g, x, y, given)


def m_connected_set(g: MixedGraph, x: str, given: Iterable[str] = ()) -> frozenset:
    """Every vertex (other than ``x``) m-connected to ``x`` given ``given``."""
    Z = frozenset(given)
    g.require(x, *Z)
    require_ancestral(g)
    reached, _, _ = _reach(g, x, Z, g.ancestors(Z))
    return frozenset(reached - {x})


def m_separated_sets(g: MixedGraph, A: Iterable[str], B: Iterable[str], given: Iterable[str] = ()) -> bool:
    """True when every ``a`` in ``A`` is m-separated from every ``b`` in ``B``."""
    A, B, Z = frozenset(A), frozenset(B), frozenset(given)
    if not A or not B:
        raise EmptySetError("A and B must be nonempty")
    if A & B or A & Z or B & Z:
        raise DisjointnessError("A, B and Z must be pairwise disjoint")
    g.require(*A, *B, *Z)
    require_ancestral(g)
    anZ = g.ancestors(Z)
    for a in sorted(A):
        reached, _, _ = _reach(g, a, Z, anZ)
        if reached & B:
            return False
    return True


@dataclass(frozen=True, order=True)
class SeparationStatement:
    a: str
    b: str
    given: tuple[str, ...] = ()

    def __post_init__(self):
        if self.a == self.b:
            raise OverlapError("a statement needs two distinct vertices")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        given = tuple(sorted(set(self.given)))
        if self.a in given or self.b in given:
            raise OverlapError("endpoints may not be in the conditioning set")
        object.__setattr__(self, "given", given)

    def __str__(self) -> str:
        if self.given:
            return f"{self.a} _||_ {self.b} | {','.join(self.given)}"
        return f"{self.a} _||_ {self.b}"


@dataclass(frozen=True)
class IndependenceModel:
    """All pairwise m-separation statements of a graph, in canonical order:
    pairs lexicographically, then conditioning sets in binary-counter order
    over the sorted remaining vertices."""

    universe: tuple[str, ...]
    statements: tuple[SeparationStatement, ...]

    def __len__(self) -> int:
        return len(self.statements)

    def __iter__(self):
        return iter(self.statements)

    def __contains__(self, s) -> bool:
        """Accepts a statement or an ``(a, b, given)`` tuple."""
        if not isinstance(s, SeparationStatement):
            s = SeparationStatement(s[0], s[1], tuple(s[2]))
        return s in self._lookup

    @property
    def _lookup(self) -> frozenset:
        return frozenset(self.statements)

    def to_text(self) -> str:
        return "".join(f"{s}\n" for s in self.statements)

    def difference(self, other: "IndependenceModel") -> list[SeparationStatement]:
        """Statements in exactly one of the two models, canonical order."""
        mine, theirs = frozenset(self.statements), frozenset(other.statements)
        order = {s: i for i, s in enumerate(self.statements)}
        order.update({s: len(order) + i for i, s in enumerate(other.statements) if s not in order})
        return sorted(mine ^ theirs, key=lambda s: (s.a, s.b, order[s]))


def independence_model(g: MixedGraph, max_vertices: int = DEFAULT_GUARD) -> IndependenceModel:
    """Enumerate every pairwise m-separation statement of ``g``."""
    n = len(g.vertices)
    if n > max_vertices:
        raise GuardExceeded(f"{n} vertices exceeds the enumeration guard of {max_vertices}")
    require_ancestral(g)
    vs = g.vertices
    index = {v: i for i, v in enumerate(vs)}
    # separated[(a, b)] holds the bitmasks Z that separate a and b
    separated: dict[tuple[str, str], set[int]] = {}
    pairs = [(a, b) for a, b in itertools.combinations(vs, 2) if not g.adjacent(a, b)]
    if not pairs:
        return IndependenceModel(vs, ())
    active = sorted({v for p in pairs for v in p})
    for mask in range(1 << n):
        Z = frozenset(v for v in vs if mask >> index[v] & 1)
        anZ = g.ancestors(Z)
        for a in active:
            if a in Z:
                continue
            reached, _, _ = _reach(g, a, Z, anZ)
            for b in g.vertices[index[a] + 1:]:
                if b in Z or g.adjacent(a, b) or b in reached:
                    continue
                separated.setdefault((a, b), set()).add(mask)
    statements = []
    for a, b in pairs:
        rest = [v for v in vs if v not in (a, b)]
        masks = separated.get((a, b), ())
        for k in range(1 << len(rest)):
            Zs = [rest[i] for i in range(len(rest)) if k >> i & 1]
            mask = 0
            for v in Zs:
                mask |= 1 << index[v]
            if mask in masks:
                statements.append(SeparationStatement(a, b, tuple(Zs)))
    return IndependenceModel(vs, tuple(statements))
