"""Brute-force reference implementations.

Everything here follows the definitions literally (enumerating paths,
conditioning sets or mark assignments) and is only meant for small graphs.
Each entry point takes an explicit size guard and raises
:class:`GuardExceeded` instead of truncating.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator

from mageq.equivalence import Triple, triples
from mageq.errors import GuardExceeded, NotMaximal, VertexSetMismatch
from mageq.graph import ARROW, TAIL, Edge, MixedGraph
from mageq.maximality import find_nonmaximal_pair
from mageq.separation import DEFAULT_GUARD, independence_model, require_ancestral

MARK_PAIRS = ((TAIL, ARROW), (ARROW, TAIL), (ARROW, ARROW), (TAIL, TAIL))


def env_guard(default: int = DEFAULT_GUARD) -> int:
    """The vertex guard, overridable through ``MAGEQ_GUARD``."""
    value = os.environ.get("MAGEQ_GUARD")
    return int(value) if value else default


def _guard(g: MixedGraph, guard: int) -> None:
    if len(g.vertices) > guard:
        raise GuardExceeded(f"{len(g.vertices)} vertices exceeds the oracle guard of {guard}")


def _require_mag(g: MixedGraph) -> None:
    require_ancestral(g)
    if find_nonmaximal_pair(g) is not None:
        raise NotMaximal("graph is not maximal")


# -- paths and m-separation by definition ---------------------------------


def simple_paths(g: MixedGraph, x: str, y: str) -> Iterator[tuple[str, ...]]:
    """Every simple path from ``x`` to ``y``."""
    stack = [(x, (x,))]
    while stack:
        v, path = stack.pop()
        for w in sorted(g.neighbors_of(v), reverse=True):
            if w in path:
                continue
            if w == y:
                yield path + (w,)
            else:
                stack.append((w, path + (w,)))


def path_types(g: MixedGraph, path) -> tuple[frozenset, frozenset]:
    """``(colliders, noncolliders)`` among the interior vertices of ``path``."""
    col, non = set(), set()
    for i in range(1, len(path) - 1):
        (col if g.is_collider(path[i - 1], path[i], path[i + 1]) else non).add(path[i])
    return frozenset(col), frozenset(non)


def path_m_connects(g: MixedGraph, path, given: Iterable[str]) -> bool:
    Z = frozenset(given)
    col, non = path_types(g, path)
    return not (non & Z) and col <= g.ancestors(Z)


def m_connected_by_paths(g: MixedGraph, x: str, y: str, given: Iterable[str] = ()) -> bool:
    """m-connection decided by listing every simple path."""
    Z = frozenset(given)
    anZ = g.ancestors(Z)
    for p in simple_paths(g, x, y):
        col, non = path_types(g, p)
        if not (non & Z) and col <= anZ:
            return True
    return False


def separating_sets(g: MixedGraph, a: str, b: str) -> Iterator[frozenset]:
    """Every ``Z`` (without ``a``, ``b``) that m-separates ``a`` and ``b``."""
    rest = [v for v in g.vertices if v not in (a, b)]
    for r in range(len(rest) + 1):
        for Z in itertools.combinations(rest, r):
            if not m_connected_by_paths(g, a, b, Z):
                yield frozenset(Z)


def inducing_path_by_paths(g: MixedGraph, a: str, b: str) -> tuple[str, ...] | None:
    """First simple path between ``a`` and ``b`` meeting the inducing-path
    definition."""
    an_ab = g.ancestors((a, b))
    for p in simple_paths(g, a, b):
        col, non = path_types(g, p)
        if not non and col <= an_ab:
            return p
    return None


# -- equivalence by independence models -----------------------------------


def _same_vertices(g1: MixedGraph, g2: MixedGraph) -> None:
    if g1.vertices != g2.vertices:
        raise VertexSetMismatch("vertex sets differ")


def brute_force_difference(g1: MixedGraph, g2: MixedGraph, guard: int | None = None):
    """First separation statement (canonical order) holding in exactly one
    graph, or ``None`` when the independence models agree."""
    guard = env_guard() if guard is None else guard
    _same_vertices(g1, g2)
    _guard(g1, guard)
    diff = independence_model(g1, guard).difference(independence_model(g2, guard))
    return diff[0] if diff else None


def brute_force_equivalent(g1: MixedGraph, g2: MixedGraph, guard: int | None = None) -> bool:
    return brute_force_difference(g1, g2, guard) is None


# -- discriminating paths and colliders with order ------------------------


@dataclass(frozen=True)
class DiscriminatingPathWitness:
    """``path = (x, q1, ..., qp, b, y)`` discriminating ``<qp, b, y>``."""

    path: tuple[str, ...]

    @property
    def triple(self) -> Triple:
        return Triple.of(*self.path[-3:])

    @property
    def chain_colliders(self) -> list[Triple]:
        """The colliders ``<q_{i-1}, q_i, q_{i+1}>`` for ``i = 1..p``."""
        p = self.path
        return [Triple.of(p[i - 1], p[i], p[i + 1]) for i in range(1, len(p) - 2)]

    def validate(self, g: MixedGraph) -> bool:
        p = self.path
        if len(p) < 4 or len(set(p)) != len(p):
            return False
        if not all(g.adjacent(p[i], p[i + 1]) for i in range(len(p) - 1)):
            return False
        x, y = p[0], p[-1]
        if g.adjacent(x, y):
            return False
        return all(
            g.is_collider(p[i - 1], p[i], p[i + 1]) and g.is_directed(p[i], y)
            for i in range(1, len(p) - 2)
        )


def _discriminating_for(g: MixedGraph, q: str, b: str, y: str) -> list[tuple[str, ...]]:
    """Paths ``(x, ..., q, b, y)`` discriminating ``<q, b, y>``."""
    if not (g.is_directed(q, y) and g.mark(q, b) is ARROW):
        return []
    out = []
    # grow backwards from q: chain holds (q_i, ..., q_p)
    stack = [(q,)]
    while stack:
        chain = stack.pop()
        head = chain[0]
        used = set(chain) | {b, y}
        for w, (m_head, _) in g.incident(head).items():
            if w in used or m_head is not ARROW:
                continue
            if not g.adjacent(w, y):
                out.append((w,) + chain + (b, y))
            elif g.is_directed(w, y) and g.mark(w, head) is ARROW:
                stack.append((w,) + chain)
    return sorted(out)


def discriminating_paths(g: MixedGraph, triple, check: bool = True) -> list[DiscriminatingPathWitness]:
    """Every discriminating path for ``triple`` (either orientation)."""
    if check:
        _require_mag(g)
    a, b, c = triple
    g.require(a, b, c)
    if not (g.adjacent(a, b) and g.adjacent(b, c)) or not g.adjacent(a, c):
        return []
    paths = _discriminating_for(g, a, b, c) + _discriminating_for(g, c, b, a)
    return [DiscriminatingPathWitness(p) for p in sorted(paths)]


@dataclass(frozen=True)
class OrderAssignment:
    """Order of every triple that has one, plus its type."""

    orders: dict
    collider: dict

    def order(self, triple) -> int | None:
        return self.orders.get(Triple.of(*triple))

    def colliders_with_order(self) -> dict:
        return {t: r for t, r in self.orders.items() if self.collider[t]}

    def noncolliders_with_order(self) -> dict:
        return {t: r for t, r in self.orders.items() if not self.collider[t]}


def colliders_with_order_exact(g: MixedGraph, guard: int | None = None, check: bool = True) -> OrderAssignment:
    """Orders of triples by the recursive definition, found by enumerating
    every discriminating path."""
    guard = env_guard() if guard is None else guard
    _guard(g, guard)
    if check:
        _require_mag(g)
    all_triples = triples(g)
    orders: dict[Triple, int] = {}
    pending: dict[Triple, list[list[Triple]]] = {}
    for t in all_triples:
        if not g.adjacent(t.a, t.c):
            orders[t] = 0
        else:
            chains = [w.chain_colliders for w in discriminating_paths(g, t, check=False)]
            if chains:
                pending[t] = chains
    level = 0
    while pending:
        newly = {
            t
            for t, chains in pending.items()
            if any(all(orders.get(q, level + 1) <= level for q in chain) for chain in chains)
        }
        if not newly:
            break
        level += 1
        for t in newly:
            orders[t] = level
            del pending[t]
    coll = {t: g.is_collider(*t) for t in all_triples}
    return OrderAssignment({t: orders[t] for t in sorted(orders)}, coll)


# -- minimal collider paths -----------------------------------------------


def collider_paths(g: MixedGraph) -> set[tuple[str, ...]]:
    """Every collider path, each stored once with its smaller endpoint
    first."""
    out = set()
    for s in g.vertices:
        stack = [(s,)]
        while stack:
            p = stack.pop()
            v = p[-1]
            for w in g.neighbors_of(v):
                if w in p:
                    continue
                if len(p) >= 2 and not g.is_collider(p[-2], v, w):
                    continue
                q = p + (w,)
                if q[0] < q[-1]:
                    out.add(q)
                stack.append(q)
    return out


def _is_subsequence(short, long) -> bool:
    it = iter(long)
    return all(v in it for v in short)


def minimal_collider_paths(g: MixedGraph, guard: int | None = None) -> frozenset:
    """Collider paths with no proper order-preserving subsequence (same
    endpoints) that is itself a collider path."""
    guard = env_guard() if guard is None else guard
    _guard(g, guard)
    by_ends: dict[tuple[str, str], list[tuple[str, ...]]] = {}
    for p in collider_paths(g):
        by_ends.setdefault((p[0], p[-1]), []).append(p)
    out = set()
    for group in by_ends.values():
        group.sort(key=len)
        for p in group:
            if not any(len(q) < len(p) and _is_subsequence(q, p) for q in group):
                out.add(p)
    return frozenset(out)


def mcp_equivalent(g1: MixedGraph, g2: MixedGraph, guard: int | None = None) -> bool:
    _same_vertices(g1, g2)
    return minimal_collider_paths(g1, guard) == minimal_collider_paths(g2, guard)


# -- enumeration ------------------------------------------------------------


def enumerate_mags_on_skeleton(skeleton: MixedGraph, guard: int = 8) -> list[MixedGraph]:
    """Every ancestral, maximal graph whose skeleton is that of
    ``skeleton`` (marks of the input are ignored)."""
    pairs = sorted(skeleton.adjacencies())
    if len(pairs) > guard:
        raise GuardExceeded(f"{len(pairs)} edges exceeds the enumeration guard of {guard}")
    out = []
    for marks in itertools.product(MARK_PAIRS, repeat=len(pairs)):
        g = MixedGraph(skeleton.vertices, [Edge(u, v, mu, mv) for (u, v), (mu, mv) in zip(pairs, marks)])
        if g.is_ancestral and find_nonmaximal_pair(g) is None:
            out.append(g)
    return out
