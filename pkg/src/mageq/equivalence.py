"""Polynomial-time Markov equivalence of maximal ancestral graphs.

``triples_with_order_superset`` computes a set of colliders that contains
every collider with order and is contained in the colliders shared by the
whole equivalence class.  Two MAGs are equivalent exactly when they share
adjacencies and each graph has every triple of the other's set as a collider.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from mageq.errors import NotADag, NotMaximal, UnknownNode, VertexSetMismatch
from mageq.graph import ARROW, MixedGraph
from mageq.maximality import find_nonmaximal_pair, maximal_completion
from mageq.separation import require_ancestral


class Triple(NamedTuple):
    """Three distinct vertices ``a - b - c``; ``a < c`` in canonical form."""

    a: str
    b: str
    c: str

    @classmethod
    def of(cls, a: str, b: str, c: str) -> "Triple":
        return cls(a, b, c) if a <= c else cls(c, b, a)

    def __str__(self) -> str:
        return f"<{self.a},{self.b},{self.c}>"


def triples(g: MixedGraph) -> list[Triple]:
    """Every triple of ``g`` (canonical, sorted)."""
    out = []
    for b in g.vertices:
        for a, c in itertools.combinations(sorted(g.neighbors_of(b)), 2):
            out.append(Triple(a, b, c))
    return sorted(out)


def colliders(g: MixedGraph) -> frozenset:
    """Col(G): canonical triples with arrowheads at the middle from both sides."""
    out = set()
    for b in g.vertices:
        heads = sorted(w for w, (mb, _) in g.incident(b).items() if mb is ARROW)
        for a, c in itertools.combinations(heads, 2):
            out.add(Triple(a, b, c))
    return frozenset(out)


def unshielded_colliders(g: MixedGraph) -> frozenset:
    return frozenset(t for t in colliders(g) if not g.adjacent(t.a, t.c))


@dataclass(frozen=True)
class DerivedDigraph:
    """Directed graph whose nodes are edge traversals ``(t, u)`` of a mixed
    graph; arcs chain traversals on a shared middle vertex."""

    nodes: frozenset
    arcs: Mapping = field(default_factory=dict)

    def successors(self, node) -> Iterable:
        return self.arcs.get(node, ())


def reachable(d: DerivedDigraph, seed) -> set:
    """Nodes reachable from ``seed`` (inclusive), expanding one frontier at a
    time."""
    if seed not in d.nodes:
        raise UnknownNode(f"{seed!r} is not a node of the digraph")
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for w1 in frontier:
            for w2 in d.successors(w1):
                if w2 not in seen:
                    seen.add(w2)
                    nxt.append(w2)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class OrderedColliderSet:
    triples: frozenset
    rounds: int

    def __iter__(self):
        return iter(sorted(self.triples))

    def __len__(self) -> int:
        return len(self.triples)

    def __contains__(self, t) -> bool:
        return Triple.of(*t) in self.triples


def _require_mag(g: MixedGraph) -> None:
    require_ancestral(g)
    pair = find_nonmaximal_pair(g)
    if pair is not None:
        raise NotMaximal(f"graph is not maximal: inducing path between {pair[0]} and {pair[1]}")


def _ordered_index(T: Iterable[Triple]) -> dict[tuple[str, str], set[str]]:
    """Map ``(z, y)`` to every ``x`` with ``<z, y, x>`` in ``T`` (both
    orientations)."""
    idx: dict[tuple[str, str], set[str]] = {}
    for a, b, c in T:
        idx.setdefault((a, b), set()).add(c)
        idx.setdefault((c, b), set()).add(a)
    return idx


def triples_with_order_superset(g: MixedGraph, check: bool = True) -> OrderedColliderSet:
    """Run the round-based collider search on a MAG.

    Round ``k`` examines colliders ``<a, b, c>`` outside the current set with
    ``a <-> b`` and ``a -> c``.  It walks chains of bidirected edges among the
    parents of ``c``, starting from the traversal ``(b, a)`` and stepping only
    through colliders already found; the triple is added when such a chain
    ends in a collider whose far endpoint is not adjacent to ``c``.
    """
    if check:
        _require_mag(g)
    col = colliders(g)
    T = {t for t in col if not g.adjacent(t.a, t.c)}
    n = len(g.vertices)
    k = 0
    while True:
        k += 1
        if k > max(n, 1):
            raise AssertionError(f"collider search exceeded {n} rounds")
        prev = frozenset(T)
        index = _ordered_index(prev)
        derived_by_c: dict[str, tuple[frozenset, dict]] = {}
        added = set()
        for t in sorted(col - prev):
            for a, b, c in ((t.a, t.b, t.c), (t.c, t.b, t.a)):
                if not (g.is_bidirected(a, b) and g.is_directed(a, c)):
                    continue
                if c not in derived_by_c:
                    derived_by_c[c] = _derived_for(g, c, index)
                nodes, arcs = derived_by_c[c]
                seed = (b, a)
                seed_arcs = [(a, v) for v in index.get(seed, ()) if (a, v) in nodes]
                d = DerivedDigraph(nodes | {seed}, _Overlay(arcs, seed, seed_arcs))
                S = reachable(d, seed)
                if _has_far_endpoint(g, S, index, c):
                    added.add(t)
                    break
        if not added:
            return OrderedColliderSet(frozenset(T), k)
        T |= added


class _Overlay(Mapping):
    """Read-only view of ``base`` with one extra entry."""

    def __init__(self, base, key, value):
        self._base, self._key, self._value = base, key, value

    def __getitem__(self, k):
        if k == self._key:
            return self._value
        return self._base[k]

    def get(self, k, default=None):
        if k == self._key:
            return self._value
        return self._base.get(k, default)

    def __iter__(self):
        yield self._key
        yield from (k for k in self._base if k != self._key)

    def __len__(self):
        return len(self._base) + (self._key not in self._base)


def _derived_for(g: MixedGraph, c: str, index) -> tuple[frozenset, dict]:
    pa = g.parents(c)
    nodes = set()
    for t in pa:
        for u in g.spouses(t):
            if u in pa:
                nodes.add((t, u))
    arcs = {}
    for t, u in nodes:
        succ = [(u, v) for v in index.get((t, u), ()) if (u, v) in nodes]
        if succ:
            arcs[(t, u)] = succ
    return frozenset(nodes), arcs


def _has_far_endpoint(g: MixedGraph, S, index, c: str) -> bool:
    for z, y in S:
        for x in index.get((z, y), ()):
            if x != c and not g.adjacent(x, c):
                return True
    return False


class Reason(str, enum.Enum):
    ADJACENCY_MISMATCH = "AdjacencyMismatch"
    COLLIDER_MISSING_IN_G2 = "ColliderMissingInG2"
    COLLIDER_MISSING_IN_G1 = "ColliderMissingInG1"
    EQUIVALENT = "Equivalent"


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    reason: Reason
    witness: tuple | None = None
    rounds_g1: int | None = None
    rounds_g2: int | None = None

    def __bool__(self) -> bool:
        return self.equivalent

    def as_dict(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "reason": self.reason.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "rounds_g1": self.rounds_g1,
            "rounds_g2": self.rounds_g2,
        }


def _same_vertices(g1: MixedGraph, g2: MixedGraph) -> None:
    if g1.vertices != g2.vertices:
        raise VertexSetMismatch(
            f"vertex sets differ: {sorted(set(g1.vertices) ^ set(g2.vertices))}"
        )


def _adjacency_witness(g1: MixedGraph, g2: MixedGraph):
    diff = g1.adjacencies() ^ g2.adjacencies()
    return min(diff) if diff else None


def compare_mags(g1: MixedGraph, g2: MixedGraph, t1=None, t2=None) -> EquivalenceVerdict:
    """Equivalence verdict for two MAGs on the same vertices.

    ``t1``/``t2`` may carry precomputed collider sets; otherwise they are
    computed here (without rechecking maximality).
    """
    pair = _adjacency_witness(g1, g2)
    if pair is not None:
        return EquivalenceVerdict(False, Reason.ADJACENCY_MISMATCH, pair)
    if t1 is None:
        t1 = triples_with_order_superset(g1, check=False)
    if t2 is None:
        t2 = triples_with_order_superset(g2, check=False)
    missing = sorted(t1.triples - colliders(g2))
    if missing:
        return EquivalenceVerdict(False, Reason.COLLIDER_MISSING_IN_G2, tuple(missing[0]), t1.rounds, t2.rounds)
    missing = sorted(t2.triples - colliders(g1))
    if missing:
        return EquivalenceVerdict(False, Reason.COLLIDER_MISSING_IN_G1, tuple(missing[0]), t1.rounds, t2.rounds)
    return EquivalenceVerdict(True, Reason.EQUIVALENT, None, t1.rounds, t2.rounds)


def markov_equivalent(g1: MixedGraph, g2: MixedGraph) -> EquivalenceVerdict:
    """Decide Markov equivalence of two ancestral graphs.

    Non-maximal inputs are replaced by their maximal completions first.
    """
    _same_vertices(g1, g2)
    require_ancestral(g1)
    require_ancestral(g2)
    g1 = maximal_completion(g1)
    g2 = maximal_completion(g2)
    return compare_mags(g1, g2)


def dag_markov_equivalent(d1: MixedGraph, d2: MixedGraph) -> EquivalenceVerdict:
    """Two DAGs are equivalent iff they share adjacencies and unshielded
    colliders."""
    for d in (d1, d2):
        if not d.is_dag:
            raise NotADag("input is not a DAG")
    _same_vertices(d1, d2)
    pair = _adjacency_witness(d1, d2)
    if pair is not None:
        return EquivalenceVerdict(False, Reason.ADJACENCY_MISMATCH, pair)
    u1, u2 = unshielded_colliders(d1), unshielded_colliders(d2)
    if u1 - u2:
        return EquivalenceVerdict(False, Reason.COLLIDER_MISSING_IN_G2, tuple(min(u1 - u2)), 1, 1)
    if u2 - u1:
        return EquivalenceVerdict(False, Reason.COLLIDER_MISSING_IN_G1, tuple(min(u2 - u1)), 1, 1)
    return EquivalenceVerdict(True, Reason.EQUIVALENT, None, 1, 1)
