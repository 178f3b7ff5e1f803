"""Inducing paths, maximality, and completion to the unique equivalent MAG."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from mageq.graph import ARROW, Edge, MixedGraph
from mageq.separation import require_ancestral


@dataclass(frozen=True)
class InducingPathWitness:
    """A collider path between ``a`` and ``b`` whose interior vertices are
    ancestors of an endpoint; ``certificates[i]`` is a directed path from
    ``path[i + 1]`` to ``a`` or ``b``."""

    a: str
    b: str
    path: tuple[str, ...]
    certificates: tuple[tuple[str, ...], ...]

    def validate(self, g: MixedGraph) -> bool:
        p = self.path
        if len(p) < 2 or p[0] != self.a or p[-1] != self.b or len(set(p)) != len(p):
            return False
        if not all(g.adjacent(p[i], p[i + 1]) for i in range(len(p) - 1)):
            return False
        if len(self.certificates) != len(p) - 2:
            return False
        for i in range(1, len(p) - 1):
            if not g.is_collider(p[i - 1], p[i], p[i + 1]):
                return False
            cert = self.certificates[i - 1]
            if cert[0] != p[i] or cert[-1] not in (self.a, self.b):
                return False
            if not all(g.is_directed(cert[j], cert[j + 1]) for j in range(len(cert) - 1)):
                return False
        return True


def _directed_path_to(g: MixedGraph, v: str, targets) -> tuple[str, ...]:
    parent = {v: None}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if u in targets:
            out = [u]
            while parent[out[-1]] is not None:
                out.append(parent[out[-1]])
            return tuple(reversed(out))
        for w in sorted(g.children(u)):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    raise AssertionError(f"{v} is not an ancestor of {sorted(targets)}")


def collider_walk_search(g: MixedGraph, a: str, b: str, collider_ok, noncollider_ok):
    """BFS over walk states from ``a`` toward ``b``.

    An interior occurrence of ``v`` may be passed when it is a collider on the
    walk and ``collider_ok(v)``, or a noncollider and ``noncollider_ok(v)``.
    Neither endpoint may occur in the interior.  Returns the vertex sequence
    of a walk reaching ``b``, or ``None``.
    """
    adj = g._adj
    start = (a, None)
    parent = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        v, arrow_in = state
        for w, (mark_v, mark_w) in adj[v].items():
            if w == a:
                continue
            if arrow_in is not None:
                if arrow_in and mark_v is ARROW:
                    if not collider_ok(v):
                        continue
                elif not noncollider_ok(v):
                    continue
            nxt = (w, mark_w is ARROW)
            if nxt in parent:
                continue
            parent[nxt] = state
            if w == b:
                out = [nxt]
                while parent[out[-1]] is not None:
                    out.append(parent[out[-1]])
                return [s[0] for s in reversed(out)]
            queue.append(nxt)
    return None


def _loop_free(vs: list[str]) -> list[str]:
    out: list[str] = []
    pos: dict[str, int] = {}
    for v in vs:
        if v in pos:
            k = pos[v]
            for d in out[k + 1:]:
                del pos[d]
            del out[k + 1:]
        else:
            pos[v] = len(out)
            out.append(v)
    return out


def _never(v) -> bool:
    return False


def has_inducing_path(g: MixedGraph, a: str, b: str) -> InducingPathWitness | None:
    """Witness of an inducing path between ``a`` and ``b``, if any."""
    g.require(a, b)
    if a == b:
        raise ValueError("endpoints must differ")
    require_ancestral(g)
    return _inducing_path(g, a, b)


def _inducing_path(g: MixedGraph, a: str, b: str) -> InducingPathWitness | None:
    an_ab = g.ancestors((a, b))
    walk = collider_walk_search(g, a, b, an_ab.__contains__, _never)
    if walk is None:
        return None
    # every interior occurrence is a collider, so cutting loops keeps it one
    path = tuple(_loop_free(walk))
    certs = tuple(_directed_path_to(g, v, (a, b)) for v in path[1:-1])
    return InducingPathWitness(a, b, path, certs)


def find_nonmaximal_pair(g: MixedGraph) -> tuple[str, str] | None:
    """First nonadjacent pair (canonical order) joined by an inducing path."""
    require_ancestral(g)
    for a, b in itertools.combinations(g.vertices, 2):
        if not g.adjacent(a, b) and _inducing_path(g, a, b) is not None:
            return (a, b)
    return None


def is_maximal(g: MixedGraph) -> bool:
    return find_nonmaximal_pair(g) is None


def _inducing_pairs(g: MixedGraph) -> list[tuple[str, str]]:
    return [
        (a, b)
        for a, b in itertools.combinations(g.vertices, 2)
        if not g.adjacent(a, b) and _inducing_path(g, a, b) is not None
    ]


def completion_rounds(g: MixedGraph) -> tuple[MixedGraph, int]:
    """The maximal completion together with the number of rounds that added
    edges."""
    require_ancestral(g)
    rounds = 0
    current = g
    while True:
        pairs = _inducing_pairs(current)
        if not pairs:
            return current, rounds
        rounds += 1
        current = current.with_edges(Edge.bidirected(a, b) for a, b in pairs)
        if not current.is_ancestral:
            raise AssertionError(
                f"completion round {rounds} produced a non-ancestral graph: {current.violations[0]}"
            )


def maximal_completion(g: MixedGraph) -> MixedGraph:
    """The unique maximal ancestral graph containing ``g`` with the same
    independence model; only bidirected edges are added."""
    return completion_rounds(g)[0]
