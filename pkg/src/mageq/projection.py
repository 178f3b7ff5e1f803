"""Latent projection of a DAG onto its observed vertices, and random
generators built on it.

Randomness comes from NumPy's ``PCG64`` bit generator
(``numpy.random.default_rng(seed)``), so a seed fixes the output on every
platform.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

import numpy as np

from mageq.errors import BadPartition, BadProbability, NotADag
from mageq.graph import ARROW, TAIL, Edge, MixedGraph
from mageq.io import serialize_graph
from mageq.maximality import collider_walk_search, find_nonmaximal_pair

RNG_ALGORITHM = "numpy PCG64 (default_rng)"


@dataclass(frozen=True)
class DagPartition:
    dag: MixedGraph
    observed: frozenset
    latent: frozenset = frozenset()
    selection: frozenset = frozenset()

    def __post_init__(self):
        for name in ("observed", "latent", "selection"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if not self.dag.is_dag:
            raise NotADag("projection needs a DAG")
        if not self.observed:
            raise BadPartition("observed set is empty")
        O, L, S = self.observed, self.latent, self.selection
        if O & L or O & S or L & S:
            raise BadPartition("observed, latent and selection sets overlap")
        if O | L | S != set(self.dag.vertices):
            raise BadPartition("partition does not cover the DAG's vertices exactly")


def latent_project(p: DagPartition) -> MixedGraph:
    """The MAG over the observed vertices obtained by marginalising the latent
    vertices and conditioning on the selection vertices.

    ``a`` and ``b`` are adjacent when an inducing path relative to
    ``(latent, selection)`` joins them: every noncollider on it is latent and
    every collider is an ancestor of ``a``, ``b`` or a selection vertex.  The
    mark at ``a`` is an arrowhead unless ``a`` is an ancestor of ``b`` or of
    the selection set.
    """
    dag, L, S = p.dag, p.latent, p.selection
    an = {v: dag.ancestors(v) for v in dag.vertices}
    an_S = dag.ancestors(S)
    edges = []
    for a, b in itertools.combinations(sorted(p.observed), 2):
        if not dag.adjacent(a, b):
            allowed = an[a] | an[b] | an_S
            walk = collider_walk_search(dag, a, b, allowed.__contains__, L.__contains__)
            if walk is None:
                continue
        mark_a = TAIL if a in an[b] or a in an_S else ARROW
        mark_b = TAIL if b in an[a] or b in an_S else ARROW
        edges.append(Edge(a, b, mark_a, mark_b))
    g = MixedGraph(p.observed, edges)
    if not g.is_ancestral:
        raise AssertionError(f"projection is not ancestral: {g.violations[0]}")
    return g


def _check_prob(edge_prob) -> float:
    p = float(edge_prob)
    if not 0.0 <= p <= 1.0:
        raise BadProbability(f"edge probability {edge_prob} outside [0, 1]")
    return p


def _random_dag_edges(n: int, p: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    order = rng.permutation(n)
    draws = rng.random(n * (n - 1) // 2)
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if draws[k] < p:
                edges.append((int(order[i]), int(order[j])))
            k += 1
    return edges


def random_dag(n: int, edge_prob: float, seed: int) -> MixedGraph:
    """Random DAG on ``v1..vn``: a seeded random topological order, then each
    forward pair joined independently with probability ``edge_prob``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = _check_prob(edge_prob)
    rng = np.random.default_rng(seed)
    names = [f"v{i + 1}" for i in range(n)]
    return MixedGraph(names, [Edge.directed(names[i], names[j]) for i, j in _random_dag_edges(n, p, rng)])


def random_partition(n_observed: int, n_latent: int, n_selection: int, edge_prob: float, seed: int) -> DagPartition:
    """Random DAG over ``v1..``, ``l1..``, ``s1..`` with a seeded topological
    order mixing the three groups."""
    if min(n_observed, n_latent, n_selection) < 0:
        raise ValueError("counts must be nonnegative")
    p = _check_prob(edge_prob)
    O = [f"v{i + 1}" for i in range(n_observed)]
    L = [f"l{i + 1}" for i in range(n_latent)]
    S = [f"s{i + 1}" for i in range(n_selection)]
    names = O + L + S
    rng = np.random.default_rng(seed)
    edges = [Edge.directed(names[i], names[j]) for i, j in _random_dag_edges(len(names), p, rng)]
    return DagPartition(MixedGraph(names, edges), frozenset(O), frozenset(L), frozenset(S))


def random_mag(n_observed: int, n_latent: int = 0, n_selection: int = 0, edge_prob: float = 0.5, seed: int = 0) -> MixedGraph:
    """Latent projection of a random DAG; always a MAG over ``v1..vn``."""
    g = latent_project(random_partition(n_observed, n_latent, n_selection, edge_prob, seed))
    if find_nonmaximal_pair(g) is not None:
        raise AssertionError("projection is not maximal")
    return g


def graph_digest(g: MixedGraph) -> str:
    return hashlib.sha256(serialize_graph(g).encode("utf-8")).hexdigest()


def manifest_entry(params: dict, seed: int, g: MixedGraph) -> dict:
    """One corpus-manifest record: generator parameters, seed and the SHA-256
    of the canonical serialization."""
    return {"params": dict(params), "seed": seed, "rng": RNG_ALGORITHM, "digest": graph_digest(g)}
