"""Markov equivalence for maximal ancestral graphs."""

from mageq.equivalence import (
    EquivalenceVerdict,
    OrderedColliderSet,
    Triple,
    colliders,
    dag_markov_equivalent,
    markov_equivalent,
    triples_with_order_superset,
)
from mageq.graph import ARROW, TAIL, Edge, MixedGraph, build_graph, graph, validate_ancestral
from mageq.io import parse_graph, read_graph, serialize_graph, write_graph
from mageq.maximality import has_inducing_path, is_maximal, maximal_completion
from mageq.projection import DagPartition, latent_project, random_dag, random_mag
from mageq.separation import (
    independence_model,
    m_connected,
    m_separated,
    m_separated_sets,
)

__version__ = "0.1.0"
