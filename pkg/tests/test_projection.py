import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gen import dsep_model_nx, mseparation_model
from mageq import DagPartition, graph, is_maximal, latent_project, random_dag, random_mag
from mageq.errors import BadPartition, BadProbability, NotADag
from mageq.projection import RNG_ALGORITHM, graph_digest, manifest_entry, random_partition
from mageq.separation import m_separated
from worked import TRIAL_DAG, TRIAL_MAG


def test_trial_projection():
    p = DagPartition(TRIAL_DAG, {"Azt", "Ap", "Pcp", "CD4"}, {"H"})
    assert latent_project(p) == TRIAL_MAG


def test_identity_projection():
    d = random_dag(6, 0.5, seed=4)
    assert latent_project(DagPartition(d, d.vertices)) == d


def test_shared_latent_parent_gives_bidirected():
    d = graph("l -> a", "l -> b")
    g = latent_project(DagPartition(d, {"a", "b"}, {"l"}))
    assert g.is_bidirected("a", "b")
    assert mseparation_model(g) == dsep_model_nx(d, over={"a", "b"})


def test_selection_child_gives_undirected():
    d = graph("a -> s", "b -> s")
    g = latent_project(DagPartition(d, {"a", "b"}, selection={"s"}))
    assert g.is_undirected("a", "b")


def test_undirected_only_with_selection():
    rng = np.random.default_rng(8)
    for k in range(200):
        part = random_partition(4, int(rng.integers(0, 3)), 0, 0.6, seed=k)
        g = latent_project(part)
        assert not any(e.kind == "undirected" for e in g.edges)


class TestPartitionErrors:
    def test_overlap(self):
        with pytest.raises(BadPartition):
            DagPartition(graph("a -> b"), {"a", "b"}, {"b"})

    def test_not_covering(self):
        with pytest.raises(BadPartition):
            DagPartition(graph("a -> b", "b -> c"), {"a", "b"})

    def test_empty_observed(self):
        with pytest.raises(BadPartition):
            DagPartition(graph("a -> b"), set(), {"a", "b"})

    def test_not_a_dag(self):
        with pytest.raises(NotADag):
            DagPartition(graph("a <-> b"), {"a", "b"})


class TestGenerators:
    def test_empty(self):
        assert random_dag(0, 0.5, seed=1).vertices == ()

    def test_no_edges(self):
        assert random_dag(5, 0.0, seed=1).num_edges() == 0

    def test_complete(self):
        d = random_dag(4, 1.0, seed=1)
        assert d.num_edges() == 6 and d.is_dag

    def test_bad_probability(self):
        with pytest.raises(BadProbability):
            random_dag(3, 1.5, seed=0)

    def test_deterministic(self):
        assert random_dag(8, 0.4, seed=99) == random_dag(8, 0.4, seed=99)
        assert random_mag(6, 2, 1, 0.5, seed=3) == random_mag(6, 2, 1, 0.5, seed=3)

    def test_no_latents_gives_the_dag(self):
        assert random_mag(5, 0, 0, 0.5, seed=2) == random_dag(5, 0.5, seed=2)
        assert random_mag(5, 0, 0, 0.5, seed=2).is_dag

    def test_complete_dag_with_one_latent(self):
        # with edge_prob 1 the two observed vertices are joined directly
        g = random_mag(2, 1, 0, 1.0, seed=0)
        assert g.num_edges() == 1
        assert g.edges[0].kind == "directed"

    @given(
        st.integers(1, 6), st.integers(0, 3), st.integers(0, 2),
        st.floats(0, 1), st.integers(0, 2**63 - 1),
    )
    def test_always_a_mag(self, n, lat, sel, p, seed):
        g = random_mag(n, lat, sel, p, seed)
        assert g.is_ancestral and is_maximal(g)
        assert g.vertices == tuple(sorted(f"v{i + 1}" for i in range(n)))

    def test_manifest(self):
        g = random_dag(4, 0.5, seed=7)
        rec = manifest_entry({"nodes": 4}, 7, g)
        assert rec["rng"] == RNG_ALGORITHM
        assert rec["digest"] == graph_digest(g) and len(rec["digest"]) == 64
        json.dumps(rec)


@given(st.integers(2, 6), st.integers(0, 2), st.integers(0, 2), st.floats(0.1, 0.9), st.integers(0, 2**32))
def test_independence_preserved(n_obs, n_lat, n_sel, p, seed):
    part = random_partition(n_obs, n_lat, n_sel, p, seed)
    g = latent_project(part)
    assert mseparation_model(g) == dsep_model_nx(part.dag, over=part.observed, extra=part.selection)


@given(st.integers(2, 5), st.integers(0, 3), st.integers(0, 2**32))
def test_adjacent_iff_never_separated(n_obs, n_lat, seed):
    part = random_partition(n_obs, n_lat, 0, 0.5, seed)
    g = latent_project(part)
    O = sorted(part.observed)
    for a, b in itertools.combinations(O, 2):
        rest = [v for v in O if v not in (a, b)]
        separable = any(
            m_separated(part.dag, a, b, Z) for r in range(len(rest) + 1) for Z in itertools.combinations(rest, r)
        )
        assert g.adjacent(a, b) == (not separable)
