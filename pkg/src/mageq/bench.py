"""Wall-clock timing of the equivalence check on random MAGs."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from mageq.equivalence import markov_equivalent, triples_with_order_superset
from mageq.graph import MixedGraph
from mageq.projection import latent_project, random_partition


@dataclass
class BenchRow:
    n: int
    edges: int
    avg_degree: float
    seconds: float
    rounds: int
    equivalent: bool


def bench_graph(n: int, density: float, seed: int, latent_frac: float = 0.1) -> MixedGraph:
    """A random MAG on ``n`` observed vertices.

    The generating DAG has ``round(latent_frac * n)`` extra latent vertices
    and expected average degree ``density``.
    """
    n_latent = int(round(latent_frac * n))
    total = n + n_latent
    p = min(1.0, density / max(total - 1, 1))
    return latent_project(random_partition(n, n_latent, 0, p, seed))


def _shuffled_copy(g: MixedGraph, rng: np.random.Generator) -> MixedGraph:
    edges = g.edges
    order = rng.permutation(len(edges))
    return MixedGraph(g.vertices, [edges[i] for i in order])


def run_bench(sizes, density: float = 2.5, seed: int = 0, latent_frac: float = 0.1, repeats: int = 1) -> list[BenchRow]:
    """Time ``markov_equivalent`` on pairs of equal MAGs built independently.

    Equal pairs are the slow case: no early exit, both collider sets are
    computed in full.
    """
    rows = []
    rng = np.random.default_rng(seed)
    for i, n in enumerate(sizes):
        times = []
        for r in range(repeats):
            g1 = bench_graph(n, density, seed + 1000 * i + r, latent_frac)
            g2 = _shuffled_copy(g1, rng)
            t0 = time.perf_counter()
            verdict = markov_equivalent(g1, g2)
            times.append(time.perf_counter() - t0)
        rounds = triples_with_order_superset(g1, check=False).rounds
        rows.append(
            BenchRow(n, g1.num_edges(), 2 * g1.num_edges() / max(n, 1), float(np.mean(times)), rounds, verdict.equivalent)
        )
    return rows


def fitted_exponent(rows: list[BenchRow]) -> float:
    """Slope of log(time) against log(n), least squares."""
    n = np.log([r.n for r in rows])
    t = np.log([max(r.seconds, 1e-6) for r in rows])
    return float(np.polyfit(n, t, 1)[0])


def format_table(rows: list[BenchRow]) -> str:
    lines = ["n\tedges\tavg_degree\tseconds\trounds\tequivalent"]
    for r in rows:
        lines.append(f"{r.n}\t{r.edges}\t{r.avg_degree:.2f}\t{r.seconds:.4f}\t{r.rounds}\t{str(r.equivalent).lower()}")
    return "\n".join(lines) + "\n"
