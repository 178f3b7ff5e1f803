"""Command-line interface: ``mageq VERB ...``.

Exit codes: 0 for a positive answer (ancestral, separated, equivalent,
success), 1 for a negative one, 2 for errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from mageq import bench as _bench
from mageq.equivalence import markov_equivalent, triples_with_order_superset
from mageq.errors import MagError
from mageq.io import read_graph, serialize_graph
from mageq.maximality import maximal_completion
from mageq.oracles import brute_force_difference, env_guard
from mageq.projection import DagPartition, latent_project, manifest_entry, random_dag, random_mag
from mageq.separation import find_m_connecting_walk, independence_model


def _names(text: str | None) -> list[str]:
    if not text:
        return []
    return [s.strip() for s in text.split(",") if s.strip()]


def _ints(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_validate(args, out) -> int:
    g = read_graph(args.file)
    if g.is_ancestral:
        out.write("ancestral\n")
        return 0
    for v in g.violations:
        out.write(f"{v.kind}: {' '.join(v.witness)}\n")
    return 1


def cmd_complete(args, out) -> int:
    out.write(serialize_graph(maximal_completion(read_graph(args.file))))
    return 0


def cmd_msep(args, out) -> int:
    g = read_graph(args.file)
    walk = find_m_connecting_walk(g, args.x, args.y, _names(args.given))
    if walk is None:
        out.write("separated\n")
        return 0
    out.write("connected\n")
    out.write(f"witness: {walk}\n")
    return 1


def cmd_equiv(args, out) -> int:
    g1, g2 = read_graph(args.file1), read_graph(args.file2)
    verdict = markov_equivalent(g1, g2)
    report = verdict.as_dict()
    if args.oracle:
        diff = brute_force_difference(g1, g2, env_guard())
        oracle = diff is None
        report["oracle_agreed"] = oracle == verdict.equivalent
        if oracle != verdict.equivalent:
            sys.stderr.write(
                f"error: oracle disagreement: fast path says equivalent={verdict.equivalent}, "
                f"brute force says equivalent={oracle}"
                + (f" (statement {diff})" if diff is not None else "")
                + "\n"
            )
            if args.json:
                out.write(json.dumps(report) + "\n")
            return 2
    if args.json:
        out.write(json.dumps(report) + "\n")
    elif verdict.equivalent:
        out.write("equivalent\n")
    else:
        out.write(f"not equivalent ({verdict.reason.value}): {' '.join(verdict.witness)}\n")
    return 0 if verdict.equivalent else 1


def cmd_triples(args, out) -> int:
    T = triples_with_order_superset(read_graph(args.file))
    for t in T:
        out.write(f"{t.a} {t.b} {t.c}\n")
    return 0


def cmd_project(args, out) -> int:
    dag = read_graph(args.file)
    latent, select = set(_names(args.latent)), set(_names(args.select))
    observe = set(_names(args.observe)) if args.observe else set(dag.vertices) - latent - select
    out.write(serialize_graph(latent_project(DagPartition(dag, observe, latent, select))))
    return 0


def cmd_random(args, out) -> int:
    if args.latent or args.select:
        g = random_mag(args.nodes, args.latent, args.select, args.edge_prob, args.seed)
    else:
        g = random_dag(args.nodes, args.edge_prob, args.seed)
    out.write(serialize_graph(g))
    if args.manifest:
        params = {"nodes": args.nodes, "edge_prob": args.edge_prob, "latent": args.latent, "select": args.select}
        with open(args.manifest, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(manifest_entry(params, args.seed, g), sort_keys=True) + "\n")
    return 0


def cmd_indmodel(args, out) -> int:
    guard = args.max if args.max is not None else env_guard()
    out.write(independence_model(read_graph(args.file), guard).to_text())
    return 0


def cmd_bench(args, out) -> int:
    rows = _bench.run_bench(args.sizes, args.density, args.seed, args.latent_frac, args.repeats)
    out.write(_bench.format_table(rows))
    if len(rows) >= 2:
        out.write(f"# fitted log-log exponent: {_bench.fitted_exponent(rows):.2f}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mageq", description="Markov equivalence for maximal ancestral graphs")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", help="check the ancestral conditions")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("complete", help="print the maximal completion")
    p.add_argument("file")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("msep", help="m-separation query")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--given", default="")
    p.set_defaults(func=cmd_msep)

    p = sub.add_parser("equiv", help="decide Markov equivalence")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--oracle", action="store_true", help="also compare independence models by brute force")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("triples", help="print the ordered-collider superset")
    p.add_argument("file")
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("project", help="latent projection of a DAG")
    p.add_argument("file")
    p.add_argument("--observe", default="")
    p.add_argument("--latent", default="")
    p.add_argument("--select", default="")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("random", help="random DAG, or random MAG when latent/selection counts are given")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edge-prob", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--latent", type=int, default=0)
    p.add_argument("--select", type=int, default=0)
    p.add_argument("--manifest", help="append a manifest record to this file")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("indmodel", help="list the independence model")
    p.add_argument("file")
    p.add_argument("--max", type=int, default=None, help="vertex guard (default: MAGEQ_GUARD or 12)")
    p.set_defaults(func=cmd_indmodel)

    p = sub.add_parser("bench", help="time equivalence checks on random MAGs")
    p.add_argument("--sizes", type=_ints, default=[50, 100, 200])
    p.add_argument("--density", type=float, default=2.5, help="expected average degree of the generating DAG")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--latent-frac", type=float, default=0.1)
    p.add_argument("--repeats", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (MagError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
