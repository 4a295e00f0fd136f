"""``mstga`` command line.

``--graph`` takes an edge-list path or the name of a bundled dataset
(``karate``, ``football``, or anything in ``$MSTGA_DATA``).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path

from . import datasets
from .bench import (
    DatasetRef,
    ExperimentSpec,
    PlantedPartitionSpec,
    run_initpop_bench,
    run_mutation_bench,
    similarity_kinds,
    write_planted,
    write_run_log,
)
from .encoding import decode
from .ga import GaConfig, evolve
from .graph import GraphFormatError
from .metrics import load_ground_truth, modularity, nmi, read_ground_truth, size_histogram, write_partition
from .similarity import Measure, SimilarityKind, weigh_edges, write_weighted
from .skeleton import build_mst, write_tree

log = logging.getLogger("mstga")

MEASURES = [m.value for m in Measure]


class CliError(Exception):
    pass


def _dataset(spec: str, truth: str | None = None) -> DatasetRef:
    p = Path(spec)
    if p.is_file():
        return DatasetRef(p.stem, p, Path(truth) if truth else None)
    if spec in datasets.available():
        gp, tp = datasets.dataset_paths(spec)
        return DatasetRef(spec, gp, Path(truth) if truth else tp)
    raise CliError(f"no such graph file or bundled dataset: {spec}")


def _open_out(path: str | None):
    return open(path, "w", newline="") if path and path != "-" else sys.stdout


def _kind(args) -> SimilarityKind:
    return SimilarityKind(Measure(args.similarity), args.beta, args.walk_horizon)


def _config(args) -> GaConfig:
    return GaConfig(
        population_size=args.pop_size,
        max_generations=args.max_gens,
        stall_generations=args.stall_gens,
        delta=args.delta,
        mutation_kind=args.mutation,
        mutation_rate=args.mutation_rate,
        flips_per_mutation=args.flips,
        rng_seed=args.seed,
        target_q=args.target_q,
    )


def _json(obj) -> None:
    def clean(x):
        if isinstance(x, float) and math.isnan(x):
            return None
        if isinstance(x, dict):
            return {k: clean(v) for k, v in x.items()}
        if isinstance(x, list):
            return [clean(v) for v in x]
        return x

    json.dump(clean(obj), sys.stdout, indent=2)
    sys.stdout.write("\n")


# --------------------------------------------------------------------------


def cmd_weigh(args) -> None:
    g, _ = _dataset(args.graph).load()
    wg = weigh_edges(g, _kind(args))
    out = _open_out(args.out)
    try:
        write_weighted(wg, out)
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_mst(args) -> None:
    g, _ = _dataset(args.graph).load()
    t = build_mst(weigh_edges(g, _kind(args)))
    out = _open_out(args.out)
    try:
        write_tree(t, out, g.labels)
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_detect(args) -> None:
    ds = _dataset(args.graph, args.truth)
    g, truth = ds.load()
    t = build_mst(weigh_edges(g, _kind(args)))
    cfg = _config(args)
    best = None
    runs = []
    for r in range(args.repetitions):
        res = evolve(g, t, replace(cfg, rng_seed=args.seed + r))
        runs.append({"seed": args.seed + r, "best_q": res.best_q, "generations": res.generations})
        if best is None or res.best_q > best[1].best_q:
            best = (args.seed + r, res)
    seed, res = best
    part = decode(res.best, t, g)
    if args.out:
        with open(args.out, "w") as fh:
            write_partition(part.assignment, g, fh)
    if args.log:
        with open(args.log, "w") as fh:
            write_run_log(res.log, fh)
    _json(
        {
            "dataset": ds.name,
            "similarity": args.similarity,
            "seed": seed,
            "Q": res.best_q,
            "NMI": nmi(part, truth) if truth is not None and truth.complete else None,
            "communities": part.community_count,
            "generations": res.generations,
            "stop": res.stop_reason,
            "runs": runs,
        }
    )


def cmd_eval(args) -> None:
    g, _ = _dataset(args.graph).load()
    with open(args.partition) as fh:
        p = load_ground_truth(fh, g)
    if not p.complete:
        raise CliError("partition file does not assign every node")
    out = {
        "Q": modularity(p.assignment, g),
        "NMI": None,
        "communities": p.community_count,
        "sizes_histogram": {str(k): v for k, v in size_histogram(p.assignment).items()},
    }
    if args.truth:
        out["NMI"] = nmi(p, read_ground_truth(args.truth, g))
    _json(out)


def cmd_initpop(args) -> None:
    spec = ExperimentSpec(
        datasets=tuple(_dataset(d) for d in args.graph),
        similarities=similarity_kinds([args.similarity], args.beta, args.walk_horizon),
        repetitions=args.repetitions,
        config=GaConfig(population_size=args.pop_size),
        base_seed=args.seed,
    )
    rows = run_initpop_bench(spec)
    out = _open_out(args.out)
    try:
        w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_mutation(args) -> None:
    spec = ExperimentSpec(
        datasets=(_dataset(args.graph),),
        similarities=similarity_kinds([args.similarity], args.beta, args.walk_horizon),
        repetitions=args.repetitions,
        config=replace(_config(args), max_generations=args.max_gens),
        out_dir=Path(args.out_dir) if args.out_dir else None,
        base_seed=args.seed,
    )
    _, stats = run_mutation_bench(spec, args.kinds)
    w = csv.DictWriter(sys.stdout, fieldnames=list(stats[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(stats)


def cmd_planted(args) -> None:
    spec = PlantedPartitionSpec(args.k, args.size, args.p_in, args.p_out, args.seed)
    g, truth = write_planted(spec, Path(args.out_graph), Path(args.out_truth))
    _json({"nodes": g.n, "edges": g.m, "expected_edges": spec.expected_edges, "seed": args.seed})


# --------------------------------------------------------------------------


def _similarity_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--similarity", choices=MEASURES, default="jaccard")
    p.add_argument("--beta", type=float, default=1.76)
    p.add_argument("--walk-horizon", type=int, default=5)


def _ga_args(p: argparse.ArgumentParser, stall: int = 50, target: float | None = None) -> None:
    p.add_argument("--pop-size", type=int, default=100)
    p.add_argument("--max-gens", type=int, default=300)
    p.add_argument("--stall-gens", type=int, default=stall)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--mutation", choices=["uniform", "weight", "sine"], default="sine")
    p.add_argument("--mutation-rate", type=float, default=0.2)
    p.add_argument("--flips", type=int, default=1)
    p.add_argument("--target-q", type=float, default=target)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mstga", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weigh", help="dump similarity edge weights")
    p.add_argument("--graph", required=True)
    _similarity_args(p)
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0, help="unused, accepted for uniformity")
    p.set_defaults(func=cmd_weigh)

    p = sub.add_parser("mst", help="dump the maximum spanning forest")
    p.add_argument("--graph", required=True)
    _similarity_args(p)
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0, help="unused, accepted for uniformity")
    p.set_defaults(func=cmd_mst)

    p = sub.add_parser("detect", help="run the GA and write the best partition")
    p.add_argument("--graph", required=True)
    p.add_argument("--truth")
    _similarity_args(p)
    _ga_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--log")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("eval", help="score a partition file")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--truth")
    p.add_argument("--seed", type=int, default=0, help="unused, accepted for uniformity")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("initpop-bench", help="proposed vs random initial populations")
    p.add_argument("--graph", required=True, nargs="+")
    _similarity_args(p)
    p.add_argument("--pop-size", type=int, default=100)
    p.add_argument("--repetitions", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_initpop)

    p = sub.add_parser("mutation-bench", help="generations and final Q per mutation kind")
    p.add_argument("--graph", required=True)
    _similarity_args(p)
    _ga_args(p)
    p.add_argument("--kinds", nargs="+", default=["uniform", "weight", "sine"], choices=["uniform", "weight", "sine"])
    p.add_argument("--repetitions", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_mutation)

    p = sub.add_parser("gen-planted", help="write a planted-partition graph and its truth")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--size", type=int, default=16)
    p.add_argument("--p-in", type=float, default=0.5)
    p.add_argument("--p-out", type=float, default=0.02)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-graph", required=True)
    p.add_argument("--out-truth", required=True)
    p.set_defaults(func=cmd_planted)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (CliError, GraphFormatError, datasets.DatasetNotFound, OSError, ValueError) as exc:
        print(f"mstga: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
