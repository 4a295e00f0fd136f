"""Best-of-R modularity and NMI for every similarity measure (karate by default).

    python scripts/similarity_sweep.py --datasets karate --repetitions 10 --out results/sweep
"""

import argparse
import logging
from pathlib import Path

from mstga import datasets
from mstga.bench import DatasetRef, ExperimentSpec, best_of, run_detect, similarity_kinds
from mstga.ga import GaConfig
from mstga.similarity import Measure


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--datasets", nargs="+", default=["karate"])
    ap.add_argument("--measures", nargs="+", default=[m.value for m in Measure])
    ap.add_argument("--repetitions", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results/similarity_sweep")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    refs = tuple(DatasetRef(n, *datasets.dataset_paths(n)) for n in args.datasets)
    spec = ExperimentSpec(refs, similarity_kinds(args.measures), args.repetitions, GaConfig(), Path(args.out), args.seed)
    rows = run_detect(spec)
    print(f"{'dataset':10s} {'measure':8s} {'best Q':>8s} {'NMI':>8s} seed")
    for (ds, sim), r in sorted(best_of(rows).items()):
        print(f"{ds:10s} {sim:8s} {r['best_q']:8.4f} {r['nmi']:8.4f} {r['seed']}")


if __name__ == "__main__":
    main()
