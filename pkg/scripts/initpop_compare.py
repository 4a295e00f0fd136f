"""Q_max / Q_avg of proposed vs uniform-random initial populations over paired seeds."""

import argparse
from collections import defaultdict
from pathlib import Path

import numpy as np

from mstga import datasets
from mstga.bench import DatasetRef, ExperimentSpec, run_initpop_bench
from mstga.ga import GaConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--datasets", nargs="+", default=["karate", "football"])
    ap.add_argument("--repetitions", type=int, default=20)
    ap.add_argument("--pop-size", type=int, default=100)
    ap.add_argument("--out", default="results/initpop")
    args = ap.parse_args()

    refs = []
    for name in args.datasets:
        try:
            refs.append(DatasetRef(name, *datasets.dataset_paths(name)))
        except datasets.DatasetNotFound as exc:
            print(f"skipping {name}: {exc}")
    spec = ExperimentSpec(tuple(refs), repetitions=args.repetitions, config=GaConfig(population_size=args.pop_size), out_dir=Path(args.out))
    rows = run_initpop_bench(spec)
    agg = defaultdict(list)
    for r in rows:
        agg[(r["dataset"], r["method"])].append((r["q_max"], r["q_avg"]))
    for (ds, method), vals in sorted(agg.items()):
        v = np.array(vals)
        print(f"{ds:10s} {method:9s} Q_max {v[:, 0].mean():.3f}  Q_avg {v[:, 1].mean():.3f}")


if __name__ == "__main__":
    main()
