"""Generations-to-stop and final Q per mutation kind, as box-plot statistics.

The reference setting is jazz with target Q 0.435 and a 50-generation stall;
jazz is not bundled, so point MSTGA_DATA at a directory with jazz.edges.
"""

import argparse
from dataclasses import replace
from pathlib import Path

from mstga import datasets
from mstga.bench import DatasetRef, ExperimentSpec, run_mutation_bench
from mstga.ga import GaConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dataset", default="jazz")
    ap.add_argument("--repetitions", type=int, default=30)
    ap.add_argument("--target-q", type=float, default=0.435)
    ap.add_argument("--stall", type=int, default=50)
    ap.add_argument("--kinds", nargs="+", default=["uniform", "weight", "sine"])
    ap.add_argument("--out", default="results/mutation")
    args = ap.parse_args()

    ref = DatasetRef(args.dataset, *datasets.dataset_paths(args.dataset))
    cfg = replace(GaConfig(), target_q=args.target_q, stall_generations=args.stall)
    spec = ExperimentSpec((ref,), repetitions=args.repetitions, config=cfg, out_dir=Path(args.out))
    _, stats = run_mutation_bench(spec, args.kinds)
    for s in stats:
        print(
            f"{s['mutation']:8s} {s['metric']:11s} min {s['min']:.4g} q1 {s['q1']:.4g} "
            f"median {s['median']:.4g} q3 {s['q3']:.4g} max {s['max']:.4g} outliers [{s['outliers']}]"
        )


if __name__ == "__main__":
    main()
