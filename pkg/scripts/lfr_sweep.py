"""Run detection over a directory of externally generated benchmark graphs.

Expects pairs ``<name>.edges`` / ``<name>.truth`` (for example one per mixing
value) and writes one summary row per graph and seed.
"""

import argparse
from pathlib import Path

from mstga.bench import DatasetRef, ExperimentSpec, best_of, run_detect
from mstga.ga import GaConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("directory")
    ap.add_argument("--repetitions", type=int, default=10)
    ap.add_argument("--pop-size", type=int, default=100)
    ap.add_argument("--out", default="results/lfr")
    args = ap.parse_args()

    d = Path(args.directory)
    refs = []
    for edges in sorted(d.glob("*.edges")):
        truth = edges.with_suffix(".truth")
        refs.append(DatasetRef(edges.stem, edges, truth if truth.exists() else None))
    if not refs:
        raise SystemExit(f"no *.edges files in {d}")
    spec = ExperimentSpec(tuple(refs), repetitions=args.repetitions, config=GaConfig(population_size=args.pop_size), out_dir=Path(args.out))
    for (ds, _), r in sorted(best_of(run_detect(spec)).items()):
        print(f"{ds:20s} Q {r['best_q']:.4f} NMI {r['nmi']:.4f}")


if __name__ == "__main__":
    main()
