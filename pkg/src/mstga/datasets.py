"""Bundled benchmark networks and their reference communities.

Karate and football ship with the package. Other networks (dolphins, jazz,
...) are looked up as ``<name>.edges`` / ``<name>.truth`` in the directory
named by ``MSTGA_DATA``.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .graph import Graph, load_edge_list
from .metrics import GroundTruth, load_ground_truth

DATA_ENV = "MSTGA_DATA"


class DatasetNotFound(FileNotFoundError):
    pass


def _locate(name: str, suffix: str) -> Path | None:
    extra = os.environ.get(DATA_ENV)
    if extra:
        p = Path(extra) / f"{name}.{suffix}"
        if p.is_file():
            return p
    p = resources.files("mstga") / "data" / f"{name}.{suffix}"
    return Path(str(p)) if p.is_file() else None


def available() -> list[str]:
    names = {p.stem for p in Path(str(resources.files("mstga") / "data")).glob("*.edges")}
    extra = os.environ.get(DATA_ENV)
    if extra and Path(extra).is_dir():
        names |= {p.stem for p in Path(extra).glob("*.edges")}
    return sorted(names)


def load_dataset(name: str) -> tuple[Graph, GroundTruth | None]:
    path = _locate(name, "edges")
    if path is None:
        raise DatasetNotFound(
            f"dataset {name!r} is not bundled; put {name}.edges (and {name}.truth) in ${DATA_ENV}"
        )
    with open(path) as fh:
        g = load_edge_list(fh)
    truth_path = _locate(name, "truth")
    truth = None
    if truth_path is not None:
        with open(truth_path) as fh:
            truth = load_ground_truth(fh, g)
    return g, truth


def dataset_paths(name: str) -> tuple[Path, Path | None]:
    path = _locate(name, "edges")
    if path is None:
        raise DatasetNotFound(f"dataset {name!r} not found")
    return path, _locate(name, "truth")
