import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest

from mstga import datasets
from mstga.bench import (
    DatasetRef,
    ExperimentSpec,
    PlantedPartitionSpec,
    best_of,
    box_stats,
    generate_planted,
    run_detect,
    run_initpop_bench,
    run_mutation_bench,
    write_planted,
)
from mstga.cli import main
from mstga.ga import GaConfig
from mstga.graph import read_edge_list
from mstga.metrics import modularity, nmi, read_ground_truth

SMALL = GaConfig(population_size=10, max_generations=20, stall_generations=10)


@pytest.fixture(scope="module")
def karate_ref():
    gp, tp = datasets.dataset_paths("karate")
    return DatasetRef("karate", gp, tp)


def test_box_stats_single_observation():
    s = box_stats([3.5])
    assert {s[k] for k in ("min", "lower_whisker", "q1", "median", "q3", "upper_whisker", "max")} == {3.5}
    assert s["outliers"] == []


def test_box_stats_outlier():
    vals = [1, 2, 3, 4, 5, 6, 7, 8, 100]
    s = box_stats(vals)
    assert s["median"] == 5 and s["q1"] == 3 and s["q3"] == 7
    assert s["upper_whisker"] == 8 and s["outliers"] == [100.0] and s["max"] == 100


def test_planted_spec_validation():
    for kw in (dict(p_in=0.1, p_out=0.1), dict(p_in=1.2), dict(p_out=-0.1), dict(communities=0)):
        with pytest.raises(ValueError):
            PlantedPartitionSpec(**kw)


def test_planted_without_mixing_splits_into_blocks():
    g, truth = generate_planted(PlantedPartitionSpec(3, 8, 0.9, 0.0, seed=4))
    comps = g.components()
    blocks = [sorted(np.flatnonzero(truth.assignment == c).tolist()) for c in range(3)]
    assert sorted(comps) == sorted(blocks)


def test_planted_edge_count_within_three_sigma():
    spec = PlantedPartitionSpec(4, 20, 0.3, 0.05)
    k, s = spec.communities, spec.size
    n_in, n_out = k * s * (s - 1) // 2, k * (k - 1) // 2 * s * s
    sigma = math.sqrt(n_in * 0.3 * 0.7 + n_out * 0.05 * 0.95)
    for seed in range(20):
        g, _ = generate_planted(PlantedPartitionSpec(4, 20, 0.3, 0.05, seed))
        assert abs(g.m - spec.expected_edges) <= 3 * sigma


def test_write_planted_files(tmp_path):
    spec = PlantedPartitionSpec(2, 16, 0.5, 0.02, seed=1)
    g, truth = write_planted(spec, tmp_path / "p.edges", tmp_path / "p.truth")
    assert "seed': 1" in (tmp_path / "p.edges").read_text().splitlines()[0]
    g2 = read_edge_list(tmp_path / "p.edges")
    t2 = read_ground_truth(tmp_path / "p.truth", g2)
    assert g2.m == g.m and t2.complete


def test_experiment_spec_checks(tmp_path):
    with pytest.raises(ValueError):
        ExperimentSpec(datasets=(), repetitions=0)
    with pytest.raises(FileNotFoundError):
        ExperimentSpec(datasets=(DatasetRef("x", tmp_path / "missing"),))


def test_run_detect_files_and_reproducibility(tmp_path, karate_ref):
    spec = ExperimentSpec(datasets=(karate_ref,), repetitions=2, config=SMALL, out_dir=tmp_path)
    rows = run_detect(spec)
    assert len(rows) == 2
    g, truth = karate_ref.load()
    for r in rows:
        stem = tmp_path / f"karate_jaccard_seed{r['seed']}"
        part = read_ground_truth(stem.with_suffix(".partition"), g)
        assert modularity(part.assignment, g) == pytest.approx(r["best_q"], abs=1e-12)
        assert nmi(part, truth) == pytest.approx(r["nmi"], abs=1e-12)
        header = stem.with_suffix(".csv").read_text().splitlines()[0]
        assert header == "generation,best_q,mean_q,alpha,communities"
    with open(tmp_path / "summary.csv") as fh:
        assert len(list(csv.DictReader(fh))) == 2
    again = run_detect(ExperimentSpec(datasets=(karate_ref,), repetitions=2, config=SMALL))
    assert [(r["best_q"], r["generations"]) for r in again] == [(r["best_q"], r["generations"]) for r in rows]
    best = best_of(rows)[("karate", "jaccard")]
    assert best["best_q"] == max(r["best_q"] for r in rows)


def test_initpop_bench_rows(karate_ref):
    rows = run_initpop_bench(ExperimentSpec(datasets=(karate_ref,), repetitions=2, config=SMALL))
    assert [r["method"] for r in rows] == ["proposed", "random"] * 2
    assert all(r["q_max"] >= r["q_avg"] for r in rows)


def test_mutation_bench_rows(tmp_path, karate_ref):
    spec = ExperimentSpec(datasets=(karate_ref,), repetitions=2, config=SMALL, out_dir=tmp_path)
    runs, stats = run_mutation_bench(spec, ["uniform", "sine"])
    assert len(runs) == 4 and len(stats) == 4
    assert (tmp_path / "mutation_stats.csv").exists()


# ---- command line ---------------------------------------------------------------


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_weigh_and_mst(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "weigh", "--graph", "karate", "--similarity", "cn")
    assert code == 0 and len(out.splitlines()) == 78
    code, _, _ = run_cli(capsys, "mst", "--graph", "karate", "--out", str(tmp_path / "t.txt"))
    lines = (tmp_path / "t.txt").read_text().splitlines()
    assert code == 0 and len(lines) == 33 and lines[0].split()[0] == "0"


def test_cli_detect_then_eval(capsys, tmp_path):
    part, log = tmp_path / "p.txt", tmp_path / "log.csv"
    code, out, _ = run_cli(
        capsys, "detect", "--graph", "karate", "--pop-size", "10", "--max-gens", "15",
        "--mutation", "uniform", "--seed", "3", "--out", str(part), "--log", str(log),
    )
    assert code == 0
    det = json.loads(out)
    truth = str(datasets.dataset_paths("karate")[1])
    code, out, _ = run_cli(capsys, "eval", "--graph", "karate", "--partition", str(part), "--truth", truth)
    ev = json.loads(out)
    assert ev["Q"] == pytest.approx(det["Q"], abs=1e-12)
    assert ev["NMI"] == pytest.approx(det["NMI"], abs=1e-12)
    assert ev["communities"] == det["communities"]
    assert log.read_text().startswith("generation,best_q,mean_q,alpha,communities\n0,")


def test_cli_missing_graph(capsys, tmp_path):
    code, _, err = run_cli(capsys, "detect", "--graph", str(tmp_path / "nope.txt"))
    assert code != 0 and "error" in err


def test_cli_bad_partition(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("0 1\n")
    code, _, err = run_cli(capsys, "eval", "--graph", "karate", "--partition", str(p))
    assert code != 0 and "every node" in err


def test_cli_planted_and_benches(capsys, tmp_path):
    ge, tr = tmp_path / "g.edges", tmp_path / "g.truth"
    code, out, _ = run_cli(capsys, "gen-planted", "--k", "2", "--size", "10", "--seed", "2", "--out-graph", str(ge), "--out-truth", str(tr))
    assert code == 0 and json.loads(out)["seed"] == 2
    code, out, _ = run_cli(capsys, "initpop-bench", "--graph", str(ge), "--repetitions", "2", "--pop-size", "6")
    assert code == 0 and out.splitlines()[0] == "dataset,similarity,seed,method,q_max,q_avg"
    code, out, _ = run_cli(
        capsys, "mutation-bench", "--graph", str(ge), "--repetitions", "2", "--pop-size", "6",
        "--max-gens", "10", "--kinds", "sine", "--out-dir", str(tmp_path / "mb"),
    )
    assert code == 0 and len(out.splitlines()) == 3
    assert (tmp_path / "mb" / "mutation_runs.csv").exists()


def test_dataset_lookup(monkeypatch, tmp_path):
    assert {"karate", "football"} <= set(datasets.available())
    with pytest.raises(datasets.DatasetNotFound):
        datasets.load_dataset("jazz-that-is-not-here")
    (tmp_path / "tiny.edges").write_text("a b\nb c\n")
    (tmp_path / "tiny.truth").write_text("a 0\nb 0\nc 1\n")
    monkeypatch.setenv(datasets.DATA_ENV, str(tmp_path))
    g, truth = datasets.load_dataset("tiny")
    assert g.n == 3 and truth.community_count == 2
    assert "tiny" in datasets.available()
