"""Experiment runner: sampled partitions, every selection method, m(k) per trial."""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .absorbing import build_system
from .errors import DataError, UsageError
from .graph import CandidateEdge, Graph, Partition, candidate_edges, largest_component, read_edge_list, sample_partition
from .greedy import greedy_descent, reverse_greedy
from .linkpred import random_k, score_candidates, top_k

log = logging.getLogger(__name__)

ALGORITHMS = ("greedy", "reverse", "ra", "jaccard", "aa", "pa", "random")
_SCORER = {"ra": "resource_allocation", "jaccard": "jaccard", "aa": "adamic_adar", "pa": "preferential_attachment"}
CSV_HEADER = ("graph", "algorithm", "trial", "seed", "k", "m")


def karate_path() -> Path:
    """Bundled Zachary karate club edge list."""
    return Path(str(resources.files("navtime") / "data" / "karate.edges"))


@dataclass
class ExperimentConfig:
    graph_path: str | Path
    c_size: int
    trials: int = 20
    k_max: int = 15
    algorithms: Sequence[str] = ALGORITHMS
    master_seed: int = 0
    output_path: str | Path | None = None
    resample_cap: int = 100

    def __post_init__(self):
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise UsageError(f"unknown algorithms {bad}; choose from {list(ALGORITHMS)}")
        if self.trials < 1 or self.k_max < 0 or self.c_size < 1:
            raise UsageError("trials and c_size must be positive, k_max non-negative")


@dataclass(frozen=True)
class ExperimentRecord:
    graph: str
    algorithm: str
    trial: int
    seed: int
    k: int
    m: float

    def row(self) -> list[str]:
        return [self.graph, self.algorithm, str(self.trial), str(self.seed), str(self.k), f"{self.m:.12g}"]


@dataclass
class Trial:
    seed: int
    partition: Partition
    candidates: list[CandidateEdge]
    rankings: dict[str, list[CandidateEdge]] = field(default_factory=dict)


def trial_seeds(master_seed: int, trials: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(master_seed).generate_state(trials)]


def rank_edges(g: Graph, sys, cands: list[CandidateEdge], algorithm: str, k_max: int, seed: int) -> list[CandidateEdge]:
    """Ordered selection whose length-k prefix is the algorithm's size-k choice."""
    if algorithm == "greedy":
        return greedy_descent(sys, cands, k_max).ranking()
    if algorithm == "reverse":
        return reverse_greedy(sys, cands, 0).ranking()[:k_max]
    if algorithm == "random":
        return random_k(cands, k_max, np.random.default_rng([seed, 1]))
    return top_k(score_candidates(g, cands, _SCORER[algorithm]), k_max)


def curve(sys, ranking: Sequence[CandidateEdge]) -> list[float]:
    """m after each prefix of ``ranking``, starting from the unmodified system."""
    sys = sys.copy()
    ms = [sys.absorption_time()]
    for e in ranking:
        sys.add_edge(e)
        ms.append(sys.absorption_time())
    return ms


def run_trial(g: Graph, cfg: ExperimentConfig, trial: int, seed: int) -> tuple[Trial, list[tuple[str, list[float]]]]:
    rng = np.random.default_rng(seed)
    for _ in range(cfg.resample_cap):
        p = sample_partition(g, cfg.c_size, rng)
        cands = candidate_edges(g, p)
        if len(cands) >= cfg.k_max:
            break
    else:
        raise DataError(f"trial {trial}: no partition with at least k_max={cfg.k_max} candidates "
                        f"after {cfg.resample_cap} resamples")
    sys = build_system(g, p)
    out = Trial(seed, p, cands)
    curves = []
    for alg in cfg.algorithms:
        ranking = rank_edges(g, sys, cands, alg, cfg.k_max, seed)
        out.rankings[alg] = ranking
        curves.append((alg, curve(sys, ranking)))
    return out, curves


def load_graph(path: str | Path) -> Graph:
    g = read_edge_list(path)
    lcc = largest_component(g)
    if lcc.N < g.N:
        log.info("kept largest component: %d of %d nodes", lcc.N, g.N)
    return lcc


def run_experiment(cfg: ExperimentConfig, graph: Graph | None = None) -> list[ExperimentRecord]:
    """Records for every (algorithm, trial, k <= k_max); deterministic in ``cfg.master_seed``."""
    g = load_graph(cfg.graph_path) if graph is None else graph
    if cfg.c_size > g.N - 1:
        raise UsageError(f"c_size={cfg.c_size} leaves no query nodes (N={g.N})")
    name = Path(cfg.graph_path).stem
    records = []
    for t, seed in enumerate(trial_seeds(cfg.master_seed, cfg.trials)):
        _, curves = run_trial(g, cfg, t, seed)
        for alg, ms in curves:
            records.extend(ExperimentRecord(name, alg, t, seed, k, m) for k, m in enumerate(ms))
    if cfg.output_path is not None:
        write_csv(records, cfg.output_path)
    return records


def records_to_csv(records: Sequence[ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def write_csv(records: Sequence[ExperimentRecord], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(records_to_csv(records))


def mean_curves(records: Sequence[ExperimentRecord]) -> dict[str, np.ndarray]:
    """Trial-averaged m(k) for each algorithm."""
    by_alg: dict[str, dict[int, list[float]]] = {}
    for r in records:
        by_alg.setdefault(r.algorithm, {}).setdefault(r.k, []).append(r.m)
    return {a: np.array([np.mean(ks[k]) for k in sorted(ks)]) for a, ks in by_alg.items()}
