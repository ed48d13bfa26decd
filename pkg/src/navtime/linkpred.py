"""Neighbourhood link-prediction scores used as baselines for link placement."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import UsageError
from .graph import CandidateEdge, Graph


class ScoredEdge(NamedTuple):
    edge: CandidateEdge
    score: float


def _common(g: Graph, u: int, v: int) -> set[int]:
    return set(g.adjacency[u]).intersection(g.adjacency[v])


def resource_allocation(g: Graph, u: int, v: int) -> float:
    return sum(1.0 / g.degree(z) for z in _common(g, u, v))


def jaccard(g: Graph, u: int, v: int) -> float:
    union = set(g.adjacency[u]).union(g.adjacency[v])
    return len(_common(g, u, v)) / len(union) if union else 0.0


def adamic_adar(g: Graph, u: int, v: int) -> float:
    # a common neighbour touches both u and v, so its degree is at least 2
    return sum(1.0 / math.log(g.degree(z)) for z in _common(g, u, v))


def preferential_attachment(g: Graph, u: int, v: int) -> float:
    return float(g.degree(u) * g.degree(v))


SCORERS: dict[str, Callable[[Graph, int, int], float]] = {
    "resource_allocation": resource_allocation,
    "jaccard": jaccard,
    "adamic_adar": adamic_adar,
    "preferential_attachment": preferential_attachment,
}


def score_candidates(g: Graph, candidates: Sequence[CandidateEdge], method: str) -> list[ScoredEdge]:
    """Score each candidate on the original undirected graph."""
    try:
        fn = SCORERS[method]
    except KeyError:
        raise UsageError(f"unknown method {method!r}; choose from {sorted(SCORERS)}") from None
    return [ScoredEdge(e, fn(g, e.q, e.c)) for e in candidates]


def top_k(scored: Sequence[ScoredEdge], k: int) -> list[CandidateEdge]:
    """Highest-scoring k edges, ties broken by smallest (q, c)."""
    if not 0 <= k <= len(scored):
        raise UsageError(f"k={k} but only {len(scored)} scored edges")
    ranked = sorted(scored, key=lambda se: (-se.score, se.edge))
    return [se.edge for se in ranked[:k]]


def random_k(candidates: Sequence[CandidateEdge], k: int, rng: np.random.Generator) -> list[CandidateEdge]:
    """Uniform k-subset without replacement, in draw order.

    Prefixes of the returned list are themselves uniform subsets.
    """
    pool = sorted(candidates)
    if not 0 <= k <= len(pool):
        raise UsageError(f"k={k} but only {len(pool)} candidates")
    idx = rng.permutation(len(pool))[:k]
    return [pool[i] for i in idx]
