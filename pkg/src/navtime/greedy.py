"""Greedy descent and reverse greedy selection of k candidate links."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .absorbing import AbsorbingSystem
from .errors import UsageError
from .graph import CandidateEdge

# gains closer than this (relative) to the best are treated as ties
TIE_TOL = 1e-12


@dataclass
class GreedyResult:
    chosen: list[CandidateEdge]
    trajectory: list[float]
    algorithm: Literal["descent", "reverse"]
    # reverse greedy only: edges in the order they were dropped
    removed: list[CandidateEdge] = field(default_factory=list)

    @property
    def final_m(self) -> float:
        return self.trajectory[-1]

    def ranking(self) -> list[CandidateEdge]:
        """Edges ordered so that every prefix of length j is the size-j selection.

        For descent this is the commit order. For reverse greedy the sets left
        after successive removals are nested, so the ranking is the last edge
        standing first, then the removals in reverse order.
        """
        if self.algorithm == "descent":
            return list(self.chosen)
        return list(self.chosen) + self.removed[::-1]


def _pick(values: np.ndarray, edges: Sequence[CandidateEdge], best_is_max: bool) -> int:
    """Index of the best value; ties go to the lexicographically smallest edge."""
    best = values.max() if best_is_max else values.min()
    slack = TIE_TOL * max(1.0, abs(best))
    ok = values >= best - slack if best_is_max else values <= best + slack
    idx = np.flatnonzero(ok)
    return int(min(idx, key=lambda j: edges[j]))


def greedy_descent(sys: AbsorbingSystem, candidates: Sequence[CandidateEdge], k: int) -> GreedyResult:
    """Add k links one at a time, each time the one with the largest drop in m.

    Works on a copy; ``sys`` is left untouched.
    """
    remaining = sorted(set(candidates))
    if not 0 <= k <= len(remaining):
        raise UsageError(f"k={k} but only {len(remaining)} candidates")
    sys = sys.copy()
    chosen: list[CandidateEdge] = []
    trajectory = [sys.absorption_time()]
    for _ in range(k):
        gains = sys.node_gains()
        vals = gains[[sys.q_index[e.q] for e in remaining]]
        e = remaining.pop(_pick(vals, remaining, best_is_max=True))
        sys.add_edge(e)
        chosen.append(e)
        trajectory.append(sys.absorption_time())
    return GreedyResult(chosen, trajectory, "descent")


def reverse_greedy(sys: AbsorbingSystem, candidates: Sequence[CandidateEdge], k: int) -> GreedyResult:
    """Add every candidate, then drop the cheapest-to-lose link until k remain."""
    pool = sorted(set(candidates))
    if not 0 <= k <= len(pool):
        raise UsageError(f"k={k} but only {len(pool)} candidates")
    sys = sys.copy()
    for e in pool:
        sys.add_edge(e)
    sys.rebuild()
    kept = list(pool)
    removed: list[CandidateEdge] = []
    trajectory = [sys.absorption_time()]
    while len(kept) > k:
        losses = sys.node_losses()
        vals = losses[[sys.q_index[e.q] for e in kept]]
        e = kept.pop(_pick(vals, kept, best_is_max=False))
        sys.remove_edge(e)
        removed.append(e)
        trajectory.append(sys.absorption_time())
    return GreedyResult(kept, trajectory, "reverse", removed)
