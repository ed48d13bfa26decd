"""Expected absorption time of a random walk from Q into C, with rank-1 maintenance.

A walker on query node ``q`` moves to a uniformly chosen out-neighbour. Nodes in
C have no out-links, so the walk stops there. Adding a candidate link q -> c only
raises q's out-degree, which rescales row q of the transient block ``P_QQ``; the
fundamental matrix ``F = (I - P_QQ)^-1`` is then corrected with Sherman-Morrison.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .errors import StructuralError, UsageError
from .graph import CandidateEdge, Graph, Partition

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-8
DENOM_TOL = 1e-12
DEFAULT_REBUILD_EVERY = 50


class AbsorbingSystem:
    """Transient block, explicit fundamental matrix and cached readouts.

    Attributes
    ----------
    q_index : dict[int, int]
        Graph node id -> row index in the transient block.
    P_QQ : ndarray (|Q|, |Q|)
    F : ndarray (|Q|, |Q|)
        Expected visits to j before absorption when starting from i.
    L : ndarray (|Q|,)
        Expected steps to absorption, ``F @ 1``.
    w : ndarray (|Q|,)
        ``F.T @ s``; ``w[i]`` is the expected number of visits to i.
    s : ndarray (|Q|,)
        Starting distribution over Q.
    out_degree : ndarray (|Q|,)
        Graph degree plus currently added links.
    added : list[CandidateEdge]
        Added links in insertion order.
    """

    def __init__(
        self,
        g: Graph,
        p: Partition,
        added: Iterable[CandidateEdge] = (),
        s: Sequence[float] | None = None,
        rebuild_every: int = DEFAULT_REBUILD_EVERY,
    ):
        self.graph = g
        self.partition = p
        self.Q = np.asarray(p.Q, dtype=np.int64)
        self.q_index = {q: i for i, q in enumerate(p.Q)}
        self._in_c = np.zeros(g.N, dtype=bool)
        self._in_c[list(p.C)] = True
        n = len(p.Q)
        if s is None:
            self.s = np.full(n, 1.0 / n)
        else:
            self.s = np.asarray(s, dtype=float)
            if self.s.shape != (n,) or np.any(self.s < 0) or not np.isclose(self.s.sum(), 1.0):
                raise UsageError("starting distribution must be a probability vector over Q")
        self.rebuild_every = rebuild_every

        self.base_degree = np.array([g.degree(q) for q in p.Q], dtype=float)
        self.out_degree = self.base_degree.copy()
        self.added: list[CandidateEdge] = []
        self._added_set: set[CandidateEdge] = set()
        for e in added:
            self._check_candidate(e)
            if e in self._added_set:
                raise UsageError(f"edge {e} listed twice")
            self.added.append(e)
            self._added_set.add(e)
            self.out_degree[self.q_index[e.q]] += 1

        # 0/1 adjacency restricted to Q; P_QQ is its row-normalisation by out_degree
        self._A = np.zeros((n, n))
        for i, q in enumerate(p.Q):
            for j in g.adjacency[q]:
                k = self.q_index.get(j)
                if k is not None:
                    self._A[i, k] = 1.0
        self._check_reachable()
        self.rebuild()

    # --- construction -------------------------------------------------

    def _check_candidate(self, e: CandidateEdge) -> None:
        if e.q not in self.q_index or not self._in_c[e.c]:
            raise UsageError(f"edge {e} does not run from Q to C")
        if self.graph.has_edge(e.q, e.c):
            raise UsageError(f"edge {e} already exists in the graph")

    def _check_reachable(self) -> None:
        """Every q must reach C; otherwise I - P_QQ is singular."""
        exits = self.out_degree - self._A.sum(axis=1) > 0
        reached = exits.copy()
        queue = deque(np.flatnonzero(exits).tolist())
        while queue:
            i = queue.popleft()
            for j in np.flatnonzero(self._A[:, i]):
                if not reached[j]:
                    reached[j] = True
                    queue.append(j)
        if not reached.all():
            bad = int(self.Q[np.flatnonzero(~reached)[0]])
            raise StructuralError(bad, self.graph.node_labels[bad])

    def rebuild(self) -> None:
        """Recompute P_QQ and F from scratch with a dense solve."""
        n = len(self.Q)
        self.P_QQ = self._A / self.out_degree[:, None]
        self.F = np.linalg.solve(np.eye(n) - self.P_QQ, np.eye(n))
        self._refresh_readouts()
        self.updates_since_rebuild = 0

    def _refresh_readouts(self) -> None:
        self.L = self.F.sum(axis=1)
        self.w = self.F.T @ self.s

    def copy(self) -> AbsorbingSystem:
        new = object.__new__(AbsorbingSystem)
        new.__dict__.update(self.__dict__)
        for name in ("out_degree", "P_QQ", "F", "L", "w"):
            setattr(new, name, getattr(self, name).copy())
        new.added = list(self.added)
        new._added_set = set(self._added_set)
        return new

    # --- readouts -----------------------------------------------------

    def absorption_time(self) -> float:
        """Mean steps to absorption, ``s . L``."""
        return float(self.s @ self.L)

    def steps_from(self, node: int) -> float:
        return float(self.L[self.q_index[node]])

    def residual(self) -> float:
        """``max |(I - P_QQ) F - I|``."""
        n = len(self.Q)
        return float(np.abs((np.eye(n) - self.P_QQ) @ self.F - np.eye(n)).max())

    def _delta(self, i: int, step: int) -> tuple[float, float]:
        """Sherman-Morrison numerator/denominator pieces for changing q_i's degree by ``step``.

        Row i of ``I - P_QQ`` changes by ``v = P_i * step / (d + step)``, which
        lowers m by ``w_i (v . L) / (1 + v . F[:, i])``.
        """
        d = self.out_degree[i]
        scale = step / (d + step)
        row = self.P_QQ[i]
        vL = scale * (row @ self.L)
        vF = scale * (row @ self.F[:, i])
        return vL, 1.0 + vF

    def marginal_gain(self, e: CandidateEdge) -> float:
        """Decrease of m from adding ``e``; O(|Q|) and side-effect free."""
        e = CandidateEdge(*e)
        if e in self._added_set:
            raise UsageError(f"edge {e} is already added")
        self._check_candidate(e)
        i = self.q_index[e.q]
        vL, denom = self._delta(i, +1)
        return float(self.w[i] * vL / denom)

    def marginal_loss(self, e: CandidateEdge) -> float:
        """Increase of m from removing the added edge ``e``."""
        e = CandidateEdge(*e)
        if e not in self._added_set:
            raise UsageError(f"edge {e} has not been added")
        i = self.q_index[e.q]
        vL, denom = self._delta(i, -1)
        return float(-self.w[i] * vL / denom)

    def node_gains(self) -> np.ndarray:
        """Marginal gain of one extra out-link at every query node (indexed like Q).

        A link's gain depends only on its source, so this covers all candidates at once.
        """
        scale = 1.0 / (self.out_degree + 1.0)
        vL = scale * (self.P_QQ @ self.L)
        vF = scale * np.einsum("ij,ji->i", self.P_QQ, self.F)
        return self.w * vL / (1.0 + vF)

    def node_losses(self) -> np.ndarray:
        """Increase of m from dropping one out-link at every query node."""
        with np.errstate(divide="ignore", invalid="ignore"):
            scale = -1.0 / (self.out_degree - 1.0)
            vL = scale * (self.P_QQ @ self.L)
            vF = scale * np.einsum("ij,ji->i", self.P_QQ, self.F)
            return -self.w * vL / (1.0 + vF)

    # --- updates ------------------------------------------------------

    def add_edge(self, e: CandidateEdge) -> AbsorbingSystem:
        e = CandidateEdge(*e)
        if e in self._added_set:
            raise UsageError(f"edge {e} is already added")
        self._check_candidate(e)
        self._update(self.q_index[e.q], +1)
        self.added.append(e)
        self._added_set.add(e)
        return self

    def remove_edge(self, e: CandidateEdge) -> AbsorbingSystem:
        e = CandidateEdge(*e)
        if e not in self._added_set:
            raise UsageError(f"edge {e} has not been added")
        self._update(self.q_index[e.q], -1)
        self.added.remove(e)
        self._added_set.remove(e)
        return self

    def _update(self, i: int, step: int) -> None:
        d = self.out_degree[i]
        new_row = self._A[i] / (d + step)
        v = self.P_QQ[i] - new_row  # change of row i of I - P_QQ
        self.out_degree[i] = d + step
        self.P_QQ[i] = new_row
        self.updates_since_rebuild += 1

        vF = v @ self.F
        denom = 1.0 + vF[i]
        if abs(denom) < DENOM_TOL:
            log.warning("rank-1 denominator %.3g at row %d; rebuilding", denom, i)
            self.rebuild()
            return
        self.F -= np.outer(self.F[:, i], vF / denom)
        self._refresh_readouts()

        if self.updates_since_rebuild >= self.rebuild_every:
            self.rebuild()
            return
        # cheap drift probe on the touched column
        col = self.F[:, i] - self.P_QQ @ self.F[:, i]
        col[i] -= 1.0
        if np.abs(col).max() > RESIDUAL_TOL:
            log.info("residual %.3g after rank-1 update; rebuilding", np.abs(col).max())
            self.rebuild()


def build_system(
    g: Graph,
    p: Partition,
    added: Iterable[CandidateEdge] = (),
    s: Sequence[float] | None = None,
    rebuild_every: int = DEFAULT_REBUILD_EVERY,
) -> AbsorbingSystem:
    return AbsorbingSystem(g, p, added, s=s, rebuild_every=rebuild_every)


def absorption_time(sys: AbsorbingSystem) -> float:
    return sys.absorption_time()


def marginal_gain(sys: AbsorbingSystem, e: CandidateEdge) -> float:
    return sys.marginal_gain(e)


def marginal_loss(sys: AbsorbingSystem, e: CandidateEdge) -> float:
    return sys.marginal_loss(e)


def add_edge(sys: AbsorbingSystem, e: CandidateEdge) -> AbsorbingSystem:
    return sys.add_edge(e)


def remove_edge(sys: AbsorbingSystem, e: CandidateEdge) -> AbsorbingSystem:
    return sys.remove_edge(e)
