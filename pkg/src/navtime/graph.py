"""Graph ingestion, largest-component extraction, Q/C partitions and candidate edges."""

from __future__ import annotations

import io
import re
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, NamedTuple, Sequence

import numpy as np

from .errors import EdgeListParseError, EmptyGraphError, SamplingExhaustedError, UsageError

_SPLIT = re.compile(r"[,\s]+")


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on dense ids ``0..N-1``.

    ``adjacency[i]`` is the sorted tuple of neighbours of ``i``;
    ``node_labels[i]`` the label the node had in the source file.
    """

    node_labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def N(self) -> int:
        return len(self.adjacency)

    @property
    def M(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=self.N)

    def has_edge(self, i: int, j: int) -> bool:
        adj = self.adjacency[i]
        k = np.searchsorted(adj, j)
        return k < len(adj) and adj[k] == j

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, adj in enumerate(self.adjacency) for j in adj if i < j]

    def label(self, i: int) -> str:
        return self.node_labels[i]

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int, labels: Sequence[str] | None = None) -> Graph:
        """Build from integer pairs; duplicates and self-loops are dropped."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(tuple(labels), tuple(tuple(sorted(s)) for s in nbrs))


class Partition(NamedTuple):
    """Query (transient) set Q and target (absorbing) set C, both sorted."""

    Q: tuple[int, ...]
    C: tuple[int, ...]


class CandidateEdge(NamedTuple):
    """Directed q -> c link absent from the original graph."""

    q: int
    c: int


def load_edge_list(stream: IO[bytes] | IO[str] | str | bytes) -> Graph:
    """Parse a whitespace/comma separated edge list.

    Lines starting with ``#`` or ``%`` are comments, blank lines are skipped.
    Labels get ids in order of first appearance.
    """
    if isinstance(stream, bytes):
        stream = io.BytesIO(stream)
    elif isinstance(stream, str):
        stream = io.StringIO(stream)

    ids: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line or line[0] in "#%":
            continue
        tokens = _SPLIT.split(line)
        if len(tokens) != 2:
            raise EdgeListParseError(lineno, line)
        u, v = (ids.setdefault(t, len(ids)) for t in tokens)
        pairs.append((u, v))

    g = Graph.from_edges(pairs, len(ids), list(ids))
    if g.M == 0:
        raise EmptyGraphError("edge list contains no edges between distinct nodes")
    return g


def read_edge_list(path: str | Path) -> Graph:
    with open(path, "rb") as fh:
        return load_edge_list(fh)


def connected_components(g: Graph, nodes: Iterable[int] | None = None) -> list[list[int]]:
    """Components of the subgraph induced by ``nodes`` (all nodes by default), each sorted."""
    allowed = np.zeros(g.N, dtype=bool)
    if nodes is None:
        allowed[:] = True
    else:
        allowed[list(nodes)] = True
    seen = ~allowed
    comps = []
    for start in range(g.N):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph, nodes: Iterable[int] | None = None) -> bool:
    return len(connected_components(g, nodes)) == 1


def induced_subgraph(g: Graph, nodes: Sequence[int]) -> Graph:
    """Subgraph on ``nodes``; new ids follow the order of ``nodes``."""
    new_id = {old: i for i, old in enumerate(nodes)}
    edges = [(new_id[u], new_id[v]) for u in nodes for v in g.adjacency[u] if v in new_id and u < v]
    return Graph.from_edges(edges, len(nodes), [g.node_labels[u] for u in nodes])


def largest_component(g: Graph) -> Graph:
    if g.N == 0:
        raise EmptyGraphError("graph has no nodes")
    comps = connected_components(g)
    # comps arrive ordered by smallest member, so max() keeps the first on ties
    best = max(comps, key=len)
    if len(best) == g.N:
        return g
    return induced_subgraph(g, best)


def sample_partition(
    g: Graph, c_size: int, rng: np.random.Generator, max_attempts: int = 10_000
) -> Partition:
    """Draw C uniformly among ``c_size``-subsets whose complement induces a connected graph.

    Rejection sampling: propose a uniform subset, accept when Q = V \\ C is connected.
    """
    if not 1 <= c_size <= g.N - 1:
        raise UsageError(f"c_size must be in [1, {g.N - 1}], got {c_size}")
    for _ in range(max_attempts):
        C = np.sort(rng.choice(g.N, size=c_size, replace=False))
        mask = np.ones(g.N, dtype=bool)
        mask[C] = False
        Q = np.flatnonzero(mask)
        if is_connected(g, Q):
            return Partition(tuple(Q.tolist()), tuple(C.tolist()))
    raise SamplingExhaustedError(
        f"no partition with connected query set found in {max_attempts} attempts (c_size={c_size})"
    )


def candidate_edges(g: Graph, p: Partition) -> list[CandidateEdge]:
    """All absent (q, c) pairs, sorted lexicographically."""
    return [CandidateEdge(q, c) for q in p.Q for c in p.C if not g.has_edge(q, c)]
