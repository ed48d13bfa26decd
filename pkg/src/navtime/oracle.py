"""Independent checks: Monte Carlo walks, exhaustive search and set-function property suites."""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .absorbing import build_system
from .errors import CapTooLowError, CombinationBoundError, SamplingExhaustedError
from .graph import CandidateEdge, Graph, Partition, candidate_edges, is_connected, sample_partition

COMPARE_TOL = 1e-9
MAX_COMBINATIONS = 10**6


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    stderr: float
    n_walks: int
    n_capped: int


def monte_carlo_absorption(
    g: Graph,
    p: Partition,
    added: Iterable[CandidateEdge],
    n_walks: int,
    step_cap: int = 10**6,
    rng: np.random.Generator | None = None,
    max_capped_frac: float = 0.01,
) -> MonteCarloEstimate:
    """Simulate walks from uniform starts in Q until they first hit C.

    All walks advance together; absorbed walks are dropped from the active set.
    """
    rng = np.random.default_rng() if rng is None else rng
    out: list[list[int]] = [list(a) for a in g.adjacency]
    for e in added:
        out[e.q].append(e.c)
    deg = np.array([len(o) for o in out], dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(deg)])
    targets = np.fromiter(itertools.chain.from_iterable(out), dtype=np.int64, count=int(offsets[-1]))
    absorbing = np.zeros(g.N, dtype=bool)
    absorbing[list(p.C)] = True

    Q = np.asarray(p.Q)
    pos = Q[rng.integers(len(Q), size=n_walks)]
    steps = np.zeros(n_walks, dtype=np.int64)
    active = np.arange(n_walks)
    for t in range(1, step_cap + 1):
        cur = pos[active]
        pick = (rng.random(len(active)) * deg[cur]).astype(np.int64)
        nxt = targets[offsets[cur] + pick]
        pos[active] = nxt
        done = absorbing[nxt]
        steps[active[done]] = t
        active = active[~done]
        if len(active) == 0:
            break
    n_capped = len(active)
    steps[active] = step_cap
    if n_capped > max_capped_frac * n_walks:
        raise CapTooLowError(f"{n_capped}/{n_walks} walks hit the step cap of {step_cap}")
    mean = float(steps.mean())
    stderr = float(steps.std(ddof=1) / math.sqrt(n_walks)) if n_walks > 1 else 0.0
    return MonteCarloEstimate(mean, stderr, n_walks, n_capped)


def exhaustive_best_k(
    g: Graph, p: Partition, candidates: Sequence[CandidateEdge], k: int, bound: int = MAX_COMBINATIONS
) -> tuple[list[CandidateEdge], float]:
    """Minimum m over all k-subsets, each solved from scratch.

    Subsets are visited in lexicographic order and only a strictly better value
    replaces the incumbent, so the smallest optimal subset is returned.
    """
    pool = sorted(set(candidates))
    count = math.comb(len(pool), k)
    if count > bound:
        raise CombinationBoundError(count, bound)
    best_set: list[CandidateEdge] = []
    best_m = math.inf
    for combo in itertools.combinations(pool, k):
        m = build_system(g, p, combo).absorption_time()
        if m < best_m - 1e-12 * max(1.0, abs(m)):
            best_set, best_m = list(combo), m
    return best_set, best_m


def mfpt_to_node(g: Graph, target: int) -> np.ndarray:
    """Mean first passage times of the simple random walk on g into ``target``.

    Uses the ergodic-chain fundamental matrix ``Z = (I - P + 1 pi^T)^-1`` and
    ``T_ij = (Z_jj - Z_ij) / pi_j``; no absorbing construction involved.
    """
    A = np.zeros((g.N, g.N))
    for i, adj in enumerate(g.adjacency):
        A[i, list(adj)] = 1.0
    d = A.sum(axis=1)
    P = A / d[:, None]
    pi = d / d.sum()
    Z = np.linalg.inv(np.eye(g.N) - P + np.outer(np.ones(g.N), pi))
    return (Z[target, target] - Z[:, target]) / pi[target]


# --- random instances ------------------------------------------------------


@dataclass(frozen=True)
class InstanceBounds:
    """Erdős–Rényi instance family: G(n, p) with p = mean_degree / (n - 1)."""

    n_min: int = 8
    n_max: int = 30
    degree_min: float = 2.0
    degree_max: float = 6.0
    c_min: int = 1
    c_max_frac: float = 0.25
    c_max: int | None = None
    min_candidates: int = 1
    max_candidates: int | None = None


def random_graph(rng: np.random.Generator, bounds: InstanceBounds = InstanceBounds()) -> Graph:
    """Connected G(n, p), retried until connected."""
    n = int(rng.integers(bounds.n_min, bounds.n_max + 1))
    p = rng.uniform(bounds.degree_min, bounds.degree_max) / (n - 1)
    while True:
        iu, ju = np.triu_indices(n, k=1)
        keep = rng.random(len(iu)) < p
        g = Graph.from_edges(zip(iu[keep].tolist(), ju[keep].tolist()), n)
        if min(g.degrees()) > 0 and is_connected(g):
            return g


def random_instance(
    rng: np.random.Generator, bounds: InstanceBounds = InstanceBounds(), max_tries: int = 1000
) -> tuple[Graph, Partition, list[CandidateEdge]]:
    for _ in range(max_tries):
        g = random_graph(rng, bounds)
        c_hi = bounds.c_max if bounds.c_max is not None else max(bounds.c_min, int(bounds.c_max_frac * g.N))
        c_size = int(rng.integers(bounds.c_min, min(c_hi, g.N - 1) + 1))
        try:
            p = sample_partition(g, c_size, rng, max_attempts=200)
        except SamplingExhaustedError:
            continue
        cands = candidate_edges(g, p)
        if len(cands) < bounds.min_candidates:
            continue
        if bounds.max_candidates is not None and len(cands) > bounds.max_candidates:
            continue
        return g, p, cands
    raise SamplingExhaustedError(f"no admissible instance in {max_tries} tries")


# --- property reports ------------------------------------------------------


@dataclass
class CheckRow:
    seed: int
    quantity: str
    lhs: float
    rhs: float
    passed: bool


@dataclass
class PropertyReport:
    name: str
    rows: list[CheckRow] = field(default_factory=list)

    @property
    def violations(self) -> list[CheckRow]:
        return [r for r in self.rows if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        lines = [f"{self.name}: {len(self.rows)} checks, {len(self.violations)} violations"]
        for r in self.violations[:20]:
            lines.append(f"  seed={r.seed} {r.quantity}: lhs={r.lhs:.12g} rhs={r.rhs:.12g}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["seed", "quantity", "lhs", "rhs", "pass"])
        for r in self.rows:
            w.writerow([r.seed, r.quantity, f"{r.lhs:.12g}", f"{r.rhs:.12g}", int(r.passed)])
        return buf.getvalue()


def _instance_seeds(rng: np.random.Generator, instances: int) -> list[int]:
    return rng.integers(0, 2**32, size=instances, dtype=np.uint64).tolist()


def _nested_sets(rng: np.random.Generator, cands: list[CandidateEdge], spare: int):
    """Random X ⊂ Y from a shuffled candidate list, leaving ``spare`` edges outside Y."""
    order = [cands[i] for i in rng.permutation(len(cands))]
    ny = int(rng.integers(1, len(order) - spare + 1))
    nx = int(rng.integers(0, ny))
    return order[:nx], order[:ny], order[ny:]


def _m(g, p, edges) -> float:
    return build_system(g, p, edges).absorption_time()


def check_monotonicity(
    instances: int, bounds: InstanceBounds = InstanceBounds(), rng: np.random.Generator | None = None
) -> PropertyReport:
    """m(Y) <= m(X) for random nested X ⊂ Y."""
    rng = np.random.default_rng() if rng is None else rng
    report = PropertyReport("monotonicity")
    for seed in _instance_seeds(rng, instances):
        r = np.random.default_rng(seed)
        g, p, cands = random_instance(r, bounds)
        X, Y, _ = _nested_sets(r, cands, spare=0)
        mx, my = _m(g, p, X), _m(g, p, Y)
        report.rows.append(CheckRow(seed, "m(Y)<=m(X)", my, mx, my <= mx + COMPARE_TOL))
    return report


def check_supermodularity(
    instances: int, bounds: InstanceBounds = InstanceBounds(), rng: np.random.Generator | None = None
) -> PropertyReport:
    """m(X) - m(X+e) >= m(Y) - m(Y+e) for random nested X ⊂ Y and e outside Y."""
    rng = np.random.default_rng() if rng is None else rng
    report = PropertyReport("supermodularity")
    bounds = replace(bounds, min_candidates=max(2, bounds.min_candidates))
    for seed in _instance_seeds(rng, instances):
        r = np.random.default_rng(seed)
        g, p, cands = random_instance(r, bounds)
        X, Y, rest = _nested_sets(r, cands, spare=1)
        e = rest[int(r.integers(len(rest)))]
        gx = _m(g, p, X) - _m(g, p, X + [e])
        gy = _m(g, p, Y) - _m(g, p, Y + [e])
        report.rows.append(CheckRow(seed, "gain(X)>=gain(Y)", gx, gy, gx >= gy - COMPARE_TOL))
    return report


def check_sherman_morrison(
    instances: int,
    bounds: InstanceBounds = InstanceBounds(n_max=50),
    rng: np.random.Generator | None = None,
    max_ops: int = 100,
    tol: float = 1e-8,
) -> PropertyReport:
    """Random add/remove sequences; incremental F must match a fresh solve."""
    rng = np.random.default_rng() if rng is None else rng
    report = PropertyReport("sherman-morrison")
    for seed in _instance_seeds(rng, instances):
        r = np.random.default_rng(seed)
        g, p, cands = random_instance(r, bounds)
        sys = build_system(g, p)
        worst = 0.0
        for _ in range(int(r.integers(1, max_ops + 1))):
            off = [e for e in cands if e not in sys._added_set]
            if sys.added and (not off or r.random() < 0.4):
                sys.remove_edge(sys.added[int(r.integers(len(sys.added)))])
            else:
                sys.add_edge(off[int(r.integers(len(off)))])
            ref = build_system(g, p, sys.added)
            worst = max(worst, float(np.abs(sys.F - ref.F).max()))
        report.rows.append(CheckRow(seed, "max|F_inc-F_ref|", worst, tol, worst <= tol))
    return report


def check_montecarlo(
    instances: int,
    bounds: InstanceBounds = InstanceBounds(),
    rng: np.random.Generator | None = None,
    n_walks: int = 10**5,
    z: float = 3.0,
) -> PropertyReport:
    """Analytic m against a Monte Carlo mean, passing when within z standard errors.

    Each instance adds a random subset of its candidates first.
    """
    rng = np.random.default_rng() if rng is None else rng
    report = PropertyReport("montecarlo")
    for seed in _instance_seeds(rng, instances):
        r = np.random.default_rng(seed)
        g, p, cands = random_instance(r, bounds)
        added = [cands[i] for i in np.flatnonzero(r.random(len(cands)) < 0.3)]
        m = _m(g, p, added)
        est = monte_carlo_absorption(g, p, added, n_walks, rng=r)
        dev = abs(est.mean - m)
        report.rows.append(CheckRow(seed, "|mc-m|<=3se", dev, z * est.stderr, dev <= z * est.stderr))
    return report


def check_centrality(
    instances: int,
    bounds: InstanceBounds = InstanceBounds(),
    rng: np.random.Generator | None = None,
    rtol: float = 1e-9,
) -> PropertyReport:
    """With a single target, m equals the mean first passage time into that node."""
    rng = np.random.default_rng() if rng is None else rng
    report = PropertyReport("centrality")
    single = replace(bounds, c_min=1, c_max=1, min_candidates=0)
    for seed in _instance_seeds(rng, instances):
        r = np.random.default_rng(seed)
        g, p, _ = random_instance(r, single)
        m = _m(g, p, ())
        ref = float(mfpt_to_node(g, p.C[0])[list(p.Q)].mean())
        ok = abs(m - ref) <= rtol * abs(ref)
        report.rows.append(CheckRow(seed, "m==mfpt", m, ref, ok))
    return report


def greedy_vs_exhaustive(
    instances: int,
    max_k: int = 3,
    max_candidates: int = 12,
    rng: np.random.Generator | None = None,
) -> list[dict]:
    """Per-instance greedy descent, reverse greedy and exhaustive optimum."""
    from .greedy import greedy_descent, reverse_greedy

    rng = np.random.default_rng() if rng is None else rng
    bounds = InstanceBounds(n_min=8, n_max=14, max_candidates=max_candidates, min_candidates=1)
    rows = []
    for seed in _instance_seeds(rng, instances):
        r = np.random.default_rng(seed)
        g, p, cands = random_instance(r, bounds)
        k = int(r.integers(1, min(max_k, len(cands)) + 1))
        base = build_system(g, p)
        _, m_opt = exhaustive_best_k(g, p, cands, k)
        m_greedy = greedy_descent(base, cands, k).final_m
        m_reverse = reverse_greedy(base, cands, k).final_m
        rows.append(dict(seed=seed, k=k, n_candidates=len(cands), m_opt=m_opt,
                         m_greedy=m_greedy, m_reverse=m_reverse, ratio=m_greedy / m_opt))
    return rows
