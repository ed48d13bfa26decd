"""Greedy placement of query-to-target links that shorten random-walk absorption time."""

from .absorbing import (
    AbsorbingSystem,
    absorption_time,
    add_edge,
    build_system,
    marginal_gain,
    marginal_loss,
    remove_edge,
)
from .graph import (
    CandidateEdge,
    Graph,
    Partition,
    candidate_edges,
    largest_component,
    load_edge_list,
    read_edge_list,
    sample_partition,
)
from .greedy import GreedyResult, greedy_descent, reverse_greedy
from .linkpred import ScoredEdge, random_k, score_candidates, top_k

__all__ = [
    "AbsorbingSystem",
    "CandidateEdge",
    "Graph",
    "GreedyResult",
    "Partition",
    "ScoredEdge",
    "absorption_time",
    "add_edge",
    "build_system",
    "candidate_edges",
    "greedy_descent",
    "largest_component",
    "load_edge_list",
    "marginal_gain",
    "marginal_loss",
    "random_k",
    "read_edge_list",
    "remove_edge",
    "reverse_greedy",
    "sample_partition",
    "score_candidates",
    "top_k",
]
